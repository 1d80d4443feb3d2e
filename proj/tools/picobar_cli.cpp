// Command-line surface: load simplicial sets, groups and modules from JSON,
// run the homology / loop-algebra pipelines, and emit deterministic reports.
//
// Exit codes: 0 ok, 1 a verification check failed, 2 input error,
// 3 infeasible precondition (truncation or search budget).

#include "picobar/chains.hpp"
#include "picobar/cobar.hpp"
#include "picobar/json_io.hpp"
#include "picobar/pi1.hpp"
#include "picobar/scoalg.hpp"
#include "picobar/sset.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace picobar;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;
constexpr int kInfeasible = 3;

struct Options {
  std::string command;
  std::string input;
  std::string module_path;
  std::string ring = "z";
  std::string degrees;
  std::string format = "text";
  std::string suite = "all";
  int max_rules = 500;
  int max_len = 24;
  int max_words = 4096;
  int box = 3;
  int length_bound = 3;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("'" + path + "': " + e.what());
  }
}

std::pair<int, int> parse_degrees(const std::string& s, int D) {
  if (s.empty()) return {0, D - 1};
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      int d = std::stoi(s);
      return {d, d};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw InputError("bad degree range '" + s + "', expected a..b");
  }
}

json homology_json(const std::vector<HomologyGroup>& h, int lo) {
  json arr = json::array();
  for (size_t i = 0; i < h.size(); ++i) {
    json g;
    g["degree"] = lo + static_cast<int>(i);
    g["free_rank"] = h[i].free_rank;
    json tor = json::array();
    for (const Int& t : h[i].torsion) tor.push_back(t.str());
    g["torsion"] = tor;
    arr.push_back(g);
  }
  return arr;
}

template <class R>
std::string homology_text(const R& ring, const HomologyGroup& h) {
  std::vector<std::string> parts;
  if (h.free_rank == 1) parts.push_back(ring.name());
  else if (h.free_rank > 1)
    parts.push_back(ring.name() + "^" + std::to_string(h.free_rank));
  for (const Int& t : h.torsion) parts.push_back("Z/" + t.str());
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

template <class R>
void render_text(const R& ring, const json& rep) {
  std::cout << rep.at("command").get<std::string>() << " "
            << rep.at("input").get<std::string>() << " over "
            << rep.at("ring").get<std::string>() << ", truncation "
            << rep.at("truncation").get<int>() << " (trusted degrees "
            << rep.at("trusted_degrees").get<std::string>() << ")\n";
  if (rep.contains("homology")) {
    for (const json& g : rep.at("homology")) {
      HomologyGroup h;
      h.free_rank = g.at("free_rank").get<int>();
      for (const json& t : g.at("torsion"))
        h.torsion.push_back(Int(t.get<std::string>()));
      std::cout << "H_" << g.at("degree").get<int>() << " = "
                << homology_text(ring, h) << "\n";
    }
  }
  for (const char* key : {"generators", "relation_count", "normal_form_rank",
                          "certified", "module_rank", "antipode", "action_valid"})
    if (rep.contains(key)) std::cout << key << ": " << rep.at(key).dump() << "\n";
  if (rep.contains("reason"))
    std::cout << "reason: " << rep.at("reason").get<std::string>() << "\n";
  if (rep.contains("rewriting"))
    std::cout << "rewriting: " << rep.at("rewriting").dump() << "\n";
  if (rep.contains("group_likes")) {
    const json& gl = rep.at("group_likes");
    std::cout << "group-likes: " << gl.at("count").get<int>()
              << (gl.at("complete").get<bool>() ? " (complete group)"
                                                : " (incomplete)")
              << "\n";
    if (gl.contains("table")) std::cout << "table: " << gl.at("table").dump() << "\n";
  }
  if (rep.contains("elements"))
    std::cout << "elements: " << rep.at("elements").dump() << "\n";
  if (rep.contains("checks")) {
    for (const json& c : rep.at("checks"))
      std::cout << c.at("module").get<std::string>() << "/"
                << c.at("name").get<std::string>() << ": "
                << c.at("status").get<std::string>()
                << (c.contains("detail") ? "  " + c.at("detail").get<std::string>()
                                         : "")
                << "\n";
  }
}

template <class R>
json base_report(const R& ring, const Options& opt, int D) {
  json rep;
  rep["command"] = opt.command;
  rep["input"] = opt.input;
  rep["ring"] = ring.name();
  rep["truncation"] = D;
  rep["trusted_degrees"] = "0.." + std::to_string(D - 1);
  return rep;
}

// degree windows above the trusted range are refused, not clipped
void require_trusted(int lo, int hi, int D) {
  if (lo < 0 || hi < lo || hi > D - 1)
    throw std::invalid_argument("degree range " + std::to_string(lo) + ".." +
                                std::to_string(hi) +
                                " outside the trusted window 0.." +
                                std::to_string(D - 1));
}

template <class R>
FundamentalOptions fa_options(const Options& opt) {
  FundamentalOptions f;
  f.max_new_rules = opt.max_rules;
  f.max_len = opt.max_len;
  f.max_words = static_cast<size_t>(opt.max_words);
  f.int_box = opt.box;
  return f;
}

template <class R>
int cmd_homology(const R& ring, const Options& opt,
                 const TruncatedSimplicialSet& X, json& rep) {
  auto [lo, hi] = parse_degrees(opt.degrees, X.D);
  require_trusted(lo, hi, X.D);
  auto C = free_coalgebra(ring, X);
  auto N = normalized_chain_coalgebra(ring, C);
  rep = base_report(ring, opt, X.D);
  rep["homology"] = homology_json(homology(ring, N.cx, lo, hi), lo);
  return kOk;
}

template <class R>
int cmd_fundamental_algebra(const R& ring, const Options& opt,
                            const TruncatedSimplicialSet& X, json& rep) {
  auto C = free_coalgebra(ring, X);
  auto N = normalized_chain_coalgebra(ring, C);
  auto F = fundamental_algebra(ring, N, fa_options<R>(opt));
  rep = base_report(ring, opt, X.D);
  rep["generators"] = F.pres.gens;
  rep["relation_count"] = F.pres.relations.size();
  rep["rewriting"] = {{"complete", F.rw.complete},
                      {"rules", F.rw.rules.size()}};
  rep["normal_form_rank"] = F.nf.words.size();
  rep["basis"] = F.bialg.labels;
  rep["group_likes"] = {{"count", F.group_likes.elements.size()},
                        {"closed", F.group_likes.closed},
                        {"has_inverses", F.group_likes.has_inverses},
                        {"complete", F.group_likes.complete},
                        {"table", F.group_likes.table}};
  rep["antipode"] = F.bialg.antipode.has_value();
  return kOk;
}

template <class R>
int cmd_group_likes(const R& ring, const Options& opt,
                    const TruncatedSimplicialSet& X, json& rep) {
  auto C = free_coalgebra(ring, X);
  auto N = normalized_chain_coalgebra(ring, C);
  auto pres = fundamental_presentation(ring, N);
  auto rw = complete_rewriting(ring, pres, opt.max_rules);
  if (!rw.complete)
    throw std::runtime_error("rewriting did not complete within the budget");
  auto gl = enumerate_group_likes(ring, rw, opt.length_bound, opt.box);
  rep = base_report(ring, opt, X.D);
  rep["length_bound"] = opt.length_bound;
  json els = json::array();
  for (const auto& alpha : gl.elements) {
    json e = json::object();
    for (const auto& [w, c] : alpha)
      e[word_label(pres, w)] = ring.to_string(c);
    els.push_back(e);
  }
  rep["elements"] = els;
  rep["group_likes"] = {{"count", gl.elements.size()},
                        {"closed", gl.closed},
                        {"has_inverses", gl.has_inverses},
                        {"complete", gl.complete},
                        {"table", gl.table}};
  return kOk;
}

template <class R>
int cmd_universal_cover(const R& ring, const Options& opt,
                        const TruncatedSimplicialSet& X, json& rep) {
  auto [lo, hi] = parse_degrees(opt.degrees, X.D);
  require_trusted(lo, hi, X.D);
  auto C = free_coalgebra(ring, X);
  auto N = normalized_chain_coalgebra(ring, C);
  auto F = fundamental_algebra(ring, N, fa_options<R>(opt));
  auto tau = fundamental_twisting_cochain(ring, C, N, F);
  rep = base_report(ring, opt, X.D);

  auto viol = tau.verify(ring, true);
  if (!viol.empty()) {
    rep["certified"] = false;
    rep["reason"] = "twisting cochain equation " + std::to_string(viol[0].eq) +
                    " fails at level " + std::to_string(viol[0].level);
    return kCheckFailed;
  }
  auto res = chains_of_twisted_product(ring, C, F.bialg, tau);
  rep["certified"] = res.certified;
  if (!res.certified) {
    rep["reason"] = res.mismatches.empty() ? "boundary mismatch"
                                           : res.mismatches.front();
    return kCheckFailed;
  }
  json ranks = json::array();
  for (int n = 0; n <= res.via_twisted.D; ++n)
    ranks.push_back(res.via_twisted.rank[n]);
  rep["cover_ranks"] = ranks;
  rep["homology"] = homology_json(homology(ring, res.via_twisted, lo, hi), lo);
  return kOk;
}

template <class R>
int cmd_local_homology(const R& ring, const Options& opt,
                       const TruncatedSimplicialSet& X, json& rep) {
  if (opt.module_path.empty())
    throw InputError("local-homology requires --module");
  auto [lo, hi] = parse_degrees(opt.degrees, X.D);
  require_trusted(lo, hi, X.D);
  auto C = free_coalgebra(ring, X);
  auto N = normalized_chain_coalgebra(ring, C);
  auto F = fundamental_algebra(ring, N, fa_options<R>(opt));
  ModuleDescription md = parse_module(load_json(opt.module_path));

  std::vector<SparseMatrix<R>> mats;
  for (const std::string& label : F.bialg.labels) {
    auto it = md.action.find(label);
    if (it == md.action.end())
      throw InputError("module: no action matrix for basis element '" + label +
                       "'");
    SparseMatrix<R> m(md.rank, md.rank);
    for (int r = 0; r < md.rank; ++r)
      for (int c = 0; c < md.rank; ++c)
        m.add_to(ring, r, c, reduce_int(ring, Int(it->second[r][c])));
    mats.push_back(std::move(m));
  }
  rep = base_report(ring, opt, X.D);
  rep["module_rank"] = md.rank;

  auto bad = verify_module_action(ring, F.bialg, mats, md.rank);
  if (!bad.empty()) {
    rep["action_valid"] = false;
    rep["reason"] = bad.front();
    return kCheckFailed;
  }
  rep["action_valid"] = true;
  rep["homology"] =
      homology_json(local_homology(ring, C, N, F, mats, md.rank, lo, hi), lo);
  return kOk;
}

template <class R>
int cmd_verify(const R& ring, const Options& opt,
               const TruncatedSimplicialSet& X, json& rep) {
  rep = base_report(ring, opt, X.D);
  json checks = json::array();
  int failures = 0;
  auto run = [&](const std::string& module, const std::string& name,
                 auto&& body) {
    if (opt.suite != "all" && opt.suite != module) return;
    json c = {{"module", module}, {"name", name}};
    try {
      std::optional<std::string> skip = body();
      if (skip) {
        c["status"] = "skipped";
        c["detail"] = *skip;
      } else {
        c["status"] = "ok";
      }
    } catch (const std::exception& e) {
      c["status"] = "failed";
      c["detail"] = e.what();
      ++failures;
    }
    checks.push_back(c);
  };
  using Skip = std::optional<std::string>;

  auto C = free_coalgebra(ring, X);
  auto N = normalized_chain_coalgebra(ring, C);

  run("sset", "simplicial-identities", [&]() -> Skip {
    X.check();
    return std::nullopt;
  });
  run("scoalg", "structure-maps", [&]() -> Skip {
    C.verify_simplicial_identities(ring);
    return std::nullopt;
  });
  run("scoalg", "coalgebra-axioms", [&]() -> Skip {
    C.verify_coalgebra(ring);
    return std::nullopt;
  });
  run("chains", "boundary-squares-to-zero", [&]() -> Skip {
    N.cx.check_d_squared(ring);
    return std::nullopt;
  });
  run("cobar", "differential-squares-to-zero", [&]() -> Skip {
    for (int d = 1; d <= X.D; ++d)
      for (int i = 0; i < N.cx.rank[d]; ++i) {
        auto dd = cobar_boundary(ring, N, cobar_boundary_gen(ring, N, d, i));
        if (!dd.empty())
          throw std::runtime_error("square of the boundary not zero at (" +
                                   std::to_string(d) + "," + std::to_string(i) +
                                   ")");
      }
    return std::nullopt;
  });
  run("cobar", "universal-cochain-flat", [&]() -> Skip {
    if (N.cx.rank[0] != 1) return "input not connected";
    for (int d = 1; d <= X.D; ++d)
      for (int i = 0; i < N.cx.rank[d]; ++i)
        if (!mc_residual(ring, N, universal_twisting_cochain(ring, N), d, i)
                 .empty())
          throw std::runtime_error("curvature at (" + std::to_string(d) + "," +
                                   std::to_string(i) + ")");
    return std::nullopt;
  });
  run("pi1", "coproduct-descends", [&]() -> Skip {
    if (X.D < 2) return "truncation below 2";
    auto bad = nabla1_chain_check(ring, N);
    if (!bad.empty())
      throw std::runtime_error("residual at degree-2 basis " +
                               std::to_string(bad.front()));
    return std::nullopt;
  });
  run("pi1", "monoid-oracle-agrees", [&]() -> Skip {
    if (X.D < 2) return "truncation below 2";
    auto cmp = monoid_oracle_compare(ring, X, opt.max_rules);
    if (!cmp.monoid_complete || !cmp.fundamental_complete)
      return "rewriting did not complete within the budget";
    if (!cmp.isomorphic)
      throw std::runtime_error("presentations disagree");
    return std::nullopt;
  });
  run("scoalg+chains", "twisted-product-certificate", [&]() -> Skip {
    if (X.D < 2) return "truncation below 2";
    FundamentalAlgebra<R> F;
    try {
      F = fundamental_algebra(ring, N, fa_options<R>(opt));
    } catch (const std::exception& e) {
      return std::string("loop algebra unavailable: ") + e.what();
    }
    auto tau = fundamental_twisting_cochain(ring, C, N, F);
    auto viol = tau.verify(ring, true);
    if (!viol.empty())
      throw std::runtime_error("cochain equation " + std::to_string(viol[0].eq) +
                               " fails at level " +
                               std::to_string(viol[0].level));
    auto res = chains_of_twisted_product(ring, C, F.bialg, tau);
    if (!res.certified)
      throw std::runtime_error(res.mismatches.empty() ? "boundary mismatch"
                                                      : res.mismatches.front());
    return std::nullopt;
  });

  rep["checks"] = checks;
  rep["failures"] = failures;
  return failures == 0 ? kOk : kCheckFailed;
}

template <class R>
int run_with_ring(const R& ring, const Options& opt) {
  json rep;
  int code;
  try {
    TruncatedSimplicialSet X = parse_simplicial_set(load_json(opt.input));
    if (opt.command == "homology")
      code = cmd_homology(ring, opt, X, rep);
    else if (opt.command == "fundamental-algebra")
      code = cmd_fundamental_algebra(ring, opt, X, rep);
    else if (opt.command == "group-likes")
      code = cmd_group_likes(ring, opt, X, rep);
    else if (opt.command == "universal-cover")
      code = cmd_universal_cover(ring, opt, X, rep);
    else if (opt.command == "local-homology")
      code = cmd_local_homology(ring, opt, X, rep);
    else
      code = cmd_verify(ring, opt, X, rep);
  } catch (const InputError& e) {
    rep = {{"error", {{"code", kInputError}, {"reason", e.what()}}}};
    code = kInputError;
  } catch (const std::exception& e) {
    rep = {{"error", {{"code", kInfeasible}, {"reason", e.what()}}}};
    code = kInfeasible;
  }
  if (opt.format == "json") {
    std::cout << rep.dump(2) << "\n";
  } else if (rep.contains("error")) {
    std::cerr << "error: " << rep["error"]["reason"].get<std::string>() << "\n";
  } else {
    render_text(ring, rep);
  }
  return code;
}

int dispatch(const Options& opt) {
  if (opt.ring == "z") return run_with_ring(ZRing{}, opt);
  if (opt.ring == "q") return run_with_ring(QRing{}, opt);
  if (opt.ring.rfind("fp:", 0) == 0) {
    long long p;
    try {
      p = std::stoll(opt.ring.substr(3));
    } catch (const std::exception&) {
      p = 0;
    }
    try {
      return run_with_ring(FpRing(p), opt);
    } catch (const std::domain_error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInputError;
    }
  }
  std::cerr << "error: unknown ring '" + opt.ring + "', expected z, q or fp:<p>\n";
  return kInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact homology and loop-algebra computations on truncated "
               "simplicial sets"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool degrees, bool budgets) {
    sub->add_option("input", opt.input, "simplicial set JSON file")
        ->required();
    sub->add_option("--ring", opt.ring, "coefficients: z, q or fp:<prime>");
    sub->add_option("--format", opt.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    if (degrees)
      sub->add_option("--degrees", opt.degrees,
                      "degree window a..b (default the trusted range)");
    if (budgets) {
      sub->add_option("--max-rules", opt.max_rules,
                      "rewriting completion budget")
          ->envname("PICOBAR_MAX_RULES");
      sub->add_option("--max-len", opt.max_len, "normal form length cap")
          ->envname("PICOBAR_MAX_LEN");
      sub->add_option("--max-words", opt.max_words, "normal form count cap");
      sub->add_option("--box", opt.box,
                      "integer coefficient box for group-like search");
    }
  };

  add_common(app.add_subcommand("homology",
                                "homology of the normalized chain complex"),
             true, false);
  add_common(app.add_subcommand(
                 "fundamental-algebra",
                 "loop algebra presentation, completion and group-likes"),
             false, true);
  auto* gl = app.add_subcommand("group-likes",
                                "solve the group-like condition up to a length "
                                "bound");
  add_common(gl, false, true);
  gl->add_option("--length-bound", opt.length_bound,
                 "word length bound for the search");
  add_common(app.add_subcommand("universal-cover",
                                "twisted tensor cover: certificate and homology"),
             true, true);
  auto* lh = app.add_subcommand("local-homology",
                                "homology with coefficients in a module over "
                                "the loop algebra");
  add_common(lh, true, true);
  lh->add_option("--module", opt.module_path, "module description JSON file")
      ->required();
  auto* vf = app.add_subcommand("verify", "run the module invariant suites");
  add_common(vf, false, true);
  vf->add_option("--suite", opt.suite,
                 "all or one of sset, scoalg, chains, cobar, pi1, scoalg+chains")
      ->check(CLI::IsMember(
          {"all", "sset", "scoalg", "chains", "cobar", "pi1", "scoalg+chains"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }
  opt.command = app.get_subcommands().front()->get_name();
  return dispatch(opt);
}
