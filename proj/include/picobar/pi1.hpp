#pragma once

// Degree-zero loop homology as a presented algebra: noncommutative rewriting
// for normal forms, the induced bialgebra with its primitive-shifted
// coproduct, group-like extraction, the level-wise twisting cochain into that
// bialgebra, the associated cover coalgebra, homology with module
// coefficients, and the monoid-algebra cross-check.

#include "picobar/bialg.hpp"
#include "picobar/chains.hpp"
#include "picobar/cobar.hpp"
#include "picobar/scoalg.hpp"
#include "picobar/smith.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace picobar {

// words over generator indices; the degree-zero part of the loop algebra
using GWord = std::vector<int>;
template <class R>
using GPoly = std::map<GWord, typename R::value_type>;
template <class R>
using GTensor = std::map<std::pair<GWord, GWord>, typename R::value_type>;

inline bool length_lex_less(const GWord& a, const GWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

template <class R>
void gp_add(const R& ring, GPoly<R>& dst, const GWord& w,
            const typename R::value_type& c) {
  if (ring.is_zero(c)) return;
  auto it = dst.find(w);
  if (it == dst.end()) {
    dst[w] = c;
  } else {
    it->second = ring.add(it->second, c);
    if (ring.is_zero(it->second)) dst.erase(it);
  }
}

template <class R>
GPoly<R> gp_mul(const R& ring, const GPoly<R>& a, const GPoly<R>& b) {
  GPoly<R> out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      GWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      gp_add(ring, out, w, ring.mul(ca, cb));
    }
  return out;
}

template <class R>
struct AlgebraPresentation {
  std::vector<std::string> gens;
  std::vector<GPoly<R>> relations;
};

// generators are the degree-one classes, one relation per degree-two class
template <class R>
AlgebraPresentation<R> fundamental_presentation(const R& ring,
                                                const NormalizedChains<R>& N) {
  if (N.cx.D < 2)
    throw std::invalid_argument("fundamental presentation: truncation < 2");
  if (N.cx.rank[0] != 1)
    throw std::invalid_argument("fundamental presentation: not connected");
  AlgebraPresentation<R> p;
  p.gens = N.cx.labels[1];
  for (int y = 0; y < N.cx.rank[2]; ++y) {
    GPoly<R> rel;
    for (const auto& [w, c] : cobar_boundary_gen(ring, N, 2, y)) {
      GWord gw;
      for (const CobarGen& g : w) gw.push_back(g.idx);
      gp_add(ring, rel, gw, c);
    }
    p.relations.push_back(std::move(rel));
  }
  return p;
}

// ---------------------------------------------------------------------------
// rewriting: length-then-lex order, unit leading coefficients

template <class R>
struct RewritingSystem {
  int ngens = 0;
  bool complete = false;
  std::vector<std::pair<GWord, GPoly<R>>> rules;  // lead -> lower terms
};

namespace detail {

inline int find_factor(const GWord& w, const GWord& l) {
  if (l.empty() || l.size() > w.size()) return -1;
  for (size_t p = 0; p + l.size() <= w.size(); ++p)
    if (std::equal(l.begin(), l.end(), w.begin() + p))
      return static_cast<int>(p);
  return -1;
}

}  // namespace detail

template <class R>
GPoly<R> rw_reduce(const R& ring, const RewritingSystem<R>& rw, GPoly<R> p) {
  bool again = true;
  while (again) {
    again = false;
    for (auto it = p.begin(); it != p.end(); ++it) {
      const auto* hit = static_cast<const std::pair<GWord, GPoly<R>>*>(nullptr);
      int pos = -1;
      for (const auto& rule : rw.rules) {
        pos = detail::find_factor(it->first, rule.first);
        if (pos >= 0) {
          hit = &rule;
          break;
        }
      }
      if (!hit) continue;
      GWord w = it->first;
      auto c = it->second;
      p.erase(it);
      for (const auto& [rw2, rc] : hit->second) {
        GWord nw(w.begin(), w.begin() + pos);
        nw.insert(nw.end(), rw2.begin(), rw2.end());
        nw.insert(nw.end(), w.begin() + pos + hit->first.size(), w.end());
        gp_add(ring, p, nw, ring.mul(c, rc));
      }
      again = true;
      break;
    }
  }
  return p;
}

// reduces, then installs the leading word as a rule; the leading coefficient
// must be a unit (over the integers this means +-1)
template <class R>
bool rw_add_relation(const R& ring, RewritingSystem<R>& rw, const GPoly<R>& rel) {
  GPoly<R> p = rw_reduce(ring, rw, rel);
  if (p.empty()) return false;
  auto lead = p.begin()->first;
  for (const auto& [w, c] : p)
    if (length_lex_less(lead, w)) lead = w;
  auto lc = p.at(lead);
  if (!ring.is_unit(lc))
    throw std::runtime_error(
        "rewriting: leading coefficient is not a unit; use field scalars");
  auto inv = ring.inv(lc);
  GPoly<R> rhs;
  for (const auto& [w, c] : p)
    if (w != lead) rhs[w] = ring.neg(ring.mul(c, inv));
  rw.rules.push_back({std::move(lead), std::move(rhs)});
  return true;
}

// resolves overlap ambiguities until none remain or the budget runs out
template <class R>
RewritingSystem<R> complete_rewriting(const R& ring,
                                      const AlgebraPresentation<R>& pres,
                                      int max_new_rules = 500) {
  RewritingSystem<R> rw;
  rw.ngens = static_cast<int>(pres.gens.size());
  int added = 0;
  for (const auto& rel : pres.relations) {
    if (rw_add_relation(ring, rw, rel) && ++added > max_new_rules) {
      rw.complete = false;
      return rw;
    }
  }
  bool dirty = true;
  while (dirty) {
    dirty = false;
    size_t n = rw.rules.size();
    for (size_t i = 0; i < n && !dirty; ++i)
      for (size_t j = 0; j < n && !dirty; ++j) {
        const GWord& l1 = rw.rules[i].first;
        const GWord& l2 = rw.rules[j].first;
        size_t kmax = std::min(l1.size(), l2.size()) - 1;
        for (size_t k = 1; k <= kmax && !dirty; ++k) {
          if (!std::equal(l1.end() - k, l1.end(), l2.begin())) continue;
          // overlap word l1 * l2[k:], resolved two ways
          GPoly<R> cp;
          for (const auto& [w, c] : rw.rules[i].second) {
            GWord nw = w;
            nw.insert(nw.end(), l2.begin() + k, l2.end());
            gp_add(ring, cp, nw, c);
          }
          for (const auto& [w, c] : rw.rules[j].second) {
            GWord nw(l1.begin(), l1.end() - k);
            nw.insert(nw.end(), w.begin(), w.end());
            gp_add(ring, cp, nw, ring.neg(c));
          }
          if (rw_add_relation(ring, rw, cp)) {
            if (++added > max_new_rules) {
              rw.complete = false;
              return rw;
            }
            dirty = true;
          }
        }
      }
  }
  rw.complete = true;
  return rw;
}

struct NormalFormBasis {
  std::vector<GWord> words;  // breadth-first, so length-lex sorted
  std::map<GWord, int> index;
  bool finite = false;
};

// irreducible words by breadth-first search; a whole empty length level
// proves there are no longer ones
inline NormalFormBasis normal_forms(
    const auto& rw, int max_len = 24, size_t max_words = 4096) {
  NormalFormBasis nf;
  std::vector<GWord> level{GWord{}};
  nf.words.push_back({});
  for (int len = 1; !level.empty(); ++len) {
    if (len > max_len || nf.words.size() > max_words) return nf;  // unknown
    std::vector<GWord> next;
    for (const GWord& w : level)
      for (int g = 0; g < rw.ngens; ++g) {
        GWord cand = w;
        cand.push_back(g);
        bool reducible = false;
        for (const auto& [lead, rhs] : rw.rules) {
          (void)rhs;
          if (lead.size() > cand.size()) continue;
          if (std::equal(lead.begin(), lead.end(), cand.end() - lead.size())) {
            reducible = true;
            break;
          }
        }
        if (!reducible) {
          next.push_back(cand);
          nf.words.push_back(cand);
          if (nf.words.size() > max_words) return nf;
        }
      }
    level = std::move(next);
  }
  nf.finite = true;
  for (size_t i = 0; i < nf.words.size(); ++i)
    nf.index[nf.words[i]] = static_cast<int>(i);
  return nf;
}

// ---------------------------------------------------------------------------
// the shifted coproduct on degree-zero words and its homology residual

// on a generator: g (x) g + 1 (x) g + g (x) 1, extended multiplicatively
template <class R>
GTensor<R> nabla0(const R& ring, const GPoly<R>& p) {
  GTensor<R> out;
  for (const auto& [w, c] : p) {
    GTensor<R> acc{{{GWord{}, GWord{}}, ring.one()}};
    for (int g : w) {
      GTensor<R> nx;
      for (const auto& [uv, cc] : acc) {
        GWord ug = uv.first, vg = uv.second;
        ug.push_back(g);
        vg.push_back(g);
        auto put = [&](const GWord& a, const GWord& b) {
          auto key = std::make_pair(a, b);
          auto it = nx.find(key);
          if (it == nx.end()) nx[key] = cc;
          else {
            it->second = ring.add(it->second, cc);
            if (ring.is_zero(it->second)) nx.erase(it);
          }
        };
        put(ug, vg);
        put(uv.first, vg);
        put(ug, uv.second);
      }
      acc = std::move(nx);
    }
    for (const auto& [uv, cc] : acc) {
      auto it = out.find(uv);
      auto add = ring.mul(c, cc);
      if (it == out.end()) {
        if (!ring.is_zero(add)) out[uv] = add;
      } else {
        it->second = ring.add(it->second, add);
        if (ring.is_zero(it->second)) out.erase(it);
      }
    }
  }
  return out;
}

template <class R>
GTensor<R> reduce_tensor(const R& ring, const RewritingSystem<R>& rw,
                         const GTensor<R>& t) {
  GTensor<R> out;
  for (const auto& [uv, c] : t) {
    auto lu = rw_reduce(ring, rw, GPoly<R>{{uv.first, ring.one()}});
    auto rv = rw_reduce(ring, rw, GPoly<R>{{uv.second, ring.one()}});
    for (const auto& [u, cu] : lu)
      for (const auto& [v, cv] : rv) {
        auto key = std::make_pair(u, v);
        auto add = ring.mul(c, ring.mul(cu, cv));
        auto it = out.find(key);
        if (it == out.end()) {
          if (!ring.is_zero(add)) out[key] = add;
        } else {
          it->second = ring.add(it->second, add);
          if (ring.is_zero(it->second)) out.erase(it);
        }
      }
  }
  return out;
}

// residual of the degree-one correction term against the shifted coproduct:
// (D (x) id + id (x) D) applied to the correction of a degree-two class,
// minus the shifted coproduct of its boundary; zero certifies descent
template <class R>
std::map<std::pair<Word, Word>, typename R::value_type> nabla1_residual(
    const R& ring, const NormalizedChains<R>& N, int y) {
  using V = typename R::value_type;
  using Tens = std::map<std::pair<Word, Word>, V>;
  if (N.cx.D < 2) throw std::invalid_argument("residual: truncation < 2");
  Tens acc;
  auto tadd = [&](Tens& t, const Word& a, const Word& b, const V& c) {
    if (ring.is_zero(c)) return;
    auto key = std::make_pair(a, b);
    auto it = t.find(key);
    if (it == t.end()) {
      t[key] = c;
    } else {
      it->second = ring.add(it->second, c);
      if (ring.is_zero(it->second)) t.erase(it);
    }
  };
  auto face_of = [&](int i) {
    std::vector<std::pair<int, V>> out;
    for (const auto& [rc, v] : N.face[2][i].ent)
      if (rc.second == y) out.push_back({rc.first, v});
    return out;
  };
  auto d0 = face_of(0), d1 = face_of(1), d2 = face_of(2);
  Word wy{{2, y}};
  for (const auto& [a2, c2] : d2)
    for (const auto& [a0, c0] : d0)
      tadd(acc, Word{{1, a2}, {1, a0}}, wy, ring.mul(c2, c0));
  for (const auto& [a2, c2] : d2) tadd(acc, Word{{1, a2}}, wy, c2);
  for (const auto& [a0, c0] : d0) tadd(acc, Word{{1, a0}}, wy, c0);
  for (const auto& [a1, c1] : d1) tadd(acc, wy, Word{{1, a1}}, c1);
  tadd(acc, wy, Word{}, ring.one());
  tadd(acc, Word{}, wy, ring.one());

  Tens lhs;
  for (const auto& [uv, c] : acc) {
    for (const auto& [w, cc] :
         cobar_boundary(ring, N, NCPoly<R>{{uv.first, ring.one()}}))
      tadd(lhs, w, uv.second, ring.mul(c, cc));
    V s = word_degree(uv.first) % 2 == 0 ? c : ring.neg(c);
    for (const auto& [w, cc] :
         cobar_boundary(ring, N, NCPoly<R>{{uv.second, ring.one()}}))
      tadd(lhs, uv.first, w, ring.mul(s, cc));
  }
  for (const auto& [w, c] : cobar_boundary_gen(ring, N, 2, y)) {
    // shifted coproduct of a degree-zero word, letter by letter
    Tens t{{{Word{}, Word{}}, ring.one()}};
    for (const CobarGen& g : w) {
      Tens nx;
      for (const auto& [uv, cc] : t) {
        Word ug = uv.first, vg = uv.second;
        ug.push_back(g);
        vg.push_back(g);
        tadd(nx, ug, vg, cc);
        tadd(nx, uv.first, vg, cc);
        tadd(nx, ug, uv.second, cc);
      }
      t = std::move(nx);
    }
    for (const auto& [uv, cc] : t)
      tadd(lhs, uv.first, uv.second, ring.neg(ring.mul(c, cc)));
  }
  return lhs;
}

template <class R>
std::vector<int> nabla1_chain_check(const R& ring,
                                    const NormalizedChains<R>& N) {
  std::vector<int> bad;
  for (int y = 0; y < N.cx.rank[2]; ++y)
    if (!nabla1_residual(ring, N, y).empty()) bad.push_back(y);
  return bad;
}

// ---------------------------------------------------------------------------
// group-like elements

template <class R>
bool is_group_like(const R& ring, const RewritingSystem<R>& rw,
                   const GPoly<R>& alpha) {
  if (!rw.complete)
    throw std::invalid_argument("group-like test: rewriting incomplete");
  GPoly<R> a = rw_reduce(ring, rw, alpha);
  auto it = a.find(GWord{});
  if (it == a.end() || !ring.eq(it->second, ring.one())) return false;
  GTensor<R> lhs = reduce_tensor(ring, rw, nabla0(ring, a));
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : a) {
      auto key = std::make_pair(u, v);
      auto sub = ring.mul(cu, cv);
      auto jt = lhs.find(key);
      if (jt == lhs.end()) {
        if (!ring.is_zero(sub)) return false;
        continue;
      }
      jt->second = ring.sub(jt->second, sub);
      if (ring.is_zero(jt->second)) lhs.erase(jt);
    }
  return lhs.empty();
}

template <class R>
struct GroupLikeSet {
  std::vector<GPoly<R>> elements;
  bool closed = false;
  bool has_inverses = false;
  bool complete = false;
  std::vector<std::vector<int>> table;  // index into elements, -1 if outside
};

// solves the quadratic group-like condition over normal forms of bounded
// length: all field points, or an integer box of the given radius
template <class R>
GroupLikeSet<R> enumerate_group_likes(const R& ring,
                                      const RewritingSystem<R>& rw,
                                      int length_bound, int int_box = 3,
                                      size_t candidate_cap = 300000,
                                      size_t max_words = 64) {
  if (!rw.complete)
    throw std::invalid_argument("group-like search: rewriting incomplete");
  NormalFormBasis nf = normal_forms(rw, length_bound, max_words);
  std::vector<GWord> span;
  for (const GWord& w : nf.words)
    if (!w.empty() && static_cast<int>(w.size()) <= length_bound)
      span.push_back(w);

  std::vector<typename R::value_type> coeff_values;
  if constexpr (std::is_same_v<R, FpRing>) {
    for (std::int64_t v = 0; v < ring.p; ++v) coeff_values.push_back(v);
  } else {
    for (int v = -int_box; v <= int_box; ++v)
      coeff_values.push_back(ring.from_int(v));
  }
  double total = 1;
  for (size_t i = 0; i < span.size(); ++i) {
    total *= static_cast<double>(coeff_values.size());
    if (total > static_cast<double>(candidate_cap))
      throw std::runtime_error("group-like search: candidate space too large");
  }

  GroupLikeSet<R> out;
  std::vector<size_t> odo(span.size(), 0);
  while (true) {
    GPoly<R> alpha{{GWord{}, ring.one()}};
    for (size_t i = 0; i < span.size(); ++i)
      gp_add(ring, alpha, span[i], coeff_values[odo[i]]);
    if (is_group_like(ring, rw, alpha)) out.elements.push_back(alpha);
    size_t i = 0;
    for (; i < span.size(); ++i) {
      if (++odo[i] < coeff_values.size()) break;
      odo[i] = 0;
    }
    if (i == span.size()) break;
  }
  std::sort(out.elements.begin(), out.elements.end());

  int unit_idx = -1;
  GPoly<R> one{{GWord{}, ring.one()}};
  for (size_t i = 0; i < out.elements.size(); ++i)
    if (out.elements[i] == one) unit_idx = static_cast<int>(i);
  out.closed = true;
  out.table.assign(out.elements.size(),
                   std::vector<int>(out.elements.size(), -1));
  for (size_t i = 0; i < out.elements.size(); ++i)
    for (size_t j = 0; j < out.elements.size(); ++j) {
      auto prod = rw_reduce(
          ring, rw, gp_mul(ring, out.elements[i], out.elements[j]));
      auto at = std::find(out.elements.begin(), out.elements.end(), prod);
      if (at == out.elements.end()) out.closed = false;
      else out.table[i][j] = static_cast<int>(at - out.elements.begin());
    }
  out.has_inverses = unit_idx >= 0 && !out.elements.empty();
  for (size_t i = 0; i < out.elements.size() && out.has_inverses; ++i) {
    bool found = false;
    for (size_t j = 0; j < out.elements.size(); ++j)
      if (out.table[i][j] == unit_idx && out.table[j][i] == unit_idx)
        found = true;
    out.has_inverses = found;
  }
  out.complete = out.closed && out.has_inverses;
  return out;
}

// ---------------------------------------------------------------------------
// the full degree-zero package

template <class R>
struct FundamentalAlgebra {
  AlgebraPresentation<R> pres;
  RewritingSystem<R> rw;
  NormalFormBasis nf;
  FiniteBialgebra<R> bialg;
  GroupLikeSet<R> group_likes;
};

struct FundamentalOptions {
  int max_new_rules = 500;
  int max_len = 24;
  size_t max_words = 4096;
  int int_box = 3;
  size_t candidate_cap = 300000;
};

template <class R>
std::string word_label(const AlgebraPresentation<R>& pres, const GWord& w) {
  if (w.empty()) return "1";
  std::string s = "{";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += "|";
    s += pres.gens[w[i]];
  }
  return s + "}";
}

template <class R>
FundamentalAlgebra<R> fundamental_algebra(const R& ring,
                                          const NormalizedChains<R>& N,
                                          FundamentalOptions opt = {}) {
  FundamentalAlgebra<R> F;
  F.pres = fundamental_presentation(ring, N);
  F.rw = complete_rewriting(ring, F.pres, opt.max_new_rules);
  if (!F.rw.complete)
    throw std::runtime_error("fundamental algebra: completion budget exhausted");
  F.nf = normal_forms(F.rw, opt.max_len, opt.max_words);
  if (!F.nf.finite)
    throw std::runtime_error(
        "fundamental algebra: normal-form basis not known to be finite");

  int n = static_cast<int>(F.nf.words.size());
  FiniteBialgebra<R>& B = F.bialg;
  B.rank = n;
  for (const GWord& w : F.nf.words) B.labels.push_back(word_label(F.pres, w));
  B.unit.assign(n, ring.zero());
  B.unit[F.nf.index.at(GWord{})] = ring.one();
  B.counit.assign(n, ring.zero());
  B.counit[F.nf.index.at(GWord{})] = ring.one();
  B.mult.assign(n, std::vector<std::vector<std::pair<int, typename R::value_type>>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      GWord w = F.nf.words[i];
      w.insert(w.end(), F.nf.words[j].begin(), F.nf.words[j].end());
      for (const auto& [u, c] :
           rw_reduce(ring, F.rw, GPoly<R>{{w, ring.one()}}))
        B.mult[i][j].push_back({F.nf.index.at(u), c});
    }
  B.coprod.resize(n);
  for (int i = 0; i < n; ++i) {
    auto t = reduce_tensor(ring, F.rw,
                           nabla0(ring, GPoly<R>{{F.nf.words[i], ring.one()}}));
    for (const auto& [uv, c] : t)
      B.coprod[i].push_back(
          {F.nf.index.at(uv.first), F.nf.index.at(uv.second), c});
  }

  int max_len = 0;
  for (const GWord& w : F.nf.words)
    max_len = std::max(max_len, static_cast<int>(w.size()));
  F.group_likes = enumerate_group_likes(ring, F.rw, max_len, opt.int_box,
                                        opt.candidate_cap, opt.max_words);

  // antipode from inversion of group-likes when they span a basis
  if (F.group_likes.complete &&
      static_cast<int>(F.group_likes.elements.size()) == n) {
    SparseMatrix<R> basis(n, n);
    for (int j = 0; j < n; ++j)
      for (const auto& [w, c] : F.group_likes.elements[j])
        basis.add_to(ring, F.nf.index.at(w), j, c);
    if (auto binv = try_inverse(ring, basis)) {
      int unit_idx = -1;
      GPoly<R> one{{GWord{}, ring.one()}};
      for (size_t i = 0; i < F.group_likes.elements.size(); ++i)
        if (F.group_likes.elements[i] == one) unit_idx = static_cast<int>(i);
      SparseMatrix<R> q(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (F.group_likes.table[i][j] == unit_idx &&
              F.group_likes.table[j][i] == unit_idx)
            q.add_to(ring, j, i, ring.one());
      B.antipode = mat_mul(ring, mat_mul(ring, basis, q), *binv);
    }
  }
  B.check(ring);
  return F;
}

// ---------------------------------------------------------------------------
// the level-wise twisting cochain into the degree-zero bialgebra: the class
// of the leading edge plus the counit times the unit

template <class R>
LinearTwistingCochain<R> fundamental_twisting_cochain(
    const R& ring, const SimplicialCoalgebra<R>& C,
    const NormalizedChains<R>& N, const FundamentalAlgebra<R>& F) {
  using V = typename R::value_type;
  int n_alg = F.bialg.rank;
  // class vectors of the degree-one generators
  std::vector<std::vector<V>> gen_class(N.cx.rank[1],
                                        std::vector<V>(n_alg, ring.zero()));
  for (int i = 0; i < N.cx.rank[1]; ++i)
    for (const auto& [w, c] :
         rw_reduce(ring, F.rw, GPoly<R>{{GWord{i}, ring.one()}}))
      gen_class[i][F.nf.index.at(w)] = c;

  LinearTwistingCochain<R> tau;
  tau.C = &C;
  tau.A = &F.bialg;
  tau.tau.resize(C.D + 1);
  for (int n = 1; n <= C.D; ++n) {
    tau.tau[n].assign(C.rank[n], std::vector<V>(n_alg, ring.zero()));
    for (int x = 0; x < C.rank[n]; ++x) {
      // leading edge: drop every vertex after the first two
      std::vector<V> e(C.rank[n], ring.zero());
      e[x] = ring.one();
      for (int k = n; k >= 2; --k) e = mat_apply(ring, C.face[k][k], e);
      auto cls = mat_apply(ring, N.proj[1], e);
      auto& t = tau.tau[n][x];
      for (int i = 0; i < N.cx.rank[1]; ++i) {
        if (ring.is_zero(cls[i])) continue;
        for (int k = 0; k < n_alg; ++k)
          t[k] = ring.add(t[k], ring.mul(cls[i], gen_class[i][k]));
      }
      for (int k = 0; k < n_alg; ++k)
        t[k] = ring.add(t[k], ring.mul(C.counit[n][x], F.bialg.unit[k]));
    }
  }
  return tau;
}

template <class R>
SimplicialCoalgebra<R> universal_cover(const R& ring,
                                       const SimplicialCoalgebra<R>& C,
                                       const NormalizedChains<R>& N,
                                       const FundamentalAlgebra<R>& F) {
  auto tau = fundamental_twisting_cochain(ring, C, N, F);
  auto bad = tau.verify(ring, true);
  if (!bad.empty())
    throw std::runtime_error("universal cover: twisting cochain check failed");
  return simplicial_twisted_tensor(ring, C, F.bialg, tau);
}

// ---------------------------------------------------------------------------
// homology with coefficients in a module over the degree-zero bialgebra

// right action: mats[k] is the matrix of multiplication by basis element k
template <class R>
std::vector<std::string> verify_module_action(
    const R& ring, const FiniteBialgebra<R>& A,
    const std::vector<SparseMatrix<R>>& mats, int rank) {
  using V = typename R::value_type;
  std::vector<std::string> out;
  if (static_cast<int>(mats.size()) != A.rank) {
    out.push_back("one action matrix per algebra basis element required");
    return out;
  }
  for (const auto& m : mats)
    if (m.rows != rank || m.cols != rank) {
      out.push_back("action matrix shape mismatch");
      return out;
    }
  SparseMatrix<R> unit_act(rank, rank);
  for (int k = 0; k < A.rank; ++k)
    if (!ring.is_zero(A.unit[k]))
      unit_act = mat_add(ring, unit_act, mat_scale(ring, A.unit[k], mats[k]));
  if (!unit_act.equals(SparseMatrix<R>::identity(ring, rank)))
    out.push_back("unit does not act as identity");
  for (int i = 0; i < A.rank; ++i)
    for (int j = 0; j < A.rank; ++j) {
      SparseMatrix<R> lhs(rank, rank);
      for (const auto& [k, c] : A.mult[i][j])
        lhs = mat_add(ring, lhs, mat_scale(ring, c, mats[k]));
      SparseMatrix<R> rhs = mat_mul(ring, mats[j], mats[i]);
      if (!lhs.equals(rhs))
        out.push_back("action not associative at basis pair (" +
                      std::to_string(i) + "," + std::to_string(j) + ")");
    }
  return out;
}

// twisted differential on N(C) (x) M for a module with action matrices,
// mirroring the bialgebra-coefficient construction
template <class R>
ChainComplex<R> twisted_module_chains(const R& ring,
                                      const NormalizedChains<R>& NC,
                                      const SimplicialCoalgebra<R>& C,
                                      const FiniteBialgebra<R>& A,
                                      const LinearTwistingCochain<R>& tau,
                                      const std::vector<SparseMatrix<R>>& mats,
                                      int rank_m) {
  using V = typename R::value_type;
  ChainComplex<R> K;
  K.D = NC.cx.D;
  K.rank.resize(K.D + 1);
  K.labels.resize(K.D + 1);
  K.bnd.resize(K.D + 1);
  for (int n = 0; n <= K.D; ++n) {
    K.rank[n] = NC.cx.rank[n] * rank_m;
    for (int x = 0; x < NC.cx.rank[n]; ++x)
      for (int m = 0; m < rank_m; ++m)
        K.labels[n].push_back(NC.cx.labels[n][x] + "(x)m" + std::to_string(m));
  }
  auto pidx = [&](int x, int m) { return x * rank_m + m; };
  for (int n = 1; n <= K.D; ++n) {
    SparseMatrix<R> d(K.rank[n - 1], K.rank[n]);
    for (const auto& [rc, v] : NC.cx.bnd[n].ent)
      for (int m = 0; m < rank_m; ++m)
        d.add_to(ring, pidx(rc.first, m), pidx(rc.second, m), v);
    for (int x = 0; x < NC.cx.rank[n]; ++x) {
      for (const auto& [xa, xb, c] : NC.level_delta[n][x]) {
        std::vector<V> tb(A.rank, ring.zero());
        V eps = ring.zero();
        for (const auto& [rc, v] : NC.incl[n].ent) {
          if (rc.second != xb) continue;
          for (int k = 0; k < A.rank; ++k)
            tb[k] = ring.add(tb[k], ring.mul(v, tau.tau[n][rc.first][k]));
          eps = ring.add(eps, ring.mul(v, C.counit[n][rc.first]));
        }
        for (int k = 0; k < A.rank; ++k)
          tb[k] = ring.sub(tb[k], ring.mul(eps, A.unit[k]));
        // action matrix of the reduced cochain value
        SparseMatrix<R> act(rank_m, rank_m);
        for (int k = 0; k < A.rank; ++k)
          if (!ring.is_zero(tb[k]))
            act = mat_add(ring, act, mat_scale(ring, tb[k], mats[k]));
        for (const auto& [rc, v] : NC.face[n][0].ent) {
          if (rc.second != xa) continue;
          for (const auto& [am, av] : act.ent) {
            V add = ring.mul(c, ring.mul(v, av));
            d.add_to(ring, pidx(rc.first, am.first), pidx(x, am.second), add);
          }
        }
      }
    }
    K.bnd[n] = std::move(d);
  }
  return K;
}

template <class R>
std::vector<HomologyGroup> local_homology(
    const R& ring, const SimplicialCoalgebra<R>& C,
    const NormalizedChains<R>& N, const FundamentalAlgebra<R>& F,
    const std::vector<SparseMatrix<R>>& mats, int rank_m, int lo, int hi) {
  auto bad = verify_module_action(ring, F.bialg, mats, rank_m);
  if (!bad.empty())
    throw std::invalid_argument("local homology: " + bad.front());
  auto tau = fundamental_twisting_cochain(ring, C, N, F);
  auto K = twisted_module_chains(ring, N, C, F.bialg, tau, mats, rank_m);
  K.check_d_squared(ring);
  return homology(ring, K, lo, hi);
}

// ---------------------------------------------------------------------------
// monoid-algebra oracle: unit-adjoined edge monoid with the face relation
// "long edge pair equals the composite", compared against the loop
// presentation through the shift by one

template <class R>
struct PresentationComparison {
  AlgebraPresentation<R> monoid;
  bool monoid_complete = false;
  bool fundamental_complete = false;
  bool relations_match = false;  // both translation directions reduce to zero
  bool both_finite = false;
  long rank_monoid = -1;       // -1 when not known finite
  long rank_fundamental = -1;
  size_t capped_monoid_words = 0;  // BFS counts under the same caps
  size_t capped_fundamental_words = 0;
  bool isomorphic = false;
};

template <class R>
PresentationComparison<R> monoid_oracle_compare(
    const R& ring, const TruncatedSimplicialSet& X, int max_new_rules = 500,
    int max_len = 12, size_t max_words = 4096) {
  if (X.D < 2)
    throw std::invalid_argument("monoid oracle: truncation < 2");
  auto C = free_coalgebra(ring, X);
  auto N = normalized_chain_coalgebra(ring, C);
  auto fpres = fundamental_presentation(ring, N);

  PresentationComparison<R> out;
  out.monoid.gens = X.labels[1];
  for (int s = 0; s < X.nondeg_count(2); ++s) {
    auto fref = [&](int i) { return X.faces[2][s][i]; };
    GWord lhs;
    if (fref(2).word.empty()) lhs.push_back(fref(2).base_idx);
    if (fref(0).word.empty()) lhs.push_back(fref(0).base_idx);
    GWord rhs;
    if (fref(1).word.empty()) rhs.push_back(fref(1).base_idx);
    if (lhs == rhs) continue;
    GPoly<R> rel{{lhs, ring.one()}};
    gp_add(ring, rel, rhs, ring.neg(ring.one()));
    out.monoid.relations.push_back(std::move(rel));
  }

  auto mrw = complete_rewriting(ring, out.monoid, max_new_rules);
  auto frw = complete_rewriting(ring, fpres, max_new_rules);
  out.monoid_complete = mrw.complete;
  out.fundamental_complete = frw.complete;

  // edge -> one plus its loop class; loop class -> edge minus one
  auto to_loop = [&](const GPoly<R>& p) {
    GPoly<R> img;
    for (const auto& [w, c] : p) {
      GPoly<R> acc{{GWord{}, ring.one()}};
      for (int g : w) {
        GPoly<R> f{{GWord{}, ring.one()}};
        gp_add(ring, f, GWord{g}, ring.one());
        acc = gp_mul(ring, acc, f);
      }
      for (const auto& [u, cu] : acc) gp_add(ring, img, u, ring.mul(c, cu));
    }
    return img;
  };
  auto to_monoid = [&](const GPoly<R>& p) {
    GPoly<R> img;
    for (const auto& [w, c] : p) {
      GPoly<R> acc{{GWord{}, ring.one()}};
      for (int g : w) {
        GPoly<R> f{{GWord{g}, ring.one()}};
        gp_add(ring, f, GWord{}, ring.neg(ring.one()));
        acc = gp_mul(ring, acc, f);
      }
      for (const auto& [u, cu] : acc) gp_add(ring, img, u, ring.mul(c, cu));
    }
    return img;
  };

  out.relations_match = true;
  for (const auto& rel : out.monoid.relations)
    if (!rw_reduce(ring, frw, to_loop(rel)).empty()) out.relations_match = false;
  for (const auto& rel : fpres.relations)
    if (!rw_reduce(ring, mrw, to_monoid(rel)).empty())
      out.relations_match = false;

  auto mnf = normal_forms(mrw, max_len, max_words);
  auto fnf = normal_forms(frw, max_len, max_words);
  out.capped_monoid_words = mnf.words.size();
  out.capped_fundamental_words = fnf.words.size();
  out.both_finite = mnf.finite && fnf.finite;
  if (mnf.finite) out.rank_monoid = static_cast<long>(mnf.words.size());
  if (fnf.finite) out.rank_fundamental = static_cast<long>(fnf.words.size());

  out.isomorphic = out.monoid_complete && out.fundamental_complete &&
                   out.relations_match &&
                   mnf.finite == fnf.finite &&
                   out.capped_monoid_words == out.capped_fundamental_words;
  return out;
}

// ---------------------------------------------------------------------------
// functoriality: the matrix of the induced map on degree-zero basis

template <class R>
SparseMatrix<R> induced_fundamental_matrix(const R& ring,
                                           const FundamentalAlgebra<R>& FX,
                                           const FundamentalAlgebra<R>& FY,
                                           const SimplicialMap& f) {
  SparseMatrix<R> m(static_cast<int>(FY.nf.words.size()),
                    static_cast<int>(FX.nf.words.size()));
  for (size_t i = 0; i < FX.nf.words.size(); ++i) {
    GPoly<R> img{{GWord{}, ring.one()}};
    bool dead = false;
    for (int g : FX.nf.words[i]) {
      const SimplexRef& ref = f.img[1][g];
      if (!ref.word.empty()) {
        dead = true;
        break;
      }
      img = gp_mul(ring, img, GPoly<R>{{GWord{ref.base_idx}, ring.one()}});
    }
    if (dead) continue;
    for (const auto& [w, c] : rw_reduce(ring, FY.rw, img))
      m.add_to(ring, FY.nf.index.at(w), static_cast<int>(i), c);
  }
  return m;
}

}  // namespace picobar
