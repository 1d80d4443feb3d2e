// Walkthrough: recover a finite group from the loop algebra of its nerve.
// Builds the free coalgebra on the nerve, completes the degree-zero
// presentation, enumerates group-likes, and checks the cover is acyclic.

#include "picobar/chains.hpp"
#include "picobar/pi1.hpp"
#include "picobar/scoalg.hpp"
#include "picobar/sset.hpp"

#include <cstdio>
#include <string>

using namespace picobar;

namespace {

FiniteGroup pick_group(const std::string& name) {
  if (name == "s3") return symmetric_group_3();
  int order = 0;
  try {
    order = std::stoi(name);
  } catch (const std::exception&) {
  }
  if (order < 2 || order > 12)
    throw std::invalid_argument("pick a cyclic order between 2 and 12, or s3");
  return cyclic_group(order);
}

std::string poly_label(const AlgebraPresentation<ZRing>& pres,
                       const GPoly<ZRing>& p) {
  if (p.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : p) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (w.empty()) s += cs;
    else {
      if (cs != "1") s += cs;
      s += word_label(pres, w);
    }
    first = false;
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  ZRing Z;
  std::string name = argc > 1 ? argv[1] : "s3";
  FiniteGroup G;
  try {
    G = pick_group(name);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage: %s [2..12|s3]\n%s\n", argv[0], e.what());
    return 1;
  }
  std::printf("group of order %d, nerve truncated at dimension 3\n\n", G.n);

  auto nv = nerve_of_group(G, 3);
  auto C = free_coalgebra(Z, nv.X);
  auto N = normalized_chain_coalgebra(Z, C);

  auto pres = fundamental_presentation(Z, N);
  std::printf("presentation: %zu generators, %zu relations\n",
              pres.gens.size(), pres.relations.size());

  auto F = fundamental_algebra(Z, N);
  std::printf("rewriting: %zu rules, %s\n", F.rw.rules.size(),
              F.rw.complete ? "complete" : "incomplete");
  for (const auto& [lead, rhs] : F.rw.rules)
    std::printf("  %s -> %s\n", word_label(pres, lead).c_str(),
                poly_label(pres, rhs).c_str());

  std::printf("normal forms (%zu):", F.nf.words.size());
  for (const GWord& w : F.nf.words)
    std::printf(" %s", word_label(pres, w).c_str());
  std::printf("\n\n");

  const auto& gl = F.group_likes;
  std::printf("group-likes (%zu), closed %s, inverses %s\n", gl.elements.size(),
              gl.closed ? "yes" : "no", gl.has_inverses ? "yes" : "no");
  for (size_t i = 0; i < gl.elements.size(); ++i)
    std::printf("  g%zu = %s\n", i, poly_label(pres, gl.elements[i]).c_str());
  std::printf("multiplication table:\n");
  for (const auto& row : gl.table) {
    std::printf(" ");
    for (int v : row) std::printf(" %2d", v);
    std::printf("\n");
  }
  std::printf("\n");

  auto T = universal_cover(Z, C, N, F);
  auto NT = normalized_chain_coalgebra(Z, T);
  auto h = homology(Z, NT.cx, 0, 2);
  std::printf("cover chain ranks:");
  for (int n = 0; n <= NT.cx.D; ++n) std::printf(" %d", NT.cx.rank[n]);
  std::printf("\ncover homology below the truncation:");
  for (size_t n = 0; n < h.size(); ++n) {
    std::printf(" H%zu = Z^%d", n, h[n].free_rank);
    for (const Int& t : h[n].torsion) std::printf(" + Z/%s", t.str().c_str());
  }
  std::printf("\n");
  return 0;
}
