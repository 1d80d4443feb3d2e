#pragma once

// Finitely generated bialgebras with explicit structure constants over an
// exact ring: multiplication, comultiplication, unit, counit, and an
// optional antipode. Used both for group rings and for the degree-zero
// homology of loop constructions.

#include "picobar/ring.hpp"
#include "picobar/sparse_matrix.hpp"
#include "picobar/sset.hpp"

#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace picobar {

template <class R>
struct FiniteBialgebra {
  using V = typename R::value_type;

  int rank = 0;
  std::vector<std::string> labels;
  std::vector<V> unit;                                         // coordinates of 1
  std::vector<std::vector<std::vector<std::pair<int, V>>>> mult;  // [i][j] -> basis expansion of b_i * b_j
  std::vector<std::vector<std::tuple<int, int, V>>> coprod;    // [i] -> sum of b_a (x) b_b
  std::vector<V> counit;
  std::optional<SparseMatrix<R>> antipode;

  std::vector<V> mul_vec(const R& ring, const std::vector<V>& x,
                         const std::vector<V>& y) const {
    std::vector<V> out(rank, ring.zero());
    for (int i = 0; i < rank; ++i) {
      if (ring.is_zero(x[i])) continue;
      for (int j = 0; j < rank; ++j) {
        if (ring.is_zero(y[j])) continue;
        V c = ring.mul(x[i], y[j]);
        for (const auto& [k, v] : mult[i][j])
          out[k] = ring.add(out[k], ring.mul(c, v));
      }
    }
    return out;
  }

  std::vector<V> basis_vec(const R& ring, int i) const {
    std::vector<V> v(rank, ring.zero());
    v[i] = ring.one();
    return v;
  }

  V counit_of(const R& ring, const std::vector<V>& x) const {
    V s = ring.zero();
    for (int i = 0; i < rank; ++i) s = ring.add(s, ring.mul(counit[i], x[i]));
    return s;
  }

  // coproduct of a vector, as a dense rank x rank tensor
  std::vector<std::vector<V>> coprod_vec(const R& ring,
                                         const std::vector<V>& x) const {
    std::vector<std::vector<V>> t(rank, std::vector<V>(rank, ring.zero()));
    for (int i = 0; i < rank; ++i) {
      if (ring.is_zero(x[i])) continue;
      for (const auto& [a, b, c] : coprod[i])
        t[a][b] = ring.add(t[a][b], ring.mul(x[i], c));
    }
    return t;
  }

  void check(const R& ring) const {
    auto is_zero_vec = [&](const std::vector<V>& v) {
      for (const V& x : v)
        if (!ring.is_zero(x)) return false;
      return true;
    };
    auto sub_vec = [&](std::vector<V> a, const std::vector<V>& b) {
      for (int i = 0; i < rank; ++i) a[i] = ring.sub(a[i], b[i]);
      return a;
    };
    // unit laws
    for (int i = 0; i < rank; ++i) {
      auto e = basis_vec(ring, i);
      if (!is_zero_vec(sub_vec(mul_vec(ring, unit, e), e)) ||
          !is_zero_vec(sub_vec(mul_vec(ring, e, unit), e)))
        throw std::invalid_argument("bialgebra: unit law fails");
    }
    // associativity on basis triples
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j)
        for (int k = 0; k < rank; ++k) {
          auto l = mul_vec(ring, mul_vec(ring, basis_vec(ring, i), basis_vec(ring, j)),
                           basis_vec(ring, k));
          auto r = mul_vec(ring, basis_vec(ring, i),
                           mul_vec(ring, basis_vec(ring, j), basis_vec(ring, k)));
          if (!is_zero_vec(sub_vec(l, r)))
            throw std::invalid_argument("bialgebra: not associative");
        }
    // coassociativity and counit laws on basis
    for (int i = 0; i < rank; ++i) {
      std::vector<std::vector<std::vector<V>>> l(
          rank, std::vector<std::vector<V>>(rank, std::vector<V>(rank, ring.zero())));
      auto rmat = l;
      for (const auto& [a, b, c] : coprod[i]) {
        for (const auto& [a2, b2, c2] : coprod[a])
          l[a2][b2][b] = ring.add(l[a2][b2][b], ring.mul(c, c2));
        for (const auto& [a2, b2, c2] : coprod[b])
          rmat[a][a2][b2] = ring.add(rmat[a][a2][b2], ring.mul(c, c2));
      }
      if (l != rmat) throw std::invalid_argument("bialgebra: not coassociative");
      std::vector<V> lc(rank, ring.zero()), rc(rank, ring.zero());
      for (const auto& [a, b, c] : coprod[i]) {
        lc[b] = ring.add(lc[b], ring.mul(counit[a], c));
        rc[a] = ring.add(rc[a], ring.mul(counit[b], c));
      }
      auto e = basis_vec(ring, i);
      if (!is_zero_vec(sub_vec(lc, e)) || !is_zero_vec(sub_vec(rc, e)))
        throw std::invalid_argument("bialgebra: counit law fails");
    }
    // bialgebra compatibility: coproduct and counit are algebra maps
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) {
        auto prod = mul_vec(ring, basis_vec(ring, i), basis_vec(ring, j));
        auto lhs = coprod_vec(ring, prod);
        std::vector<std::vector<V>> rhs(rank, std::vector<V>(rank, ring.zero()));
        for (const auto& [a, b, c] : coprod[i])
          for (const auto& [a2, b2, c2] : coprod[j]) {
            V cc = ring.mul(c, c2);
            auto pa = mul_vec(ring, basis_vec(ring, a), basis_vec(ring, a2));
            auto pb = mul_vec(ring, basis_vec(ring, b), basis_vec(ring, b2));
            for (int u = 0; u < rank; ++u)
              for (int v = 0; v < rank; ++v)
                rhs[u][v] = ring.add(rhs[u][v],
                                     ring.mul(cc, ring.mul(pa[u], pb[v])));
          }
        if (lhs != rhs)
          throw std::invalid_argument("bialgebra: coproduct not an algebra map");
        V el = counit_of(ring, prod);
        V er = ring.mul(counit[i], counit[j]);
        if (!ring.eq(el, er))
          throw std::invalid_argument("bialgebra: counit not an algebra map");
      }
    if (!ring.eq(counit_of(ring, unit), ring.one()))
      throw std::invalid_argument("bialgebra: counit of unit");
    auto du = coprod_vec(ring, unit);
    for (int a = 0; a < rank; ++a)
      for (int b = 0; b < rank; ++b) {
        V want = ring.mul(unit[a], unit[b]);
        if (!ring.eq(du[a][b], want))
          throw std::invalid_argument("bialgebra: coproduct of unit");
      }
    if (antipode) {
      const auto& S = *antipode;
      for (int i = 0; i < rank; ++i) {
        std::vector<V> l(rank, ring.zero()), r(rank, ring.zero());
        for (const auto& [a, b, c] : coprod[i]) {
          auto sa = mat_apply(ring, S, basis_vec(ring, a));
          auto sb = mat_apply(ring, S, basis_vec(ring, b));
          auto lt = mul_vec(ring, sa, basis_vec(ring, b));
          auto rt = mul_vec(ring, basis_vec(ring, a), sb);
          for (int u = 0; u < rank; ++u) {
            l[u] = ring.add(l[u], ring.mul(c, lt[u]));
            r[u] = ring.add(r[u], ring.mul(c, rt[u]));
          }
        }
        for (int u = 0; u < rank; ++u) {
          V want = ring.mul(counit[i], unit[u]);
          if (!ring.eq(l[u], want) || !ring.eq(r[u], want))
            throw std::invalid_argument("bialgebra: antipode law fails");
        }
      }
    }
  }

  static FiniteBialgebra group_ring(const R& ring, const FiniteGroup& G) {
    FiniteBialgebra A;
    A.rank = G.n;
    for (int g = 0; g < G.n; ++g) A.labels.push_back("g" + std::to_string(g));
    A.unit.assign(G.n, ring.zero());
    A.unit[G.e] = ring.one();
    A.mult.assign(G.n, std::vector<std::vector<std::pair<int, V>>>(G.n));
    for (int a = 0; a < G.n; ++a)
      for (int b = 0; b < G.n; ++b)
        A.mult[a][b] = {{G.mul(a, b), ring.one()}};
    A.coprod.resize(G.n);
    for (int g = 0; g < G.n; ++g) A.coprod[g] = {{g, g, ring.one()}};
    A.counit.assign(G.n, ring.one());
    SparseMatrix<R> S(G.n, G.n);
    for (int g = 0; g < G.n; ++g) S.set(ring, G.inv[g], g, ring.one());
    A.antipode = S;
    A.check(ring);
    return A;
  }
};

// checks that the matrix m: A -> B respects unit, product, coproduct, and
// counit on basis elements; returns human-readable violations
template <class R>
std::vector<std::string> check_bialgebra_map(const R& ring,
                                             const FiniteBialgebra<R>& A,
                                             const FiniteBialgebra<R>& B,
                                             const SparseMatrix<R>& m) {
  using V = typename R::value_type;
  std::vector<std::string> out;
  if (m.rows != B.rank || m.cols != A.rank) {
    out.push_back("shape mismatch");
    return out;
  }
  auto apply = [&](const std::vector<V>& x) { return mat_apply(ring, m, x); };
  auto eq_vec = [&](const std::vector<V>& a, const std::vector<V>& b) {
    for (int i = 0; i < B.rank; ++i)
      if (!ring.eq(a[i], b[i])) return false;
    return true;
  };
  if (!eq_vec(apply(A.unit), B.unit)) out.push_back("unit not preserved");
  for (int i = 0; i < A.rank; ++i) {
    auto ei = A.basis_vec(ring, i);
    auto mi = apply(ei);
    if (!ring.eq(B.counit_of(ring, mi), A.counit[i]))
      out.push_back("counit mismatch at basis " + std::to_string(i));
    for (int j = 0; j < A.rank; ++j) {
      auto prod = apply(A.mul_vec(ring, ei, A.basis_vec(ring, j)));
      auto img = B.mul_vec(ring, mi, apply(A.basis_vec(ring, j)));
      if (!eq_vec(prod, img))
        out.push_back("product mismatch at basis pair (" + std::to_string(i) +
                      "," + std::to_string(j) + ")");
    }
    // coproduct: push A's coproduct through m (x) m and compare
    std::vector<std::vector<V>> lhs(B.rank, std::vector<V>(B.rank, ring.zero()));
    for (const auto& [a, b, c] : A.coprod[i]) {
      auto ma = apply(A.basis_vec(ring, a));
      auto mb = apply(A.basis_vec(ring, b));
      for (int x = 0; x < B.rank; ++x) {
        if (ring.is_zero(ma[x])) continue;
        for (int y = 0; y < B.rank; ++y)
          lhs[x][y] = ring.add(lhs[x][y],
                               ring.mul(c, ring.mul(ma[x], mb[y])));
      }
    }
    auto rhs = B.coprod_vec(ring, mi);
    for (int x = 0; x < B.rank; ++x)
      for (int y = 0; y < B.rank; ++y)
        if (!ring.eq(lhs[x][y], rhs[x][y])) {
          out.push_back("coproduct mismatch at basis " + std::to_string(i));
          x = B.rank;
          break;
        }
  }
  return out;
}

}  // namespace picobar
