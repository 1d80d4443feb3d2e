#pragma once

// Simplicial coalgebras: levelwise free modules with face/degeneracy
// matrices, a levelwise coproduct and counit. The free construction on a
// simplicial set keeps a record of which basis vectors are classes of
// nondegenerate simplices so the normalized complex has an aligned basis.
// Also: linear twisting cochains into a bialgebra and the twisted tensor
// product they define.

#include "picobar/bialg.hpp"
#include "picobar/ring.hpp"
#include "picobar/sparse_matrix.hpp"
#include "picobar/sset.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace picobar {

template <class R>
struct SimplicialCoalgebra {
  using V = typename R::value_type;

  int D = 0;
  std::vector<int> rank;                                    // per level
  std::vector<std::vector<std::string>> labels;             // per level
  std::vector<std::vector<SparseMatrix<R>>> face;           // [n][i]: n -> n-1
  std::vector<std::vector<SparseMatrix<R>>> degen;          // [n][j]: n -> n+1
  std::vector<std::vector<std::vector<std::tuple<int, int, V>>>> delta;  // [n][idx]
  std::vector<std::vector<V>> counit;                       // [n]

  // when the degenerate submodule is spanned by trailing basis vectors,
  // nondeg_rank[n] counts the leading (nondegenerate) ones; -1 otherwise
  std::vector<int> nondeg_rank;
  // set-like provenance: refs backing each basis vector (free construction)
  std::vector<std::vector<SimplexRef>> basis_refs;

  bool basis_aligned() const {
    for (int r : nondeg_rank)
      if (r < 0) return false;
    return true;
  }

  void verify_simplicial_identities(const R& ring) const {
    auto expect = [&](const SparseMatrix<R>& a, const SparseMatrix<R>& b,
                      const char* what) {
      if (!a.equals(b)) throw std::invalid_argument(std::string("simplicial coalgebra: ") + what);
    };
    for (int n = 0; n <= D; ++n) {
      if (n >= 2) {
        for (int j = 1; j <= n; ++j)
          for (int i = 0; i < j; ++i)
            expect(mat_mul(ring, face[n - 1][i], face[n][j]),
                   mat_mul(ring, face[n - 1][j - 1], face[n][i]), "d_i d_j");
      }
      if (n + 1 <= D && n >= 1) {
        for (int j = 0; j <= n - 1; ++j)
          for (int i = 0; i <= j; ++i)
            expect(mat_mul(ring, degen[n][i], degen[n - 1][j]),
                   mat_mul(ring, degen[n][j + 1], degen[n - 1][i]), "s_i s_j");
      }
      if (n + 1 <= D) {
        for (int j = 0; j <= n; ++j)
          for (int i = 0; i <= n + 1; ++i) {
            SparseMatrix<R> lhs = mat_mul(ring, face[n + 1][i], degen[n][j]);
            if (i < j) {
              if (n >= 1)
                expect(lhs, mat_mul(ring, degen[n - 1][j - 1], face[n][i]), "d_i s_j (i<j)");
            } else if (i == j || i == j + 1) {
              expect(lhs, SparseMatrix<R>::identity(ring, rank[n]), "d_i s_j = id");
            } else {
              if (n >= 1)
                expect(lhs, mat_mul(ring, degen[n - 1][j], face[n][i - 1]), "d_i s_j (i>j+1)");
            }
          }
      }
    }
  }

  void verify_coalgebra(const R& ring) const {
    for (int n = 0; n <= D; ++n) {
      for (int x = 0; x < rank[n]; ++x) {
        // coassociativity
        std::map<std::tuple<int, int, int>, V> l, r;
        for (const auto& [a, b, c] : delta[n][x]) {
          for (const auto& [a2, b2, c2] : delta[n][a]) {
            auto key = std::make_tuple(a2, b2, b);
            auto it = l.find(key);
            V add = ring.mul(c, c2);
            l[key] = it == l.end() ? add : ring.add(it->second, add);
          }
          for (const auto& [a2, b2, c2] : delta[n][b]) {
            auto key = std::make_tuple(a, a2, b2);
            auto it = r.find(key);
            V add = ring.mul(c, c2);
            r[key] = it == r.end() ? add : ring.add(it->second, add);
          }
        }
        for (auto& [k, v] : l) {
          auto it = r.find(k);
          V rv = it == r.end() ? ring.zero() : it->second;
          if (!ring.eq(v, rv))
            throw std::invalid_argument("simplicial coalgebra: not coassociative");
          if (it != r.end()) r.erase(it);
        }
        for (auto& [k, v] : r)
          if (!ring.is_zero(v))
            throw std::invalid_argument("simplicial coalgebra: not coassociative");
        // counit laws
        std::vector<V> lc(rank[n], ring.zero()), rc(rank[n], ring.zero());
        for (const auto& [a, b, c] : delta[n][x]) {
          lc[b] = ring.add(lc[b], ring.mul(counit[n][a], c));
          rc[a] = ring.add(rc[a], ring.mul(counit[n][b], c));
        }
        for (int i = 0; i < rank[n]; ++i) {
          V want = i == x ? ring.one() : ring.zero();
          if (!ring.eq(lc[i], want) || !ring.eq(rc[i], want))
            throw std::invalid_argument("simplicial coalgebra: counit law fails");
        }
      }
      // face and degeneracy maps are coalgebra maps
      auto check_map = [&](const SparseMatrix<R>& f, int src, int dst) {
        for (int x = 0; x < rank[src]; ++x) {
          std::map<std::pair<int, int>, V> lhs, rhs;
          for (const auto& [rc_, v] : f.ent) {
            if (rc_.second != x) continue;
            for (const auto& [a, b, c] : delta[dst][rc_.first]) {
              auto key = std::make_pair(a, b);
              V add = ring.mul(v, c);
              auto it = lhs.find(key);
              lhs[key] = it == lhs.end() ? add : ring.add(it->second, add);
            }
          }
          for (const auto& [a, b, c] : delta[src][x]) {
            for (const auto& [rca, va] : f.ent) {
              if (rca.second != a) continue;
              for (const auto& [rcb, vb] : f.ent) {
                if (rcb.second != b) continue;
                auto key = std::make_pair(rca.first, rcb.first);
                V add = ring.mul(c, ring.mul(va, vb));
                auto it = rhs.find(key);
                rhs[key] = it == rhs.end() ? add : ring.add(it->second, add);
              }
            }
          }
          for (auto& [k, v] : lhs) {
            auto it = rhs.find(k);
            V rv = it == rhs.end() ? ring.zero() : it->second;
            if (!ring.eq(v, rv))
              throw std::invalid_argument("simplicial coalgebra: structure map not a coalgebra map");
            if (it != rhs.end()) rhs.erase(it);
          }
          for (auto& [k, v] : rhs)
            if (!ring.is_zero(v))
              throw std::invalid_argument("simplicial coalgebra: structure map not a coalgebra map");
          // counit compatibility
          V le = ring.zero();
          for (const auto& [rc_, v] : f.ent)
            if (rc_.second == x) le = ring.add(le, ring.mul(counit[dst][rc_.first], v));
          if (!ring.eq(le, counit[src][x]))
            throw std::invalid_argument("simplicial coalgebra: structure map breaks counit");
        }
      };
      if (n >= 1)
        for (int i = 0; i <= n; ++i) check_map(face[n][i], n, n - 1);
      if (n + 1 <= D)
        for (int j = 0; j <= n; ++j) check_map(degen[n][j], n, n + 1);
    }
  }
};

// free simplicial coalgebra on a truncated simplicial set: group-like
// coproduct on every simplex, including degenerate ones
template <class R>
SimplicialCoalgebra<R> free_coalgebra(const R& ring,
                                      const TruncatedSimplicialSet& X) {
  SimplicialCoalgebra<R> C;
  C.D = X.D;
  C.rank.resize(X.D + 1);
  C.labels.resize(X.D + 1);
  C.face.resize(X.D + 1);
  C.degen.resize(X.D + 1);
  C.delta.resize(X.D + 1);
  C.counit.resize(X.D + 1);
  C.nondeg_rank.resize(X.D + 1);
  C.basis_refs.resize(X.D + 1);

  std::vector<std::map<SimplexRef, int>> index(X.D + 1);
  for (int n = 0; n <= X.D; ++n) {
    C.basis_refs[n] = X.level_basis(n);
    C.rank[n] = static_cast<int>(C.basis_refs[n].size());
    C.nondeg_rank[n] = X.nondeg_count(n);
    for (int i = 0; i < C.rank[n]; ++i) {
      index[n][C.basis_refs[n][i]] = i;
      C.labels[n].push_back(X.ref_label(C.basis_refs[n][i]));
    }
    C.delta[n].resize(C.rank[n]);
    for (int i = 0; i < C.rank[n]; ++i)
      C.delta[n][i] = {{i, i, ring.one()}};
    C.counit[n].assign(C.rank[n], ring.one());
  }
  for (int n = 0; n <= X.D; ++n) {
    if (n >= 1) {
      for (int i = 0; i <= n; ++i) {
        SparseMatrix<R> m(C.rank[n - 1], C.rank[n]);
        for (int x = 0; x < C.rank[n]; ++x)
          m.set(ring, index[n - 1].at(X.face(C.basis_refs[n][x], i)), x, ring.one());
        C.face[n].push_back(std::move(m));
      }
    }
    if (n + 1 <= X.D) {
      for (int j = 0; j <= n; ++j) {
        SparseMatrix<R> m(C.rank[n + 1], C.rank[n]);
        for (int x = 0; x < C.rank[n]; ++x)
          m.set(ring, index[n + 1].at(X.degenerate(C.basis_refs[n][x], j)), x, ring.one());
        C.degen[n].push_back(std::move(m));
      }
    }
  }
  return C;
}

// ---------------------------------------------------------------------------
// linear twisting cochains tau: C -> A (constant simplicial bialgebra)

struct CochainViolation {
  int eq = 0;  // 1..4, 5 = coalgebra-map condition
  int level = 0;
  std::string basis;
};

template <class R>
struct LinearTwistingCochain {
  using V = typename R::value_type;

  const SimplicialCoalgebra<R>* C = nullptr;
  const FiniteBialgebra<R>* A = nullptr;
  std::vector<std::vector<std::vector<V>>> tau;  // [n][basis] -> A vector, n >= 1

  std::vector<V> eval(const R& ring, int n, const std::vector<V>& x) const {
    std::vector<V> out(A->rank, ring.zero());
    for (int i = 0; i < C->rank[n]; ++i) {
      if (ring.is_zero(x[i])) continue;
      for (int k = 0; k < A->rank; ++k)
        out[k] = ring.add(out[k], ring.mul(x[i], tau[n][i][k]));
    }
    return out;
  }

  std::vector<V> eval_basis(int n, int i) const { return tau[n][i]; }

  // checks the four defining equations levelwise, plus (eq 5) the coalgebra
  // condition needed for coproduct compatibility of the twisted tensor
  std::vector<CochainViolation> verify(const R& ring, bool coalgebra_cochain) const {
    std::vector<CochainViolation> out;
    auto vec_eq = [&](const std::vector<V>& a, const std::vector<V>& b) {
      for (int i = 0; i < A->rank; ++i)
        if (!ring.eq(a[i], b[i])) return false;
      return true;
    };
    auto col = [&](const SparseMatrix<R>& m, int j) {
      std::vector<V> v(m.rows, ring.zero());
      for (const auto& [rc, val] : m.ent)
        if (rc.second == j) v[rc.first] = val;
      return v;
    };
    for (int n = 1; n <= C->D; ++n) {
      for (int x = 0; x < C->rank[n]; ++x) {
        std::vector<V> tx = tau[n][x];
        if (n >= 2) {
          for (int j = 2; j <= n; ++j)
            if (!vec_eq(eval(ring, n - 1, col(C->face[n][j], x)), tx))
              out.push_back({1, n, C->labels[n][x]});
          // eq 2: tau(d_1 x) = sum tau(x') * tau(d_0 x'')
          std::vector<V> lhs = eval(ring, n - 1, col(C->face[n][1], x));
          std::vector<V> rhs(A->rank, ring.zero());
          for (const auto& [a, b, c] : C->delta[n][x]) {
            auto prod = A->mul_vec(ring, tau[n][a],
                                   eval(ring, n - 1, col(C->face[n][0], b)));
            for (int k = 0; k < A->rank; ++k)
              rhs[k] = ring.add(rhs[k], ring.mul(c, prod[k]));
          }
          if (!vec_eq(lhs, rhs)) out.push_back({2, n, C->labels[n][x]});
        }
        if (n + 1 <= C->D) {
          for (int j = 1; j <= n; ++j)
            if (!vec_eq(eval(ring, n + 1, col(C->degen[n][j], x)), tx))
              out.push_back({3, n, C->labels[n][x]});
        }
        if (coalgebra_cochain) {
          auto lhs = A->coprod_vec(ring, tx);
          std::vector<std::vector<V>> rhs(A->rank, std::vector<V>(A->rank, ring.zero()));
          for (const auto& [a, b, c] : C->delta[n][x])
            for (int u = 0; u < A->rank; ++u)
              for (int v = 0; v < A->rank; ++v)
                rhs[u][v] = ring.add(rhs[u][v],
                                     ring.mul(c, ring.mul(tau[n][a][u], tau[n][b][v])));
          if (lhs != rhs) out.push_back({5, n, C->labels[n][x]});
        }
      }
    }
    // eq 4 (unit condition) lives one level down: on C_n for n < D,
    // sum x' (x) tau(s_0 x'') * g = x (x) g
    for (int n = 0; n + 1 <= C->D; ++n) {
      for (int x = 0; x < C->rank[n]; ++x) {
        for (int g = 0; g < A->rank; ++g) {
          std::vector<std::vector<V>> lhs(C->rank[n],
                                          std::vector<V>(A->rank, ring.zero()));
          for (const auto& [a, b, c] : C->delta[n][x]) {
            std::vector<V> s0b(C->rank[n + 1], ring.zero());
            for (const auto& [rc, val] : C->degen[n][0].ent)
              if (rc.second == b) s0b[rc.first] = val;
            auto tb = eval(ring, n + 1, s0b);
            auto prod = A->mul_vec(ring, tb, A->basis_vec(ring, g));
            for (int k = 0; k < A->rank; ++k)
              lhs[a][k] = ring.add(lhs[a][k], ring.mul(c, prod[k]));
          }
          bool ok = true;
          for (int i = 0; i < C->rank[n] && ok; ++i)
            for (int k = 0; k < A->rank && ok; ++k) {
              V want = (i == x && k == g) ? ring.one() : ring.zero();
              ok = ring.eq(lhs[i][k], want);
            }
          if (!ok) out.push_back({4, n, C->labels[n][x]});
        }
      }
    }
    return out;
  }
};

// linear extension of a simplicial twisting morphism; C must be the free
// coalgebra on t's simplicial set and A the group ring of t's group
template <class R>
LinearTwistingCochain<R> linearize_twisting_morphism(
    const R& ring, const SimplicialCoalgebra<R>& C, const FiniteBialgebra<R>& A,
    const TwistingMorphismSS& t) {
  if (C.basis_refs.empty() || C.basis_refs[0].empty())
    throw std::invalid_argument("linearize: coalgebra lacks simplex provenance");
  if (A.rank != t.G->n)
    throw std::invalid_argument("linearize: bialgebra rank != group order");
  LinearTwistingCochain<R> tau;
  tau.C = &C;
  tau.A = &A;
  tau.tau.resize(C.D + 1);
  for (int n = 1; n <= C.D; ++n) {
    tau.tau[n].resize(C.rank[n]);
    for (int i = 0; i < C.rank[n]; ++i) {
      std::vector<typename R::value_type> v(A.rank, ring.zero());
      v[t.eval(C.basis_refs[n][i])] = ring.one();
      tau.tau[n][i] = v;
    }
  }
  return tau;
}

// ---------------------------------------------------------------------------
// twisted tensor product of a simplicial coalgebra with a bialgebra:
// same levelwise module C_n (x) A; only d_0 twists, by
// d_0(x (x) a) = sum d_0(x') (x) a * tau(x''); coproduct is componentwise
// with the middle flip

template <class R>
SimplicialCoalgebra<R> simplicial_twisted_tensor(const R& ring,
                                                 const SimplicialCoalgebra<R>& C,
                                                 const FiniteBialgebra<R>& A,
                                                 const LinearTwistingCochain<R>& tau) {
  using V = typename R::value_type;
  SimplicialCoalgebra<R> T;
  T.D = C.D;
  int ra = A.rank;
  T.rank.resize(T.D + 1);
  T.labels.resize(T.D + 1);
  T.face.resize(T.D + 1);
  T.degen.resize(T.D + 1);
  T.delta.resize(T.D + 1);
  T.counit.resize(T.D + 1);
  T.nondeg_rank.resize(T.D + 1);
  auto pidx = [&](int x, int a) { return x * ra + a; };

  for (int n = 0; n <= T.D; ++n) {
    T.rank[n] = C.rank[n] * ra;
    // degenerate C-basis vectors give degenerate product vectors; alignment
    // holds because the A factor is untouched by degeneracies
    T.nondeg_rank[n] = C.nondeg_rank[n] < 0 ? -1 : C.nondeg_rank[n] * ra;
    for (int x = 0; x < C.rank[n]; ++x)
      for (int a = 0; a < ra; ++a)
        T.labels[n].push_back(C.labels[n][x] + "(x)" + A.labels[a]);
    T.delta[n].resize(T.rank[n]);
    for (int x = 0; x < C.rank[n]; ++x)
      for (int a = 0; a < ra; ++a) {
        auto& d = T.delta[n][pidx(x, a)];
        for (const auto& [xa, xb, c] : C.delta[n][x])
          for (const auto& [aa, ab, c2] : A.coprod[a])
            d.push_back({pidx(xa, aa), pidx(xb, ab), ring.mul(c, c2)});
      }
    T.counit[n].resize(T.rank[n]);
    for (int x = 0; x < C.rank[n]; ++x)
      for (int a = 0; a < ra; ++a)
        T.counit[n][pidx(x, a)] = ring.mul(C.counit[n][x], A.counit[a]);
  }
  auto kron_id = [&](const SparseMatrix<R>& m) {
    SparseMatrix<R> out(m.rows * ra, m.cols * ra);
    for (const auto& [rc, v] : m.ent)
      for (int a = 0; a < ra; ++a)
        out.ent[{rc.first * ra + a, rc.second * ra + a}] = v;
    return out;
  };
  for (int n = 1; n <= T.D; ++n) {
    // twisted zero face
    SparseMatrix<R> d0(T.rank[n - 1], T.rank[n]);
    for (int x = 0; x < C.rank[n]; ++x) {
      for (const auto& [xa, xb, c] : C.delta[n][x]) {
        // d_0(x') in C_{n-1}
        std::vector<std::pair<int, V>> d0xa;
        for (const auto& [rc, v] : C.face[n][0].ent)
          if (rc.second == xa) d0xa.push_back({rc.first, v});
        const auto& txb = tau.tau[n][xb];
        for (int a = 0; a < ra; ++a) {
          auto av = A.mul_vec(ring, A.basis_vec(ring, a), txb);
          for (const auto& [y, cy] : d0xa)
            for (int k = 0; k < ra; ++k) {
              V add = ring.mul(c, ring.mul(cy, av[k]));
              d0.add_to(ring, pidx(y, k), pidx(x, a), add);
            }
        }
      }
    }
    T.face[n].push_back(std::move(d0));
    for (int i = 1; i <= n; ++i) T.face[n].push_back(kron_id(C.face[n][i]));
  }
  for (int n = 0; n + 1 <= T.D; ++n)
    for (int j = 0; j <= n; ++j) T.degen[n].push_back(kron_id(C.degen[n][j]));
  return T;
}

// entrywise comparison of the two constructions of a twisted product: the
// free coalgebra on the twisted cartesian product of simplicial sets versus
// the twisted tensor product of the free coalgebra with the group ring
struct TwistedCompareReport {
  bool equal = true;
  std::vector<std::string> mismatches;
};

template <class R>
TwistedCompareReport compare_with_twisted_cartesian(const R& ring,
                                                    const TruncatedSimplicialSet& X,
                                                    const FiniteGroup& G,
                                                    const TwistingMorphismSS& t) {
  TwistedCompareReport rep;
  auto prod = twisted_cartesian_product(X, G, t);
  auto lhs = free_coalgebra(ring, prod.P);
  auto C = free_coalgebra(ring, X);
  auto A = FiniteBialgebra<R>::group_ring(ring, G);
  auto tau = linearize_twisting_morphism(ring, C, A, t);
  auto rhs = simplicial_twisted_tensor(ring, C, A, tau);

  // basis bijection per level: lhs ref (w, base=(m, x*|G|+g)) corresponds to
  // rhs index (index of (w, m, x) in C) * |G| + g
  std::vector<std::map<SimplexRef, int>> cindex(C.D + 1);
  for (int n = 0; n <= C.D; ++n)
    for (int i = 0; i < C.rank[n]; ++i) cindex[n][C.basis_refs[n][i]] = i;
  std::vector<SparseMatrix<R>> perm(C.D + 1);  // lhs -> rhs
  for (int n = 0; n <= C.D; ++n) {
    if (lhs.rank[n] != rhs.rank[n]) {
      rep.equal = false;
      rep.mismatches.push_back("rank mismatch at level " + std::to_string(n));
      return rep;
    }
    perm[n] = SparseMatrix<R>(rhs.rank[n], lhs.rank[n]);
    for (int i = 0; i < lhs.rank[n]; ++i) {
      SimplexRef r = lhs.basis_refs[n][i];
      int pair = r.base_idx;
      SimplexRef xr;
      xr.word = r.word;
      xr.base_dim = r.base_dim;
      xr.base_idx = pair / G.n;
      int g = pair % G.n;
      perm[n].set(ring, cindex[n].at(xr) * G.n + g, i, ring.one());
    }
  }
  auto miss = [&](const std::string& s) {
    rep.equal = false;
    rep.mismatches.push_back(s);
  };
  for (int n = 1; n <= C.D; ++n)
    for (int i = 0; i <= n; ++i)
      if (!mat_mul(ring, perm[n - 1], lhs.face[n][i])
               .equals(mat_mul(ring, rhs.face[n][i], perm[n])))
        miss("face " + std::to_string(i) + " at level " + std::to_string(n));
  for (int n = 0; n + 1 <= C.D; ++n)
    for (int j = 0; j <= n; ++j)
      if (!mat_mul(ring, perm[n + 1], lhs.degen[n][j])
               .equals(mat_mul(ring, rhs.degen[n][j], perm[n])))
        miss("degeneracy " + std::to_string(j) + " at level " + std::to_string(n));
  for (int n = 0; n <= C.D; ++n) {
    for (int x = 0; x < lhs.rank[n]; ++x) {
      // transport lhs.delta through the bijection and compare
      std::map<std::pair<int, int>, typename R::value_type> a, b;
      auto img = [&](int i) {
        for (const auto& [rc, v] : perm[n].ent)
          if (rc.second == i) return rc.first;
        throw std::logic_error("permutation not total");
      };
      for (const auto& [p, q, c] : lhs.delta[n][x]) {
        auto key = std::make_pair(img(p), img(q));
        auto it = a.find(key);
        a[key] = it == a.end() ? c : ring.add(it->second, c);
      }
      for (const auto& [p, q, c] : rhs.delta[n][img(x)]) {
        auto key = std::make_pair(p, q);
        auto it = b.find(key);
        b[key] = it == b.end() ? c : ring.add(it->second, c);
      }
      for (auto it = a.begin(); it != a.end();)
        it = ring.is_zero(it->second) ? a.erase(it) : std::next(it);
      for (auto it = b.begin(); it != b.end();)
        it = ring.is_zero(it->second) ? b.erase(it) : std::next(it);
      if (a != b) miss("coproduct at level " + std::to_string(n));
      if (!ring.eq(lhs.counit[n][x], rhs.counit[n][img(x)]))
        miss("counit at level " + std::to_string(n));
    }
  }
  return rep;
}

}  // namespace picobar
