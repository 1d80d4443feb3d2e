#pragma once

// Truncated simplicial sets with explicit nondegenerate simplices and an
// Eilenberg-Zilber style encoding of degenerate ones: every simplex is a
// canonical degeneracy word applied to a nondegenerate base. Includes finite
// groups, nerves, circles, twisting morphisms into a group, and twisted
// cartesian products.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace picobar {

// s_{w[0]} s_{w[1]} ... s_{w[k-1]} applied to nondegenerate base (outermost
// first); canonical form has w strictly decreasing
struct SimplexRef {
  std::vector<int> word;
  int base_dim = 0;
  int base_idx = 0;

  int dim() const { return base_dim + static_cast<int>(word.size()); }

  bool operator==(const SimplexRef& o) const {
    return word == o.word && base_dim == o.base_dim && base_idx == o.base_idx;
  }
  bool operator<(const SimplexRef& o) const {
    if (base_dim != o.base_dim) return base_dim < o.base_dim;
    if (base_idx != o.base_idx) return base_idx < o.base_idx;
    return word < o.word;
  }
};

// rewrite a degeneracy word to strictly decreasing form via s_i s_j = s_{j+1} s_i (i <= j)
inline std::vector<int> canonical_degeneracy_word(std::vector<int> w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] <= w[i + 1]) {
        int a = w[i], b = w[i + 1];
        w[i] = b + 1;
        w[i + 1] = a;
        changed = true;
      }
    }
  }
  return w;
}

struct TruncatedSimplicialSet {
  int D = 0;
  std::vector<std::vector<std::string>> labels;           // [n][idx], nondegenerate
  std::vector<std::vector<std::vector<SimplexRef>>> faces;  // [n][idx][i], n >= 1

  int nondeg_count(int n) const {
    if (n < 0 || n > D) return 0;
    return static_cast<int>(labels[n].size());
  }

  SimplexRef nondeg(int n, int idx) const {
    SimplexRef r;
    r.base_dim = n;
    r.base_idx = idx;
    return r;
  }

  // d_i on a possibly degenerate simplex, by the simplicial identities
  SimplexRef face(const SimplexRef& ref, int i) const {
    if (i < 0 || i > ref.dim() || ref.dim() < 1)
      throw std::out_of_range("face: bad index");
    std::vector<int> prefix;
    size_t pos = 0;
    int fi = i;
    while (pos < ref.word.size()) {
      int j = ref.word[pos];
      if (fi < j) {
        prefix.push_back(j - 1);  // d_i s_j = s_{j-1} d_i
      } else if (fi == j || fi == j + 1) {
        // cancellation: remaining word survives unchanged
        std::vector<int> w = prefix;
        w.insert(w.end(), ref.word.begin() + pos + 1, ref.word.end());
        SimplexRef out;
        out.word = canonical_degeneracy_word(std::move(w));
        out.base_dim = ref.base_dim;
        out.base_idx = ref.base_idx;
        return out;
      } else {
        prefix.push_back(j);  // d_i s_j = s_j d_{i-1}
        --fi;
      }
      ++pos;
    }
    const SimplexRef& f = faces[ref.base_dim][ref.base_idx][fi];
    std::vector<int> w = prefix;
    w.insert(w.end(), f.word.begin(), f.word.end());
    SimplexRef out;
    out.word = canonical_degeneracy_word(std::move(w));
    out.base_dim = f.base_dim;
    out.base_idx = f.base_idx;
    return out;
  }

  SimplexRef degenerate(const SimplexRef& ref, int j) const {
    if (j < 0 || j > ref.dim()) throw std::out_of_range("degenerate: bad index");
    SimplexRef out = ref;
    out.word.insert(out.word.begin(), j);
    out.word = canonical_degeneracy_word(std::move(out.word));
    return out;
  }

  // all n-simplices, nondegenerate first (by index), then degenerate ones
  // ordered by (base_dim, base_idx, word)
  std::vector<SimplexRef> level_basis(int n) const {
    std::vector<SimplexRef> out;
    for (int i = 0; i < nondeg_count(n); ++i) out.push_back(nondeg(n, i));
    std::set<SimplexRef> degen;
    if (n >= 1) {
      for (const SimplexRef& r : level_basis(n - 1))
        for (int j = 0; j <= n - 1; ++j) degen.insert(degenerate(r, j));
    }
    out.insert(out.end(), degen.begin(), degen.end());
    return out;
  }

  // structural validation: shapes, truncation bounds, simplicial identities
  void check() const {
    if (static_cast<int>(labels.size()) != D + 1 ||
        static_cast<int>(faces.size()) != D + 1)
      throw std::invalid_argument("simplicial set: level count mismatch");
    for (int n = 0; n <= D; ++n) {
      std::set<std::string> seen(labels[n].begin(), labels[n].end());
      if (seen.size() != labels[n].size())
        throw std::invalid_argument("simplicial set: duplicate labels");
      if (n == 0) continue;
      if (faces[n].size() != labels[n].size())
        throw std::invalid_argument("simplicial set: face table mismatch");
      for (const auto& fs : faces[n]) {
        if (static_cast<int>(fs.size()) != n + 1)
          throw std::invalid_argument("simplicial set: face arity");
        for (const SimplexRef& f : fs) {
          if (f.dim() != n - 1 || f.base_dim < 0 || f.base_dim > D ||
              f.base_idx < 0 || f.base_idx >= nondeg_count(f.base_dim))
            throw std::invalid_argument("simplicial set: face target invalid");
          auto cw = f.word;
          if (canonical_degeneracy_word(cw) != f.word)
            throw std::invalid_argument("simplicial set: face word not canonical");
        }
      }
    }
    // d_i d_j = d_{j-1} d_i for i < j, on every simplex including degenerate
    for (int n = 2; n <= D; ++n) {
      for (const SimplexRef& x : level_basis(n)) {
        for (int j = 1; j <= n; ++j)
          for (int i = 0; i < j; ++i) {
            SimplexRef a = face(face(x, j), i);
            SimplexRef b = face(face(x, i), j - 1);
            if (!(a == b))
              throw std::invalid_argument("simplicial set: face identity fails");
          }
      }
    }
  }

  std::string ref_label(const SimplexRef& r) const {
    std::string s;
    for (int j : r.word) s += "s" + std::to_string(j) + ".";
    return s + labels[r.base_dim][r.base_idx];
  }
};

// ---------------------------------------------------------------------------
// finite groups

struct FiniteGroup {
  int n = 0;
  std::vector<std::vector<int>> table;  // table[a][b] = a*b
  int e = 0;
  std::vector<int> inv;

  int mul(int a, int b) const { return table[a][b]; }

  static FiniteGroup from_table(const std::vector<std::vector<int>>& t) {
    FiniteGroup g;
    g.n = static_cast<int>(t.size());
    g.table = t;
    for (const auto& row : t) {
      if (static_cast<int>(row.size()) != g.n)
        throw std::invalid_argument("group: table not square");
      for (int v : row)
        if (v < 0 || v >= g.n) throw std::invalid_argument("group: entry range");
    }
    int e = -1;
    for (int c = 0; c < g.n; ++c) {
      bool ok = true;
      for (int a = 0; a < g.n && ok; ++a)
        ok = (t[c][a] == a && t[a][c] == a);
      if (ok) { e = c; break; }
    }
    if (e < 0) throw std::invalid_argument("group: no identity");
    g.e = e;
    g.inv.assign(g.n, -1);
    for (int a = 0; a < g.n; ++a) {
      for (int b = 0; b < g.n; ++b)
        if (t[a][b] == e && t[b][a] == e) { g.inv[a] = b; break; }
      if (g.inv[a] < 0) throw std::invalid_argument("group: missing inverse");
    }
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b)
        for (int c = 0; c < g.n; ++c)
          if (t[t[a][b]][c] != t[a][t[b][c]])
            throw std::invalid_argument("group: not associative");
    return g;
  }
};

inline FiniteGroup cyclic_group(int m) {
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[a][b] = (a + b) % m;
  return FiniteGroup::from_table(t);
}

// permutations of {0,1,2} composed left-to-right, listed in lexicographic order
inline FiniteGroup symmetric_group_3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](const std::array<int, 3>& q) {
    for (size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == q) return static_cast<int>(i);
    throw std::logic_error("unreachable");
  };
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c;
      for (int i = 0; i < 3; ++i) c[i] = perms[b][perms[a][i]];
      t[a][b] = index_of(c);
    }
  return FiniteGroup::from_table(t);
}

// group homomorphism as an index map, validated
struct GroupHom {
  const FiniteGroup* src = nullptr;
  const FiniteGroup* dst = nullptr;
  std::vector<int> img;

  void check() const {
    if (static_cast<int>(img.size()) != src->n)
      throw std::invalid_argument("group hom: size mismatch");
    if (img[src->e] != dst->e)
      throw std::invalid_argument("group hom: identity not preserved");
    for (int a = 0; a < src->n; ++a)
      for (int b = 0; b < src->n; ++b)
        if (img[src->mul(a, b)] != dst->mul(img[a], img[b]))
          throw std::invalid_argument("group hom: not multiplicative");
  }
};

// ---------------------------------------------------------------------------
// nerve of a group; keeps the tuple dictionary for twisting data and maps

struct Nerve {
  TruncatedSimplicialSet X;
  FiniteGroup G;
  std::vector<std::vector<std::vector<int>>> tuples;      // [n][idx] = group word
  std::vector<std::map<std::vector<int>, int>> tuple_idx;  // per dim

  // canonical ref of an arbitrary tuple (identity entries = degeneracies)
  SimplexRef ref_of_tuple(const std::vector<int>& t) const {
    std::vector<int> word;
    std::vector<int> rest = t;
    for (;;) {
      auto it = std::find(rest.begin(), rest.end(), G.e);
      if (it == rest.end()) break;
      int p = static_cast<int>(it - rest.begin()) + 1;  // 1-based slot
      word.push_back(p - 1);
      rest.erase(it);
    }
    SimplexRef r;
    r.word = canonical_degeneracy_word(std::move(word));
    r.base_dim = static_cast<int>(rest.size());
    r.base_idx = r.base_dim == 0 ? 0 : tuple_idx[r.base_dim].at(rest);
    return r;
  }
};

inline std::string tuple_label(const std::vector<int>& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

inline Nerve nerve_of_group(const FiniteGroup& G, int D) {
  Nerve nv;
  nv.G = G;
  nv.X.D = D;
  nv.X.labels.resize(D + 1);
  nv.X.faces.resize(D + 1);
  nv.tuples.resize(D + 1);
  nv.tuple_idx.resize(D + 1);

  nv.X.labels[0] = {"()"};
  nv.tuples[0] = {{}};
  nv.tuple_idx[0][{}] = 0;
  for (int n = 1; n <= D; ++n) {
    // all tuples of non-identity elements, lexicographic
    std::vector<std::vector<int>> tup;
    std::vector<int> cur(n);
    std::function<void(int)> rec = [&](int k) {
      if (k == n) { tup.push_back(cur); return; }
      for (int g = 0; g < G.n; ++g) {
        if (g == G.e) continue;
        cur[k] = g;
        rec(k + 1);
      }
    };
    rec(0);
    nv.tuples[n] = tup;
    for (size_t i = 0; i < tup.size(); ++i) {
      nv.tuple_idx[n][tup[i]] = static_cast<int>(i);
      nv.X.labels[n].push_back(tuple_label(tup[i]));
    }
  }
  for (int n = 1; n <= D; ++n) {
    nv.X.faces[n].resize(nv.tuples[n].size());
    for (size_t idx = 0; idx < nv.tuples[n].size(); ++idx) {
      const auto& t = nv.tuples[n][idx];
      for (int i = 0; i <= n; ++i) {
        std::vector<int> f;
        if (i == 0) {
          f.assign(t.begin() + 1, t.end());
        } else if (i == n) {
          f.assign(t.begin(), t.end() - 1);
        } else {
          f.assign(t.begin(), t.end());
          f[i - 1] = G.mul(t[i - 1], t[i]);
          f.erase(f.begin() + i);
        }
        nv.X.faces[n][idx].push_back(nv.ref_of_tuple(f));
      }
    }
  }
  nv.X.check();
  return nv;
}

// one vertex, one loop
inline TruncatedSimplicialSet minimal_circle(int D) {
  TruncatedSimplicialSet X;
  X.D = D;
  X.labels.resize(D + 1);
  X.faces.resize(D + 1);
  X.labels[0] = {"*"};
  if (D >= 1) {
    X.labels[1] = {"a"};
    SimplexRef pt;
    X.faces[1] = {{pt, pt}};
  }
  X.check();
  return X;
}

inline TruncatedSimplicialSet wedge_of_circles(int k, int D) {
  TruncatedSimplicialSet X;
  X.D = D;
  X.labels.resize(D + 1);
  X.faces.resize(D + 1);
  X.labels[0] = {"*"};
  if (D >= 1) {
    SimplexRef pt;
    for (int i = 0; i < k; ++i) {
      X.labels[1].push_back("a" + std::to_string(i));
      X.faces[1].push_back({pt, pt});
    }
  }
  X.check();
  return X;
}

// ---------------------------------------------------------------------------
// twisting morphisms X -> G (degree -1, simplicial sense)

struct TwistingViolation {
  int eq = 0;  // 1..4
  int dim = 0;
  std::string simplex;
};

struct TwistingMorphismSS {
  const TruncatedSimplicialSet* X = nullptr;
  const FiniteGroup* G = nullptr;
  std::vector<std::vector<int>> val;  // [n][idx], n >= 1; group element indices

  // extension to degenerate simplices is forced by the defining equations:
  // t(s_0 y) = e and t(s_j y) = t(y) for j >= 1
  int eval(const SimplexRef& r) const {
    for (int j : r.word)
      if (j == 0) return G->e;
    if (r.base_dim == 0) return G->e;
    return val[r.base_dim][r.base_idx];
  }

  std::vector<TwistingViolation> verify() const {
    std::vector<TwistingViolation> out;
    for (int n = 1; n <= X->D; ++n) {
      for (const SimplexRef& x : X->level_basis(n)) {
        int tx = eval(x);
        if (n >= 2) {
          for (int i = 1; i <= n - 1; ++i)
            if (eval(X->face(x, i + 1)) != tx)
              out.push_back({1, n, X->ref_label(x)});
          int rhs = G->mul(eval(X->face(x, 1)), G->inv[eval(X->face(x, 0))]);
          if (rhs != tx) out.push_back({2, n, X->ref_label(x)});
        }
        if (n + 1 <= X->D) {
          for (int j = 1; j <= n; ++j)
            if (eval(X->degenerate(x, j)) != tx)
              out.push_back({3, n, X->ref_label(x)});
          if (eval(X->degenerate(x, 0)) != G->e)
            out.push_back({4, n, X->ref_label(x)});
        }
      }
    }
    return out;
  }
};

// nerve twisting morphism: a simplex is sent to its first edge
inline TwistingMorphismSS fundamental_twisting_morphism(const Nerve& nv) {
  TwistingMorphismSS t;
  t.X = &nv.X;
  t.G = &nv.G;
  t.val.resize(nv.X.D + 1);
  for (int n = 1; n <= nv.X.D; ++n)
    for (const auto& tup : nv.tuples[n]) t.val[n].push_back(tup[0]);
  return t;
}

// ---------------------------------------------------------------------------
// twisted cartesian product X x_t G: nondegenerate n-simplices are pairs
// (nondegenerate x, g); only d_0 is twisted: d_0(x, g) = (d_0 x, g * t(x))

struct TwistedCartesianProduct {
  TruncatedSimplicialSet P;
  // pair (x idx, g) <-> nondeg index at each dim: g-minor order
  int pair_index(int n, int xidx, int g, int ng) const { return xidx * ng + g; }
};

inline TwistedCartesianProduct twisted_cartesian_product(
    const TruncatedSimplicialSet& X, const FiniteGroup& G,
    const TwistingMorphismSS& t) {
  TwistedCartesianProduct out;
  TruncatedSimplicialSet& P = out.P;
  P.D = X.D;
  P.labels.resize(P.D + 1);
  P.faces.resize(P.D + 1);
  for (int n = 0; n <= P.D; ++n)
    for (int x = 0; x < X.nondeg_count(n); ++x)
      for (int g = 0; g < G.n; ++g)
        P.labels[n].push_back(X.labels[n][x] + "*" + std::to_string(g));
  auto pair_ref = [&](const SimplexRef& xr, int g) {
    SimplexRef r;
    r.word = xr.word;
    r.base_dim = xr.base_dim;
    r.base_idx = xr.base_idx * G.n + g;
    return r;
  };
  for (int n = 1; n <= P.D; ++n) {
    for (int x = 0; x < X.nondeg_count(n); ++x) {
      SimplexRef xr = X.nondeg(n, x);
      for (int g = 0; g < G.n; ++g) {
        std::vector<SimplexRef> fs;
        fs.push_back(pair_ref(X.face(xr, 0), G.mul(g, t.eval(xr))));
        for (int i = 1; i <= n; ++i) fs.push_back(pair_ref(X.face(xr, i), g));
        P.faces[n].push_back(std::move(fs));
      }
    }
  }
  P.check();
  return out;
}

// ---------------------------------------------------------------------------
// simplicial maps, defined on nondegenerate simplices

struct SimplicialMap {
  const TruncatedSimplicialSet* X = nullptr;
  const TruncatedSimplicialSet* Y = nullptr;
  std::vector<std::vector<SimplexRef>> img;  // [n][idx] -> ref in Y

  SimplexRef apply(const SimplexRef& r) const {
    const SimplexRef& b = img[r.base_dim][r.base_idx];
    SimplexRef out;
    out.word = r.word;
    out.word.insert(out.word.end(), b.word.begin(), b.word.end());
    out.word = canonical_degeneracy_word(std::move(out.word));
    out.base_dim = b.base_dim;
    out.base_idx = b.base_idx;
    return out;
  }

  void check() const {
    for (int n = 0; n <= X->D; ++n)
      for (int x = 0; x < X->nondeg_count(n); ++x) {
        if (img[n][x].dim() != n)
          throw std::invalid_argument("simplicial map: dimension mismatch");
        if (n == 0) continue;
        for (int i = 0; i <= n; ++i) {
          SimplexRef a = apply(X->face(X->nondeg(n, x), i));
          SimplexRef b = Y->face(apply(X->nondeg(n, x)), i);
          if (!(a == b))
            throw std::invalid_argument("simplicial map: not simplicial");
        }
      }
  }
};

// induced map of nerves from a group homomorphism
inline SimplicialMap nerve_map(const Nerve& A, const Nerve& B, const GroupHom& h) {
  h.check();
  SimplicialMap f;
  f.X = &A.X;
  f.Y = &B.X;
  f.img.resize(A.X.D + 1);
  f.img[0] = {SimplexRef{}};
  for (int n = 1; n <= A.X.D; ++n)
    for (const auto& tup : A.tuples[n]) {
      std::vector<int> m(tup.size());
      for (size_t i = 0; i < tup.size(); ++i) m[i] = h.img[tup[i]];
      f.img[n].push_back(B.ref_of_tuple(m));
    }
  f.check();
  return f;
}

}  // namespace picobar
