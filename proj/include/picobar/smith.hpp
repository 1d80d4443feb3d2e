#pragma once

// Smith normal form over the integers with full unimodular change of basis,
// and homology of a pair of composable differentials. The pivot rule is
// fixed: smallest absolute value, ties broken by lowest (row, col) pair, so
// results are deterministic for a given input.

#include "picobar/ring.hpp"
#include "picobar/sparse_matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

namespace picobar {

struct SmithResult {
  // u * m * v = diag(diag[0], ..., diag[rank-1], 0, ...) with u, v unimodular.
  // uinv, vinv are the exact inverses, maintained alongside.
  SparseMatrix<ZRing> u, v, uinv, vinv;
  std::vector<Int> diag;  // positive, diag[i] divides diag[i+1]
  int rank = 0;
};

namespace detail {

using Dense = std::vector<std::vector<Int>>;

inline Dense dense_identity(int n) {
  Dense m(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// row_i -= q * row_k on m and u; uinv gets the inverse column operation
inline void row_op(Dense& m, Dense& u, Dense& uinv, int i, int k, const Int& q) {
  const int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
  for (int j = 0; j < cols; ++j) m[i][j] -= q * m[k][j];
  const int n = static_cast<int>(u.size());
  for (int j = 0; j < n; ++j) u[i][j] -= q * u[k][j];
  for (int r = 0; r < n; ++r) uinv[r][k] += q * uinv[r][i];
}

inline void row_swap(Dense& m, Dense& u, Dense& uinv, int i, int k) {
  std::swap(m[i], m[k]);
  std::swap(u[i], u[k]);
  for (auto& row : uinv) std::swap(row[i], row[k]);
}

inline void row_negate(Dense& m, Dense& u, Dense& uinv, int i) {
  for (auto& x : m[i]) x = -x;
  for (auto& x : u[i]) x = -x;
  for (auto& row : uinv) row[i] = -row[i];
}

// col_j -= q * col_k on m and v; vinv gets the inverse row operation
inline void col_op(Dense& m, Dense& v, Dense& vinv, int j, int k, const Int& q) {
  for (auto& row : m) row[j] -= q * row[k];
  for (auto& row : v) row[j] -= q * row[k];
  const int n = static_cast<int>(vinv.size());
  for (int c = 0; c < n; ++c) vinv[k][c] += q * vinv[j][c];
}

inline void col_swap(Dense& m, Dense& v, Dense& vinv, int j, int k) {
  for (auto& row : m) std::swap(row[j], row[k]);
  for (auto& row : v) std::swap(row[j], row[k]);
  std::swap(vinv[j], vinv[k]);
}

inline SparseMatrix<ZRing> from_dense(const Dense& m, int rows, int cols) {
  SparseMatrix<ZRing> out(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (m[r][c] != 0) out.ent[{r, c}] = m[r][c];
  return out;
}

}  // namespace detail

inline SmithResult snf(const ZRing& ring, const SparseMatrix<ZRing>& mat) {
  const int rows = mat.rows, cols = mat.cols;
  detail::Dense m(rows, std::vector<Int>(cols, 0));
  for (const auto& [rc, v] : mat.ent) m[rc.first][rc.second] = v;
  detail::Dense u = detail::dense_identity(rows);
  detail::Dense uinv = detail::dense_identity(rows);
  detail::Dense v = detail::dense_identity(cols);
  detail::Dense vinv = detail::dense_identity(cols);

  int t = 0;
  while (t < rows && t < cols) {
    // pivot: smallest |entry| in the trailing submatrix, ties lowest (row, col)
    int pr = -1, pc = -1;
    for (int r = t; r < rows; ++r)
      for (int c = t; c < cols; ++c) {
        if (m[r][c] == 0) continue;
        if (pr < 0 || abs(m[r][c]) < abs(m[pr][pc])) { pr = r; pc = c; }
      }
    if (pr < 0) break;
    detail::row_swap(m, u, uinv, t, pr);
    detail::col_swap(m, v, vinv, t, pc);

    for (;;) {
      bool restart = false;
      for (int i = t + 1; i < rows && !restart; ++i) {
        if (m[i][t] == 0) continue;
        Int q = m[i][t] / m[t][t];
        detail::row_op(m, u, uinv, i, t, q);
        if (m[i][t] != 0) {  // remainder smaller than pivot: promote it
          detail::row_swap(m, u, uinv, t, i);
          restart = true;
        }
      }
      if (restart) continue;
      for (int j = t + 1; j < cols && !restart; ++j) {
        if (m[t][j] == 0) continue;
        Int q = m[t][j] / m[t][t];
        detail::col_op(m, v, vinv, j, t, q);
        if (m[t][j] != 0) {
          detail::col_swap(m, v, vinv, t, j);
          restart = true;
        }
      }
      if (restart) continue;
      // pivot must divide everything below-right; else pull the offender in
      bool fixed = true;
      for (int i = t + 1; i < rows && fixed; ++i)
        for (int j = t + 1; j < cols && fixed; ++j)
          if (m[i][j] % m[t][t] != 0) {
            detail::row_op(m, u, uinv, t, i, Int(-1));  // row_t += row_i
            fixed = false;
          }
      if (fixed) break;
    }
    if (m[t][t] < 0) detail::row_negate(m, u, uinv, t);
    ++t;
  }

  SmithResult res;
  res.rank = t;
  res.diag.reserve(t);
  for (int i = 0; i < t; ++i) res.diag.push_back(m[i][i]);
  res.u = detail::from_dense(u, rows, rows);
  res.uinv = detail::from_dense(uinv, rows, rows);
  res.v = detail::from_dense(v, cols, cols);
  res.vinv = detail::from_dense(vinv, cols, cols);
  (void)ring;
  return res;
}

// Row reduction over a field with the transform tracked: u * m has the
// pivot rows first, zero rows after; uinv is the exact inverse of u.
template <class R>
struct RowReduction {
  SparseMatrix<R> u, uinv;
  int rank = 0;
};

template <class R>
RowReduction<R> row_reduce(const R& ring, const SparseMatrix<R>& mat) {
  static_assert(R::is_field, "row_reduce: field scalars only");
  using V = typename R::value_type;
  const int rows = mat.rows, cols = mat.cols;
  auto m = detail::to_dense(ring, mat);
  std::vector<std::vector<V>> u(rows, std::vector<V>(rows, ring.zero()));
  auto uinv = u;
  for (int i = 0; i < rows; ++i) u[i][i] = uinv[i][i] = ring.one();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!ring.is_zero(m[i][c])) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    std::swap(u[r], u[piv]);
    for (auto& row : uinv) std::swap(row[r], row[piv]);
    for (int i = 0; i < rows; ++i) {
      if (i == r || ring.is_zero(m[i][c])) continue;
      V q = ring.mul(m[i][c], ring.inv(m[r][c]));
      for (int j = 0; j < cols; ++j) m[i][j] = ring.sub(m[i][j], ring.mul(q, m[r][j]));
      for (int j = 0; j < rows; ++j) u[i][j] = ring.sub(u[i][j], ring.mul(q, u[r][j]));
      for (int k = 0; k < rows; ++k)
        uinv[k][r] = ring.add(uinv[k][r], ring.mul(q, uinv[k][i]));
    }
    ++r;
  }
  RowReduction<R> res;
  res.rank = r;
  res.u = SparseMatrix<R>(rows, rows);
  res.uinv = SparseMatrix<R>(rows, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < rows; ++j) {
      if (!ring.is_zero(u[i][j])) res.u.ent[{i, j}] = u[i][j];
      if (!ring.is_zero(uinv[i][j])) res.uinv.ent[{i, j}] = uinv[i][j];
    }
  return res;
}

struct HomologyGroup {
  int free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, in divisibility order

  bool operator==(const HomologyGroup& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
};

// Homology at the middle term of  C_{n+1} --d_in--> C_n --d_out--> C_{n-1}.
// Throws if the differentials do not compose to zero.
inline HomologyGroup homology_at(const ZRing& ring,
                                 const SparseMatrix<ZRing>& d_in,
                                 const SparseMatrix<ZRing>& d_out) {
  if (d_in.rows != d_out.cols)
    throw std::invalid_argument("homology_at: shape mismatch");
  if (!mat_mul(ring, d_out, d_in).is_zero())
    throw std::invalid_argument("homology_at: d_out * d_in != 0");

  SmithResult so = snf(ring, d_out);
  const int n = d_out.cols;
  const int k = n - so.rank;  // dim ker(d_out)

  // kernel coordinates: rows so.rank.. of vinv * d_in
  SparseMatrix<ZRing> w = mat_mul(ring, so.vinv, d_in);
  SparseMatrix<ZRing> b(k, d_in.cols);
  for (const auto& [rc, val] : w.ent) {
    if (rc.first < so.rank) {
      // im(d_in) must already lie in ker(d_out); nonzero here would mean
      // d_out*d_in != 0, which was rejected above
      continue;
    }
    b.ent[{rc.first - so.rank, rc.second}] = val;
  }

  SmithResult sb = snf(ring, b);
  HomologyGroup h;
  h.free_rank = k - sb.rank;
  for (const Int& d : sb.diag)
    if (d != 1) h.torsion.push_back(d);
  return h;
}

// Field version: dimension of ker(d_out)/im(d_in).
template <class R>
HomologyGroup homology_at(const R& ring, const SparseMatrix<R>& d_in,
                          const SparseMatrix<R>& d_out) {
  static_assert(R::is_field, "integral case handled above");
  if (d_in.rows != d_out.cols)
    throw std::invalid_argument("homology_at: shape mismatch");
  if (!mat_mul(ring, d_out, d_in).is_zero())
    throw std::invalid_argument("homology_at: d_out * d_in != 0");
  HomologyGroup h;
  h.free_rank = (d_out.cols - mat_rank(ring, d_out)) - mat_rank(ring, d_in);
  return h;
}

// Exact inverse when one exists over the ring: fields by Gauss-Jordan,
// integers when every invariant factor is a unit.
template <class R>
std::optional<SparseMatrix<R>> try_inverse(const R& ring,
                                           const SparseMatrix<R>& mat) {
  if (mat.rows != mat.cols) return std::nullopt;
  const int n = mat.rows;
  if constexpr (R::is_field) {
    using V = typename R::value_type;
    auto m = detail::to_dense(ring, mat);
    std::vector<std::vector<V>> inv(n, std::vector<V>(n, ring.zero()));
    for (int i = 0; i < n; ++i) inv[i][i] = ring.one();
    for (int c = 0; c < n; ++c) {
      int piv = -1;
      for (int i = c; i < n; ++i)
        if (!ring.is_zero(m[i][c])) { piv = i; break; }
      if (piv < 0) return std::nullopt;
      std::swap(m[c], m[piv]);
      std::swap(inv[c], inv[piv]);
      V s = ring.inv(m[c][c]);
      for (int j = 0; j < n; ++j) {
        m[c][j] = ring.mul(s, m[c][j]);
        inv[c][j] = ring.mul(s, inv[c][j]);
      }
      for (int i = 0; i < n; ++i) {
        if (i == c || ring.is_zero(m[i][c])) continue;
        V q = m[i][c];
        for (int j = 0; j < n; ++j) {
          m[i][j] = ring.sub(m[i][j], ring.mul(q, m[c][j]));
          inv[i][j] = ring.sub(inv[i][j], ring.mul(q, inv[c][j]));
        }
      }
    }
    SparseMatrix<R> out(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!ring.is_zero(inv[i][j])) out.ent[{i, j}] = inv[i][j];
    return out;
  } else {
    static_assert(std::is_same_v<R, ZRing>, "try_inverse: unsupported ring");
    SmithResult s = snf(ring, mat);
    if (s.rank < n) return std::nullopt;
    for (const Int& d : s.diag)
      if (d != 1) return std::nullopt;
    return mat_mul(ring, s.v, s.u);
  }
}

}  // namespace picobar
