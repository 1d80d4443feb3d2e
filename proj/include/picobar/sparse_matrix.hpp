#pragma once

// Sparse matrices over an exact ring, stored as an ordered map from
// (row, col) to a nonzero value. Shapes are explicit and all operations
// check them; zero results are dropped eagerly so equality is structural.

#include "picobar/ring.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace picobar {

template <class R>
struct SparseMatrix {
  using V = typename R::value_type;

  int rows = 0;
  int cols = 0;
  std::map<std::pair<int, int>, V> ent;

  SparseMatrix() = default;
  SparseMatrix(int r, int c) : rows(r), cols(c) {
    if (r < 0 || c < 0) throw std::invalid_argument("SparseMatrix: negative shape");
  }

  static SparseMatrix identity(const R& ring, int n) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.ent[{i, i}] = ring.one();
    return m;
  }

  void check_index(int r, int c) const {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw std::out_of_range("SparseMatrix: index out of range");
  }

  V get(const R& ring, int r, int c) const {
    check_index(r, c);
    auto it = ent.find({r, c});
    return it == ent.end() ? ring.zero() : it->second;
  }

  void set(const R& ring, int r, int c, const V& v) {
    check_index(r, c);
    if (ring.is_zero(v)) ent.erase({r, c});
    else ent[{r, c}] = v;
  }

  void add_to(const R& ring, int r, int c, const V& v) {
    check_index(r, c);
    auto it = ent.find({r, c});
    if (it == ent.end()) {
      if (!ring.is_zero(v)) ent[{r, c}] = v;
      return;
    }
    it->second = ring.add(it->second, v);
    if (ring.is_zero(it->second)) ent.erase(it);
  }

  bool is_zero() const { return ent.empty(); }

  bool equals(const SparseMatrix& o) const {
    return rows == o.rows && cols == o.cols && ent == o.ent;
  }
};

template <class R>
SparseMatrix<R> mat_add(const R& ring, const SparseMatrix<R>& a,
                        const SparseMatrix<R>& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw std::invalid_argument("mat_add: shape mismatch");
  SparseMatrix<R> out = a;
  for (const auto& [rc, v] : b.ent) out.add_to(ring, rc.first, rc.second, v);
  return out;
}

template <class R>
SparseMatrix<R> mat_scale(const R& ring, const typename R::value_type& c,
                          const SparseMatrix<R>& a) {
  SparseMatrix<R> out(a.rows, a.cols);
  if (ring.is_zero(c)) return out;
  for (const auto& [rc, v] : a.ent) {
    auto w = ring.mul(c, v);
    if (!ring.is_zero(w)) out.ent[rc] = w;
  }
  return out;
}

template <class R>
SparseMatrix<R> mat_sub(const R& ring, const SparseMatrix<R>& a,
                        const SparseMatrix<R>& b) {
  return mat_add(ring, a, mat_scale(ring, ring.neg(ring.one()), b));
}

template <class R>
SparseMatrix<R> mat_mul(const R& ring, const SparseMatrix<R>& a,
                        const SparseMatrix<R>& b) {
  if (a.cols != b.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  // index b by row for the inner loop
  std::vector<std::vector<std::pair<int, typename R::value_type>>> brow(b.rows);
  for (const auto& [rc, v] : b.ent) brow[rc.first].push_back({rc.second, v});
  SparseMatrix<R> out(a.rows, b.cols);
  for (const auto& [rc, v] : a.ent) {
    for (const auto& [c2, w] : brow[rc.second])
      out.add_to(ring, rc.first, c2, ring.mul(v, w));
  }
  return out;
}

template <class R>
SparseMatrix<R> mat_transpose(const SparseMatrix<R>& a) {
  SparseMatrix<R> out(a.cols, a.rows);
  for (const auto& [rc, v] : a.ent) out.ent[{rc.second, rc.first}] = v;
  return out;
}

template <class R>
std::vector<typename R::value_type> mat_apply(
    const R& ring, const SparseMatrix<R>& a,
    const std::vector<typename R::value_type>& x) {
  if (static_cast<int>(x.size()) != a.cols)
    throw std::invalid_argument("mat_apply: shape mismatch");
  std::vector<typename R::value_type> y(a.rows, ring.zero());
  for (const auto& [rc, v] : a.ent)
    y[rc.first] = ring.add(y[rc.first], ring.mul(v, x[rc.second]));
  return y;
}

template <class R>
SparseMatrix<R> mat_kron(const R& ring, const SparseMatrix<R>& a,
                         const SparseMatrix<R>& b) {
  SparseMatrix<R> out(a.rows * b.rows, a.cols * b.cols);
  for (const auto& [ra, va] : a.ent)
    for (const auto& [rb, vb] : b.ent)
      out.ent[{ra.first * b.rows + rb.first, ra.second * b.cols + rb.second}] =
          ring.mul(va, vb);
  return out;
}

// Map a matrix entrywise into another ring (e.g. integral matrix mod p).
template <class RA, class RB>
SparseMatrix<RB> mat_cast(const RA&, const RB& to, const SparseMatrix<RA>& a) {
  static_assert(std::is_same_v<typename RA::value_type, Int>,
                "mat_cast: source must be integral");
  SparseMatrix<RB> out(a.rows, a.cols);
  for (const auto& [rc, v] : a.ent) {
    auto w = reduce_int(to, v);
    if (!to.is_zero(w)) out.ent[rc] = w;
  }
  return out;
}

// Rank by fraction-free Gaussian elimination; works over any of the rings
// here (integers use exact division via the Bareiss scheme).
template <class R>
int mat_rank(const R& ring, const SparseMatrix<R>& a);

namespace detail {

template <class R>
std::vector<std::vector<typename R::value_type>> to_dense(
    const R& ring, const SparseMatrix<R>& a) {
  std::vector<std::vector<typename R::value_type>> m(
      a.rows, std::vector<typename R::value_type>(a.cols, ring.zero()));
  for (const auto& [rc, v] : a.ent) m[rc.first][rc.second] = v;
  return m;
}

}  // namespace detail

template <class R>
int mat_rank(const R& ring, const SparseMatrix<R>& a) {
  auto m = detail::to_dense(ring, a);
  int rows = a.rows, cols = a.cols;
  int rank = 0;
  typename R::value_type prev = ring.one();
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (!ring.is_zero(m[r][c])) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    for (int r = rank + 1; r < rows; ++r) {
      for (int j = c + 1; j < cols; ++j) {
        // Bareiss: (m[rank][c]*m[r][j] - m[r][c]*m[rank][j]) / prev is exact over Z
        auto num = ring.sub(ring.mul(m[rank][c], m[r][j]),
                            ring.mul(m[r][c], m[rank][j]));
        if constexpr (std::is_same_v<R, ZRing>) {
          m[r][j] = num / prev;
        } else {
          m[r][j] = ring.mul(num, ring.inv(prev));
        }
      }
      m[r][c] = ring.zero();
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

// Determinant of a square integral matrix by the Bareiss algorithm.
inline Int mat_det(const ZRing& ring, const SparseMatrix<ZRing>& a) {
  if (a.rows != a.cols) throw std::invalid_argument("mat_det: not square");
  int n = a.rows;
  if (n == 0) return Int(1);
  auto m = detail::to_dense(ring, a);
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r)
        if (m[r][k] != 0) { piv = r; break; }
      if (piv < 0) return Int(0);
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace picobar
