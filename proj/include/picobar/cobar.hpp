#pragma once

// Loop-space algebra on normalized chains: the cobar differential on the
// tensor algebra of shifted positive-degree classes, twisting cochains with
// their curvature residual, twisted tensor differentials against a module,
// the one-sided bar construction, and the comparison maps between the bar
// resolution and the twisted complex.
//
// Sign conventions are a single coherent package; each operator is verified
// to square to zero (or to be a chain map) by the test suite, which pins the
// package: a wrong sign anywhere breaks one of those checks.

#include "picobar/chains.hpp"
#include "picobar/ring.hpp"

#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace picobar {

// generator of the loop algebra: a positive-degree basis class of N(C),
// contributing degree deg-1 to a word
struct CobarGen {
  int deg = 0;
  int idx = 0;
  auto operator<=>(const CobarGen&) const = default;
};

using Word = std::vector<CobarGen>;

inline int word_degree(const Word& w) {
  int d = 0;
  for (const CobarGen& g : w) d += g.deg - 1;
  return d;
}

template <class R>
using NCPoly = std::map<Word, typename R::value_type>;

template <class R>
void poly_add(const R& ring, NCPoly<R>& dst, const NCPoly<R>& src,
              const typename R::value_type& scale) {
  for (const auto& [w, c] : src) {
    auto it = dst.find(w);
    auto add = ring.mul(scale, c);
    if (it == dst.end()) {
      if (!ring.is_zero(add)) dst[w] = add;
    } else {
      it->second = ring.add(it->second, add);
      if (ring.is_zero(it->second)) dst.erase(it);
    }
  }
}

template <class R>
NCPoly<R> poly_mul(const R& ring, const NCPoly<R>& a, const NCPoly<R>& b) {
  NCPoly<R> out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      auto it = out.find(w);
      auto add = ring.mul(ca, cb);
      if (it == out.end()) {
        if (!ring.is_zero(add)) out[w] = add;
      } else {
        it->second = ring.add(it->second, add);
        if (ring.is_zero(it->second)) out.erase(it);
      }
    }
  return out;
}

// differential on a single generator: boundary classes (positive degree
// only) plus the reduced diagonal with sign (-1)^{p-1} on the p|q split
template <class R>
NCPoly<R> cobar_boundary_gen(const R& ring, const NormalizedChains<R>& N,
                             int deg, int idx) {
  NCPoly<R> out;
  if (deg < 1 || deg > N.cx.D) throw std::out_of_range("cobar: generator degree");
  if (deg >= 2) {
    for (const auto& [rc, v] : N.cx.bnd[deg].ent)
      if (rc.second == idx)
        poly_add(ring, out, NCPoly<R>{{Word{{deg - 1, rc.first}}, v}}, ring.one());
  }
  for (const auto& [p, a, b, c] : N.aw[deg][idx]) {
    if (p < 1 || p > deg - 1) continue;
    typename R::value_type s =
        (p - 1) % 2 == 0 ? ring.one() : ring.neg(ring.one());
    poly_add(ring, out,
             NCPoly<R>{{Word{{p, a}, {deg - p, b}}, ring.mul(s, c)}}, ring.one());
  }
  return out;
}

// derivation extension: the sign on slot i is the word degree of the prefix.
// Words longer than max_len (default: truncation + 2) are rejected, since
// results at that length can silently miss cancellations past the cutoff.
template <class R>
NCPoly<R> cobar_boundary(const R& ring, const NormalizedChains<R>& N,
                         const NCPoly<R>& poly, int max_len = -1) {
  if (max_len < 0) max_len = N.cx.D + 2;
  NCPoly<R> out;
  for (const auto& [w, coeff] : poly) {
    if (static_cast<int>(w.size()) > max_len)
      throw std::invalid_argument("cobar: word exceeds length truncation");
    int pref = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      typename R::value_type s =
          pref % 2 == 0 ? coeff : ring.neg(coeff);
      for (const auto& [dw, c] : cobar_boundary_gen(ring, N, w[i].deg, w[i].idx)) {
        Word nw(w.begin(), w.begin() + i);
        nw.insert(nw.end(), dw.begin(), dw.end());
        nw.insert(nw.end(), w.begin() + i + 1, w.end());
        poly_add(ring, out, NCPoly<R>{{nw, c}}, s);
      }
      pref += w[i].deg - 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// dg twisting cochains N -> loop algebra, given by their value on each
// positive-degree class; the universal one sends a class to its own letter

// callbacks must return the empty polynomial for degree <= 0
template <class R>
using DgCochain = std::function<NCPoly<R>(int deg, int idx)>;

template <class R>
DgCochain<R> universal_twisting_cochain(const R& ring,
                                        const NormalizedChains<R>& N) {
  if (N.cx.rank.empty() || N.cx.rank[0] != 1)
    throw std::invalid_argument("universal cochain: coalgebra not connected");
  return [&ring](int deg, int idx) {
    if (deg < 1) return NCPoly<R>{};
    return NCPoly<R>{{Word{{deg, idx}}, ring.one()}};
  };
}

// convolution of two graded cochains along the diagonal; g_degree is the
// homological degree of g (the Koszul sign crosses g past the left factor)
template <class R>
DgCochain<R> convolve(const R& ring, const NormalizedChains<R>& N,
                      DgCochain<R> f, DgCochain<R> g, int g_degree) {
  return [&ring, &N, f, g, g_degree](int deg, int idx) {
    NCPoly<R> out;
    for (const auto& [p, a, b, c] : N.aw[deg][idx]) {
      if (p < 1 || deg - p < 1) continue;
      int sgn = (g_degree % 2 != 0 && p % 2 != 0) ? -1 : 1;
      auto prod = poly_mul(ring, f(p, a), g(deg - p, b));
      poly_add(ring, out, prod, sgn > 0 ? ring.mul(c, ring.one())
                                        : ring.neg(c));
    }
    return out;
  };
}

// curvature: D(tau x) - tau(dx) + sum over the reduced diagonal of
// (-1)^{|x'|} tau(x') tau(x''); flat cochains give zero on every class
template <class R>
NCPoly<R> mc_residual(const R& ring, const NormalizedChains<R>& N,
                      const DgCochain<R>& tau, int deg, int idx) {
  NCPoly<R> out = cobar_boundary(ring, N, tau(deg, idx));
  if (deg >= 2) {
    for (const auto& [rc, v] : N.cx.bnd[deg].ent)
      if (rc.second == idx && deg - 1 >= 1)
        poly_add(ring, out, tau(deg - 1, rc.first), ring.neg(v));
  }
  for (const auto& [p, a, b, c] : N.aw[deg][idx]) {
    if (p < 1 || p > deg - 1) continue;
    typename R::value_type s = p % 2 == 0 ? c : ring.neg(c);
    poly_add(ring, out, poly_mul(ring, tau(p, a), tau(deg - p, b)), s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// modules over the loop algebra, given by a right action of words

template <class R>
struct LoopModule {
  int rank = 0;
  SparseMatrix<R> diff;  // internal differential (rank x rank), often zero
  // action of a word on a basis vector, as a dense vector; the differentials
  // require act(uv) = act(u) compose act(v), so the last letter acts first
  std::function<std::vector<typename R::value_type>(const Word&, int)> act;

  std::vector<typename R::value_type> act_poly(const R& ring,
                                               const NCPoly<R>& p, int m) const {
    std::vector<typename R::value_type> out(rank, ring.zero());
    for (const auto& [w, c] : p) {
      auto v = act(w, m);
      for (int i = 0; i < rank; ++i)
        out[i] = ring.add(out[i], ring.mul(c, v[i]));
    }
    return out;
  }
};

// twisted tensor N(C) (x)_tau M: key = (class degree, class index, module index)
template <class R>
using TwistedPoly = std::map<std::tuple<int, int, int>, typename R::value_type>;

template <class R>
void tw_add(const R& ring, TwistedPoly<R>& dst, int deg, int idx, int m,
            const typename R::value_type& c) {
  if (ring.is_zero(c)) return;
  auto key = std::make_tuple(deg, idx, m);
  auto it = dst.find(key);
  if (it == dst.end()) {
    dst[key] = c;
  } else {
    it->second = ring.add(it->second, c);
    if (ring.is_zero(it->second)) dst.erase(it);
  }
}

// d(x (x) m) = dx (x) m + (-1)^|x| x (x) dm
//            + (-1)^|x| sum_{diagonal, |x''| >= 1} x' (x) m * tau(x'')
template <class R>
TwistedPoly<R> brown_boundary(const R& ring, const NormalizedChains<R>& N,
                              const LoopModule<R>& M, const DgCochain<R>& tau,
                              const TwistedPoly<R>& v) {
  TwistedPoly<R> out;
  for (const auto& [key, c] : v) {
    auto [n, x, m] = key;
    if (n >= 1)
      for (const auto& [rc, cv] : N.cx.bnd[n].ent)
        if (rc.second == x) tw_add(ring, out, n - 1, rc.first, m, ring.mul(c, cv));
    typename R::value_type s = n % 2 == 0 ? c : ring.neg(c);
    for (const auto& [rc, dv] : M.diff.ent)
      if (rc.second == m) tw_add(ring, out, n, x, rc.first, ring.mul(s, dv));
    if (n >= 1) {
      for (const auto& [p, a, b, cc] : N.aw[n][x]) {
        if (n - p < 1) continue;  // cochains vanish on degree zero
        auto img = M.act_poly(ring, tau(n - p, b), m);
        for (int mm = 0; mm < M.rank; ++mm)
          tw_add(ring, out, p, a, mm, ring.mul(ring.mul(s, cc), img[mm]));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// one-sided bar construction B(R, loop algebra, M): tuples of nonempty words
// with a module element; degree = sum (|a_i| + 1) + |m|

template <class R>
using BarKey = std::pair<std::vector<Word>, int>;
template <class R>
using BarPoly = std::map<BarKey<R>, typename R::value_type>;

template <class R>
void bar_add(const R& ring, BarPoly<R>& dst, const BarKey<R>& k,
             const typename R::value_type& c) {
  if (ring.is_zero(c)) return;
  auto it = dst.find(k);
  if (it == dst.end()) {
    dst[k] = c;
  } else {
    it->second = ring.add(it->second, c);
    if (ring.is_zero(it->second)) dst.erase(it);
  }
}

template <class R>
BarPoly<R> bar_boundary(const R& ring, const NormalizedChains<R>& N,
                        const LoopModule<R>& M, const BarPoly<R>& poly) {
  BarPoly<R> out;
  for (const auto& [key, coeff] : poly) {
    const auto& [letters, m] = key;
    int k = static_cast<int>(letters.size());
    std::vector<int> degs(k);
    for (int i = 0; i < k; ++i) degs[i] = word_degree(letters[i]);
    int total = 0;
    for (int d : degs) total += d;
    // internal differentials, sign by the shifted prefix degree
    int pref = 0;
    for (int i = 1; i <= k; ++i) {
      int eps = pref + (i - 1);
      typename R::value_type s =
          eps % 2 == 0 ? coeff : ring.neg(coeff);
      for (const auto& [w, c] : cobar_boundary(
               ring, N, NCPoly<R>{{letters[i - 1], ring.one()}})) {
        auto nl = letters;
        nl[i - 1] = w;
        bar_add(ring, out, {nl, m}, ring.mul(s, c));
      }
      pref += degs[i - 1];
    }
    // merges of adjacent letters, same sign as the internal slot
    pref = degs.empty() ? 0 : degs[0];
    for (int i = 2; i <= k; ++i) {
      int eps = pref + (i - 1);
      typename R::value_type s =
          eps % 2 == 0 ? coeff : ring.neg(coeff);
      std::vector<Word> nl;
      nl.reserve(k - 1);
      for (int j = 0; j < i - 2; ++j) nl.push_back(letters[j]);
      Word merged = letters[i - 2];
      merged.insert(merged.end(), letters[i - 1].begin(), letters[i - 1].end());
      nl.push_back(std::move(merged));
      for (int j = i; j < k; ++j) nl.push_back(letters[j]);
      bar_add(ring, out, {nl, m}, s);
      pref += degs[i - 1];
    }
    // last letter acts on the module; internal module differential matches
    int eps_k = total + k;
    typename R::value_type sk =
        eps_k % 2 == 0 ? coeff : ring.neg(coeff);
    if (k >= 1) {
      auto img = M.act(letters.back(), m);
      std::vector<Word> nl(letters.begin(), letters.end() - 1);
      for (int mm = 0; mm < M.rank; ++mm)
        bar_add(ring, out, {nl, mm}, ring.mul(sk, img[mm]));
    }
    for (const auto& [rc, dv] : M.diff.ent)
      if (rc.second == m)
        bar_add(ring, out, {letters, rc.first}, ring.mul(sk, dv));
  }
  return out;
}

// ---------------------------------------------------------------------------
// comparison maps between the bar resolution and the twisted complex

// projection: kills tuples with two or more letters; a single letter peels
// off its first generator, the remainder acting on the module
template <class R>
TwistedPoly<R> bar_to_twisted(const R& ring, const NormalizedChains<R>& N,
                              const LoopModule<R>& M, const BarPoly<R>& poly) {
  if (N.cx.rank[0] != 1)
    throw std::invalid_argument("bar_to_twisted: needs a single vertex class");
  TwistedPoly<R> out;
  for (const auto& [key, coeff] : poly) {
    const auto& [letters, m] = key;
    if (letters.empty()) {
      tw_add(ring, out, 0, 0, m, coeff);
      continue;
    }
    if (letters.size() != 1) continue;
    const Word& a = letters[0];
    CobarGen c1 = a[0];
    Word rest(a.begin() + 1, a.end());
    if (rest.empty()) {
      tw_add(ring, out, c1.deg, c1.idx, m, coeff);
    } else {
      auto img = M.act(rest, m);
      for (int mm = 0; mm < M.rank; ++mm)
        tw_add(ring, out, c1.deg, c1.idx, mm, ring.mul(coeff, img[mm]));
    }
  }
  return out;
}

// section on the chain factor: iterate the reduced diagonal, all letters
// single generators, no signs
template <class R>
BarPoly<R> twisted_to_bar(const R& ring, const NormalizedChains<R>& N, int deg,
                          int idx, int m) {
  BarPoly<R> out;
  std::function<void(std::vector<Word>, int, int, typename R::value_type)> rec =
      [&](std::vector<Word> prefix, int d, int i, typename R::value_type c) {
        auto full = prefix;
        full.push_back(Word{{d, i}});
        bar_add(ring, out, {full, m}, c);
        for (const auto& [p, a, b, cc] : N.aw[d][i]) {
          if (p < 1 || p > d - 1) continue;
          auto np = prefix;
          np.push_back(Word{{p, a}});
          rec(std::move(np), d - p, b, ring.mul(c, cc));
        }
      };
  if (deg == 0) {
    bar_add(ring, out, {{}, m}, ring.one());
    return out;
  }
  rec({}, deg, idx, ring.one());
  return out;
}

// contracting candidate: splits the first generator off the last letter;
// the sign is the letter count plus the shifted prefix degree plus the
// degree of the split generator's shift
template <class R>
BarPoly<R> bar_homotopy(const R& ring, const BarPoly<R>& poly) {
  BarPoly<R> out;
  for (const auto& [key, coeff] : poly) {
    const auto& [letters, m] = key;
    int k = static_cast<int>(letters.size());
    if (k == 0) continue;
    const Word& last = letters.back();
    if (last.size() <= 1) continue;
    int pref = 0;
    for (int j = 0; j < k - 1; ++j) pref += word_degree(letters[j]);
    int expo = k + pref + (last[0].deg - 1);
    typename R::value_type s =
        expo % 2 == 0 ? coeff : ring.neg(coeff);
    std::vector<Word> nl(letters.begin(), letters.end() - 1);
    nl.push_back(Word{last[0]});
    nl.push_back(Word(last.begin() + 1, last.end()));
    bar_add(ring, out, {nl, m}, s);
  }
  return out;
}

// verifies (d h + h d - id) is nilpotent at x; returns the exponent, or -1
// if maxiter is exhausted; x must lie in the kernel of the projection
template <class R>
int homotopy_nilpotency_witness(const R& ring, const NormalizedChains<R>& N,
                                const LoopModule<R>& M, const BarPoly<R>& x,
                                int maxiter) {
  if (!bar_to_twisted(ring, N, M, x).empty())
    throw std::invalid_argument("homotopy witness: element not in the kernel");
  BarPoly<R> cur = x;
  for (int it = 1; it <= maxiter; ++it) {
    BarPoly<R> nxt;
    auto dh = bar_boundary(ring, N, M, bar_homotopy(ring, cur));
    auto hd = bar_homotopy(ring, bar_boundary(ring, N, M, cur));
    for (const auto& [k, c] : dh) bar_add(ring, nxt, k, c);
    for (const auto& [k, c] : hd) bar_add(ring, nxt, k, c);
    for (const auto& [k, c] : cur) bar_add(ring, nxt, k, ring.neg(c));
    cur = std::move(nxt);
    if (cur.empty()) return it;
  }
  return -1;
}

}  // namespace picobar
