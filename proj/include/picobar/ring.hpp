#pragma once

// Coefficient rings for exact linear algebra: the integers, the rationals,
// and prime fields with a runtime modulus. A ring is a small value object
// passed by const reference; element storage lives in the caller. Every
// operation is exact; there is no floating point anywhere downstream.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace picobar {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct ZRing {
  using value_type = Int;
  static constexpr bool is_field = false;

  Int zero() const { return Int(0); }
  Int one() const { return Int(1); }
  Int from_int(long long v) const { return Int(v); }
  Int add(const Int& a, const Int& b) const { return a + b; }
  Int sub(const Int& a, const Int& b) const { return a - b; }
  Int neg(const Int& a) const { return -a; }
  Int mul(const Int& a, const Int& b) const { return a * b; }
  bool is_zero(const Int& a) const { return a == 0; }
  bool is_unit(const Int& a) const { return a == 1 || a == -1; }
  Int inv(const Int& a) const {
    if (!is_unit(a)) throw std::domain_error("ZRing::inv: not a unit");
    return a;
  }
  bool eq(const Int& a, const Int& b) const { return a == b; }
  std::string to_string(const Int& a) const { return a.str(); }
  std::string name() const { return "Z"; }
};

struct QRing {
  using value_type = Rat;
  static constexpr bool is_field = true;

  Rat zero() const { return Rat(0); }
  Rat one() const { return Rat(1); }
  Rat from_int(long long v) const { return Rat(v); }
  Rat add(const Rat& a, const Rat& b) const { return a + b; }
  Rat sub(const Rat& a, const Rat& b) const { return a - b; }
  Rat neg(const Rat& a) const { return -a; }
  Rat mul(const Rat& a, const Rat& b) const { return a * b; }
  bool is_zero(const Rat& a) const { return a == 0; }
  bool is_unit(const Rat& a) const { return a != 0; }
  Rat inv(const Rat& a) const {
    if (a == 0) throw std::domain_error("QRing::inv: zero");
    return Rat(1) / a;
  }
  bool eq(const Rat& a, const Rat& b) const { return a == b; }
  std::string to_string(const Rat& a) const {
    // cpp_rational keeps lowest terms with positive denominator
    if (denominator(a) == 1) return numerator(a).str();
    return numerator(a).str() + "/" + denominator(a).str();
  }
  std::string name() const { return "Q"; }
};

// Prime field with the modulus chosen at runtime. Elements are canonical
// representatives in [0, p). The modulus must be an odd prime or 2 and must
// fit comfortably below 2^31 so products fit in __int128 intermediates.
struct FpRing {
  using value_type = std::int64_t;
  static constexpr bool is_field = true;

  std::int64_t p;

  explicit FpRing(std::int64_t prime) : p(prime) {
    if (prime < 2 || prime >= (std::int64_t(1) << 31))
      throw std::domain_error("FpRing: modulus out of range");
    for (std::int64_t d = 2; d * d <= prime; ++d)
      if (prime % d == 0) throw std::domain_error("FpRing: modulus not prime");
  }

  std::int64_t zero() const { return 0; }
  std::int64_t one() const { return p == 1 ? 0 : 1; }
  std::int64_t from_int(long long v) const {
    std::int64_t r = static_cast<std::int64_t>(v % p);
    return r < 0 ? r + p : r;
  }
  std::int64_t add(std::int64_t a, std::int64_t b) const {
    std::int64_t r = a + b;
    return r >= p ? r - p : r;
  }
  std::int64_t sub(std::int64_t a, std::int64_t b) const {
    std::int64_t r = a - b;
    return r < 0 ? r + p : r;
  }
  std::int64_t neg(std::int64_t a) const { return a == 0 ? 0 : p - a; }
  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % p);
  }
  bool is_zero(std::int64_t a) const { return a == 0; }
  bool is_unit(std::int64_t a) const { return a % p != 0; }
  std::int64_t inv(std::int64_t a) const {
    if (a % p == 0) throw std::domain_error("FpRing::inv: zero");
    // extended Euclid
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt; nt = tmp;
      tmp = r - q * nr;
      r = nr; nr = tmp;
    }
    return t < 0 ? t + p : t;
  }
  bool eq(std::int64_t a, std::int64_t b) const { return a == b; }
  std::string to_string(std::int64_t a) const { return std::to_string(a); }
  std::string name() const { return "F" + std::to_string(p); }
};

// Reduce an arbitrary-precision integer into a target ring.
template <class R>
typename R::value_type reduce_int(const R& ring, const Int& v) {
  if constexpr (std::is_same_v<R, ZRing>) {
    return v;
  } else if constexpr (std::is_same_v<R, QRing>) {
    return Rat(v);
  } else {
    Int m = v % Int(ring.p);
    if (m < 0) m += Int(ring.p);
    return static_cast<std::int64_t>(m);
  }
}

}  // namespace picobar
