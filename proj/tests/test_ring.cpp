#include <catch2/catch_amalgamated.hpp>

#include "picobar/ring.hpp"

#include <random>

using namespace picobar;

TEST_CASE("integer ring basics") {
  ZRing z;
  CHECK(z.add(z.from_int(3), z.from_int(-5)) == z.from_int(-2));
  CHECK(z.mul(z.from_int(7), z.from_int(6)) == z.from_int(42));
  CHECK(z.is_unit(z.from_int(-1)));
  CHECK(!z.is_unit(z.from_int(2)));
  CHECK(z.inv(z.from_int(-1)) == z.from_int(-1));
  CHECK_THROWS(z.inv(z.from_int(2)));
  // no overflow: (2^80)^2
  Int big = Int(1) << 80;
  CHECK(z.mul(big, big) == Int(1) << 160);
}

TEST_CASE("rationals normalize") {
  QRing q;
  Rat a(6, 4);  // 3/2
  CHECK(q.to_string(a) == "3/2");
  CHECK(q.eq(q.add(Rat(1, 3), Rat(1, 6)), Rat(1, 2)));
  CHECK(q.eq(q.mul(Rat(2, 3), Rat(3, 2)), q.one()));
  CHECK(q.to_string(Rat(-4, 2)) == "-2");
  CHECK_THROWS(q.inv(q.zero()));
}

TEST_CASE("prime field arithmetic") {
  FpRing f5(5);
  CHECK(f5.add(3, 4) == 2);
  CHECK(f5.neg(2) == 3);
  CHECK(f5.from_int(-7) == 3);
  for (std::int64_t a = 1; a < 5; ++a)
    CHECK(f5.mul(a, f5.inv(a)) == 1);
  CHECK_THROWS(f5.inv(0));
  CHECK_THROWS(FpRing(4));
  CHECK_THROWS(FpRing(1));

  FpRing f2(2);
  CHECK(f2.add(1, 1) == 0);
  CHECK(f2.inv(1) == 1);

  // large prime: products exceed 64 bits before reduction
  FpRing big(2147483647);
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    std::int64_t a = rng() % big.p;
    if (a == 0) a = 1;
    CHECK(big.mul(a, big.inv(a)) == 1);
  }
}

TEST_CASE("integral reduction into each ring") {
  ZRing z;
  QRing q;
  FpRing f3(3);
  Int v = Int("-1000000000000000000000007");
  CHECK(reduce_int(z, v) == v);
  CHECK(reduce_int(q, v) == Rat(v));
  Int m = v % 3;
  if (m < 0) m += 3;
  CHECK(reduce_int(f3, v) == static_cast<std::int64_t>(m));
}
