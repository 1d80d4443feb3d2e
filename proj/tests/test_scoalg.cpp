#include <catch2/catch_amalgamated.hpp>

#include "picobar/scoalg.hpp"

using namespace picobar;

namespace {
const ZRing Z;
}

TEST_CASE("free coalgebra level ranks count degenerate simplices") {
  auto nv = nerve_of_group(cyclic_group(2), 2);
  auto C = free_coalgebra(Z, nv.X);
  CHECK(C.rank == std::vector<int>{1, 2, 4});
  CHECK(C.nondeg_rank == std::vector<int>{1, 1, 1});
  C.verify_simplicial_identities(Z);
  C.verify_coalgebra(Z);
}

TEST_CASE("free coalgebra is valid on nerves and circles") {
  auto n3 = nerve_of_group(cyclic_group(3), 3);
  auto C = free_coalgebra(Z, n3.X);
  C.verify_simplicial_identities(Z);
  C.verify_coalgebra(Z);

  auto circ = free_coalgebra(Z, minimal_circle(3));
  circ.verify_simplicial_identities(Z);
  circ.verify_coalgebra(Z);

  FpRing f2(2);
  auto Cf = free_coalgebra(f2, n3.X);
  Cf.verify_simplicial_identities(f2);
  Cf.verify_coalgebra(f2);
}

TEST_CASE("group ring bialgebra passes its own laws") {
  auto A = FiniteBialgebra<ZRing>::group_ring(Z, symmetric_group_3());
  CHECK(A.rank == 6);
  CHECK(A.antipode.has_value());
  // antipode of a group-like is its inverse
  auto s3 = symmetric_group_3();
  for (int g = 0; g < 6; ++g) {
    auto v = mat_apply(Z, *A.antipode, A.basis_vec(Z, g));
    CHECK(v[s3.inv[g]] == 1);
  }
}

TEST_CASE("bialgebra validation rejects broken structures") {
  auto A = FiniteBialgebra<ZRing>::group_ring(Z, cyclic_group(3));
  auto bad = A;
  bad.mult[1][1] = {{0, Int(1)}};  // breaks associativity/compatibility
  CHECK_THROWS(bad.check(Z));
  auto bad2 = A;
  bad2.coprod[1] = {{1, 2, Int(1)}};
  CHECK_THROWS(bad2.check(Z));
}

TEST_CASE("linearized fundamental cochain satisfies the twisting equations") {
  for (int m : {2, 3}) {
    auto nv = nerve_of_group(cyclic_group(m), 3);
    auto t = fundamental_twisting_morphism(nv);
    auto C = free_coalgebra(Z, nv.X);
    auto A = FiniteBialgebra<ZRing>::group_ring(Z, nv.G);
    auto tau = linearize_twisting_morphism(Z, C, A, t);
    CHECK(tau.verify(Z, true).empty());

    FpRing fp(m == 2 ? 2 : 3);
    auto Cf = free_coalgebra(fp, nv.X);
    auto Af = FiniteBialgebra<FpRing>::group_ring(fp, nv.G);
    auto tauf = linearize_twisting_morphism(fp, Cf, Af, t);
    CHECK(tauf.verify(fp, true).empty());
  }
}

TEST_CASE("twisting cochain verification flags perturbations") {
  auto nv = nerve_of_group(cyclic_group(3), 3);
  auto t = fundamental_twisting_morphism(nv);
  auto C = free_coalgebra(Z, nv.X);
  auto A = FiniteBialgebra<ZRing>::group_ring(Z, nv.G);
  auto tau = linearize_twisting_morphism(Z, C, A, t);
  // move the value on one nondegenerate 2-simplex to a different group element
  std::vector<Int> v(A.rank, Int(0));
  v[1] = 2;  // not even group-like
  tau.tau[2][0] = v;
  auto viol = tau.verify(Z, true);
  CHECK(!viol.empty());
}

TEST_CASE("twisted tensor product is a simplicial coalgebra") {
  for (int m : {2, 3}) {
    auto nv = nerve_of_group(cyclic_group(m), 3);
    auto t = fundamental_twisting_morphism(nv);
    auto C = free_coalgebra(Z, nv.X);
    auto A = FiniteBialgebra<ZRing>::group_ring(Z, nv.G);
    auto tau = linearize_twisting_morphism(Z, C, A, t);
    auto T = simplicial_twisted_tensor(Z, C, A, tau);
    T.verify_simplicial_identities(Z);
    T.verify_coalgebra(Z);
    CHECK(T.basis_aligned());
  }
}

TEST_CASE("both twisted product constructions agree entrywise") {
  for (int m : {2, 3}) {
    auto nv = nerve_of_group(cyclic_group(m), 3);
    auto t = fundamental_twisting_morphism(nv);
    auto rep = compare_with_twisted_cartesian(Z, nv.X, nv.G, t);
    INFO((rep.mismatches.empty() ? std::string() : rep.mismatches[0]));
    CHECK(rep.equal);

    FpRing fp(5);
    auto repf = compare_with_twisted_cartesian(fp, nv.X, nv.G, t);
    CHECK(repf.equal);
  }
}
