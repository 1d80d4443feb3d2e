#include <catch2/catch_amalgamated.hpp>

#include "picobar/sset.hpp"

using namespace picobar;

TEST_CASE("degeneracy words rewrite to canonical form") {
  CHECK(canonical_degeneracy_word({0, 0}) == std::vector<int>{1, 0});
  CHECK(canonical_degeneracy_word({0, 1, 0}) == std::vector<int>{2, 1, 0});
  CHECK(canonical_degeneracy_word({2, 0}) == std::vector<int>{2, 0});
  CHECK(canonical_degeneracy_word({}) == std::vector<int>{});
  CHECK(canonical_degeneracy_word({1, 1, 1}) == std::vector<int>{3, 2, 1});
}

TEST_CASE("group construction and validation") {
  auto z4 = cyclic_group(4);
  CHECK(z4.e == 0);
  CHECK(z4.inv[1] == 3);
  auto s3 = symmetric_group_3();
  CHECK(s3.n == 6);
  int noncommute = 0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      if (s3.mul(a, b) != s3.mul(b, a)) ++noncommute;
  CHECK(noncommute > 0);

  auto bad = cyclic_group(3).table;
  bad[1][1] = 1;  // breaks associativity/inverses
  CHECK_THROWS(FiniteGroup::from_table(bad));
}

TEST_CASE("nerve nondegenerate counts") {
  auto n2 = nerve_of_group(cyclic_group(2), 2);
  CHECK(n2.X.nondeg_count(0) == 1);
  CHECK(n2.X.nondeg_count(1) == 1);
  CHECK(n2.X.nondeg_count(2) == 1);

  auto n3 = nerve_of_group(cyclic_group(3), 2);
  CHECK(n3.X.nondeg_count(0) == 1);
  CHECK(n3.X.nondeg_count(1) == 2);
  CHECK(n3.X.nondeg_count(2) == 4);

  auto s3 = nerve_of_group(symmetric_group_3(), 2);
  CHECK(s3.X.nondeg_count(1) == 5);
  CHECK(s3.X.nondeg_count(2) == 25);
}

TEST_CASE("level basis counts include degenerate simplices") {
  auto n2 = nerve_of_group(cyclic_group(2), 2);
  CHECK(n2.X.level_basis(0).size() == 1);
  CHECK(n2.X.level_basis(1).size() == 2);
  CHECK(n2.X.level_basis(2).size() == 4);
  // nondegenerate simplices come first
  auto lvl2 = n2.X.level_basis(2);
  CHECK(lvl2[0].word.empty());
}

TEST_CASE("face and degeneracy identities hold on all simplices") {
  auto nv = nerve_of_group(cyclic_group(3), 3);
  const auto& X = nv.X;
  for (int n = 1; n + 1 <= X.D; ++n) {
    for (const SimplexRef& x : X.level_basis(n)) {
      for (int j = 0; j <= n; ++j) {
        SimplexRef sx = X.degenerate(x, j);
        for (int i = 0; i <= n + 1; ++i) {
          SimplexRef lhs = X.face(sx, i);
          if (i < j) {
            CHECK(lhs == X.degenerate(X.face(x, i), j - 1));
          } else if (i == j || i == j + 1) {
            CHECK(lhs == x);
          } else {
            CHECK(lhs == X.degenerate(X.face(x, i - 1), j));
          }
        }
      }
      // s_i s_j = s_{j+1} s_i for i <= j
      if (n + 2 <= X.D) {
        for (int j = 0; j <= n; ++j)
          for (int i = 0; i <= j; ++i)
            CHECK(X.degenerate(X.degenerate(x, j), i) ==
                  X.degenerate(X.degenerate(x, i), j + 1));
      }
    }
  }
}

TEST_CASE("structural check rejects corrupted face tables") {
  auto nv = nerve_of_group(cyclic_group(3), 3);
  auto broken = nv.X;
  // reroute one face of a 3-simplex to a different 2-simplex
  int other = (broken.faces[3][0][1].base_idx + 1) % broken.nondeg_count(2);
  broken.faces[3][0][1] = broken.nondeg(2, other);
  CHECK_THROWS_AS(broken.check(), std::invalid_argument);

  auto wrong_dim = nv.X;
  wrong_dim.faces[2][0][0] = wrong_dim.nondeg(2, 0);
  CHECK_THROWS_AS(wrong_dim.check(), std::invalid_argument);
}

TEST_CASE("nerve tuple references handle identity entries") {
  auto nv = nerve_of_group(cyclic_group(3), 3);
  SimplexRef r = nv.ref_of_tuple({1, 0, 2});  // middle entry is the identity
  CHECK(r.base_dim == 2);
  CHECK(r.word == std::vector<int>{1});
  CHECK(nv.tuples[2][r.base_idx] == std::vector<int>{1, 2});

  SimplexRef r2 = nv.ref_of_tuple({0, 0, 0});
  CHECK(r2.base_dim == 0);
  CHECK(r2.word == std::vector<int>{2, 1, 0});
}

TEST_CASE("fundamental twisting morphism satisfies all four equations") {
  for (int m : {2, 3, 4}) {
    auto nv = nerve_of_group(cyclic_group(m), 3);
    auto t = fundamental_twisting_morphism(nv);
    CHECK(t.verify().empty());
  }
  auto s3 = nerve_of_group(symmetric_group_3(), 3);
  auto t = fundamental_twisting_morphism(s3);
  CHECK(t.verify().empty());
}

TEST_CASE("twisting morphism verification catches violations") {
  auto nv = nerve_of_group(cyclic_group(3), 3);
  auto t = fundamental_twisting_morphism(nv);
  t.val[2][0] = nv.G.mul(t.val[2][0], 1);  // perturb one value
  auto v = t.verify();
  CHECK(!v.empty());
  bool eq2_seen = false;
  for (const auto& viol : v) eq2_seen = eq2_seen || viol.eq == 2;
  CHECK(eq2_seen);
}

TEST_CASE("twisted cartesian product is a valid simplicial set") {
  auto nv = nerve_of_group(cyclic_group(3), 3);
  auto t = fundamental_twisting_morphism(nv);
  auto prod = twisted_cartesian_product(nv.X, nv.G, t);
  CHECK(prod.P.nondeg_count(0) == 3);
  CHECK(prod.P.nondeg_count(1) == 6);
  CHECK(prod.P.nondeg_count(2) == 12);
  // d_0 twists: d_0((g1), g) = (*, g*g1)
  SimplexRef edge = nv.X.nondeg(1, 0);
  int g1 = nv.tuples[1][0][0];
  for (int g = 0; g < 3; ++g) {
    const SimplexRef& f0 = prod.P.faces[1][0 * 3 + g][0];
    CHECK(f0.base_idx == nv.G.mul(g, g1));
    const SimplexRef& f1 = prod.P.faces[1][0 * 3 + g][1];
    CHECK(f1.base_idx == g);
  }
  (void)edge;
}

TEST_CASE("circle and wedge") {
  auto c = minimal_circle(3);
  CHECK(c.nondeg_count(0) == 1);
  CHECK(c.nondeg_count(1) == 1);
  CHECK(c.nondeg_count(2) == 0);
  CHECK(c.level_basis(2).size() == 3);  // s0 a, s1 a, s1 s0 *
  auto w = wedge_of_circles(2, 3);
  CHECK(w.nondeg_count(1) == 2);
}

TEST_CASE("nerve maps from group homomorphisms are simplicial") {
  auto a = nerve_of_group(cyclic_group(4), 3);
  auto b = nerve_of_group(cyclic_group(2), 3);
  GroupHom h;
  h.src = &a.G;
  h.dst = &b.G;
  h.img = {0, 1, 0, 1};
  auto f = nerve_map(a, b, h);  // check() runs inside
  // (2) maps to the degenerate vertex, (1,2) maps to s-something of (1)
  SimplexRef r = f.apply(a.X.nondeg(1, 1));  // tuple (2)
  CHECK(r.base_dim == 0);

  GroupHom badh;
  badh.src = &a.G;
  badh.dst = &b.G;
  badh.img = {0, 1, 1, 1};
  CHECK_THROWS(nerve_map(a, b, badh));
}
