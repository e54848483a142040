#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heckelab/hecke_core.hpp"

using namespace heckelab;

namespace {

std::shared_ptr<const FiniteGroup> gl22() {
  static auto g = FiniteGroup::build("gl", 2, 2);
  return g;
}
std::shared_ptr<const FiniteGroup> gl23() {
  static auto g = FiniteGroup::build("gl", 2, 3);
  return g;
}
std::shared_ptr<const FiniteGroup> gl32() {
  static auto g = FiniteGroup::build("gl", 3, 2);
  return g;
}
std::shared_ptr<const FiniteGroup> sl23() {
  static auto g = FiniteGroup::build("sl", 2, 3);
  return g;
}

}  // namespace

TEST_CASE("algebra dimensions") {
  CHECK(HeckeAlgebra(gl22(), Field::gf(2)).dim() == 2);
  CHECK(HeckeAlgebra(gl23(), Field::rationals()).dim() == 8);
  CHECK(HeckeAlgebra(gl32(), Field::gf(2)).dim() == 6);
  CHECK(HeckeAlgebra(sl23(), Field::gf(3)).dim() == 4);
}

TEST_CASE("quadratic data extracted from the oracle") {
  HeckeAlgebra H(gl23(), Field::gf(3));
  const auto& qd = H.quadratic(0);
  CHECK(qd.q_s == 3);
  CHECK(qd.c.size() == 2);
  long long sum = 0;
  for (const auto& [z, c] : qd.c) {
    CHECK(c == 1);
    sum += c;
  }
  CHECK(sum == qd.q_s - 1);
  CHECK(H.z_prime(0).size() == 2);

  HeckeAlgebra H2(gl22(), Field::gf(2));
  CHECK(H2.quadratic(0).q_s == 2);
  CHECK(H2.quadratic(0).c.size() == 1);
  CHECK(H2.quadratic(0).c.begin()->second == 1);

  // c(z) = c(z x s(x)^-1) for x in T
  const FiniteGroup& g = H.group();
  int ns = g.lift_simple(0);
  for (const auto& [z, c] : qd.c)
    for (int x : g.T().elems) {
      int sx = g.mul(g.mul(ns, x), g.inv(ns));
      int zz = g.mul(g.mul(z, x), g.inv(sx));
      auto it = qd.c.find(zz);
      REQUIRE(it != qd.c.end());
      CHECK(it->second == c);
    }
}

TEST_CASE("unit, quadratic relation, and oracle equivalence") {
  for (const Field* f : {Field::gf(3), static_cast<const Field*>(Field::rationals())}) {
    HeckeAlgebra H(gl23(), f);
    // unit
    for (int b = 0; b < H.dim(); ++b) {
      CHECK(H.one() * H.tau(b) == H.tau(b));
      CHECK(H.tau(b) * H.one() == H.tau(b));
    }
    // tau_{n_s}^2 = q_s tau_{n_s^2} + c_{n_s} tau_{n_s}
    int ns = H.group().lift_simple(0);
    HeckeElt lhs = H.tau_of_group(ns) * H.tau_of_group(ns);
    HeckeElt rhs = H.tau_of_group(H.group().mul(ns, ns)).scaled(Scalar::from_int(f, 3)) +
                   H.c_element(0) * H.tau_of_group(ns);
    CHECK(lhs == rhs);
    CHECK(H.oracle_matches_presentation());
    CHECK(H.presentation_associative_exhaustive());
  }
}

TEST_CASE("oracle equivalence across the grid") {
  CHECK(HeckeAlgebra(gl22(), Field::gf(2)).oracle_matches_presentation());
  CHECK(HeckeAlgebra(gl22(), Field::gf(2)).presentation_associative_exhaustive());
  CHECK(HeckeAlgebra(gl22(), Field::rationals()).presentation_associative_exhaustive());
  CHECK(HeckeAlgebra(gl22(), Field::rationals()).oracle_matches_presentation());
  CHECK(HeckeAlgebra(sl23(), Field::gf(3)).oracle_matches_presentation());
  CHECK(HeckeAlgebra(gl32(), Field::gf(2)).oracle_matches_presentation());
  CHECK(HeckeAlgebra(gl32(), Field::rationals()).presentation_associative_sampled(10000, 0));
}

TEST_CASE("tau over F3 for q=3: square collapses to the c term") {
  HeckeAlgebra H(gl23(), Field::gf(3));
  int ns = H.group().lift_simple(0);
  HeckeElt sq = H.tau_of_group(ns) * H.tau_of_group(ns);
  // q_s = 3 = 0, so the square is sum_z tau_{z n_s}
  CHECK(sq.terms().size() == 2);
  for (const auto& [b, c] : sq.terms()) {
    CHECK(H.basis_length(b) == 1);
    CHECK(c.is_one());
  }
}

TEST_CASE("star basis") {
  HeckeAlgebra H(gl32(), Field::gf(2));
  SUBCASE("length zero is plain tau") {
    for (int b = 0; b < H.dim(); ++b)
      if (H.basis_length(b) == 0) CHECK(H.star(b) == H.tau(b));
  }
  SUBCASE("star of n_s") {
    int b = H.basis_index(H.group().lift_simple(0));
    CHECK(H.star(b) == H.tau(b) - H.c_element(0));
  }
  SUBCASE("multiplicativity when lengths add") {
    int s1 = H.group().lift_simple(0), s2 = H.group().lift_simple(1);
    int prod = H.group().mul(s1, s2);
    CHECK(H.star(H.basis_index(prod)) ==
          H.star(H.basis_index(s1)) * H.star(H.basis_index(s2)));
  }
  SUBCASE("triangularity") {
    CHECK(H.star_triangular());
    CHECK(HeckeAlgebra(gl23(), Field::rationals()).star_triangular());
  }
}

TEST_CASE("characters are homomorphisms") {
  for (const Field* f : {Field::gf(3), static_cast<const Field*>(Field::rationals())}) {
    HeckeAlgebra H(gl23(), f);
    CHECK(H.character_is_homomorphism([&](int b) { return H.triv(b); }));
    CHECK(H.character_is_homomorphism([&](int b) { return H.sign(b); }));
    int ns = H.basis_index(H.group().lift_simple(0));
    CHECK(H.sign(ns) == Scalar::from_int(f, -1));
    if (f->characteristic() == 3) CHECK(H.triv(ns).is_zero());
    for (int t : H.group().T().elems) CHECK(H.triv(H.basis_index(t)).is_one());
  }
}

TEST_CASE("frobenius identities") {
  SUBCASE("char p") {
    auto rep = HeckeAlgebra(gl23(), Field::gf(3)).check_frobenius();
    CHECK(rep.trace_identity);
    CHECK(rep.gram_invertible);
    CHECK_FALSE(rep.applicable_symmetric);
  }
  SUBCASE("char 0") {
    auto rep = HeckeAlgebra(gl23(), Field::rationals()).check_frobenius();
    CHECK(rep.trace_identity);
    CHECK(rep.gram_invertible);
    CHECK(rep.applicable_symmetric);
    CHECK(rep.symmetric_case);
  }
  SUBCASE("delta picks the longest lift") {
    HeckeAlgebra H(gl23(), Field::gf(3));
    auto fd = H.frobenius();
    CHECK(H.delta(fd, H.tau_of_group(fd.lift)).is_one());
    CHECK(H.delta(fd, H.one()).is_zero());
    // iota is an involution for the default lift
    for (int b = 0; b < H.dim(); ++b) CHECK(fd.iota_perm[fd.iota_perm[b]] == b);
  }
  SUBCASE("alternative lift twist") {
    HeckeAlgebra H(gl23(), Field::gf(3));
    const FiniteGroup& g = H.group();
    int t = g.T().elems[1];
    int alt = g.mul(t, g.lift(g.datum().longest_element()));
    auto fd = H.frobenius(alt);
    for (int a = 0; a < H.dim(); ++a)
      for (int b = 0; b < H.dim(); ++b)
        CHECK(H.delta(fd, H.tau(a) * H.tau(b)) ==
              H.delta(fd, H.iota(fd, H.tau(b)) * H.tau(a)));
  }
}

TEST_CASE("levi embedding respects products and freeness") {
  auto g = gl23();
  HeckeAlgebra H(g, Field::gf(3));
  auto levi = g->levi({});
  HeckeAlgebra HT(levi, Field::gf(3));
  CHECK(HT.dim() == 4);
  // H_T is commutative
  for (int a = 0; a < HT.dim(); ++a)
    for (int b = 0; b < HT.dim(); ++b) CHECK(HT.tau(a) * HT.tau(b) == HT.tau(b) * HT.tau(a));
  auto emb = levi_embedding(HT, H);
  CHECK(emb.respects_products());

  // freeness: every basis tau_n of H is tau_m * tau_{n_d} for unique (m, d)
  auto g32 = gl32();
  HeckeAlgebra H3(g32, Field::gf(2));
  auto levi3 = g32->levi({0});
  HeckeAlgebra HM(levi3, Field::gf(2));
  auto emb3 = levi_embedding(HM, H3);
  CHECK(emb3.respects_products());
  auto reps = g32->datum().min_coset_reps({0});
  CHECK(reps.size() == 3);
  std::set<int> covered;
  for (int m = 0; m < HM.dim(); ++m)
    for (const auto& d : reps) {
      HeckeElt prod = H3.tau(emb3.map[m]) * H3.tau_of_group(g32->lift(d));
      REQUIRE(prod.terms().size() == 1);
      CHECK(prod.terms().begin()->second.is_one());
      covered.insert(prod.terms().begin()->first);
    }
  CHECK(static_cast<int>(covered.size()) == H3.dim());
}

TEST_CASE("iwahori idempotent") {
  SUBCASE("GL2(F3) over Q") {
    HeckeAlgebra H(gl23(), Field::rationals());
    HeckeElt e1 = H.iwahori_idempotent();
    CHECK(e1 * e1 == e1);
    for (int b = 0; b < H.dim(); ++b) CHECK(e1 * H.tau(b) == H.tau(b) * e1);
    CHECK(H.right_multiplication(e1).rank() == 2);  // dim e1 H = |W0|
    // (e1 tau_{n_s})^2 = q_s e1 + (q_s - 1) e1 tau_{n_s}
    HeckeElt t = e1 * H.tau_of_group(H.group().lift_simple(0));
    Scalar q = Scalar::from_int(H.coeff(), 3);
    Scalar qm1 = Scalar::from_int(H.coeff(), 2);
    CHECK(t * t == e1.scaled(q) + t.scaled(qm1));
  }
  SUBCASE("trivial torus cases") {
    HeckeAlgebra H22(gl22(), Field::gf(2));
    CHECK(H22.iwahori_idempotent() == H22.one());
    HeckeAlgebra H32(gl32(), Field::gf(3));
    CHECK(H32.iwahori_idempotent() == H32.one());
  }
  SUBCASE("precondition") {
    HeckeAlgebra H(sl23(), Field::gf(2));
    CHECK(H.group().T().size() == 2);
    CHECK_THROWS(H.iwahori_idempotent());
  }
}
