#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heckelab/rep_finite.hpp"

using namespace heckelab;

namespace {

struct Setup {
  std::shared_ptr<const FiniteGroup> g;
  std::shared_ptr<const FiniteGroup> levi;
  std::unique_ptr<HeckeAlgebra> H, HM;
  ParabolicContext ctx;
};

Setup make(const std::string& fam, int n, int q, const Field* f, std::vector<int> J) {
  Setup s;
  s.g = FiniteGroup::build(fam, n, q);
  s.levi = s.g->levi(J);
  s.H = std::make_unique<HeckeAlgebra>(s.g, f);
  s.HM = std::make_unique<HeckeAlgebra>(s.levi, f);
  s.ctx = parabolic_context(*s.HM, *s.H, J);
  return s;
}

}  // namespace

TEST_CASE("universal module dimensions and commuting actions") {
  auto s22 = make("gl", 2, 2, Field::gf(2), {});
  UniversalModule x22 = universal_module(*s22.H);
  CHECK(x22.rep.dim() == 3);
  CHECK(x22.actions_commute_sampled(200, 1));

  auto s23 = make("gl", 2, 3, Field::gf(3), {});
  UniversalModule x23 = universal_module(*s23.H);
  CHECK(x23.rep.dim() == 16);
  CHECK(x23.rep.homomorphism_sampled(500, 2));
  CHECK(x23.actions_commute_sampled(100, 3));

  // X^U is isomorphic to H as a right H-module
  Invariants inv = u_invariants(x23.rep, *s23.H);
  CHECK(inv.mod.rank() == 8);
  CHECK(find_module_isomorphism(inv.mod, HeckeModule::regular(s23.H.get())).has_value());
}

TEST_CASE("u-invariants of standard representations") {
  auto s = make("gl", 2, 3, Field::gf(3), {});
  GroupRep triv = GroupRep::trivial(s.g, Field::gf(3));
  Invariants it = u_invariants(triv, *s.H);
  CHECK(it.mod.rank() == 1);
  CHECK(find_module_isomorphism(it.mod, HeckeModule::trivial_character(s.H.get())).has_value());
  auto s22 = make("gl", 2, 2, Field::gf(2), {});
  GroupRep reg = GroupRep::regular(s22.g, Field::gf(2));
  CHECK(u_invariants(reg, *s22.H).mod.rank() == 3);
  GroupRep trivT = GroupRep::trivial(s.levi, Field::gf(3));
  GroupRep indB = parabolic_induce(trivT, s.g, {});
  CHECK(indB.dim() == 4);
  CHECK(u_invariants(indB, *s.H).mod.rank() == 2);
}

TEST_CASE("tensor_X") {
  SUBCASE("H tensor_H X recovers X") {
    auto s = make("gl", 2, 3, Field::gf(3), {});
    UniversalModule X = universal_module(*s.H);
    GroupRep t = tensor_X(HeckeModule::regular(s.H.get()), X);
    CHECK(t.dim() == X.rep.dim());
    CHECK(find_rep_isomorphism(t, X.rep).has_value());
  }
  SUBCASE("Triv_H tensor X over Q has dimension 1") {
    for (auto [fam, n, q] : std::vector<std::tuple<std::string, int, int>>{
             {"gl", 2, 2}, {"gl", 2, 3}}) {
      auto g = FiniteGroup::build(fam, n, q);
      HeckeAlgebra H(g, Field::rationals());
      UniversalModule X = universal_module(H);
      GroupRep t = tensor_X(HeckeModule::trivial_character(&H), X);
      CHECK(t.dim() == 1);
    }
  }
  SUBCASE("Sign_H tensor X over F2 is reproducible") {
    auto g = FiniteGroup::build("gl", 2, 2);
    HeckeAlgebra H(g, Field::gf(2));
    UniversalModule X = universal_module(H);
    int d1 = tensor_X(HeckeModule::sign_character(&H), X).dim();
    int d2 = tensor_X(HeckeModule::sign_character(&H), X).dim();
    CHECK(d1 == d2);
  }
}

TEST_CASE("parabolic induction dimensions") {
  auto s = make("gl", 2, 3, Field::gf(3), {});
  GroupRep trivT = GroupRep::trivial(s.levi, Field::gf(3));
  CHECK(parabolic_induce(trivT, s.g, {}).dim() == 4);
  auto s32 = make("gl", 3, 2, Field::gf(2), {0});
  GroupRep trivM = GroupRep::trivial(s32.levi, Field::gf(2));
  CHECK(parabolic_induce(trivM, s32.g, {0}).dim() == 7);
  auto sfull = make("gl", 2, 3, Field::gf(3), {0});
  GroupRep reg = GroupRep::regular(sfull.levi, Field::gf(3));
  GroupRep ind = parabolic_induce(reg, sfull.g, {0});
  CHECK(ind.dim() == reg.dim());
}

TEST_CASE("N-invariants, coinvariants and duality") {
  auto s = make("gl", 2, 3, Field::gf(3), {});
  GroupRep reg = GroupRep::regular(s.g, Field::gf(3));
  GroupRep inv = n_invariants(reg, {});
  GroupRep coinv = n_coinvariants(reg, {});
  CHECK(inv.dim() == 16);
  CHECK(coinv.dim() == 16);
  GroupRep dual = reg.contragredient();
  CHECK(n_invariants(dual, {}).dim() == coinv.dim());
  GroupRep triv = GroupRep::trivial(s.g, Field::gf(3));
  CHECK(n_invariants(triv, {}).dim() == 1);
}

TEST_CASE("dagger") {
  auto s = make("gl", 2, 3, Field::gf(3), {});
  GroupRep triv = GroupRep::trivial(s.g, Field::gf(3));
  CHECK(dagger(triv).dim() == 1);
  UniversalModule X = universal_module(*s.H);
  CHECK(dagger(X.rep).dim() == X.rep.dim());
  GroupRep regT = GroupRep::regular(s.levi, Field::gf(3));
  CHECK(check_dagger_commutes(regT, s.ctx));
}

TEST_CASE("diagram Q1") {
  SUBCASE("GL2(F3)/F3, J empty, trivial and regular torus reps") {
    auto s = make("gl", 2, 3, Field::gf(3), {});
    CHECK(check_diag_q1(GroupRep::trivial(s.levi, Field::gf(3)), s.ctx));
    CHECK(check_diag_q1(GroupRep::regular(s.levi, Field::gf(3)), s.ctx));
  }
  SUBCASE("GL2(F2)/Q, J empty, regular rep of T") {
    auto s = make("gl", 2, 2, Field::rationals(), {});
    CHECK(check_diag_q1(GroupRep::regular(s.levi, Field::rationals()), s.ctx));
  }
  SUBCASE("GL3(F2)/F2, J = {0}, trivial") {
    auto s = make("gl", 3, 2, Field::gf(2), {0});
    CHECK(check_diag_q1(GroupRep::trivial(s.levi, Field::gf(2)), s.ctx));
  }
}

TEST_CASE("diagram Q2") {
  SUBCASE("X for GL2(F3)/F3, J empty") {
    auto s = make("gl", 2, 3, Field::gf(3), {});
    CHECK(check_diag_q2(universal_module(*s.H).rep, s.ctx));
    CHECK(check_diag_q2(GroupRep::trivial(s.g, Field::gf(3)), s.ctx));
  }
  SUBCASE("Ind_B^G(1) for GL3(F2), J = {1}") {
    auto s = make("gl", 3, 2, Field::gf(2), {1});
    auto t = s.g->levi({});
    GroupRep trivT = GroupRep::trivial(t, Field::gf(2));
    GroupRep indB = parabolic_induce(trivT, s.g, {});
    CHECK(check_diag_q2(indB, s.ctx));
  }
}

TEST_CASE("Q3 in char != p and its char-p failure") {
  SUBCASE("GL2(F3)/Q, regular rep") {
    auto s = make("gl", 2, 3, Field::rationals(), {});
    CHECK(check_q3_char_ne_p(GroupRep::regular(s.g, Field::rationals()), s.ctx));
    CHECK(check_q3_char_ne_p(GroupRep::trivial(s.g, Field::rationals()), s.ctx));
  }
  SUBCASE("GL2(F3)/F2 (ell = 2 != p = 3), X") {
    auto s = make("gl", 2, 3, Field::gf(2), {});
    CHECK(check_q3_char_ne_p(universal_module(*s.H).rep, s.ctx));
  }
  SUBCASE("char = p throws the precondition") {
    auto s = make("gl", 2, 3, Field::gf(3), {});
    CHECK_THROWS(check_q3_char_ne_p(GroupRep::trivial(s.g, Field::gf(3)), s.ctx));
  }
}

TEST_CASE("projectivity defect and q3 witness") {
  SUBCASE("GL2(F2)/F2") {
    auto g = FiniteGroup::build("gl", 2, 2);
    HeckeAlgebra H(g, Field::gf(2));
    auto [dimX, bound] = projectivity_defect(H);
    CHECK(dimX == 3);
    CHECK(bound == 4);
    CHECK(dimX < bound);
    Q3Witness w = q3_witness(H);
    CHECK(w.full_dim == 2);
    CHECK(w.image_dim == 1);
    CHECK_FALSE(w.surjective);
    CHECK_FALSE(w.unit_in_image);
  }
  SUBCASE("GL2(F3)/F3") {
    auto g = FiniteGroup::build("gl", 2, 3);
    HeckeAlgebra H(g, Field::gf(3));
    auto [dimX, bound] = projectivity_defect(H);
    CHECK(dimX == 16);
    CHECK(bound == 24);
    Q3Witness w = q3_witness(H);
    CHECK(w.image_dim < 8);
  }
  SUBCASE("GL3(F2)/F2") {
    auto g = FiniteGroup::build("gl", 3, 2);
    HeckeAlgebra H(g, Field::gf(2));
    auto [dimX, bound] = projectivity_defect(H);
    CHECK(dimX == 21);
    CHECK(bound == 48);
  }
  SUBCASE("control over Q is surjective") {
    for (auto [fam, n, q] : std::vector<std::tuple<std::string, int, int>>{
             {"gl", 2, 2}, {"gl", 2, 3}}) {
      auto g = FiniteGroup::build(fam, n, q);
      HeckeAlgebra H(g, Field::rationals());
      Q3Witness w = q3_witness(H);
      CHECK(w.surjective);
      CHECK(w.unit_in_image);
    }
  }
}

TEST_CASE("contragredient identities") {
  auto s = make("gl", 2, 3, Field::gf(3), {});
  GroupRep regT = GroupRep::regular(s.levi, Field::gf(3));
  CHECK(check_contra_ind(regT, s.ctx));
  auto s22 = make("gl", 2, 2, Field::gf(2), {});
  GroupRep trivT = GroupRep::trivial(s22.levi, Field::gf(2));
  CHECK(check_contra_ind(trivT, s22.ctx));
}

TEST_CASE("U-invariants functor is left exact on subrepresentations") {
  auto s = make("gl", 2, 3, Field::gf(3), {});
  GroupRep trivT = GroupRep::trivial(s.levi, Field::gf(3));
  GroupRep V = parabolic_induce(trivT, s.g, {});
  // W = the constant-function line, a subrepresentation of V
  Mat wbasis(Field::gf(3), 1, V.dim());
  for (int c = 0; c < V.dim(); ++c) wbasis.at(0, c) = Scalar::from_int(Field::gf(3), 1);
  for (int gen : s.g->group_gens())
    CHECK(rowspace_contains(wbasis, wbasis.row(0) * V.act(gen).transpose()));
  Invariants vu = u_invariants(V, *s.H);
  // W^U = W cap V^U as subspaces
  Mat inter = intersect_rowspaces(wbasis, vu.basis);
  CHECK(inter.rank() == 1);  // the line is U-fixed, so W^U = W
}

TEST_CASE("group-side adjunctions by solver") {
  auto s = make("gl", 2, 3, Field::gf(3), {});
  GroupRep V = GroupRep::regular(s.levi, Field::gf(3));
  GroupRep W = parabolic_induce(GroupRep::trivial(s.levi, Field::gf(3)), s.g, {});
  GroupRep ind = parabolic_induce(V, s.g, {});
  CHECK(group_hom_dim(ind, W) == group_hom_dim(V, n_invariants(W, {})));
  CHECK(group_hom_dim(W, ind) == group_hom_dim(n_coinvariants(W, {}), V));
}
