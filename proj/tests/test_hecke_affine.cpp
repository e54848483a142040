#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "heckelab/hecke_affine.hpp"

using namespace heckelab;

namespace {

// independent oracle: monomial matrices over Laurent monomials u pi^k
struct Mono {
  bool zero = true;
  int unit = 1;
  int expo = 0;
};
struct MonoMat {
  int n;
  const Field* gf;
  std::vector<Mono> a;
  MonoMat(int n_, const Field* f) : n(n_), gf(f), a(n_ * n_) {}
  Mono& at(int i, int j) { return a[i * n + j]; }
  const Mono& at(int i, int j) const { return a[i * n + j]; }
};

MonoMat to_matrix(const ProPAlgebra& A, const ProPWeyl& w) {
  MonoMat m(A.n(), A.unit_field());
  for (int j = 0; j < A.n(); ++j) {
    Mono& e = m.at(w.sigma(j), j);
    e.zero = false;
    e.unit = w.unit[j];
    e.expo = w.val[j];
  }
  return m;
}

MonoMat matmul(const MonoMat& x, const MonoMat& y) {
  MonoMat r(x.n, x.gf);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) {
      for (int k = 0; k < x.n; ++k) {
        if (x.at(i, k).zero || y.at(k, j).zero) continue;
        Mono& e = r.at(i, j);
        if (!e.zero) throw std::logic_error("not monomial");
        e.zero = false;
        e.unit = x.gf->mul(x.at(i, k).unit, y.at(k, j).unit);
        e.expo = x.at(i, k).expo + y.at(k, j).expo;
      }
    }
  return r;
}

bool same(const MonoMat& x, const MonoMat& y) {
  for (size_t i = 0; i < x.a.size(); ++i) {
    if (x.a[i].zero != y.a[i].zero) return false;
    if (!x.a[i].zero && (x.a[i].unit != y.a[i].unit || x.a[i].expo != y.a[i].expo))
      return false;
  }
  return true;
}

std::vector<ProPWeyl> box_elements(const ProPAlgebra& A, int vmax) {
  std::vector<ProPWeyl> out;
  int n = A.n(), q = A.q();
  std::vector<Perm> perms;
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end());
  do {
    Perm p(n);
    p.p = idx;
    perms.push_back(p);
  } while (std::next_permutation(idx.begin(), idx.end()));
  int span = 2 * vmax + 1;
  long long vcount = 1, ucount = 1;
  for (int i = 0; i < n; ++i) vcount *= span, ucount *= (q - 1);
  for (const auto& p : perms)
    for (long long vv = 0; vv < vcount; ++vv)
      for (long long uu = 0; uu < ucount; ++uu) {
        ProPWeyl w{p, IntVec(n), std::vector<int>(n)};
        long long v = vv, u = uu;
        for (int i = 0; i < n; ++i) {
          w.val[i] = static_cast<int>(v % span) - vmax;
          v /= span;
          w.unit[i] = 1 + static_cast<int>(u % (q - 1));
          u /= (q - 1);
        }
        if (A.member(w)) out.push_back(w);
      }
  return out;
}

int brute_length(const ProPAlgebra& A, const ProPWeyl& w, int levels) {
  int count = 0;
  const RootDatum& d = A.datum();
  for (const auto& a : d.positive_roots())
    for (int s = 0; s < 2; ++s) {
      IntVec alpha(a.size());
      for (size_t i = 0; i < a.size(); ++i) alpha[i] = s == 0 ? a[i] : -a[i];
      for (int r = -levels; r <= levels; ++r) {
        AffineRoot ar{alpha, r};
        if (!d.affine_positive(ar)) continue;
        int c = 0;
        for (int i = 0; i < A.n(); ++i) c += w.val[i] * alpha[i];
        AffineRoot img{d.apply(w.sigma, alpha), r + c};
        if (!d.affine_positive(img)) ++count;
      }
    }
  return count;
}

}  // namespace

TEST_CASE("matrix model equivalence of W(1)") {
  for (int q : {2, 3}) {
    ProPAlgebra A("gl", 2, q, Field::gf(q == 2 ? 2 : 3));
    auto elems = box_elements(A, 2);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 4000; ++trial) {
      const auto& a = elems[rng() % elems.size()];
      const auto& b = elems[rng() % elems.size()];
      ProPWeyl c = A.mul(a, b);
      CHECK(same(matmul(to_matrix(A, a), to_matrix(A, b)), to_matrix(A, c)));
      CHECK(A.mul(a, A.inverse(a)) == A.identity());
    }
  }
}

TEST_CASE("length oracle and examples") {
  ProPAlgebra A("gl", 2, 3, Field::gf(3));
  // kernel of the projection has length 0
  CHECK(A.length(A.unit_torus({2, 2})) == 0);
  CHECK(A.length(A.translation({1, 1})) == 0);
  CHECK(A.length(A.translation({1, 0})) == 1);
  CHECK(A.length(A.lift_saff(0)) == 1);
  CHECK(A.length(A.lift_saff(1)) == 1);
  for (const auto& w : box_elements(A, 2))
    CHECK(A.length(w) == brute_length(A, w, 4));
  ProPAlgebra S("sl", 2, 3, Field::gf(3));
  for (const auto& w : box_elements(S, 2))
    CHECK(S.length(w) == brute_length(S, w, 4));
}

TEST_CASE("presentation basics") {
  ProPAlgebra A("gl", 2, 3, Field::gf(3));
  SUBCASE("translations multiply by the braid relation") {
    auto lhs = A.mul(A.tau(A.translation({1, 0})), A.tau(A.translation({1, 0})));
    CHECK(lhs == A.tau(A.translation({2, 0})));
  }
  SUBCASE("quadratic relation at the affine node") {
    int s0 = 1;  // affine node index for gl2 (finite node first)
    CHECK(A.saff_is_affine_node(s0));
    const ProPWeyl& ns = A.lift_saff(s0);
    auto lhs = A.mul(A.tau(ns), A.tau(ns));
    auto rhs = A.add(A.scale(A.tau(A.mul(ns, ns)), Scalar::from_int(A.coeff(), 3)),
                     A.mul(A.c_element(s0), A.tau(ns)));
    CHECK(lhs == rhs);
  }
  SUBCASE("inverse over Q") {
    ProPAlgebra AQ("gl", 2, 3, Field::rationals());
    for (int s = 0; s < AQ.num_saff(); ++s) {
      auto inv = AQ.inverse_of_basis(AQ.lift_saff(s));
      CHECK(AQ.mul(AQ.tau(AQ.lift_saff(s)), inv) == AQ.one());
    }
    auto t = AQ.translation({2, -1});
    CHECK(AQ.mul(AQ.tau(t), AQ.inverse_of_basis(t)) == AQ.one());
  }
  SUBCASE("associativity sampled") {
    std::mt19937_64 rng(11);
    auto elems = box_elements(A, 1);
    std::vector<ProPWeyl> small;
    for (const auto& w : elems)
      if (A.length(w) <= 4) small.push_back(w);
    for (int i = 0; i < 200; ++i) {
      const auto& a = small[rng() % small.size()];
      const auto& b = small[rng() % small.size()];
      const auto& c = small[rng() % small.size()];
      auto lhs = A.mul(A.mul(A.tau(a), A.tau(b)), A.tau(c));
      auto rhs = A.mul(A.tau(a), A.mul(A.tau(b), A.tau(c)));
      CHECK(lhs == rhs);
    }
  }
  SUBCASE("associativity over Q") {
    ProPAlgebra AQ("gl", 2, 2, Field::rationals());
    auto elems = box_elements(AQ, 1);
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
      const auto& a = elems[rng() % elems.size()];
      const auto& b = elems[rng() % elems.size()];
      const auto& c = elems[rng() % elems.size()];
      CHECK(AQ.mul(AQ.mul(AQ.tau(a), AQ.tau(b)), AQ.tau(c)) ==
            AQ.mul(AQ.tau(a), AQ.mul(AQ.tau(b), AQ.tau(c))));
    }
  }
}

TEST_CASE("star basis and eta") {
  ProPAlgebra A("sl", 2, 3, Field::gf(3));
  SUBCASE("length zero and simple") {
    CHECK(A.star(A.unit_torus({2, 2})) == A.tau(A.unit_torus({2, 2})));
    auto st = A.star(A.lift_saff(0));
    CHECK(st == A.sub(A.tau(A.lift_saff(0)), A.c_element(0)));
  }
  SUBCASE("multiplicativity on a length-3 word") {
    ProPWeyl w = A.mul(A.mul(A.lift_saff(0), A.lift_saff(1)), A.lift_saff(0));
    CHECK(A.length(w) == 3);
    auto lhs = A.star(w);
    auto rhs = A.mul(A.mul(A.star(A.lift_saff(0)), A.star(A.lift_saff(1))),
                     A.star(A.lift_saff(0)));
    CHECK(lhs == rhs);
  }
  SUBCASE("unitriangular change of basis") {
    for (const auto& w : box_elements(A, 1)) {
      if (A.length(w) > 4) continue;
      auto diff = A.sub(A.star(w), A.tau(w));
      for (const auto& [u, c] : diff) CHECK(A.length(u) < A.length(w));
      // round trip through star coordinates
      auto coords = A.to_star_coords(A.tau(w));
      CHECK(A.from_star_coords(coords) == A.tau(w));
    }
  }
  SUBCASE("antipode is an anti-automorphism") {
    std::mt19937_64 rng(17);
    auto elems = box_elements(A, 1);
    for (int i = 0; i < 100; ++i) {
      const auto& a = elems[rng() % elems.size()];
      const auto& b = elems[rng() % elems.size()];
      CHECK(A.antipode(A.mul(A.tau(a), A.tau(b))) ==
            A.mul(A.antipode(A.tau(b)), A.antipode(A.tau(a))));
      CHECK(A.antipode(A.star(a)) == A.star(A.inverse(a)));
    }
  }
  SUBCASE("eta report") {
    CHECK(check_eta(A, 60, 0).ok());
    ProPAlgebra G2("gl", 2, 2, Field::gf(2));
    CHECK(check_eta(G2, 60, 0).ok());
  }
}

TEST_CASE("theta embeddings and delta_P") {
  ProPAlgebra HQ("gl", 2, 3, Field::rationals());
  ProPAlgebra HTQ("gl", 2, 3, Field::rationals(), {1, 1});
  auto ctx = affine_parabolic(HTQ, HQ, {});
  CHECK(ctx.mu == HQ.translation({1, 0}));
  SUBCASE("plain theta on positive elements") {
    CHECK(theta_plain(ctx, HQ.translation({1, 0}), false) == HQ.tau(HQ.translation({1, 0})));
    CHECK(theta_plain(ctx, HQ.translation({0, 1}), true) == HQ.tau(HQ.translation({0, 1})));
    CHECK_THROWS(theta_plain(ctx, HQ.translation({0, 1}), false));
  }
  SUBCASE("theta respects products on the positive monoid") {
    std::vector<ProPWeyl> ms{HQ.translation({1, 0}), HQ.translation({1, 1}),
                             HQ.translation({2, 1})};
    for (const auto& a : ms)
      for (const auto& b : ms) {
        auto lhs = theta_plain(ctx, HTQ.mul(a, b), false);
        auto rhs = HQ.mul(theta_plain(ctx, a, false), theta_plain(ctx, b, false));
        CHECK(lhs == rhs);
        auto lhs2 = theta_star(ctx, HTQ.mul(a, b), false);
        auto rhs2 = HQ.mul(theta_star(ctx, a, false), theta_star(ctx, b, false));
        CHECK(lhs2 == rhs2);
      }
  }
  SUBCASE("extension formula and well-definedness") {
    ProPWeyl m = HQ.translation({0, 1});
    auto plus = theta_ext(ctx, "+", m);
    auto direct = HQ.mul(HQ.inverse_of_basis(HQ.translation({1, 0})),
                         HQ.tau(HQ.translation({1, 1})));
    CHECK(plus == direct);
    // independence of the pair (a, n): shift once more by hand
    auto shifted = HQ.mul(HQ.mul(HQ.inverse_of_basis(HQ.translation({1, 0})),
                                 HQ.inverse_of_basis(HQ.translation({1, 0}))),
                          HQ.tau(HQ.translation({2, 1})));
    CHECK(plus == shifted);
    // already negative: n = 0
    CHECK(theta_ext(ctx, "-", m) == HQ.tau(m));
    ProPAlgebra HF("gl", 2, 3, Field::gf(3));
    ProPAlgebra HTF("gl", 2, 3, Field::gf(3), {1, 1});
    auto ctxF = affine_parabolic(HTF, HF, {});
    CHECK_THROWS(theta_ext(ctxF, "+", HF.translation({0, 1})));
  }
  SUBCASE("delta_P") {
    CHECK(delta_P(ctx, HQ.translation({1, 1})) == Scalar::from_int(HQ.coeff(), 1));
    CHECK(delta_P(ctx, HQ.translation({1, 0})) == Scalar::from_int(HQ.coeff(), 3));
    CHECK(delta_P(ctx, HQ.translation({0, 1})) == Scalar::rational(mpq_class(1, 3)));
    // the two conventions are inverse on the torus
    Scalar prod = delta_P(ctx, HQ.translation({1, 0})) * delta_P(ctx, HQ.translation({0, 1}));
    CHECK(prod.is_one());
  }
  SUBCASE("theta star-plus equals theta-minus with modulus") {
    std::vector<ProPWeyl> sample{HQ.translation({1, 1}), HQ.translation({1, 0}),
                                 HQ.translation({0, 1})};
    CHECK(check_theta_compare(ctx, sample));
  }
}

TEST_CASE("affine induction") {
  SUBCASE("rank and multiplicativity, char p") {
    ProPAlgebra H("gl", 2, 3, Field::gf(3));
    ProPAlgebra HT("gl", 2, 3, Field::gf(3), {1, 1});
    auto ctx = affine_parabolic(HT, H, {});
    AffineModule trivT = AffineModule::trivial_character(&HT);
    AffineModule ind = affine_induct(ctx, trivT);
    CHECK(ind.rank() == 2);
    // action multiplicativity on sampled pairs
    auto elems = box_elements(H, 1);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 60; ++i) {
      const auto& a = elems[rng() % elems.size()];
      const auto& b = elems[rng() % elems.size()];
      CHECK(ind.act(a) * ind.act(b) == ind.act(H.mul(H.tau(a), H.tau(b))));
    }
  }
  SUBCASE("J = Pi returns the module") {
    ProPAlgebra H("gl", 2, 3, Field::gf(3));
    auto ctx = affine_parabolic(H, H, {0});
    AffineModule sign = AffineModule::sign_character(&H);
    AffineModule ind = affine_induct(ctx, sign);
    CHECK(ind.rank() == 1);
    CHECK(find_module_isomorphism(ind, sign).has_value());
  }
  SUBCASE("the non-split exact sequence in char p") {
    ProPAlgebra S("sl", 2, 3, Field::gf(3));
    ProPAlgebra ST("sl", 2, 3, Field::gf(3), {1, 1});
    auto ctxS = affine_parabolic(ST, S, {});
    auto repS = check_nonsplit_ses(ctxS);
    CHECK(repS.ok());

    ProPAlgebra G("gl", 2, 2, Field::gf(2));
    ProPAlgebra GT("gl", 2, 2, Field::gf(2), {1, 1});
    auto ctxG = affine_parabolic(GT, G, {});
    CHECK(check_nonsplit_ses(ctxG).ok());
  }
  SUBCASE("over Q the same sequence still does not split (End is scalars)") {
    ProPAlgebra G("gl", 2, 2, Field::rationals());
    ProPAlgebra GT("gl", 2, 2, Field::rationals(), {1, 1});
    auto ctx = affine_parabolic(GT, G, {});
    AffineModule ind = affine_induct(ctx, AffineModule::trivial_character(&GT));
    CHECK(hom_dim(ind, ind) == 1);
    CHECK(hom_dim(AffineModule::trivial_character(&G), ind) == 1);
  }
}

TEST_CASE("coinduction and the twisted isomorphism") {
  SUBCASE("GL2 char p, trivial and nontrivial characters") {
    ProPAlgebra H("gl", 2, 3, Field::gf(3));
    ProPAlgebra HT("gl", 2, 3, Field::gf(3), {1, 1});
    auto ctx = affine_parabolic(HT, H, {});
    AffineModule trivT = AffineModule::trivial_character(&HT);
    CHECK(affine_coinduct(ctx, trivT).rank() == 2);
    CHECK(check_ind_coind_twist_affine(ctx, HT, ctx, trivT));
    // a character with nontrivial unit part
    AffineModule chi = AffineModule::character(&HT, [&](const ProPWeyl& w) {
      // value (-1)^{dlog u_1}
      int d = HT.unit_field()->dlog(w.unit[0]);
      Scalar v = Scalar::from_int(HT.coeff(), d % 2 == 0 ? 1 : -1);
      return v;
    });
    CHECK(check_ind_coind_twist_affine(ctx, HT, ctx, chi));
  }
  SUBCASE("J = Pi") {
    ProPAlgebra H("sl", 2, 3, Field::gf(3));
    auto ctx = affine_parabolic(H, H, {0});
    AffineModule triv = AffineModule::trivial_character(&H);
    CHECK(check_ind_coind_twist_affine(ctx, H, ctx, triv));
  }
}

TEST_CASE("adjoints via the Fitting decomposition") {
  SUBCASE("examples for GL2") {
    ProPAlgebra HQ("gl", 2, 3, Field::rationals());
    ProPAlgebra HTQ("gl", 2, 3, Field::rationals(), {1, 1});
    auto ctxQ = affine_parabolic(HTQ, HQ, {});
    CHECK(affine_right_adjoint(ctxQ, AffineModule::trivial_character(&HQ)).rank() == 1);

    ProPAlgebra H("gl", 2, 3, Field::gf(3));
    ProPAlgebra HT("gl", 2, 3, Field::gf(3), {1, 1});
    auto ctx = affine_parabolic(HT, H, {});
    AffineModule triv = AffineModule::trivial_character(&H);
    AffineModule sign = AffineModule::sign_character(&H);
    CHECK(affine_right_adjoint(ctx, triv).rank() == 0);
    CHECK(affine_right_adjoint(ctx, sign).rank() == 1);
    CHECK(affine_left_adjoint(ctx, sign).rank() == 0);
    CHECK(affine_left_adjoint(ctx, triv).rank() == 1);
    // independence of the central element: mu and mu^2
    AffineModule r1 = affine_right_adjoint(ctx, sign, 1);
    AffineModule r2 = affine_right_adjoint(ctx, sign, 2);
    CHECK(r1.rank() == r2.rank());
    CHECK(find_module_isomorphism(r1, r2).has_value());
  }
  SUBCASE("adjunction dimension identities, char p grid") {
    for (auto fam : {std::string("gl"), std::string("sl")}) {
      int q = fam == "gl" ? 2 : 3;
      ProPAlgebra H(fam, 2, q, Field::gf(q));
      ProPAlgebra HT(fam, 2, q, Field::gf(q), {1, 1});
      auto ctx = affine_parabolic(HT, H, {});
      std::vector<AffineModule> hchars;
      if (fam == "sl") {
        for (int a0 : {0, -1})
          for (int a1 : {0, -1}) hchars.push_back(AffineModule::mixed_character(&H, {a0, a1}));
      } else {
        hchars.push_back(AffineModule::trivial_character(&H));
        hchars.push_back(AffineModule::sign_character(&H));
      }
      std::vector<AffineModule> tchars;
      tchars.push_back(AffineModule::trivial_character(&HT));
      if (q == 3)
        tchars.push_back(AffineModule::character(&HT, [&](const ProPWeyl& w) {
          int e = 0;
          for (int i = 0; i < 2; ++i) e += w.val[i] * (i == 0 ? 1 : 0);
          return Scalar::from_int(HT.coeff(), e % 2 == 0 ? 1 : -1);
        }));
      for (const auto& m : tchars)
        for (const auto& n : hchars) {
          auto rep = check_affine_adjunction(ctx, m, n);
          CHECK(rep.right_ok);
          CHECK(rep.left_ok);
        }
    }
  }
  SUBCASE("char 0 adjunction") {
    ProPAlgebra H("gl", 2, 2, Field::rationals());
    ProPAlgebra HT("gl", 2, 2, Field::rationals(), {1, 1});
    auto ctx = affine_parabolic(HT, H, {});
    auto rep = check_affine_adjunction(ctx, AffineModule::trivial_character(&HT),
                                       AffineModule::sign_character(&H));
    CHECK(rep.right_ok);
    CHECK(rep.left_ok);
  }
}

TEST_CASE("supersingularity") {
  SUBCASE("SL2 characters") {
    ProPAlgebra S("sl", 2, 3, Field::gf(3));
    auto ss = [&](int a0, int a1) {
      return is_supersingular(AffineModule::mixed_character(&S, {a0, a1})).supersingular;
    };
    CHECK_FALSE(ss(0, 0));    // Triv
    CHECK_FALSE(ss(-1, -1));  // Sign
    CHECK(ss(0, -1));
    CHECK(ss(-1, 0));
  }
  SUBCASE("GL2 has no mixed characters (the rho relation forces a0 = a1)") {
    ProPAlgebra G("gl", 2, 2, Field::gf(2));
    CHECK_THROWS(AffineModule::mixed_character(&G, {0, -1}));
    CHECK_FALSE(is_supersingular(AffineModule::trivial_character(&G)).supersingular);
    CHECK_FALSE(is_supersingular(AffineModule::sign_character(&G)).supersingular);
  }
  SUBCASE("char != p rejected") {
    ProPAlgebra S("sl", 2, 3, Field::rationals());
    CHECK_THROWS(is_supersingular(AffineModule::trivial_character(&S)));
  }
}

TEST_CASE("pi_sigma and standard triples") {
  ProPAlgebra H("gl", 2, 3, Field::gf(3));
  ProPAlgebra HT("gl", 2, 3, Field::gf(3), {1, 1});
  auto ctx = affine_parabolic(HT, H, {});
  AffineModule trivT = AffineModule::trivial_character(&HT);
  SUBCASE("all-ones character has Pi_sigma = Pi") {
    CHECK(pi_sigma(ctx, trivT) == std::vector<int>{0});
  }
  SUBCASE("regular character has empty Pi_sigma") {
    AffineModule chi = AffineModule::character(&HT, [&](const ProPWeyl& w) {
      return Scalar::from_int(HT.coeff(), w.val[0] % 2 == 0 ? 1 : -1);
    });
    CHECK(pi_sigma(ctx, chi).empty());
  }
  SUBCASE("P(sigma) is J joined with Pi_sigma") {
    CHECK(p_of_sigma(ctx, trivT) == std::vector<int>{0});
  }
  SUBCASE("J = Pi forces empty Pi_sigma") {
    auto ctxF = affine_parabolic(H, H, {0});
    AffineModule triv = AffineModule::trivial_character(&H);
    CHECK(pi_sigma(ctxF, triv).empty());
  }
  SUBCASE("I_H(B, Triv_T, G) is Triv and I_H(B, Triv_T, B) is Sign") {
    AffineModule ig = i_h_triple(ctx, trivT, {0});
    CHECK(ig.rank() == 1);
    CHECK(find_module_isomorphism(ig, AffineModule::trivial_character(&H)).has_value());
    // for GL2 with p odd the quotient picks up the lattice twist on rho;
    // the exact Sign identification is the SL2 / GL2(p=2) statement
    AffineModule ib = i_h_triple(ctx, trivT, {});
    CHECK(ib.rank() == 1);
    CHECK_FALSE(find_module_isomorphism(ib, AffineModule::trivial_character(&H)).has_value());
    for (auto [fam, q] : std::vector<std::pair<std::string, int>>{{"sl", 3}, {"gl", 2}}) {
      ProPAlgebra H2(fam, 2, q, Field::gf(q));
      ProPAlgebra HT2(fam, 2, q, Field::gf(q), {1, 1});
      auto ctx2 = affine_parabolic(HT2, H2, {});
      AffineModule t2 = AffineModule::trivial_character(&HT2);
      AffineModule ib2 = i_h_triple(ctx2, t2, {});
      CHECK(find_module_isomorphism(ib2, AffineModule::sign_character(&H2)).has_value());
      AffineModule ig2 = i_h_triple(ctx2, t2, {0});
      CHECK(find_module_isomorphism(ig2, AffineModule::trivial_character(&H2)).has_value());
    }
  }
  SUBCASE("I_H(G, sigma, G) is sigma") {
    auto ctxF = affine_parabolic(H, H, {0});
    AffineModule sign = AffineModule::sign_character(&H);
    AffineModule ig = i_h_triple(ctxF, sign, {0});
    CHECK(find_module_isomorphism(ig, sign).has_value());
  }
}

TEST_CASE("GL3 affine machinery with a proper non-minimal Levi") {
  const Field* f = Field::gf(2);
  ProPAlgebra H("gl", 3, 2, f);
  ProPAlgebra HM("gl", 3, 2, f, {2, 1});
  auto ctx = affine_parabolic(HM, H, {0});
  CHECK(ctx.coset_reps.size() == 3);
  CHECK(ctx.mu == H.translation({1, 1, 0}));
  AffineModule trivM = AffineModule::trivial_character(&HM);
  AffineModule ind = affine_induct(ctx, trivM);
  CHECK(ind.rank() == 3);
  // act multiplicativity spot check through a length-2 product
  ProPWeyl w = H.mul(H.lift_saff(0), H.lift_saff(2));
  CHECK(ind.act(H.mul(H.tau(H.lift_saff(0)), H.tau(H.lift_saff(2)))) ==
        ind.act(H.lift_saff(0)) * ind.act(H.lift_saff(2)));
  CHECK(H.length(w) == 2);
  auto rep = check_affine_adjunction(ctx, trivM, AffineModule::trivial_character(&H));
  CHECK(rep.right_ok);
  CHECK(rep.left_ok);
  // twisted coinduction against the conjugate Levi {1}
  ProPAlgebra HMp("gl", 3, 2, f, {1, 2});
  auto ctxp = affine_parabolic(HMp, H, {1});
  CHECK(check_ind_coind_twist_affine(ctx, HMp, ctxp, trivM));
  // supersingularity of GL3 characters: never, already via the {0} Levi line
  CHECK_FALSE(is_supersingular(AffineModule::trivial_character(&H)).supersingular);
  CHECK_FALSE(is_supersingular(AffineModule::sign_character(&H)).supersingular);
}

TEST_CASE("composition factors") {
  SUBCASE("Ind(Triv_T) has factors Triv and Sign") {
    for (auto [fam, q] : std::vector<std::pair<std::string, int>>{{"sl", 3}, {"gl", 2}}) {
      ProPAlgebra H(fam, 2, q, Field::gf(q));
      ProPAlgebra HT(fam, 2, q, Field::gf(q), {1, 1});
      auto ctx = affine_parabolic(HT, H, {});
      AffineModule ind = affine_induct(ctx, AffineModule::trivial_character(&HT));
      auto factors = composition_factors(ind);
      REQUIRE(factors.size() == 2);
      int triv_count = 0, sign_count = 0;
      for (const auto& f : factors) {
        if (find_module_isomorphism(f, AffineModule::trivial_character(&H)).has_value())
          ++triv_count;
        if (find_module_isomorphism(f, AffineModule::sign_character(&H)).has_value())
          ++sign_count;
      }
      CHECK(triv_count == 1);
      CHECK(sign_count == 1);
    }
  }
  SUBCASE("a regular character induces irreducibly") {
    ProPAlgebra H("gl", 2, 3, Field::gf(3));
    ProPAlgebra HT("gl", 2, 3, Field::gf(3), {1, 1});
    auto ctx = affine_parabolic(HT, H, {});
    AffineModule chi = AffineModule::character(&HT, [&](const ProPWeyl& w) {
      return Scalar::from_int(HT.coeff(), w.val[0] % 2 == 0 ? 1 : -1);
    });
    AffineModule ind = affine_induct(ctx, chi);
    auto factors = composition_factors(ind);
    CHECK(factors.size() == 1);
    CHECK(factors[0].rank() == 2);
    // simple character factors into itself
    auto single = composition_factors(AffineModule::sign_character(&H));
    CHECK(single.size() == 1);
    CHECK(single[0].rank() == 1);
  }
  SUBCASE("round trip: I_H(P, sigma, Q) supersingular iff P = Q = G") {
    ProPAlgebra S("sl", 2, 3, Field::gf(3));
    ProPAlgebra ST("sl", 2, 3, Field::gf(3), {1, 1});
    auto ctxB = affine_parabolic(ST, S, {});
    auto ctxG = affine_parabolic(S, S, {0});
    // P = B: never supersingular, for every torus character and admissible Q
    std::vector<AffineModule> tchars;
    tchars.push_back(AffineModule::trivial_character(&ST));
    tchars.push_back(AffineModule::character(&ST, [&](const ProPWeyl& w) {
      return Scalar::from_int(ST.coeff(), w.val[0] % 2 == 0 ? 1 : -1);
    }));
    for (const auto& sigma : tchars) {
      auto pis = pi_sigma(ctxB, sigma);
      std::vector<std::vector<int>> qs{{}};
      if (!pis.empty()) qs.push_back({0});
      for (const auto& JQ : qs) {
        AffineModule ih = i_h_triple(ctxB, sigma, JQ);
        if (ih.rank() == 0) continue;
        CHECK_FALSE(is_supersingular(ih).supersingular);
      }
    }
    // P = Q = G: supersingularity matches the input
    for (int a0 : {0, -1})
      for (int a1 : {0, -1}) {
        AffineModule chi = AffineModule::mixed_character(&S, {a0, a1});
        AffineModule ih = i_h_triple(ctxG, chi, {0});
        CHECK(is_supersingular(ih).supersingular ==
              is_supersingular(chi).supersingular);
      }
  }
}
