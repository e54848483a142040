#pragma once

#include "heckelab/hecke_core.hpp"

namespace heckelab {

// Finite-rank right module over a finite Hecke algebra, given by the action
// matrices of the algebra generators (torus generators and the tau_{n_s}).
// Row-vector convention: act(h1 h2) = act(h1) act(h2).
class HeckeModule {
public:
  HeckeModule(const HeckeAlgebra* A, int rank, std::vector<Mat> torus_act,
              std::vector<Mat> simple_act, bool validate = true);
  static HeckeModule character(const HeckeAlgebra* A, const std::function<Scalar(int)>& chi);
  static HeckeModule trivial_character(const HeckeAlgebra* A);
  static HeckeModule sign_character(const HeckeAlgebra* A);
  static HeckeModule regular(const HeckeAlgebra* A);

  const HeckeAlgebra& algebra() const { return *A_; }
  int rank() const { return rank_; }
  const Mat& torus_gen_act(int i) const { return torus_act_[i]; }
  const Mat& simple_act(int s) const { return simple_act_[s]; }
  std::vector<Mat> generator_mats() const;  // torus gens then simples

  Mat act_basis(int b) const;
  Mat act(const HeckeElt& x) const;
  Mat act_torus(int t) const;  // arbitrary torus element of the group

  bool satisfies_relations() const;

private:
  const HeckeAlgebra* A_;
  int rank_;
  std::vector<Mat> torus_act_;   // aligned with group().torus_gens()
  std::vector<Mat> simple_act_;  // per simple reflection of the datum
  mutable std::vector<std::optional<Mat>> memo_;
};

// morphisms m -> n of right modules (matrices rank(m) x rank(n))
std::vector<Mat> hom_space(const HeckeModule& m, const HeckeModule& n);
int hom_dim(const HeckeModule& m, const HeckeModule& n);
std::optional<Mat> find_module_isomorphism(const HeckeModule& m, const HeckeModule& n,
                                           uint64_t seed = 0);

// parabolic functors along a Levi embedding H_M -> H; J is the Levi subset
// in the datum of the big algebra's group
struct ParabolicContext {
  const HeckeAlgebra* HM;
  const HeckeAlgebra* H;
  std::vector<int> J;
  LeviEmbedding emb;
  std::vector<Perm> coset_reps;       // ^M W
  std::vector<int> coset_lifts;       // group elements n_d in the big group
};

ParabolicContext parabolic_context(const HeckeAlgebra& HM, const HeckeAlgebra& H,
                                   const std::vector<int>& J);

HeckeModule induct(const ParabolicContext& ctx, const HeckeModule& m);
HeckeModule coinduct(const ParabolicContext& ctx, const HeckeModule& m);
HeckeModule restrict_module(const ParabolicContext& ctx, const HeckeModule& n);
// the left adjoint L = Res_{H_{M'}}(-) iota^-1 iota_M; ctx is for (H_M, J)
HeckeModule left_adjoint(const ParabolicContext& ctx, const HeckeModule& n);
// the functorial matrix of Ind applied to a morphism
Mat induct_morphism(const ParabolicContext& ctx, const Mat& phi);

// the twist module m iota_M^-1 iota over H_{M'}: input over H_M for J,
// output over H_{M'} for the conjugate Levi J' = w0 . J
HeckeModule twist_to_conjugate_levi(const ParabolicContext& ctx, const HeckeAlgebra& HMprime,
                                    const HeckeModule& m);

// all characters of the algebra of a torus block group (H_T = R[T])
std::vector<HeckeModule> all_torus_characters(const HeckeAlgebra& HT);

// dim Hom equalities for the adjunctions L -| Ind -| Res
struct AdjunctionReport {
  int dim_hom_ind_m_n = -1, dim_hom_m_res_n = -1;
  int dim_hom_l_n_m = -1, dim_hom_n_ind_m = -1;
  bool right_adjoint_ok = false, left_adjoint_ok = false;
};
AdjunctionReport check_adjunction(const ParabolicContext& ctx, const HeckeModule& m,
                                  const HeckeModule& n);

// Ind_{H_M} m  iso  Coind_{H_{M'}} (m iota_M^-1 iota)
bool check_ind_coind_twist(const ParabolicContext& ctx, const HeckeAlgebra& HMprime,
                           const ParabolicContext& ctx_prime, const HeckeModule& m);

// Hom_{H_M}(H, H_M) iso H iota^-1 iota_M via the explicit trace-form map;
// with `untwisted` the char != p variant Hom_{H_M}(H, H_M) iso H is checked
// using the symmetric forms instead
struct BimoduleReport {
  bool bijective = false;
  bool left_equivariant = false;
  bool right_equivariant = false;
  bool ok() const { return bijective && left_equivariant && right_equivariant; }
};
BimoduleReport check_bimodule_isomorphism(const ParabolicContext& ctx, bool untwisted);

}  // namespace heckelab
