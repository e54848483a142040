#pragma once

#include <unordered_map>

#include "heckelab/hecke_modules.hpp"

namespace heckelab {

// Left representation of a finite reductive group, given by generator images.
// Column-vector convention: act(g1 g2) = act(g1) act(g2) applied to columns.
// Arbitrary elements are evaluated through the group's BFS word table and
// memoized.
class GroupRep {
public:
  GroupRep(std::shared_ptr<const FiniteGroup> g, const Field* f, int dim,
           std::vector<Mat> gen_images);  // aligned with g->group_gens()

  static GroupRep trivial(std::shared_ptr<const FiniteGroup> g, const Field* f);
  static GroupRep regular(std::shared_ptr<const FiniteGroup> g, const Field* f);
  // permutation representation on U\G (the carrier of the universal module)
  static GroupRep universal(std::shared_ptr<const FiniteGroup> g, const Field* f);

  const FiniteGroup& group() const { return *g_; }
  std::shared_ptr<const FiniteGroup> group_ptr() const { return g_; }
  const Field* coeff() const { return f_; }
  int dim() const { return dim_; }

  Mat act(int elt) const;
  bool homomorphism_sampled(int samples, uint64_t seed) const;

  GroupRep contragredient() const;

private:
  std::shared_ptr<const FiniteGroup> g_;
  const Field* f_;
  int dim_;
  std::vector<Mat> gen_images_;
  mutable std::unordered_map<int, Mat> memo_;
};

// The universal module X = ind_U^G(1): the permutation representation on U\G
// together with the commuting right H-action by convolution.
struct UniversalModule {
  GroupRep rep;                       // left G-action
  FiniteGroup::CosetSpace cosets;     // U\G
  const HeckeAlgebra* H;
  Mat h_action(int h_basis) const;    // left convolution tau_n * (-), columns
  bool actions_commute_sampled(int samples, uint64_t seed) const;
};

UniversalModule universal_module(const HeckeAlgebra& H);

// U-invariants of a representation, as a right module over the unipotent
// Hecke algebra of the same group
struct Invariants {
  Mat basis;        // rows span V^U inside R^dim
  HeckeModule mod;  // the H-module structure on it
};
Invariants u_invariants(const GroupRep& V, const HeckeAlgebra& H);

// m tensor_H X as a representation of the group
GroupRep tensor_X(const HeckeModule& m, const UniversalModule& X);

// parabolic induction Ind_P^G from a representation of the Levi block group
GroupRep parabolic_induce(const GroupRep& V, std::shared_ptr<const FiniteGroup> G,
                          const std::vector<int>& J);
// the U-invariant function f_{P,v} with support P and value v at 1, inside
// the coordinates of parabolic_induce; v given in V-coordinates
Mat f_P_v(const GroupRep& V, std::shared_ptr<const FiniteGroup> G, const std::vector<int>& J,
          const Mat& v);

// N-(co)invariants as representations of the Levi
GroupRep n_invariants(const GroupRep& V, const std::vector<int>& J, Mat* basis_out = nullptr);
GroupRep n_coinvariants(const GroupRep& V, const std::vector<int>& J, Mat* proj_out = nullptr,
                        Mat* section_out = nullptr);

// subrepresentation generated by the U-fixed vectors
GroupRep dagger(const GroupRep& V, Mat* basis_out = nullptr);

std::vector<Mat> group_hom_space(const GroupRep& V, const GroupRep& W);
int group_hom_dim(const GroupRep& V, const GroupRep& W);
std::optional<Mat> find_rep_isomorphism(const GroupRep& V, const GroupRep& W, uint64_t seed = 0);

// --- the commutative-diagram checks of the finite case ---

// Q1: V^{U_M} otimes_{H_M} H  iso  (Ind_P^G V)^U via v ox h -> f_{P,v} h
bool check_diag_q1(const GroupRep& V, const ParabolicContext& ctx);
// Q2: (V^N)^{U_M} coincides with Res_{H_M}(V^U) (same subspace, same action)
bool check_diag_q2(const GroupRep& V, const ParabolicContext& ctx);
// Q3 in char != p: (V_N)^{U_M} iso Res_{H_M}(V^U) via v -> v mod V(N)
bool check_q3_char_ne_p(const GroupRep& V, const ParabolicContext& ctx);
// dagger commutes with parabolic induction
bool check_dagger_commutes(const GroupRep& V, const ParabolicContext& ctx);
// contragredient comparisons (coefficients a field)
bool check_contra_ind(const GroupRep& V, const ParabolicContext& ctx);

// char p failure witnesses
std::pair<int, long long> projectivity_defect(const HeckeAlgebra& H);
struct Q3Witness {
  int image_dim = -1;
  int full_dim = -1;
  bool surjective = false;
  bool unit_in_image = false;
};
Q3Witness q3_witness(const HeckeAlgebra& H);

}  // namespace heckelab
