#pragma once

#include <map>
#include <mutex>
#include <unordered_map>

#include "heckelab/hecke_core.hpp"

namespace heckelab {

// Element of the pro-p Iwahori Weyl group W(1) of a split block group over a
// p-adic field: the monomial matrix with entry u_i pi^{v_i} at (sigma(i), i),
// taken modulo T^1. Units are GF(q) codes (Teichmueller representatives).
struct ProPWeyl {
  Perm sigma;
  IntVec val;
  std::vector<int> unit;
  bool operator==(const ProPWeyl& o) const {
    return sigma == o.sigma && val == o.val && unit == o.unit;
  }
  bool operator<(const ProPWeyl& o) const {
    return std::tie(sigma.p, val, unit) < std::tie(o.sigma.p, o.val, o.unit);
  }
};

struct ProPWeylHash {
  size_t operator()(const ProPWeyl& w) const {
    size_t h = 1469598103934665603ull;
    auto mix = [&](int x) { h = (h ^ static_cast<size_t>(x + 7)) * 1099511628211ull; };
    for (int x : w.sigma.p) mix(x);
    for (int x : w.val) mix(x + 64);
    for (int x : w.unit) mix(x + 128);
    return h;
  }
};

// The pro-p Iwahori Hecke algebra of GL_n / SL_n (or a standard Levi of one,
// given by a block composition) over a p-adic field with residue field F_q,
// presented on W(1) by the braid and quadratic relations. The quadratic data
// is imported from the finite convolution oracle at the same q.
class ProPAlgebra {
public:
  ProPAlgebra(const std::string& family, int n, int q, const Field* coeff,
              std::vector<int> blocks = {});
  // interned instances (stable addresses for long-lived modules)
  static const ProPAlgebra* intern(const std::string& family, int n, int q, const Field* coeff,
                                   std::vector<int> blocks = {});

  using Elt = std::map<ProPWeyl, Scalar>;

  const std::string& family() const { return family_; }
  int n() const { return n_; }
  int q() const { return q_; }
  bool det_one() const { return det1_; }
  const std::vector<int>& blocks() const { return blocks_; }
  const Field* coeff() const { return F_; }
  const Field* unit_field() const { return gfu_; }
  const RootDatum& datum() const { return *datum_; }
  std::string descriptor() const;

  // group structure on W(1)
  ProPWeyl identity() const;
  ProPWeyl mul(const ProPWeyl& a, const ProPWeyl& b) const;
  ProPWeyl inverse(const ProPWeyl& a) const;
  bool member(const ProPWeyl& w) const;  // block pattern and det-1 constraint
  ProPWeyl translation(const IntVec& v) const;
  ProPWeyl unit_torus(const std::vector<int>& u) const;

  int length(const ProPWeyl& w) const;  // Iwahori-Matsumoto, unit-independent

  // affine simple reflections: finite nodes first (datum order), then one
  // affine node per block of size >= 2
  int num_saff() const { return static_cast<int>(saff_.size()); }
  const ProPWeyl& lift_saff(int s) const { return saff_[s]; }
  bool saff_is_affine_node(int s) const { return saff_affine_[s]; }
  // Z'_s: the coroot-image units at the node's coordinate pair
  std::vector<ProPWeyl> z_prime(int s) const;
  long long c_value(int s, const ProPWeyl& z) const;  // from the finite oracle

  // canonical generators of the length-0 subgroup Omega(1) (lattice part)
  const std::vector<ProPWeyl>& omega_gens() const { return omega_; }
  const std::vector<ProPWeyl>& unit_gens() const { return unit_gens_; }
  // exponents of a length-0 element over omega_gens, and its unit residue
  std::pair<std::vector<int>, std::vector<int>> omega_factor(const ProPWeyl& w) const;

  struct Factorization {
    ProPWeyl omega;
    std::vector<int> word;  // affine simple indices, lex-min descents
  };
  const Factorization& factor(const ProPWeyl& w) const;  // w = omega * prod n_s

  // finite Weyl lift (product of finite-node lifts along a reduced word)
  ProPWeyl finite_lift(const Perm& w) const;

  // algebra operations
  Elt zero() const { return {}; }
  Elt tau(const ProPWeyl& w) const;
  Elt one() const { return tau(identity()); }
  Elt add(const Elt& a, const Elt& b) const;
  Elt sub(const Elt& a, const Elt& b) const;
  Elt scale(const Elt& a, const Scalar& c) const;
  Elt mul(const Elt& a, const Elt& b) const;
  Elt c_element(int s) const;           // sum_z c(z) tau_z
  Elt star(const ProPWeyl& w) const;    // tau*_w in the tau basis
  Elt to_star_coords(const Elt& x) const;    // coefficients w.r.t. the tau* basis
  Elt from_star_coords(const Elt& x) const;
  Elt eta(const Elt& x) const;          // tau_w -> (-1)^l(w) tau*_w
  Elt antipode(const Elt& x) const;     // j: tau_w -> tau_{w^-1} (anti-auto)
  Elt inverse_of_basis(const ProPWeyl& w) const;  // (tau_w)^-1, needs char != p

  Scalar triv(const ProPWeyl& w) const;  // q^{l(w)}
  Scalar sign(const ProPWeyl& w) const;  // (-1)^{l(w)}
  Scalar apply_char(const std::function<Scalar(const ProPWeyl&)>& chi, const Elt& x) const;

private:
  void build_saff();
  std::string family_;
  int n_, q_;
  bool det1_;
  std::vector<int> blocks_;
  const Field* F_;
  const Field* gfu_;
  std::unique_ptr<RootDatum> datum_;
  std::vector<ProPWeyl> saff_;
  std::vector<char> saff_affine_;
  std::vector<std::pair<int, int>> saff_pair_;  // coordinate pair (i, j) of the node
  std::vector<ProPWeyl> omega_;
  std::vector<ProPWeyl> unit_gens_;
  std::vector<std::vector<ProPWeyl>> zprime_;
  mutable std::mutex factor_mutex_;
  mutable std::unordered_map<ProPWeyl, Factorization, ProPWeylHash> factor_cache_;
};

// Finite-rank right module over a pro-p Iwahori Hecke algebra, by generator
// matrices (row convention, as for the finite Hecke modules).
class AffineModule {
public:
  AffineModule(const ProPAlgebra* A, int rank, std::vector<Mat> unit_act,
               std::vector<Mat> omega_act, std::vector<Mat> saff_act, bool validate = true);
  static AffineModule character(const ProPAlgebra* A,
                                const std::function<Scalar(const ProPWeyl&)>& chi);
  static AffineModule trivial_character(const ProPAlgebra* A);
  static AffineModule sign_character(const ProPAlgebra* A);
  // the four characters with trivial unit-torus (and lattice) part in char p:
  // tau_{n_s} acts by a_s in {0, -1} per affine node
  static AffineModule mixed_character(const ProPAlgebra* A, const std::vector<int>& a);

  const ProPAlgebra& algebra() const { return *A_; }
  int rank() const { return rank_; }
  Mat act(const ProPWeyl& w) const;
  Mat act(const ProPAlgebra::Elt& x) const;
  std::vector<Mat> generator_mats() const;
  const Mat& unit_act(int i) const { return unit_act_[i]; }
  const Mat& omega_act(int i) const { return omega_act_[i]; }
  const Mat& saff_act(int s) const { return saff_act_[s]; }
  bool satisfies_relations() const;

private:
  const ProPAlgebra* A_;
  int rank_;
  std::vector<Mat> unit_act_, omega_act_, saff_act_;
  mutable std::unordered_map<ProPWeyl, Mat, ProPWeylHash> memo_;
};

std::vector<Mat> hom_space(const AffineModule& m, const AffineModule& n);
int hom_dim(const AffineModule& m, const AffineModule& n);
std::optional<Mat> find_module_isomorphism(const AffineModule& m, const AffineModule& n,
                                           uint64_t seed = 0);

// parabolic setting: H the ambient algebra, HM the Levi algebra for J
struct AffineParabolic {
  const ProPAlgebra* HM;
  const ProPAlgebra* H;
  std::vector<int> J;
  std::vector<Perm> coset_reps;
  std::vector<ProPWeyl> coset_lifts;
  ProPWeyl mu;  // strictly M-positive central element of M
};
AffineParabolic affine_parabolic(const ProPAlgebra& HM, const ProPAlgebra& H,
                                 const std::vector<int>& J);

// is the element M-positive / M-negative (ambient root data)
bool levi_positive(const AffineParabolic& ctx, const ProPWeyl& w);
bool levi_negative(const AffineParabolic& ctx, const ProPWeyl& w);

// theta / theta* on the positive and negative monoid algebras
ProPAlgebra::Elt theta_plain(const AffineParabolic& ctx, const ProPWeyl& m, bool negative);
ProPAlgebra::Elt theta_star(const AffineParabolic& ctx, const ProPWeyl& m, bool negative);
// extensions to all of H_M when p is invertible: modes "+", "-", "*+", "*-"
ProPAlgebra::Elt theta_ext(const AffineParabolic& ctx, const std::string& mode,
                           const ProPWeyl& m);

// modulus character delta_P(m) as a power of q in the coefficient field
Scalar delta_P(const AffineParabolic& ctx, const ProPWeyl& m);
// Lemma: theta^{*+} = theta^- delta_P, char 0
bool check_theta_compare(const AffineParabolic& ctx, const std::vector<ProPWeyl>& sample);

AffineModule affine_induct(const AffineParabolic& ctx, const AffineModule& m);
AffineModule affine_coinduct(const AffineParabolic& ctx, const AffineModule& m);
// right adjoint R and left adjoint L via the Fitting decomposition at mu
AffineModule affine_right_adjoint(const AffineParabolic& ctx, const AffineModule& n,
                                  int mu_power = 1);
AffineModule affine_left_adjoint(const AffineParabolic& ctx, const AffineModule& n,
                                 int mu_power = 1);

struct AffineAdjunctionReport {
  int dim_hom_ind_m_n = -1, dim_hom_m_rn = -1;
  int dim_hom_ln_m = -1, dim_hom_n_ind_m = -1;
  bool right_ok = false, left_ok = false;
};
AffineAdjunctionReport check_affine_adjunction(const AffineParabolic& ctx,
                                               const AffineModule& m, const AffineModule& n);

// the twist m iota_M^-1 iota over H_{M'} and the Ind iso twisted-Coind check
AffineModule affine_twist_to_conjugate(const AffineParabolic& ctx, const ProPAlgebra& HMprime,
                                       const AffineModule& m);
bool check_ind_coind_twist_affine(const AffineParabolic& ctx, const ProPAlgebra& HMprime,
                                  const AffineParabolic& ctx_prime, const AffineModule& m);

// eta involution report: automorphism on samples, involutivity, character swap
struct EtaReport {
  bool automorphism = false, involution = false, swaps_characters = false;
  bool ok() const { return automorphism && involution && swaps_characters; }
};
EtaReport check_eta(const ProPAlgebra& H, int samples, uint64_t seed);

// non-split sequence 0 -> Triv -> Ind(Triv_{H_T}) -> Sign -> 0 in char p
struct SesReport {
  bool sub_found = false, quot_found = false, composite_zero = false, nonsplit = false;
  bool ok() const { return sub_found && quot_found && composite_zero && nonsplit; }
};
SesReport check_nonsplit_ses(const AffineParabolic& ctx);

// --- supersingularity and standard triples ---

struct SupersingularityReport {
  struct LeviLine {
    std::vector<int> J;
    bool theta_nilpotent = false, theta_star_nilpotent = false;
  };
  std::vector<LeviLine> levis;
  bool supersingular = false;
};
SupersingularityReport is_supersingular(const AffineModule& m);

// Pi_sigma: simple roots orthogonal to J on which sigma is trivial
std::vector<int> pi_sigma(const AffineParabolic& ctx, const AffineModule& sigma);
// the Levi subset J(sigma) = J sqcup Pi_sigma of P(sigma)
std::vector<int> p_of_sigma(const AffineParabolic& ctx, const AffineModule& sigma);

// the extension e_{H_{M_Q}}(sigma) for a standard triple (P, sigma, Q)
AffineModule extend_module(const AffineParabolic& ctx, const AffineModule& sigma,
                           const ProPAlgebra& HMQ, const std::vector<int>& JQ);
// I_H(P, sigma, Q): quotient of Ind_{H_{M_Q}}(e(sigma)) by the larger inductions
AffineModule i_h_triple(const AffineParabolic& ctx, const AffineModule& sigma,
                        const std::vector<int>& JQ);

// composition factors by exhaustive invariant-subspace search (rank <= 4);
// extends F_p coefficients to GF(p^2) when no invariant subspace splits off
std::vector<AffineModule> composition_factors(const AffineModule& m);

}  // namespace heckelab
