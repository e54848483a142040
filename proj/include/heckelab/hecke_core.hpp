#pragma once

#include <map>
#include <memory>
#include <optional>

#include "heckelab/finite_group.hpp"
#include "heckelab/matrix.hpp"

namespace heckelab {

class HeckeAlgebra;

// Sparse element of a finite Hecke algebra in the tau basis; keys are basis
// indices, zero coefficients are never stored.
class HeckeElt {
public:
  HeckeElt() = default;
  explicit HeckeElt(const HeckeAlgebra* A) : A_(A) {}
  const HeckeAlgebra* algebra() const { return A_; }
  const std::map<int, Scalar>& terms() const { return t_; }
  void add_term(int basis, const Scalar& c);
  bool is_zero() const { return t_.empty(); }
  HeckeElt operator+(const HeckeElt& o) const;
  HeckeElt operator-(const HeckeElt& o) const;
  HeckeElt operator*(const HeckeElt& o) const;
  HeckeElt scaled(const Scalar& c) const;
  bool operator==(const HeckeElt& o) const { return t_ == o.t_; }

private:
  const HeckeAlgebra* A_ = nullptr;
  std::map<int, Scalar> t_;
};

struct QuadraticData {
  long long q_s = 0;
  std::map<int, long long> c;  // torus element index (in the group) -> c_{n_s}(z)
};

struct FrobeniusData {
  int lift = -1;                // group element index of the chosen lift of w0
  std::vector<int> iota_perm;   // basis index -> basis index
};

struct FrobeniusReport {
  bool trace_identity = true;   // delta(ab) = delta(iota(b) a)
  bool gram_invertible = true;
  bool symmetric_case = true;   // char != p: delta' symmetric with invertible Gram
  bool applicable_symmetric = false;
};

// Unipotent Hecke algebra H = R[U\G/U] of a finite reductive group (or of a
// standard Levi, which is just the same construction for the block group).
// The quadratic data is always extracted from the convolution oracle; the
// presentation-based product is the production multiplication.
class HeckeAlgebra {
public:
  HeckeAlgebra(std::shared_ptr<const FiniteGroup> G, const Field* coeff);

  const FiniteGroup& group() const { return *G_; }
  std::shared_ptr<const FiniteGroup> group_ptr() const { return G_; }
  const Field* coeff() const { return F_; }
  int dim() const { return static_cast<int>(basis_.size()); }

  int basis_element(int b) const { return basis_[b]; }     // group element index
  int basis_index(int group_elt) const;                    // inverse lookup
  int basis_length(int b) const { return length_[b]; }
  const Perm& basis_weyl(int b) const { return weyl_[b]; }
  int basis_torus(int b) const { return torus_[b]; }
  int unit_basis() const { return unit_; }

  const QuadraticData& quadratic(int s) const { return quad_[s]; }
  const std::vector<int>& z_prime(int s) const { return zprime_[s]; }

  HeckeElt tau(int basis) const;
  HeckeElt tau_of_group(int group_elt) const;
  HeckeElt one() const { return tau(unit_); }
  HeckeElt zero() const { return HeckeElt(this); }
  HeckeElt c_element(int s) const;  // c_{n_s} = sum_z c(z) tau_z

  // presentation-based product on basis elements (memoized)
  const std::map<int, Scalar>& mul_basis(int a, int b) const;
  // convolution-oracle product, integer structure constants
  std::map<int, long long> convolve_basis(int a, int b) const;
  // entry-by-entry comparison of the two multiplication tables
  bool oracle_matches_presentation() const;
  bool presentation_associative_exhaustive() const;
  bool presentation_associative_sampled(int samples, uint64_t seed) const;

  HeckeElt star(int basis) const;  // tau*_n in the tau basis
  // triangularity witness: tau*_n - tau_n supported in strictly smaller length
  bool star_triangular() const;

  // characters (inflated trivial and sign)
  Scalar triv(int basis) const;
  Scalar sign(int basis) const;
  Scalar apply_character(const std::function<Scalar(int)>& chi, const HeckeElt& x) const;
  bool character_is_homomorphism(const std::function<Scalar(int)>& chi) const;

  // Frobenius data
  FrobeniusData frobenius(std::optional<int> lift_group_elt = std::nullopt) const;
  Scalar delta(const FrobeniusData& fd, const HeckeElt& x) const;
  Scalar delta_prime(const HeckeElt& x) const;  // coefficient of tau_1
  HeckeElt iota(const FrobeniusData& fd, const HeckeElt& x) const;
  Mat gram_matrix(const FrobeniusData& fd) const;  // [delta(tau_a tau_b)]
  Mat gram_matrix_prime() const;
  FrobeniusReport check_frobenius() const;

  // Iwahori idempotent (|T| invertible in the coefficient field)
  HeckeElt iwahori_idempotent() const;

  // left/right multiplication operators in the tau basis (row convention:
  // row a of lmul(x) holds the expansion of tau_a * x)
  Mat right_multiplication(const HeckeElt& x) const;

private:
  void extract_quadratic();
  std::shared_ptr<const FiniteGroup> G_;
  const Field* F_;
  std::vector<int> basis_;            // basis -> group element
  std::unordered_map<int, int> rev_;  // group element -> basis
  std::vector<int> length_;
  std::vector<Perm> weyl_;
  std::vector<int> torus_;
  int unit_ = -1;
  std::vector<QuadraticData> quad_;
  std::vector<std::vector<int>> zprime_;
  mutable std::vector<std::optional<std::map<int, Scalar>>> mul_memo_;
};

// The Levi embedding H_M -> H given by the identity on monomial matrices.
struct LeviEmbedding {
  const HeckeAlgebra* sub;   // H_M (algebra of the block group)
  const HeckeAlgebra* big;   // H
  std::vector<int> map;      // H_M basis index -> H basis index
  bool respects_products() const;
};

LeviEmbedding levi_embedding(const HeckeAlgebra& HM, const HeckeAlgebra& H);

}  // namespace heckelab
