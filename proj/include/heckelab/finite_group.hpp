#pragma once

#include <array>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "heckelab/coxeter.hpp"
#include "heckelab/field.hpp"

namespace heckelab {

// n x n matrix over GF(q), entries as field codes; n <= 3
struct GroupElt {
  std::array<uint8_t, 9> m{};
  int n = 0;
  uint32_t key(int q) const {
    uint32_t k = 0;
    for (int i = 0; i < n * n; ++i) k = k * q + m[i];
    return k;
  }
  uint8_t& at(int i, int j) { return m[i * n + j]; }
  uint8_t at(int i, int j) const { return m[i * n + j]; }
};

struct Subgroup {
  std::vector<int> elems;       // sorted element indices
  std::vector<char> mask;       // size |G| membership mask
  bool contains(int i) const { return mask[i] != 0; }
  int size() const { return static_cast<int>(elems.size()); }
};

struct DoubleCosets {
  std::vector<int> cell_of;               // element -> cell index
  std::vector<int> reps;                  // cell -> representative element
  std::vector<std::vector<int>> members;  // cell -> sorted members
  std::vector<std::vector<int>> right_coset_reps;  // cell -> reps y with cell = sqcup U y
};

// A finite reductive group GL_n(F_q) or SL_n(F_q), or a standard Levi of one
// (block-diagonal matrices). Fully enumerated; immutable once built.
class FiniteGroup {
public:
  // family "gl" or "sl"; blocks partition n (the full group has one block)
  FiniteGroup(const std::string& family, int n, int q,
              std::vector<int> blocks = {});
  static std::shared_ptr<const FiniteGroup> build(const std::string& family, int n, int q);

  const std::string& family() const { return family_; }
  int n() const { return n_; }
  int q() const { return q_; }
  bool det_one() const { return det1_; }
  const std::vector<int>& blocks() const { return blocks_; }
  const Field* entry_field() const { return gfq_; }
  const RootDatum& datum() const { return *datum_; }
  std::string descriptor() const;

  int size() const { return static_cast<int>(elts_.size()); }
  const GroupElt& elt(int i) const { return elts_[i]; }
  int index_of(const GroupElt& e) const;
  int mul(int a, int b) const;
  int inv(int a) const;
  int identity() const { return id_; }
  GroupElt multiply(const GroupElt& a, const GroupElt& b) const;

  // standard subgroups
  const Subgroup& U() const { return U_; }
  const Subgroup& Uop() const { return Uop_; }
  const Subgroup& T() const { return T_; }
  const Subgroup& B() const { return B_; }
  const Subgroup& N_gamma() const { return Ngamma_; }  // monomial subgroup

  // parabolic data for J a subset of simple-root indices of datum()
  Subgroup P(const std::vector<int>& J) const;
  Subgroup M(const std::vector<int>& J) const;
  Subgroup N(const std::vector<int>& J) const;
  Subgroup Nop(const std::vector<int>& J) const;
  Subgroup U_M(const std::vector<int>& J) const;
  // the Levi as a standalone block group over the same field
  std::shared_ptr<const FiniteGroup> levi(const std::vector<int>& J) const;
  // identify an element of the Levi group inside this group (same matrix)
  int embed_from(const FiniteGroup& levi, int levi_index) const;

  // root subgroup element x_alpha(c), alpha a root of datum(), c a field code
  int root_element(const IntVec& alpha, int c) const;
  std::vector<int> torus_gens() const;
  // exponents writing a torus element as a product of torus_gens()
  std::vector<int> torus_exponents(int t) const;
  std::vector<int> unipotent_gens() const;  // x_alpha(basis) for simple alpha
  std::vector<int> group_gens() const;      // torus + unipotent + simple lifts

  // Weyl lifts: n_s = block (0 1;-1 0) at the simple root, extended along
  // reduced words (consistent by the braid property of the lifts)
  int lift_simple(int s) const;
  int lift(const Perm& w) const;
  // torus-Weyl factorization of a monomial element: n = t * n_w
  std::pair<int, Perm> monomial_split(int n_elt) const;
  int monomial_of(int t_index, const Perm& w) const;  // inverse of the split

  // Z'_s = T cap <U_{beta_s}, U_{-beta_s}> for the simple reflection s
  std::vector<int> z_prime(int s) const;

  DoubleCosets double_cosets(const Subgroup& sub) const;
  const DoubleCosets& u_double_cosets() const;  // cached for U

  // coset space H\G: coset id per element plus representatives
  struct CosetSpace {
    std::vector<int> coset_of;
    std::vector<int> reps;
  };
  CosetSpace left_quotient(const Subgroup& H) const;  // cosets H g

  // subgroup generated by a set of elements
  Subgroup generated(const std::vector<int>& gens) const;
  Subgroup full_subgroup() const;

  // diagnostic checks used by suites
  bool verify_bruhat_bsbsb(int s) const;
  bool verify_parabolic_decomposition(const std::vector<int>& J) const;

  // BFS factorization over group_gens(): parent element and generator index
  // (-1,-1 for the identity); lets representations evaluate arbitrary elements
  struct WordStep {
    int parent = -1, gen = -1;
  };
  const std::vector<WordStep>& word_table() const;

private:
  void enumerate();
  bool in_group(const GroupElt& e) const;
  uint8_t det(const GroupElt& e) const;

  std::string family_;
  int n_, q_;
  bool det1_;
  std::vector<int> blocks_;
  const Field* gfq_;
  std::unique_ptr<RootDatum> datum_;
  std::vector<GroupElt> elts_;
  std::unordered_map<uint32_t, int> index_;
  int id_ = 0;
  Subgroup U_, Uop_, T_, B_, Ngamma_;
  mutable std::vector<int> lift_cache_;
  mutable std::unique_ptr<DoubleCosets> u_cosets_;
  mutable std::vector<WordStep> word_table_;
};

long long size_limit();  // HECKELAB_SIZE_LIMIT override, default 1e7

}  // namespace heckelab
