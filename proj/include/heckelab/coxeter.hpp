#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace heckelab {

// Permutation of {0..n-1}; w maps i to perm[i].
struct Perm {
  std::vector<int> p;
  Perm() = default;
  explicit Perm(int n) : p(n) { for (int i = 0; i < n; ++i) p[i] = i; }
  int n() const { return static_cast<int>(p.size()); }
  int operator()(int i) const { return p[i]; }
  Perm operator*(const Perm& o) const {  // (this*o)(i) = this(o(i))
    Perm r(n());
    for (int i = 0; i < n(); ++i) r.p[i] = p[o.p[i]];
    return r;
  }
  Perm inverse() const {
    Perm r(n());
    for (int i = 0; i < n(); ++i) r.p[p[i]] = i;
    return r;
  }
  bool operator==(const Perm& o) const { return p == o.p; }
  bool operator<(const Perm& o) const { return p < o.p; }
  bool is_identity() const {
    for (int i = 0; i < n(); ++i) if (p[i] != i) return false;
    return true;
  }
};

using IntVec = std::vector<int>;  // vectors in the GL_n coordinate lattice

enum class CartanType { A1, A1xA1, A2 };

CartanType parse_cartan(const std::string& s);
std::string cartan_name(CartanType t);

struct AffineRoot {
  IntVec alpha;  // element of Sigma
  int level;
  bool operator==(const AffineRoot& o) const { return alpha == o.alpha && level == o.level; }
};

// Root datum of a fixed small Cartan type realized inside Z^n.
// Simple roots are e_i - e_{i+1} at the type's positions; W0 acts by
// permuting coordinates.
class RootDatum {
public:
  explicit RootDatum(CartanType t);
  // direct block construction: composition of n into GL-blocks; simple roots
  // are the adjacent differences inside each block
  RootDatum(int n, const std::vector<int>& blocks);

  CartanType type() const { return type_; }
  int ambient_dim() const { return n_; }
  int rank() const { return static_cast<int>(simple_.size()); }
  const std::vector<IntVec>& simple_roots() const { return simple_; }
  const std::vector<IntVec>& positive_roots() const { return positive_; }
  bool is_positive_root(const IntVec& a) const;
  bool is_root(const IntVec& a) const;
  // Cartan pairing <alpha_i^vee, alpha_j> = alpha_i . alpha_j in GL coords
  int pairing(const IntVec& a, const IntVec& b) const;
  std::vector<std::vector<int>> cartan_matrix() const;
  // minimal roots for the dominance order (negatives of highest roots)
  std::vector<IntVec> minimal_roots() const;

  // the reflection s_i acting on Z^n (coordinate transposition)
  Perm simple_reflection(int i) const;
  int simple_index_of(const Perm& transposition) const;  // -1 if not simple
  IntVec apply(const Perm& w, const IntVec& v) const;    // w . v, permuting coords

  // full Weyl group, lengths and reduced words
  const std::vector<Perm>& weyl_elements() const { return weyl_; }
  int weyl_index(const Perm& w) const;
  int length(const Perm& w) const;  // inversion count within blocks
  std::vector<int> reduced_word(const Perm& w) const;  // lexicographically smallest
  Perm from_word(const std::vector<int>& word) const;
  Perm longest_element() const;

  // Levi data: J is a set of simple-root indices
  std::vector<IntVec> levi_positive_roots(const std::vector<int>& J) const;
  bool in_levi_weyl(const Perm& w, const std::vector<int>& J) const;
  // ^M W: minimal-length representatives of W_J \ W0, ordered by (length, word)
  std::vector<Perm> min_coset_reps(const std::vector<int>& J) const;
  // the subset w(J) of Pi for w the longest element (Levi transport)
  std::vector<int> conjugate_levi(const std::vector<int>& J) const;

  // affine roots: positivity and the action of (lambda, w0), the map
  // v -> w0(v + lambda)
  bool affine_positive(const AffineRoot& a) const;
  AffineRoot affine_action(const IntVec& lambda, const Perm& w0, const AffineRoot& a) const;
  // true iff (lambda, w0) lies in W_{M+} for the Levi J
  bool is_levi_positive(const IntVec& lambda, const Perm& w0, const std::vector<int>& J) const;

private:
  void build(const std::vector<int>& blocks);
  CartanType type_;
  int n_ = 0;
  std::vector<int> blocks_;
  std::vector<IntVec> simple_;
  std::vector<IntVec> positive_;
  std::vector<Perm> weyl_;
};

}  // namespace heckelab
