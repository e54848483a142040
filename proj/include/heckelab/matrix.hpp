#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "heckelab/field.hpp"

namespace heckelab {

// Dense matrix over an exact field. Row-major. Vectors are rows, so module
// actions compose covariantly: act(h1 h2) = act(h1) * act(h2).
class Mat {
public:
  Mat() : f_(nullptr), rows_(0), cols_(0) {}
  Mat(const Field* f, int rows, int cols)
      : f_(f), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Scalar(f)) {}
  static Mat identity(const Field* f, int n);

  const Field* field() const { return f_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Scalar& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(const Scalar& c) const;
  Mat transpose() const;
  Mat pow(long long e) const;
  bool operator==(const Mat& o) const;
  bool is_zero() const;
  bool is_identity() const;

  // in-place reduced row echelon form; returns pivot column per pivot row
  std::vector<int> rref();
  int rank() const;
  std::optional<Mat> inverse() const;
  bool invertible() const { return rows_ == cols_ && rank() == rows_; }

  // basis of the right kernel {x : M x^T = 0}, returned as rows
  Mat kernel() const;
  // row space basis (as rows of an rref matrix with zero rows dropped)
  Mat row_basis() const;
  // one solution x (row) of x * M = rhs (row), if any
  std::optional<Mat> solve_left(const Mat& rhs) const;

  Mat row(int i) const;
  static Mat vstack(const std::vector<Mat>& parts);

  std::string str() const;

private:
  const Field* f_;
  int rows_, cols_;
  std::vector<Scalar> a_;
};

// dimension + basis of {X : A_i X = X B_i for all i}; X is rows(A) x rows(B).
// A_i act on the source module, B_i on the target (row-vector convention).
std::vector<Mat> intertwiner_space(const std::vector<Mat>& src_gens,
                                   const std::vector<Mat>& tgt_gens);

// search the span of `space` for an invertible square matrix; deterministic
// seeded search, exhaustive over small prime fields when feasible
std::optional<Mat> find_invertible_in_span(const std::vector<Mat>& space, uint64_t seed = 0);

// subspace helpers: rows of `sub` span a subspace of R^n
Mat intersect_rowspaces(const Mat& a, const Mat& b);
bool rowspace_contains(const Mat& space, const Mat& vec);

// restriction of an operator to an invariant row-space (basis rows b):
// returns the matrix of the operator in the basis b, asserting invariance
Mat restrict_to_rowspace(const Mat& basis, const Mat& op);

// quotient of R^n by a row-space: returns (projection n x k, section k x n)
// with basis the non-pivot coordinates
std::pair<Mat, Mat> quotient_maps(const Mat& sub, int n);

}  // namespace heckelab
