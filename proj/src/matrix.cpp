#include "heckelab/matrix.hpp"

#include <random>
#include <sstream>

namespace heckelab {

Mat Mat::identity(const Field* f, int n) {
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::from_int(f, 1);
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  assert(cols_ == o.rows_ && f_ == o.f_);
  Mat r(f_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Scalar& bkj = o.at(k, j);
        if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  Mat r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  Mat r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

Mat Mat::scaled(const Scalar& c) const {
  Mat r = *this;
  for (auto& x : r.a_) x *= c;
  return r;
}

Mat Mat::transpose() const {
  Mat r(f_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Mat Mat::pow(long long e) const {
  assert(rows_ == cols_ && e >= 0);
  Mat r = identity(f_, rows_), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool Mat::operator==(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != o.a_[i]) return false;
  return true;
}

bool Mat::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  return *this == identity(f_, rows_);
}

std::vector<int> Mat::rref() {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int sel = -1;
    for (int i = r; i < rows_; ++i)
      if (!at(i, c).is_zero()) { sel = i; break; }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < cols_; ++j) std::swap(at(sel, j), at(r, j));
    Scalar inv = at(r, c).inverse();
    for (int j = c; j < cols_; ++j) at(r, j) *= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || at(i, c).is_zero()) continue;
      Scalar factor = at(i, c);
      for (int j = c; j < cols_; ++j) at(i, j) -= factor * at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int Mat::rank() const {
  Mat tmp = *this;
  return static_cast<int>(tmp.rref().size());
}

std::optional<Mat> Mat::inverse() const {
  assert(rows_ == cols_);
  if (rows_ == 0) return *this;
  Mat aug(f_, rows_, 2 * cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = Scalar::from_int(f_, 1);
  }
  auto piv = aug.rref();
  if (static_cast<int>(piv.size()) != rows_ || piv.back() >= cols_) return std::nullopt;
  Mat inv(f_, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
  return inv;
}

Mat Mat::kernel() const {
  Mat tmp = *this;
  auto piv = tmp.rref();
  std::vector<bool> is_piv(cols_, false);
  for (int c : piv) is_piv[c] = true;
  int k = cols_ - static_cast<int>(piv.size());
  Mat ker(f_, k, cols_);
  int row = 0;
  for (int c = 0; c < cols_; ++c) {
    if (is_piv[c]) continue;
    ker.at(row, c) = Scalar::from_int(f_, 1);
    for (size_t pr = 0; pr < piv.size(); ++pr)
      ker.at(row, piv[pr]) = -tmp.at(static_cast<int>(pr), c);
    ++row;
  }
  return ker;
}

Mat Mat::row_basis() const {
  Mat tmp = *this;
  auto piv = tmp.rref();
  Mat basis(f_, static_cast<int>(piv.size()), cols_);
  for (int i = 0; i < basis.rows(); ++i)
    for (int j = 0; j < cols_; ++j) basis.at(i, j) = tmp.at(i, j);
  return basis;
}

std::optional<Mat> Mat::solve_left(const Mat& rhs) const {
  // x * M = rhs  <=>  M^T x^T = rhs^T: solve by rref of [M^T | rhs^T]
  assert(rhs.rows() == 1 && rhs.cols() == cols_);
  Mat aug(f_, cols_, rows_ + 1);
  for (int i = 0; i < cols_; ++i) {
    for (int j = 0; j < rows_; ++j) aug.at(i, j) = at(j, i);
    aug.at(i, rows_) = rhs.at(0, i);
  }
  auto piv = aug.rref();
  Mat x(f_, 1, rows_);
  for (size_t pr = 0; pr < piv.size(); ++pr) {
    if (piv[pr] == rows_) return std::nullopt;  // inconsistent
    x.at(0, piv[pr]) = aug.at(static_cast<int>(pr), rows_);
  }
  return x;
}

Mat Mat::row(int i) const {
  Mat r(f_, 1, cols_);
  for (int j = 0; j < cols_; ++j) r.at(0, j) = at(i, j);
  return r;
}

Mat Mat::vstack(const std::vector<Mat>& parts) {
  assert(!parts.empty());
  int cols = parts[0].cols(), rows = 0;
  for (const auto& p : parts) rows += p.rows();
  Mat r(parts[0].field(), rows, cols);
  int off = 0;
  for (const auto& p : parts) {
    assert(p.cols() == cols);
    for (int i = 0; i < p.rows(); ++i)
      for (int j = 0; j < cols; ++j) r.at(off + i, j) = p.at(i, j);
    off += p.rows();
  }
  return r;
}

std::string Mat::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << (i ? "; " : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).str();
  }
  os << "]";
  return os.str();
}

std::vector<Mat> intertwiner_space(const std::vector<Mat>& src_gens,
                                   const std::vector<Mat>& tgt_gens) {
  assert(src_gens.size() == tgt_gens.size() && !src_gens.empty());
  const Field* f = src_gens[0].field();
  int rs = src_gens[0].rows(), rt = tgt_gens[0].rows();
  int nunk = rs * rt;
  int neq = static_cast<int>(src_gens.size()) * nunk;
  Mat sys(f, neq, nunk);
  int eq = 0;
  for (size_t g = 0; g < src_gens.size(); ++g) {
    const Mat& A = src_gens[g];
    const Mat& B = tgt_gens[g];
    // (A X - X B)[i][j] = sum_k A[i][k]X[k][j] - sum_k X[i][k]B[k][j]
    for (int i = 0; i < rs; ++i)
      for (int j = 0; j < rt; ++j) {
        for (int k = 0; k < rs; ++k) sys.at(eq, k * rt + j) += A.at(i, k);
        for (int k = 0; k < rt; ++k) sys.at(eq, i * rt + k) -= B.at(k, j);
        ++eq;
      }
  }
  Mat ker = sys.kernel();
  std::vector<Mat> basis;
  for (int b = 0; b < ker.rows(); ++b) {
    Mat X(f, rs, rt);
    for (int i = 0; i < rs; ++i)
      for (int j = 0; j < rt; ++j) X.at(i, j) = ker.at(b, i * rt + j);
    basis.push_back(std::move(X));
  }
  return basis;
}

std::optional<Mat> find_invertible_in_span(const std::vector<Mat>& space, uint64_t seed) {
  if (space.empty()) return std::nullopt;
  const Field* f = space[0].field();
  if (space[0].rows() != space[0].cols()) return std::nullopt;
  for (const auto& m : space)
    if (m.invertible()) return m;
  size_t k = space.size();
  if (!f->is_rational() && f->order() <= 5 && k <= 8) {
    // exhaustive over all coefficient tuples
    int q = f->order();
    std::vector<int> idx(k, 0);
    while (true) {
      Mat cand(f, space[0].rows(), space[0].cols());
      for (size_t i = 0; i < k; ++i)
        if (idx[i]) cand = cand + space[i].scaled(Scalar::gf_code(f, idx[i]));
      if (cand.invertible()) return cand;
      size_t pos = 0;
      while (pos < k && ++idx[pos] == q) idx[pos++] = 0;
      if (pos == k) break;
    }
    return std::nullopt;
  }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int attempt = 0; attempt < 400; ++attempt) {
    Mat cand(f, space[0].rows(), space[0].cols());
    for (const auto& m : space) {
      long long c = static_cast<long long>(rng() % 7) - 3;
      if (c) cand = cand + m.scaled(Scalar::from_int(f, c));
    }
    if (cand.invertible()) return cand;
  }
  return std::nullopt;
}

Mat intersect_rowspaces(const Mat& a, const Mat& b) {
  const Field* f = a.field();
  if (a.rows() == 0 || b.rows() == 0) return Mat(f, 0, a.cols());
  // coefficients (u, v) with u*a = -v*b span the intersection through u*a
  Mat stacked = Mat::vstack({a, b});
  Mat ker = stacked.transpose().kernel();
  Mat result(f, ker.rows(), a.cols());
  for (int r = 0; r < ker.rows(); ++r)
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        result.at(r, j) += ker.at(r, i) * a.at(i, j);
  return result.row_basis();
}

bool rowspace_contains(const Mat& space, const Mat& vec) {
  if (vec.is_zero()) return true;
  if (space.rows() == 0) return false;
  Mat stacked = Mat::vstack({space, vec});
  return stacked.rank() == space.rank();
}

Mat restrict_to_rowspace(const Mat& basis, const Mat& op) {
  const Field* f = basis.field();
  Mat res(f, basis.rows(), basis.rows());
  // solve img = coeffs * basis for each row
  for (int i = 0; i < basis.rows(); ++i) {
    Mat img = basis.row(i) * op;
    // coeffs * basis = img  <=> basis^T coeffs^T = img^T
    Mat aug(f, basis.cols(), basis.rows() + 1);
    for (int r = 0; r < basis.cols(); ++r) {
      for (int c = 0; c < basis.rows(); ++c) aug.at(r, c) = basis.at(c, r);
      aug.at(r, basis.rows()) = img.at(0, r);
    }
    auto piv = aug.rref();
    for (size_t pr = 0; pr < piv.size(); ++pr) {
      if (piv[pr] == basis.rows())
        throw std::logic_error("restrict_to_rowspace: subspace not invariant");
      res.at(i, piv[pr]) = aug.at(static_cast<int>(pr), basis.rows());
    }
  }
  return res;
}

std::pair<Mat, Mat> quotient_maps(const Mat& sub, int n) {
  const Field* f = sub.field();
  Mat red = sub;
  auto piv = red.rref();
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;
  int k = n - static_cast<int>(piv.size());
  Mat proj(f, n, k), section(f, k, n);
  int col = 0;
  for (int c = 0; c < n; ++c) {
    if (is_piv[c]) continue;
    // e_c survives as the col-th quotient coordinate
    proj.at(c, col) = Scalar::from_int(f, 1);
    section.at(col, c) = Scalar::from_int(f, 1);
    ++col;
  }
  // pivot coordinates map to minus the tail of their rref row
  for (size_t pr = 0; pr < piv.size(); ++pr) {
    int c = piv[pr];
    int cc = 0;
    for (int j = 0; j < n; ++j) {
      if (is_piv[j]) continue;
      proj.at(c, cc) = -red.at(static_cast<int>(pr), j);
      ++cc;
    }
  }
  return {proj, section};
}

}  // namespace heckelab
