#pragma once

#include <gmpxx.h>

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace heckelab {

// Exact coefficient field: a small Galois field GF(q) with table arithmetic,
// or the rationals backed by GMP. Instances are interned; compare by pointer.
class Field {
public:
  enum class Kind { GF, Rational };

  static const Field* gf(int q);
  static const Field* rationals();
  static const Field* parse(const std::string& spec);  // "fp:3", "gf:4", "q"

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rational; }
  int characteristic() const { return p_; }
  int order() const { return q_; }  // 0 for rationals
  std::string name() const;

  // GF arithmetic on element codes 0..q-1 (0 and 1 are the neutral elements)
  int add(int a, int b) const { return add_[a * q_ + b]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int inv(int a) const;
  int from_int(long long n) const;  // image of an integer in GF
  // multiplicative generator and discrete log (GF only)
  int unit_generator() const { return gen_; }
  int dlog(int a) const;

private:
  Field(int q);   // GF(q)
  Field();        // rationals
  Kind kind_;
  int q_ = 0, p_ = 0, gen_ = 0;
  std::vector<int> add_, mul_, neg_, inv_, dlog_;
};

// A scalar in a fixed field. GF values are element codes, rationals are mpq.
class Scalar {
public:
  Scalar() : f_(nullptr) {}
  explicit Scalar(const Field* f) : f_(f) {}  // zero
  static Scalar from_int(const Field* f, long long n);
  static Scalar gf_code(const Field* f, int code);
  static Scalar rational(const mpq_class& r);

  const Field* field() const { return f_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  int gf_value() const { return v_; }
  const mpq_class& rat_value() const { return r_; }
  std::string str() const;

private:
  const Field* f_;
  int v_ = 0;
  mpq_class r_ = 0;
};

Scalar pow(const Scalar& a, long long e);

}  // namespace heckelab
