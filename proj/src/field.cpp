#include "heckelab/field.hpp"

#include <map>
#include <mutex>

namespace heckelab {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// irreducible monic polynomials x^2 - c1 x - c0 over F_p, used for GF(p^2),
// plus the fixed GF(4) = F_2[x]/(x^2+x+1)
void ext_poly(int p, int& c1, int& c0) {
  // x^2 = c1 x + c0 in the quotient
  switch (p) {
    case 2: c1 = 1; c0 = 1; return;          // x^2+x+1
    case 3: c1 = 0; c0 = 2; return;          // x^2+1 -> x^2 = -1 = 2
    case 5: c1 = 0; c0 = 3; return;          // x^2-3 irreducible mod 5
    default: throw std::invalid_argument("unsupported GF extension");
  }
}

}  // namespace

Field::Field() : kind_(Kind::Rational), q_(0), p_(0) {}

Field::Field(int q) : kind_(Kind::GF), q_(q) {
  int p = 0, e = 0;
  for (int cand = 2; cand <= q; ++cand) {
    if (!is_prime(cand)) continue;
    int pw = cand, ee = 1;
    while (pw < q) pw *= cand, ++ee;
    if (pw == q) { p = cand; e = ee; break; }
  }
  if (p == 0 || e > 2) throw std::invalid_argument("unsupported field order " + std::to_string(q));
  p_ = p;

  add_.assign(q * q, 0);
  mul_.assign(q * q, 0);
  neg_.assign(q, 0);
  inv_.assign(q, 0);
  if (e == 1) {
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        add_[a * q + b] = (a + b) % q;
        mul_[a * q + b] = (a * b) % q;
      }
    for (int a = 0; a < q; ++a) neg_[a] = (q - a) % q;
  } else {
    // codes a = a0 + p*a1 represent a0 + a1*x
    int c1, c0;
    ext_poly(p, c1, c0);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        int a0 = a % p, a1 = a / p, b0 = b % p, b1 = b / p;
        add_[a * q + b] = (a0 + b0) % p + p * ((a1 + b1) % p);
        // (a0 + a1 x)(b0 + b1 x) = a0b0 + (a0b1+a1b0) x + a1b1 x^2
        int t0 = (a0 * b0) % p, t1 = (a0 * b1 + a1 * b0) % p, t2 = (a1 * b1) % p;
        t0 = (t0 + t2 * c0) % p;
        t1 = (t1 + t2 * c1) % p;
        mul_[a * q + b] = t0 + p * t1;
      }
    for (int a = 0; a < q; ++a) neg_[a] = (p - a % p) % p + p * ((p - a / p) % p);
  }
  for (int a = 1; a < q; ++a) {
    for (int b = 1; b < q; ++b)
      if (mul_[a * q + b] == 1) { inv_[a] = b; break; }
    if (inv_[a] == 0) throw std::logic_error("field table construction failed");
  }
  // find a generator of the cyclic unit group
  for (int g = 1; g < q; ++g) {
    int x = g, ord = 1;
    while (x != 1) { x = mul_[x * q + g]; ++ord; }
    if (ord == q - 1) { gen_ = g; break; }
  }
  dlog_.assign(q, -1);
  int x = 1;
  for (int k = 0; k < q - 1; ++k) { dlog_[x] = k; x = mul_[x * q + gen_]; }
}

const Field* Field::gf(int q) {
  static std::mutex mu;
  static std::map<int, const Field*> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  const Field* f = new Field(q);
  cache.emplace(q, f);
  return f;
}

const Field* Field::rationals() {
  static const Field* f = new Field();
  return f;
}

const Field* Field::parse(const std::string& spec) {
  if (spec == "q" || spec == "Q") return rationals();
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    std::string head = spec.substr(0, colon);
    int q = std::stoi(spec.substr(colon + 1));
    if (head == "fp") {
      if (!is_prime(q)) throw std::invalid_argument("fp:" + std::to_string(q) + " is not prime");
      return gf(q);
    }
    if (head == "gf") return gf(q);
  }
  throw std::invalid_argument("bad coefficient field spec '" + spec + "' (want fp:P, gf:Q or q)");
}

std::string Field::name() const {
  if (is_rational()) return "Q";
  return (q_ == p_ ? "F" : "GF") + std::to_string(q_);
}

int Field::inv(int a) const {
  if (a == 0) throw std::domain_error("division by zero in " + name());
  return inv_[a];
}

int Field::from_int(long long n) const {
  long long r = n % p_;
  if (r < 0) r += p_;
  return static_cast<int>(r);  // prime subfield codes are 0..p-1
}

int Field::dlog(int a) const {
  if (a == 0) throw std::domain_error("dlog of zero");
  return dlog_[a];
}

Scalar Scalar::from_int(const Field* f, long long n) {
  Scalar s(f);
  if (f->is_rational())
    s.r_ = mpq_class(static_cast<long>(n));
  else
    s.v_ = f->from_int(n);
  return s;
}

Scalar Scalar::gf_code(const Field* f, int code) {
  assert(!f->is_rational() && code >= 0 && code < f->order());
  Scalar s(f);
  s.v_ = code;
  return s;
}

Scalar Scalar::rational(const mpq_class& r) {
  Scalar s(Field::rationals());
  s.r_ = r;
  s.r_.canonicalize();
  return s;
}

bool Scalar::is_zero() const {
  return f_->is_rational() ? r_ == 0 : v_ == 0;
}

bool Scalar::is_one() const {
  return f_->is_rational() ? r_ == 1 : v_ == 1;
}

Scalar Scalar::operator+(const Scalar& o) const {
  assert(f_ == o.f_);
  Scalar s(f_);
  if (f_->is_rational()) s.r_ = r_ + o.r_;
  else s.v_ = f_->add(v_, o.v_);
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
  assert(f_ == o.f_);
  Scalar s(f_);
  if (f_->is_rational()) s.r_ = r_ - o.r_;
  else s.v_ = f_->add(v_, f_->neg(o.v_));
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  assert(f_ == o.f_);
  Scalar s(f_);
  if (f_->is_rational()) s.r_ = r_ * o.r_;
  else s.v_ = f_->mul(v_, o.v_);
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s(f_);
  if (f_->is_rational()) s.r_ = -r_;
  else s.v_ = f_->neg(v_);
  return s;
}

Scalar Scalar::inverse() const {
  Scalar s(f_);
  if (f_->is_rational()) {
    if (r_ == 0) throw std::domain_error("division by zero in Q");
    s.r_ = 1 / r_;
  } else {
    s.v_ = f_->inv(v_);
  }
  return s;
}

bool Scalar::operator==(const Scalar& o) const {
  assert(f_ == o.f_);
  return f_->is_rational() ? r_ == o.r_ : v_ == o.v_;
}

std::string Scalar::str() const {
  if (f_->is_rational()) return r_.get_str();
  return std::to_string(v_);
}

Scalar pow(const Scalar& a, long long e) {
  Scalar base = e < 0 ? a.inverse() : a;
  if (e < 0) e = -e;
  Scalar r = Scalar::from_int(a.field(), 1);
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace heckelab
