#include "heckelab/hecke_core.hpp"

#include <algorithm>
#include <random>

namespace heckelab {

void HeckeElt::add_term(int basis, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = t_.find(basis);
  if (it == t_.end()) {
    t_.emplace(basis, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

HeckeElt HeckeElt::operator+(const HeckeElt& o) const {
  HeckeElt r = *this;
  for (const auto& [b, c] : o.t_) r.add_term(b, c);
  return r;
}

HeckeElt HeckeElt::operator-(const HeckeElt& o) const {
  HeckeElt r = *this;
  for (const auto& [b, c] : o.t_) r.add_term(b, -c);
  return r;
}

HeckeElt HeckeElt::scaled(const Scalar& c) const {
  HeckeElt r(A_);
  for (const auto& [b, x] : t_) r.add_term(b, x * c);
  return r;
}

HeckeElt HeckeElt::operator*(const HeckeElt& o) const {
  HeckeElt r(A_);
  for (const auto& [a, ca] : t_)
    for (const auto& [b, cb] : o.t_) {
      const auto& prod = A_->mul_basis(a, b);
      Scalar c = ca * cb;
      for (const auto& [k, v] : prod) r.add_term(k, c * v);
    }
  return r;
}

HeckeAlgebra::HeckeAlgebra(std::shared_ptr<const FiniteGroup> G, const Field* coeff)
    : G_(std::move(G)), F_(coeff) {
  const auto& N = G_->N_gamma();
  struct Key {
    int len, widx, tor, elt;
  };
  std::vector<Key> keys;
  for (int e : N.elems) {
    auto [t, w] = G_->monomial_split(e);
    keys.push_back({G_->datum().length(w), G_->datum().weyl_index(w), t, e});
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    return std::tie(a.len, a.widx, a.tor) < std::tie(b.len, b.widx, b.tor);
  });
  for (const auto& k : keys) {
    rev_[k.elt] = static_cast<int>(basis_.size());
    basis_.push_back(k.elt);
    length_.push_back(k.len);
    weyl_.push_back(G_->datum().weyl_elements()[k.widx]);
    torus_.push_back(k.tor);
  }
  unit_ = rev_.at(G_->identity());
  extract_quadratic();
  mul_memo_.assign(static_cast<size_t>(dim()) * dim(), std::nullopt);
}

int HeckeAlgebra::basis_index(int group_elt) const {
  auto it = rev_.find(group_elt);
  if (it == rev_.end()) throw std::invalid_argument("element does not index a basis vector");
  return it->second;
}

void HeckeAlgebra::extract_quadratic() {
  int rank = G_->datum().rank();
  quad_.resize(rank);
  zprime_.resize(rank);
  for (int s = 0; s < rank; ++s) {
    zprime_[s] = G_->z_prime(s);
    int ns = G_->lift_simple(s);
    auto prod = convolve_basis(basis_index(ns), basis_index(ns));
    int ns2 = G_->mul(ns, ns);
    QuadraticData qd;
    long long csum = 0;
    for (const auto& [b, coeff] : prod) {
      int elt = basis_[b];
      if (elt == ns2) {
        qd.q_s = coeff;
        continue;
      }
      // remaining support must be z * n_s for z in the torus
      int z = G_->mul(elt, G_->inv(ns));
      if (!G_->T().contains(z))
        throw std::logic_error("quadratic oracle product has unexpected support");
      qd.c[z] = coeff;
      csum += coeff;
    }
    if (qd.q_s == 0 || csum != qd.q_s - 1)
      throw std::logic_error("quadratic data violates sum c = q_s - 1");
    for (const auto& [z, c] : qd.c) {
      auto it = qd.c.find(G_->inv(z));
      if (it == qd.c.end() || it->second != c)
        throw std::logic_error("quadratic data violates c(z) = c(z^-1)");
      if (std::find(zprime_[s].begin(), zprime_[s].end(), z) == zprime_[s].end())
        throw std::logic_error("quadratic support outside Z'_s");
    }
    quad_[s] = std::move(qd);
  }
}

HeckeElt HeckeAlgebra::tau(int basis) const {
  HeckeElt e(this);
  e.add_term(basis, Scalar::from_int(F_, 1));
  return e;
}

HeckeElt HeckeAlgebra::tau_of_group(int group_elt) const { return tau(basis_index(group_elt)); }

HeckeElt HeckeAlgebra::c_element(int s) const {
  HeckeElt e(this);
  for (const auto& [z, c] : quad_[s].c) e.add_term(basis_index(z), Scalar::from_int(F_, c));
  return e;
}

const std::map<int, Scalar>& HeckeAlgebra::mul_basis(int a, int b) const {
  auto& memo = mul_memo_[static_cast<size_t>(a) * dim() + b];
  if (memo) return *memo;

  const RootDatum& D = G_->datum();
  // start from tau_a, then fold in the torus part and reduced word of b
  std::map<int, Scalar> cur;
  cur.emplace(basis_[a], Scalar::from_int(F_, 1));
  auto add = [](std::map<int, Scalar>& m, int key, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = m.find(key);
    if (it == m.end()) m.emplace(key, c);
    else {
      it->second += c;
      if (it->second.is_zero()) m.erase(it);
    }
  };

  int tb = torus_[b];
  if (tb != G_->identity()) {
    std::map<int, Scalar> next;
    for (const auto& [n, c] : cur) add(next, G_->mul(n, tb), c);
    cur = std::move(next);
  }
  for (int s : D.reduced_word(weyl_[b])) {
    int ns = G_->lift_simple(s);
    int nsinv = G_->inv(ns);
    Scalar qs = Scalar::from_int(F_, quad_[s].q_s);
    std::map<int, Scalar> next;
    for (const auto& [n, c] : cur) {
      Perm wn = weyl_[rev_.at(n)];
      Perm wns = wn * D.simple_reflection(s);
      if (D.length(wns) > D.length(wn)) {
        add(next, G_->mul(n, ns), c);
      } else {
        add(next, G_->mul(n, ns), c * qs);
        for (const auto& [z, cz] : quad_[s].c) {
          int key = G_->mul(G_->mul(G_->mul(n, nsinv), z), ns);
          add(next, key, c * Scalar::from_int(F_, cz));
        }
      }
    }
    cur = std::move(next);
  }
  std::map<int, Scalar> result;
  for (const auto& [n, c] : cur) result.emplace(rev_.at(n), c);
  memo = std::move(result);
  return *memo;
}

std::map<int, long long> HeckeAlgebra::convolve_basis(int a, int b) const {
  const DoubleCosets& dc = G_->u_double_cosets();
  int ea = basis_[a], eb = basis_[b];
  int cell_a = dc.cell_of[ea];
  const auto& xs = dc.right_coset_reps[dc.cell_of[eb]];
  std::map<int, long long> out;
  for (int r = 0; r < dim(); ++r) {
    int re = basis_[r];
    long long cnt = 0;
    for (int x : xs)
      if (dc.cell_of[G_->mul(re, G_->inv(x))] == cell_a) ++cnt;
    if (cnt) out[r] = cnt;
  }
  return out;
}

bool HeckeAlgebra::oracle_matches_presentation() const {
  for (int a = 0; a < dim(); ++a)
    for (int b = 0; b < dim(); ++b) {
      auto conv = convolve_basis(a, b);
      std::map<int, Scalar> conv_f;
      for (const auto& [k, v] : conv) {
        Scalar c = Scalar::from_int(F_, v);
        if (!c.is_zero()) conv_f.emplace(k, c);
      }
      if (conv_f != mul_basis(a, b)) return false;
    }
  return true;
}

bool HeckeAlgebra::presentation_associative_exhaustive() const {
  for (int a = 0; a < dim(); ++a)
    for (int b = 0; b < dim(); ++b)
      for (int c = 0; c < dim(); ++c) {
        HeckeElt left = (tau(a) * tau(b)) * tau(c);
        HeckeElt right = tau(a) * (tau(b) * tau(c));
        if (!(left == right)) return false;
      }
  return true;
}

bool HeckeAlgebra::presentation_associative_sampled(int samples, uint64_t seed) const {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    int a = static_cast<int>(rng() % dim());
    int b = static_cast<int>(rng() % dim());
    int c = static_cast<int>(rng() % dim());
    if (!((tau(a) * tau(b)) * tau(c) == tau(a) * (tau(b) * tau(c)))) return false;
  }
  return true;
}

HeckeElt HeckeAlgebra::star(int basis) const {
  int t = torus_[basis];
  HeckeElt acc = tau_of_group(t);
  for (int s : G_->datum().reduced_word(weyl_[basis])) {
    HeckeElt factor = tau_of_group(G_->lift_simple(s)) - c_element(s);
    acc = acc * factor;
  }
  return acc;
}

bool HeckeAlgebra::star_triangular() const {
  for (int b = 0; b < dim(); ++b) {
    HeckeElt diff = star(b) - tau(b);
    for (const auto& [k, c] : diff.terms())
      if (length_[k] >= length_[b]) return false;
  }
  return true;
}

Scalar HeckeAlgebra::triv(int basis) const {
  long long q = 1;
  for (int i = 0; i < length_[basis]; ++i) q *= G_->q();
  return Scalar::from_int(F_, q);
}

Scalar HeckeAlgebra::sign(int basis) const {
  return Scalar::from_int(F_, length_[basis] % 2 == 0 ? 1 : -1);
}

Scalar HeckeAlgebra::apply_character(const std::function<Scalar(int)>& chi,
                                     const HeckeElt& x) const {
  Scalar acc(F_);
  for (const auto& [b, c] : x.terms()) acc += c * chi(b);
  return acc;
}

bool HeckeAlgebra::character_is_homomorphism(const std::function<Scalar(int)>& chi) const {
  for (int a = 0; a < dim(); ++a)
    for (int b = 0; b < dim(); ++b) {
      Scalar lhs(F_);
      for (const auto& [k, v] : mul_basis(a, b)) lhs += v * chi(k);
      if (lhs != chi(a) * chi(b)) return false;
    }
  return true;
}

FrobeniusData HeckeAlgebra::frobenius(std::optional<int> lift_group_elt) const {
  FrobeniusData fd;
  fd.lift = lift_group_elt ? *lift_group_elt : G_->lift(G_->datum().longest_element());
  int linv = G_->inv(fd.lift);
  fd.iota_perm.resize(dim());
  for (int b = 0; b < dim(); ++b)
    fd.iota_perm[b] = basis_index(G_->mul(G_->mul(fd.lift, basis_[b]), linv));
  return fd;
}

Scalar HeckeAlgebra::delta(const FrobeniusData& fd, const HeckeElt& x) const {
  int b = basis_index(fd.lift);
  auto it = x.terms().find(b);
  return it == x.terms().end() ? Scalar(F_) : it->second;
}

Scalar HeckeAlgebra::delta_prime(const HeckeElt& x) const {
  auto it = x.terms().find(unit_);
  return it == x.terms().end() ? Scalar(F_) : it->second;
}

HeckeElt HeckeAlgebra::iota(const FrobeniusData& fd, const HeckeElt& x) const {
  HeckeElt r(this);
  for (const auto& [b, c] : x.terms()) r.add_term(fd.iota_perm[b], c);
  return r;
}

Mat HeckeAlgebra::gram_matrix(const FrobeniusData& fd) const {
  Mat g(F_, dim(), dim());
  for (int a = 0; a < dim(); ++a)
    for (int b = 0; b < dim(); ++b) g.at(a, b) = delta(fd, tau(a) * tau(b));
  return g;
}

Mat HeckeAlgebra::gram_matrix_prime() const {
  Mat g(F_, dim(), dim());
  for (int a = 0; a < dim(); ++a)
    for (int b = 0; b < dim(); ++b) g.at(a, b) = delta_prime(tau(a) * tau(b));
  return g;
}

FrobeniusReport HeckeAlgebra::check_frobenius() const {
  FrobeniusReport rep;
  FrobeniusData fd = frobenius();
  for (int a = 0; a < dim() && rep.trace_identity; ++a)
    for (int b = 0; b < dim(); ++b) {
      Scalar lhs = delta(fd, tau(a) * tau(b));
      Scalar rhs = delta(fd, iota(fd, tau(b)) * tau(a));
      if (lhs != rhs) {
        rep.trace_identity = false;
        break;
      }
    }
  rep.gram_invertible = gram_matrix(fd).invertible();
  if (F_->characteristic() != G_->entry_field()->characteristic()) {
    rep.applicable_symmetric = true;
    bool sym = true;
    for (int a = 0; a < dim() && sym; ++a)
      for (int b = 0; b < dim(); ++b)
        if (delta_prime(tau(a) * tau(b)) != delta_prime(tau(b) * tau(a))) {
          sym = false;
          break;
        }
    rep.symmetric_case = sym && gram_matrix_prime().invertible();
  }
  return rep;
}

HeckeElt HeckeAlgebra::iwahori_idempotent() const {
  long long tsize = G_->T().size();
  Scalar inv = Scalar::from_int(F_, tsize);
  if (inv.is_zero()) throw std::domain_error("|T| is not invertible in the coefficient field");
  inv = inv.inverse();
  HeckeElt e(this);
  for (int t : G_->T().elems) e.add_term(basis_index(t), inv);
  return e;
}

Mat HeckeAlgebra::right_multiplication(const HeckeElt& x) const {
  Mat m(F_, dim(), dim());
  for (int a = 0; a < dim(); ++a) {
    HeckeElt row = tau(a) * x;
    for (const auto& [b, c] : row.terms()) m.at(a, b) = c;
  }
  return m;
}

bool LeviEmbedding::respects_products() const {
  for (int a = 0; a < sub->dim(); ++a)
    for (int b = 0; b < sub->dim(); ++b) {
      const auto& inner = sub->mul_basis(a, b);
      const auto& outer = big->mul_basis(map[a], map[b]);
      std::map<int, Scalar> mapped;
      for (const auto& [k, c] : inner) mapped.emplace(map[k], c);
      if (mapped != outer) return false;
    }
  return true;
}

LeviEmbedding levi_embedding(const HeckeAlgebra& HM, const HeckeAlgebra& H) {
  LeviEmbedding emb;
  emb.sub = &HM;
  emb.big = &H;
  emb.map.resize(HM.dim());
  for (int b = 0; b < HM.dim(); ++b) {
    int elt = H.group().index_of(HM.group().elt(HM.basis_element(b)));
    emb.map[b] = H.basis_index(elt);
  }
  return emb;
}

}  // namespace heckelab
