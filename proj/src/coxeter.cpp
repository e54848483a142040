#include "heckelab/coxeter.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace heckelab {

CartanType parse_cartan(const std::string& s) {
  if (s == "A1" || s == "a1") return CartanType::A1;
  if (s == "A1xA1" || s == "a1xa1") return CartanType::A1xA1;
  if (s == "A2" || s == "a2") return CartanType::A2;
  throw std::invalid_argument("unknown Cartan type '" + s + "'");
}

std::string cartan_name(CartanType t) {
  switch (t) {
    case CartanType::A1: return "A1";
    case CartanType::A1xA1: return "A1xA1";
    case CartanType::A2: return "A2";
  }
  return "?";
}

RootDatum::RootDatum(CartanType t) : type_(t) {
  switch (t) {
    case CartanType::A1: build({2}); break;
    case CartanType::A1xA1: build({2, 2}); break;
    case CartanType::A2: build({3}); break;
  }
}

RootDatum::RootDatum(int n, const std::vector<int>& blocks) : type_(CartanType::A1) {
  int total = 0;
  for (int b : blocks) total += b;
  if (total != n) throw std::invalid_argument("block sizes must sum to n");
  build(blocks);
  // tag with the matching named type where one exists
  if (blocks == std::vector<int>{2}) type_ = CartanType::A1;
  else if (blocks == std::vector<int>{3}) type_ = CartanType::A2;
  else if (blocks == std::vector<int>{2, 2}) type_ = CartanType::A1xA1;
}

void RootDatum::build(const std::vector<int>& blocks) {
  blocks_ = blocks;
  n_ = 0;
  for (int b : blocks) n_ += b;
  int start = 0;
  for (int b : blocks) {
    for (int i = start; i + 1 < start + b; ++i) {
      IntVec a(n_, 0);
      a[i] = 1;
      a[i + 1] = -1;
      simple_.push_back(a);
    }
    for (int i = start; i < start + b; ++i)
      for (int j = i + 1; j < start + b; ++j) {
        IntVec a(n_, 0);
        a[i] = 1;
        a[j] = -1;
        positive_.push_back(a);
      }
    start += b;
  }
  // enumerate W0 = product of symmetric groups on the blocks by closure
  std::vector<Perm> gens;
  for (int i = 0; i < rank(); ++i) gens.push_back(simple_reflection(i));
  std::vector<Perm> elems{Perm(n_)};
  std::map<std::vector<int>, bool> seen{{elems[0].p, true}};
  for (size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gens) {
      Perm next = elems[head] * g;
      if (!seen.count(next.p)) {
        seen[next.p] = true;
        elems.push_back(next);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  weyl_ = std::move(elems);
}

bool RootDatum::is_positive_root(const IntVec& a) const {
  return std::find(positive_.begin(), positive_.end(), a) != positive_.end();
}

bool RootDatum::is_root(const IntVec& a) const {
  if (is_positive_root(a)) return true;
  IntVec neg(a.size());
  for (size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
  return is_positive_root(neg);
}

int RootDatum::pairing(const IntVec& a, const IntVec& b) const {
  int s = 0;
  for (int i = 0; i < n_; ++i) s += a[i] * b[i];
  return s;
}

std::vector<std::vector<int>> RootDatum::cartan_matrix() const {
  std::vector<std::vector<int>> c(rank(), std::vector<int>(rank()));
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) c[i][j] = pairing(simple_[i], simple_[j]);
  return c;
}

std::vector<IntVec> RootDatum::minimal_roots() const {
  std::vector<IntVec> out;
  int start = 0;
  for (int b : blocks_) {
    if (b >= 2) {
      IntVec a(n_, 0);
      a[start] = -1;
      a[start + b - 1] = 1;  // negative of the block's highest root
      out.push_back(a);
    }
    start += b;
  }
  return out;
}

Perm RootDatum::simple_reflection(int i) const {
  // simple_[i] = e_k - e_{k+1}; the reflection swaps k, k+1
  const IntVec& a = simple_[i];
  int k = -1;
  for (int c = 0; c < n_; ++c)
    if (a[c] == 1) { k = c; break; }
  Perm s(n_);
  std::swap(s.p[k], s.p[k + 1]);
  return s;
}

int RootDatum::simple_index_of(const Perm& w) const {
  for (int i = 0; i < rank(); ++i)
    if (simple_reflection(i) == w) return i;
  return -1;
}

IntVec RootDatum::apply(const Perm& w, const IntVec& v) const {
  IntVec r(n_, 0);
  for (int i = 0; i < n_; ++i) r[w(i)] = v[i];
  return r;
}

int RootDatum::weyl_index(const Perm& w) const {
  auto it = std::lower_bound(weyl_.begin(), weyl_.end(), w);
  if (it == weyl_.end() || !(*it == w))
    throw std::invalid_argument("permutation not in the configured Weyl group");
  return static_cast<int>(it - weyl_.begin());
}

int RootDatum::length(const Perm& w) const {
  int inv = 0;
  for (const auto& a : positive_)
    if (!is_positive_root(apply(w, a))) ++inv;
  return inv;
}

std::vector<int> RootDatum::reduced_word(const Perm& w) const {
  std::vector<int> word;
  Perm cur = w;
  int len = length(cur);
  while (len > 0) {
    bool found = false;
    for (int i = 0; i < rank(); ++i) {
      Perm cand = simple_reflection(i) * cur;  // left descent gives lex-min prefix
      if (length(cand) == len - 1) {
        word.push_back(i);
        cur = cand;
        --len;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("no descent found");
  }
  return word;
}

Perm RootDatum::from_word(const std::vector<int>& word) const {
  Perm w(n_);
  for (int i : word) w = w * simple_reflection(i);
  return w;
}

Perm RootDatum::longest_element() const {
  Perm best(n_);
  int best_len = 0;
  for (const auto& w : weyl_) {
    int l = length(w);
    if (l > best_len) { best = w; best_len = l; }
  }
  return best;
}

std::vector<IntVec> RootDatum::levi_positive_roots(const std::vector<int>& J) const {
  // positive roots in the span of {simple_[j] : j in J}
  std::vector<IntVec> out;
  for (const auto& a : positive_) {
    // a = e_i - e_j; it lies in span(J) iff the chain i..j-1 is all in J
    int lo = -1, hi = -1;
    for (int c = 0; c < n_; ++c) {
      if (a[c] == 1) lo = c;
      if (a[c] == -1) hi = c;
    }
    bool inside = true;
    for (int c = lo; c < hi; ++c) {
      IntVec step(n_, 0);
      step[c] = 1;
      step[c + 1] = -1;
      bool found = false;
      for (int j : J)
        if (simple_[j] == step) found = true;
      if (!found) { inside = false; break; }
    }
    if (inside) out.push_back(a);
  }
  return out;
}

bool RootDatum::in_levi_weyl(const Perm& w, const std::vector<int>& J) const {
  // W_{J,0} permutes the Levi positive roots' support blocks; test by word
  Perm cur = w;
  int len = length(cur);
  while (len > 0) {
    bool found = false;
    for (int j : J) {
      Perm cand = simple_reflection(j) * cur;
      if (length(cand) == len - 1) { cur = cand; --len; found = true; break; }
    }
    if (!found) return false;
  }
  return cur.is_identity();
}

std::vector<Perm> RootDatum::min_coset_reps(const std::vector<int>& J) const {
  auto levi_pos = levi_positive_roots(J);
  std::vector<Perm> reps;
  for (const auto& d : weyl_) {
    Perm dinv = d.inverse();
    bool ok = true;
    for (const auto& a : levi_pos)
      if (!is_positive_root(apply(dinv, a))) { ok = false; break; }
    if (ok) reps.push_back(d);
  }
  std::sort(reps.begin(), reps.end(), [&](const Perm& a, const Perm& b) {
    int la = length(a), lb = length(b);
    if (la != lb) return la < lb;
    return reduced_word(a) < reduced_word(b);
  });
  return reps;
}

std::vector<int> RootDatum::conjugate_levi(const std::vector<int>& J) const {
  Perm w0 = longest_element();
  std::vector<int> out;
  for (int j : J) {
    IntVec img = apply(w0, simple_[j]);
    for (auto& x : img) x = -x;  // w0 maps Pi to -Pi
    bool found = false;
    for (int i = 0; i < rank(); ++i)
      if (simple_[i] == img) { out.push_back(i); found = true; }
    if (!found) throw std::logic_error("longest element does not permute -Pi");
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool RootDatum::affine_positive(const AffineRoot& a) const {
  if (a.level > 0) return true;
  if (a.level < 0) return false;
  return is_positive_root(a.alpha);
}

AffineRoot RootDatum::affine_action(const IntVec& lambda, const Perm& w0,
                                    const AffineRoot& a) const {
  // (alpha, r) -> (w0(alpha), r - <nu(lambda), alpha>), <nu(lambda), alpha> = -lambda.alpha
  int shift = 0;
  for (int i = 0; i < n_; ++i) shift += lambda[i] * a.alpha[i];
  return {apply(w0, a.alpha), a.level + shift};
}

bool RootDatum::is_levi_positive(const IntVec& lambda, const Perm& w0,
                                 const std::vector<int>& J) const {
  if (!in_levi_weyl(w0, J))
    throw std::invalid_argument("finite part is not in the Levi Weyl group");
  auto levi_pos = levi_positive_roots(J);
  for (const auto& a : positive_) {
    if (std::find(levi_pos.begin(), levi_pos.end(), a) != levi_pos.end()) continue;
    int dot = 0;
    for (int i = 0; i < n_; ++i) dot += lambda[i] * a[i];
    if (dot < 0) return false;  // -alpha(nu(lambda)) = lambda.alpha must be >= 0
  }
  return true;
}

}  // namespace heckelab
