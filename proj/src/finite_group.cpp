#include "heckelab/finite_group.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <stdexcept>

namespace heckelab {

long long size_limit() {
  if (const char* env = std::getenv("HECKELAB_SIZE_LIMIT")) {
    long long v = std::atoll(env);
    if (v > 0) return v;
  }
  return 10'000'000LL;
}

FiniteGroup::FiniteGroup(const std::string& family, int n, int q, std::vector<int> blocks)
    : family_(family), n_(n), q_(q) {
  if (family != "gl" && family != "sl") throw std::invalid_argument("family must be gl or sl");
  if (n < 1 || n > 3) throw std::invalid_argument("rank n must be 1, 2 or 3");
  if (q != 2 && q != 3 && q != 4 && q != 5)
    throw std::invalid_argument("q must be one of 2,3,4,5");
  det1_ = family == "sl";
  if (blocks.empty()) blocks.push_back(n);
  int total = std::accumulate(blocks.begin(), blocks.end(), 0);
  if (total != n) throw std::invalid_argument("blocks must sum to n");
  blocks_ = blocks;
  gfq_ = Field::gf(q);
  datum_ = std::make_unique<RootDatum>(n, blocks_);
  enumerate();
}

std::shared_ptr<const FiniteGroup> FiniteGroup::build(const std::string& family, int n, int q) {
  return std::make_shared<const FiniteGroup>(family, n, q);
}

std::string FiniteGroup::descriptor() const {
  std::string s = family_ + ":" + std::to_string(n_) + ":" + std::to_string(q_);
  if (static_cast<int>(blocks_.size()) > 1) {
    s += ":blocks=";
    for (size_t i = 0; i < blocks_.size(); ++i)
      s += (i ? "," : "") + std::to_string(blocks_[i]);
  }
  return s;
}

uint8_t FiniteGroup::det(const GroupElt& e) const {
  const Field* f = gfq_;
  if (n_ == 1) return e.at(0, 0);
  if (n_ == 2)
    return f->add(f->mul(e.at(0, 0), e.at(1, 1)), f->neg(f->mul(e.at(0, 1), e.at(1, 0))));
  int d = 0;
  // 3x3 cofactor expansion
  int m00 = f->add(f->mul(e.at(1, 1), e.at(2, 2)), f->neg(f->mul(e.at(1, 2), e.at(2, 1))));
  int m01 = f->add(f->mul(e.at(1, 0), e.at(2, 2)), f->neg(f->mul(e.at(1, 2), e.at(2, 0))));
  int m02 = f->add(f->mul(e.at(1, 0), e.at(2, 1)), f->neg(f->mul(e.at(1, 1), e.at(2, 0))));
  d = f->mul(e.at(0, 0), m00);
  d = f->add(d, f->neg(f->mul(e.at(0, 1), m01)));
  d = f->add(d, f->mul(e.at(0, 2), m02));
  return static_cast<uint8_t>(d);
}

bool FiniteGroup::in_group(const GroupElt& e) const {
  // block pattern: zero outside the diagonal blocks
  int start = 0;
  for (int b : blocks_) {
    for (int i = 0; i < n_; ++i)
      for (int j = start; j < start + b; ++j)
        if ((i < start || i >= start + b) && e.at(i, j) != 0) return false;
    start += b;
  }
  uint8_t d = det(e);
  if (d == 0) return false;
  if (det1_ && d != 1) return false;
  // blockwise invertibility follows from det != 0 given the pattern
  return true;
}

void FiniteGroup::enumerate() {
  long long scan = 1;
  int cells = 0;
  int start = 0;
  for (int b : blocks_) {
    cells += b * b;
    start += b;
  }
  for (int i = 0; i < cells; ++i) {
    scan *= q_;
    if (scan > 200'000'000LL) throw std::runtime_error("enumeration scan too large");
  }
  // iterate over all fillings of the block-diagonal cells
  std::vector<std::pair<int, int>> slots;
  start = 0;
  for (int b : blocks_) {
    for (int i = start; i < start + b; ++i)
      for (int j = start; j < start + b; ++j) slots.emplace_back(i, j);
    start += b;
  }
  GroupElt e;
  e.n = n_;
  std::vector<int> vals(slots.size(), 0);
  long long count = 0;
  while (true) {
    for (size_t k = 0; k < slots.size(); ++k) e.at(slots[k].first, slots[k].second) =
        static_cast<uint8_t>(vals[k]);
    if (in_group(e)) {
      if (++count > size_limit()) throw std::runtime_error("group exceeds element limit");
      index_.emplace(e.key(q_), static_cast<int>(elts_.size()));
      elts_.push_back(e);
    }
    size_t pos = 0;
    while (pos < slots.size() && ++vals[pos] == q_) vals[pos++] = 0;
    if (pos == slots.size()) break;
  }

  GroupElt idm;
  idm.n = n_;
  for (int i = 0; i < n_; ++i) idm.at(i, i) = 1;
  id_ = index_of(idm);

  auto collect = [&](auto&& pred) {
    Subgroup s;
    s.mask.assign(size(), 0);
    for (int i = 0; i < size(); ++i)
      if (pred(elts_[i])) {
        s.mask[i] = 1;
        s.elems.push_back(i);
      }
    return s;
  };
  auto upper_uni = [&](const GroupElt& g) {
    for (int i = 0; i < n_; ++i) {
      if (g.at(i, i) != 1) return false;
      for (int j = 0; j < i; ++j)
        if (g.at(i, j) != 0) return false;
    }
    return true;
  };
  auto lower_uni = [&](const GroupElt& g) {
    for (int i = 0; i < n_; ++i) {
      if (g.at(i, i) != 1) return false;
      for (int j = i + 1; j < n_; ++j)
        if (g.at(i, j) != 0) return false;
    }
    return true;
  };
  auto diag = [&](const GroupElt& g) {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (i != j && g.at(i, j) != 0) return false;
    return true;
  };
  auto upper = [&](const GroupElt& g) {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < i; ++j)
        if (g.at(i, j) != 0) return false;
    return true;
  };
  auto monomial = [&](const GroupElt& g) {
    for (int i = 0; i < n_; ++i) {
      int nz = 0;
      for (int j = 0; j < n_; ++j)
        if (g.at(i, j) != 0) ++nz;
      if (nz != 1) return false;
    }
    return true;
  };
  U_ = collect(upper_uni);
  Uop_ = collect(lower_uni);
  T_ = collect(diag);
  B_ = collect(upper);
  Ngamma_ = collect(monomial);
  lift_cache_.assign(datum_->weyl_elements().size(), -1);
}

int FiniteGroup::index_of(const GroupElt& e) const {
  auto it = index_.find(e.key(q_));
  if (it == index_.end()) throw std::invalid_argument("element not in group");
  return it->second;
}

GroupElt FiniteGroup::multiply(const GroupElt& a, const GroupElt& b) const {
  GroupElt r;
  r.n = n_;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      int acc = 0;
      for (int k = 0; k < n_; ++k) acc = gfq_->add(acc, gfq_->mul(a.at(i, k), b.at(k, j)));
      r.at(i, j) = static_cast<uint8_t>(acc);
    }
  return r;
}

int FiniteGroup::mul(int a, int b) const { return index_of(multiply(elts_[a], elts_[b])); }

int FiniteGroup::inv(int a) const {
  // walk the cyclic group generated by a; the predecessor of id is a^{-1}
  int prev = id_, x = a;
  while (x != id_) {
    prev = x;
    x = mul(x, a);
  }
  return prev;
}

Subgroup FiniteGroup::P(const std::vector<int>& J) const {
  auto levi_pos = datum_->levi_positive_roots(J);
  Subgroup s;
  s.mask.assign(size(), 0);
  for (int i = 0; i < size(); ++i) {
    const GroupElt& g = elts_[i];
    bool ok = true;
    for (int r = 0; r < n_ && ok; ++r)
      for (int c = 0; c < r && ok; ++c) {
        if (g.at(r, c) == 0) continue;
        // entry (r, c) below the diagonal is allowed iff e_c - e_r is a Levi root
        IntVec a(n_, 0);
        a[c] = 1;
        a[r] = -1;
        if (std::find(levi_pos.begin(), levi_pos.end(), a) == levi_pos.end()) ok = false;
      }
    if (ok) {
      s.mask[i] = 1;
      s.elems.push_back(i);
    }
  }
  return s;
}

Subgroup FiniteGroup::M(const std::vector<int>& J) const {
  // refined block structure from J
  auto levi_pos = datum_->levi_positive_roots(J);
  Subgroup s;
  s.mask.assign(size(), 0);
  for (int i = 0; i < size(); ++i) {
    const GroupElt& g = elts_[i];
    bool ok = true;
    for (int r = 0; r < n_ && ok; ++r)
      for (int c = 0; c < n_ && ok; ++c) {
        if (r == c || g.at(r, c) == 0) continue;
        IntVec a(n_, 0);
        if (r < c) { a[r] = 1; a[c] = -1; }
        else { a[c] = 1; a[r] = -1; }
        if (std::find(levi_pos.begin(), levi_pos.end(), a) == levi_pos.end()) ok = false;
      }
    if (ok) {
      s.mask[i] = 1;
      s.elems.push_back(i);
    }
  }
  return s;
}

Subgroup FiniteGroup::N(const std::vector<int>& J) const {
  auto levi_pos = datum_->levi_positive_roots(J);
  Subgroup s;
  s.mask.assign(size(), 0);
  for (int i = 0; i < size(); ++i) {
    const GroupElt& g = elts_[i];
    bool ok = true;
    for (int r = 0; r < n_ && ok; ++r)
      for (int c = 0; c < n_ && ok; ++c) {
        if (r == c) {
          if (g.at(r, c) != 1) ok = false;
          continue;
        }
        if (g.at(r, c) == 0) continue;
        if (r > c) { ok = false; continue; }  // strictly upper only
        IntVec a(n_, 0);
        a[r] = 1;
        a[c] = -1;
        if (std::find(levi_pos.begin(), levi_pos.end(), a) != levi_pos.end()) ok = false;
      }
    if (ok) {
      s.mask[i] = 1;
      s.elems.push_back(i);
    }
  }
  return s;
}

Subgroup FiniteGroup::Nop(const std::vector<int>& J) const {
  auto levi_pos = datum_->levi_positive_roots(J);
  Subgroup s;
  s.mask.assign(size(), 0);
  for (int i = 0; i < size(); ++i) {
    const GroupElt& g = elts_[i];
    bool ok = true;
    for (int r = 0; r < n_ && ok; ++r)
      for (int c = 0; c < n_ && ok; ++c) {
        if (r == c) {
          if (g.at(r, c) != 1) ok = false;
          continue;
        }
        if (g.at(r, c) == 0) continue;
        if (r < c) { ok = false; continue; }
        IntVec a(n_, 0);
        a[c] = 1;
        a[r] = -1;
        if (std::find(levi_pos.begin(), levi_pos.end(), a) != levi_pos.end()) ok = false;
      }
    if (ok) {
      s.mask[i] = 1;
      s.elems.push_back(i);
    }
  }
  return s;
}

Subgroup FiniteGroup::U_M(const std::vector<int>& J) const {
  Subgroup m = M(J);
  Subgroup s;
  s.mask.assign(size(), 0);
  for (int i : U_.elems)
    if (m.contains(i)) {
      s.mask[i] = 1;
      s.elems.push_back(i);
    }
  return s;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::levi(const std::vector<int>& J) const {
  // refine blocks by J: new block boundaries where the adjacency is not in J
  std::vector<int> newblocks;
  int start = 0;
  for (int b : blocks_) {
    int cur = 1;
    for (int i = start; i + 1 < start + b; ++i) {
      IntVec step(n_, 0);
      step[i] = 1;
      step[i + 1] = -1;
      bool glued = false;
      for (int j : J)
        if (datum_->simple_roots()[j] == step) glued = true;
      if (glued) ++cur;
      else { newblocks.push_back(cur); cur = 1; }
    }
    newblocks.push_back(cur);
    start += b;
  }
  return std::make_shared<const FiniteGroup>(family_, n_, q_, newblocks);
}

int FiniteGroup::embed_from(const FiniteGroup& levi, int levi_index) const {
  return index_of(levi.elt(levi_index));
}

int FiniteGroup::root_element(const IntVec& alpha, int c) const {
  int lo = -1, hi = -1;
  for (int i = 0; i < n_; ++i) {
    if (alpha[i] == 1) lo = i;
    if (alpha[i] == -1) hi = i;
  }
  GroupElt e;
  e.n = n_;
  for (int i = 0; i < n_; ++i) e.at(i, i) = 1;
  e.at(lo, hi) = static_cast<uint8_t>(c);
  return index_of(e);
}

std::vector<int> FiniteGroup::torus_gens() const {
  std::vector<int> out;
  if (q_ == 2 && !det1_) return out;  // trivial torus
  int zeta = gfq_->unit_generator();
  if (!det1_) {
    for (int i = 0; i < n_; ++i) {
      GroupElt e;
      e.n = n_;
      for (int k = 0; k < n_; ++k) e.at(k, k) = 1;
      e.at(i, i) = static_cast<uint8_t>(zeta);
      out.push_back(index_of(e));
    }
  } else {
    for (int i = 0; i + 1 < n_; ++i) {
      GroupElt e;
      e.n = n_;
      for (int k = 0; k < n_; ++k) e.at(k, k) = 1;
      e.at(i, i) = static_cast<uint8_t>(zeta);
      e.at(i + 1, i + 1) = static_cast<uint8_t>(gfq_->inv(zeta));
      if (q_ > 2) out.push_back(index_of(e));
    }
  }
  return out;
}

std::vector<int> FiniteGroup::torus_exponents(int t) const {
  const GroupElt& e = elts_[t];
  if (!T_.contains(t)) throw std::invalid_argument("not a torus element");
  std::vector<int> out;
  if (q_ == 2 && !det1_) return out;
  if (!det1_) {
    for (int i = 0; i < n_; ++i) out.push_back(gfq_->dlog(e.at(i, i)));
  } else {
    if (q_ == 2) return out;
    // telescoping exponents for the adjacent diag(zeta, zeta^-1) generators
    int acc = 0;
    for (int i = 0; i + 1 < n_; ++i) {
      acc = (acc + gfq_->dlog(e.at(i, i))) % (q_ - 1);
      out.push_back(acc);
    }
  }
  return out;
}

std::vector<int> FiniteGroup::unipotent_gens() const {
  std::vector<int> out;
  std::vector<int> basis{1};
  if (q_ == 4) basis.push_back(2);  // additive basis {1, x} of GF(4)
  for (const auto& a : datum_->simple_roots())
    for (int b : basis) out.push_back(root_element(a, b));
  return out;
}

std::vector<int> FiniteGroup::group_gens() const {
  std::vector<int> out = torus_gens();
  for (int g : unipotent_gens()) out.push_back(g);
  for (int s = 0; s < datum_->rank(); ++s) out.push_back(lift_simple(s));
  return out;
}

int FiniteGroup::lift_simple(int s) const {
  const IntVec& a = datum_->simple_roots()[s];
  int lo = -1;
  for (int i = 0; i < n_; ++i)
    if (a[i] == 1) { lo = i; break; }
  GroupElt e;
  e.n = n_;
  for (int i = 0; i < n_; ++i) e.at(i, i) = 1;
  e.at(lo, lo) = 0;
  e.at(lo + 1, lo + 1) = 0;
  e.at(lo, lo + 1) = 1;
  e.at(lo + 1, lo) = static_cast<uint8_t>(gfq_->neg(1));
  return index_of(e);
}

int FiniteGroup::lift(const Perm& w) const {
  int wi = datum_->weyl_index(w);
  if (lift_cache_[wi] >= 0) return lift_cache_[wi];
  int acc = id_;
  for (int s : datum_->reduced_word(w)) acc = mul(acc, lift_simple(s));
  lift_cache_[wi] = acc;
  return acc;
}

std::pair<int, Perm> FiniteGroup::monomial_split(int n_elt) const {
  const GroupElt& g = elts_[n_elt];
  Perm w(n_);
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < n_; ++i)
      if (g.at(i, j) != 0) w.p[j] = i;
  int nw = lift(w);
  int t = mul(n_elt, inv(nw));
  if (!T_.contains(t)) throw std::logic_error("monomial split failed");
  return {t, w};
}

int FiniteGroup::monomial_of(int t_index, const Perm& w) const {
  return mul(t_index, lift(w));
}

std::vector<int> FiniteGroup::z_prime(int s) const {
  const IntVec& a = datum_->simple_roots()[s];
  IntVec neg(a.size());
  for (size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
  std::vector<int> gens;
  for (int c = 1; c < q_; ++c) {
    gens.push_back(root_element(a, c));
    gens.push_back(root_element(neg, c));
  }
  Subgroup closure = generated(gens);
  std::vector<int> out;
  for (int i : closure.elems)
    if (T_.contains(i)) out.push_back(i);
  return out;
}

Subgroup FiniteGroup::generated(const std::vector<int>& gens) const {
  Subgroup s;
  s.mask.assign(size(), 0);
  std::vector<int> frontier{id_};
  s.mask[id_] = 1;
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier)
      for (int g : gens) {
        int y = mul(x, g);
        if (!s.mask[y]) {
          s.mask[y] = 1;
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  for (int i = 0; i < size(); ++i)
    if (s.mask[i]) s.elems.push_back(i);
  return s;
}

Subgroup FiniteGroup::full_subgroup() const {
  Subgroup s;
  s.mask.assign(size(), 1);
  s.elems.resize(size());
  for (int i = 0; i < size(); ++i) s.elems[i] = i;
  return s;
}

DoubleCosets FiniteGroup::double_cosets(const Subgroup& sub) const {
  DoubleCosets dc;
  dc.cell_of.assign(size(), -1);
  for (int g = 0; g < size(); ++g) {
    if (dc.cell_of[g] >= 0) continue;
    int cell = static_cast<int>(dc.reps.size());
    dc.reps.push_back(g);
    std::vector<int> members;
    for (int a : sub.elems) {
      int ag = mul(a, g);
      for (int b : sub.elems) {
        int agb = mul(ag, b);
        if (dc.cell_of[agb] < 0) {
          dc.cell_of[agb] = cell;
          members.push_back(agb);
        }
      }
    }
    std::sort(members.begin(), members.end());
    dc.members.push_back(std::move(members));
  }
  // right coset decomposition of each cell: cell = sqcup sub * y
  for (size_t c = 0; c < dc.members.size(); ++c) {
    std::vector<char> seen(size(), 0);
    std::vector<int> reps;
    for (int g : dc.members[c]) {
      if (seen[g]) continue;
      reps.push_back(g);
      for (int a : sub.elems) seen[mul(a, g)] = 1;
    }
    dc.right_coset_reps.push_back(std::move(reps));
  }
  return dc;
}

const DoubleCosets& FiniteGroup::u_double_cosets() const {
  if (!u_cosets_) u_cosets_ = std::make_unique<DoubleCosets>(double_cosets(U_));
  return *u_cosets_;
}

FiniteGroup::CosetSpace FiniteGroup::left_quotient(const Subgroup& H) const {
  CosetSpace cs;
  cs.coset_of.assign(size(), -1);
  for (int g = 0; g < size(); ++g) {
    if (cs.coset_of[g] >= 0) continue;
    int c = static_cast<int>(cs.reps.size());
    cs.reps.push_back(g);
    for (int h : H.elems) cs.coset_of[mul(h, g)] = c;
  }
  return cs;
}

const std::vector<FiniteGroup::WordStep>& FiniteGroup::word_table() const {
  if (!word_table_.empty()) return word_table_;
  word_table_.assign(size(), WordStep{});
  std::vector<char> seen(size(), 0);
  auto gens = group_gens();
  std::vector<int> frontier{id_};
  seen[id_] = 1;
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier)
      for (size_t gi = 0; gi < gens.size(); ++gi) {
        int y = mul(x, gens[gi]);
        if (!seen[y]) {
          seen[y] = 1;
          word_table_[y] = {x, static_cast<int>(gi)};
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  for (int i = 0; i < size(); ++i)
    if (!seen[i]) throw std::logic_error("group generators do not generate");
  return word_table_;
}

bool FiniteGroup::verify_bruhat_bsbsb(int s) const {
  int ns = lift_simple(s);
  std::vector<char> BnB(size(), 0);
  for (int a : B_.elems)
    for (int b : B_.elems) BnB[mul(mul(a, ns), b)] = 1;
  std::vector<char> lhs(size(), 0);
  for (int g = 0; g < size(); ++g) {
    if (!BnB[g]) continue;
    int gs = mul(g, ns);
    for (int b : B_.elems) lhs[mul(gs, b)] = 1;
  }
  // expect lhs = BnB sqcup B
  for (int g = 0; g < size(); ++g) {
    bool in_rhs = BnB[g] || B_.contains(g);
    if (static_cast<bool>(lhs[g]) != in_rhs) return false;
    if (BnB[g] && B_.contains(g)) return false;  // disjointness
  }
  return true;
}

bool FiniteGroup::verify_parabolic_decomposition(const std::vector<int>& J) const {
  Subgroup p = P(J), nJ = N(J), uM = U_M(J);
  auto reps = datum_->min_coset_reps(J);
  std::vector<int> cell(size(), -1);
  for (size_t d = 0; d < reps.size(); ++d) {
    int nd = lift(reps[d]);
    for (int a : p.elems) {
      int and_ = mul(a, nd);
      for (int u : U_.elems) {
        int g = mul(and_, u);
        if (cell[g] >= 0 && cell[g] != static_cast<int>(d)) return false;
        cell[g] = static_cast<int>(d);
      }
    }
  }
  for (int g = 0; g < size(); ++g)
    if (cell[g] < 0) return false;
  // Lemma (PGU)(1)(b): (P cap d U d^-1) N = (U cap M) N, for each d
  std::vector<char> rhs(size(), 0);
  for (int um : uM.elems)
    for (int nn : nJ.elems) rhs[mul(um, nn)] = 1;
  for (const auto& dperm : reps) {
    int nd = lift(dperm);
    int ndinv = inv(nd);
    std::vector<char> lhs(size(), 0);
    for (int u : U_.elems) {
      int x = mul(mul(nd, u), ndinv);
      if (!p.contains(x)) continue;
      for (int nn : nJ.elems) lhs[mul(x, nn)] = 1;
    }
    if (!std::equal(lhs.begin(), lhs.end(), rhs.begin())) return false;
  }
  return true;
}

}  // namespace heckelab
