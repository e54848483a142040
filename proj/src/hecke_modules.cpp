#include "heckelab/hecke_modules.hpp"

#include <algorithm>

namespace heckelab {

HeckeModule::HeckeModule(const HeckeAlgebra* A, int rank, std::vector<Mat> torus_act,
                         std::vector<Mat> simple_act, bool validate)
    : A_(A), rank_(rank), torus_act_(std::move(torus_act)),
      simple_act_(std::move(simple_act)) {
  for (const Mat& m : torus_act_)
    if (m.rows() != rank_ || m.cols() != rank_)
      throw std::invalid_argument("generator matrix has the wrong size");
  for (const Mat& m : simple_act_)
    if (m.rows() != rank_ || m.cols() != rank_)
      throw std::invalid_argument("generator matrix has the wrong size");
  memo_.assign(A_->dim(), std::nullopt);
  if (validate && !satisfies_relations())
    throw std::invalid_argument("generator matrices violate the algebra relations");
}

HeckeModule HeckeModule::character(const HeckeAlgebra* A, const std::function<Scalar(int)>& chi) {
  const FiniteGroup& g = A->group();
  std::vector<Mat> torus, simples;
  for (int t : g.torus_gens()) {
    Mat m(A->coeff(), 1, 1);
    m.at(0, 0) = chi(A->basis_index(t));
    torus.push_back(m);
  }
  for (int s = 0; s < g.datum().rank(); ++s) {
    Mat m(A->coeff(), 1, 1);
    m.at(0, 0) = chi(A->basis_index(g.lift_simple(s)));
    simples.push_back(m);
  }
  return HeckeModule(A, 1, std::move(torus), std::move(simples));
}

HeckeModule HeckeModule::trivial_character(const HeckeAlgebra* A) {
  return character(A, [A](int b) { return A->triv(b); });
}

HeckeModule HeckeModule::sign_character(const HeckeAlgebra* A) {
  return character(A, [A](int b) { return A->sign(b); });
}

HeckeModule HeckeModule::regular(const HeckeAlgebra* A) {
  const FiniteGroup& g = A->group();
  std::vector<Mat> torus, simples;
  for (int t : g.torus_gens()) torus.push_back(A->right_multiplication(A->tau_of_group(t)));
  for (int s = 0; s < g.datum().rank(); ++s)
    simples.push_back(A->right_multiplication(A->tau_of_group(g.lift_simple(s))));
  return HeckeModule(A, A->dim(), std::move(torus), std::move(simples));
}

std::vector<Mat> HeckeModule::generator_mats() const {
  std::vector<Mat> out = torus_act_;
  for (const auto& m : simple_act_) out.push_back(m);
  return out;
}

Mat HeckeModule::act_torus(int t) const {
  const FiniteGroup& g = A_->group();
  Mat acc = Mat::identity(A_->coeff(), rank_);
  auto expo = g.torus_exponents(t);
  for (size_t i = 0; i < expo.size(); ++i)
    if (expo[i]) acc = acc * torus_act_[i].pow(expo[i]);
  return acc;
}

Mat HeckeModule::act_basis(int b) const {
  if (memo_[b]) return *memo_[b];
  const FiniteGroup& g = A_->group();
  Mat acc = act_torus(A_->basis_torus(b));
  for (int s : g.datum().reduced_word(A_->basis_weyl(b))) acc = acc * simple_act_[s];
  memo_[b] = acc;
  return acc;
}

Mat HeckeModule::act(const HeckeElt& x) const {
  Mat acc(A_->coeff(), rank_, rank_);
  for (const auto& [b, c] : x.terms()) acc = acc + act_basis(b).scaled(c);
  return acc;
}

bool HeckeModule::satisfies_relations() const {
  const FiniteGroup& g = A_->group();
  const RootDatum& d = g.datum();
  const Field* f = A_->coeff();
  auto gens = g.torus_gens();
  if (torus_act_.size() != gens.size()) return false;
  if (static_cast<int>(simple_act_.size()) != d.rank()) return false;
  for (size_t i = 0; i < gens.size(); ++i) {
    if (!torus_act_[i].invertible()) return false;
    if (!torus_act_[i].pow(g.q() - 1).is_identity()) return false;
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (!(torus_act_[i] * torus_act_[j] == torus_act_[j] * torus_act_[i])) return false;
  }
  for (int s = 0; s < d.rank(); ++s) {
    int ns = g.lift_simple(s);
    Mat lhs = simple_act_[s] * simple_act_[s];
    Mat rhs = act_torus(g.mul(ns, ns)).scaled(Scalar::from_int(f, A_->quadratic(s).q_s));
    for (const auto& [z, c] : A_->quadratic(s).c)
      rhs = rhs + (act_torus(z) * simple_act_[s]).scaled(Scalar::from_int(f, c));
    if (!(lhs == rhs)) return false;
    for (int t : gens) {
      int conj = g.mul(g.mul(g.inv(ns), t), ns);
      if (!(act_torus(t) * simple_act_[s] == simple_act_[s] * act_torus(conj))) return false;
    }
  }
  for (int s = 0; s < d.rank(); ++s)
    for (int t = s + 1; t < d.rank(); ++t) {
      Perm prod = d.simple_reflection(s) * d.simple_reflection(t);
      int order = 1;
      Perm cur = prod;
      while (!cur.is_identity()) {
        cur = cur * prod;
        ++order;
      }
      Mat lhs = Mat::identity(f, rank_), rhs = lhs;
      int lg = g.identity(), rg = g.identity();
      for (int i = 0; i < order; ++i) {
        lhs = lhs * (i % 2 == 0 ? simple_act_[s] : simple_act_[t]);
        rhs = rhs * (i % 2 == 0 ? simple_act_[t] : simple_act_[s]);
        lg = g.mul(lg, g.lift_simple(i % 2 == 0 ? s : t));
        rg = g.mul(rg, g.lift_simple(i % 2 == 0 ? t : s));
      }
      if (lg != rg) rhs = rhs * act_torus(g.mul(g.inv(rg), lg));
      if (!(lhs == rhs)) return false;
    }
  return true;
}

std::vector<Mat> hom_space(const HeckeModule& m, const HeckeModule& n) {
  if (m.algebra().coeff() != n.algebra().coeff() ||
      m.algebra().group().descriptor() != n.algebra().group().descriptor())
    throw std::invalid_argument("hom between modules over different algebras");
  auto a = m.generator_mats();
  auto b = n.generator_mats();
  if (a.empty()) {
    a.push_back(Mat::identity(m.algebra().coeff(), m.rank()));
    b.push_back(Mat::identity(n.algebra().coeff(), n.rank()));
  }
  return intertwiner_space(a, b);
}

int hom_dim(const HeckeModule& m, const HeckeModule& n) {
  return static_cast<int>(hom_space(m, n).size());
}

std::optional<Mat> find_module_isomorphism(const HeckeModule& m, const HeckeModule& n,
                                           uint64_t seed) {
  if (m.rank() != n.rank()) return std::nullopt;
  return find_invertible_in_span(hom_space(m, n), seed);
}

ParabolicContext parabolic_context(const HeckeAlgebra& HM, const HeckeAlgebra& H,
                                   const std::vector<int>& J) {
  ParabolicContext ctx{&HM, &H, J, levi_embedding(HM, H), {}, {}};
  ctx.coset_reps = H.group().datum().min_coset_reps(J);
  for (const auto& d : ctx.coset_reps) ctx.coset_lifts.push_back(H.group().lift(d));
  return ctx;
}

namespace {

// factor an H-basis element as tau^M_m tau_{n_d}; returns (HM basis, slot)
std::pair<int, int> free_basis_split(const ParabolicContext& ctx, int h_basis) {
  const FiniteGroup& g = ctx.H->group();
  const RootDatum& dat = g.datum();
  Perm w = ctx.H->basis_weyl(h_basis);
  int n = ctx.H->basis_element(h_basis);
  for (size_t di = 0; di < ctx.coset_reps.size(); ++di) {
    Perm wm = w * ctx.coset_reps[di].inverse();
    if (!dat.in_levi_weyl(wm, ctx.J)) continue;
    int m_elt = g.mul(n, g.inv(ctx.coset_lifts[di]));
    int m_in_levi = ctx.HM->group().index_of(g.elt(m_elt));
    return {ctx.HM->basis_index(m_in_levi), static_cast<int>(di)};
  }
  throw std::logic_error("free basis split failed");
}

// factor as tau_{n_d^{-1}} tau^M_m (right module free basis)
std::pair<int, int> free_basis_split_right(const ParabolicContext& ctx, int h_basis) {
  const FiniteGroup& g = ctx.H->group();
  const RootDatum& dat = g.datum();
  Perm w = ctx.H->basis_weyl(h_basis);
  int n = ctx.H->basis_element(h_basis);
  for (size_t di = 0; di < ctx.coset_reps.size(); ++di) {
    Perm wm = ctx.coset_reps[di] * w;
    if (!dat.in_levi_weyl(wm, ctx.J)) continue;
    int m_elt = g.mul(ctx.coset_lifts[di], n);
    int m_in_levi = ctx.HM->group().index_of(g.elt(m_elt));
    return {ctx.HM->basis_index(m_in_levi), static_cast<int>(di)};
  }
  throw std::logic_error("right free basis split failed");
}

HeckeModule assemble(const HeckeAlgebra& H, int rank,
                     const std::function<Mat(int)>& action_of) {
  const FiniteGroup& g = H.group();
  std::vector<Mat> torus, simples;
  for (int t : g.torus_gens()) torus.push_back(action_of(t));
  for (int s = 0; s < g.datum().rank(); ++s) simples.push_back(action_of(g.lift_simple(s)));
  return HeckeModule(&H, rank, std::move(torus), std::move(simples));
}

}  // namespace

HeckeModule induct(const ParabolicContext& ctx, const HeckeModule& m) {
  const HeckeAlgebra& H = *ctx.H;
  const Field* f = H.coeff();
  int r = m.rank();
  int slots = static_cast<int>(ctx.coset_reps.size());
  int rank = r * slots;
  return assemble(H, rank, [&](int gen_elt) {
    Mat out(f, rank, rank);
    int gb = H.basis_index(gen_elt);
    for (int d = 0; d < slots; ++d) {
      const auto& prod = H.mul_basis(H.basis_index(ctx.coset_lifts[d]), gb);
      for (const auto& [hb, c] : prod) {
        auto [mb, dd] = free_basis_split(ctx, hb);
        Mat mact = m.act_basis(mb).scaled(c);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) out.at(d * r + i, dd * r + j) += mact.at(i, j);
      }
    }
    return out;
  });
}

Mat induct_morphism(const ParabolicContext& ctx, const Mat& phi) {
  int slots = static_cast<int>(ctx.coset_reps.size());
  const Field* f = phi.field();
  Mat out(f, phi.rows() * slots, phi.cols() * slots);
  for (int d = 0; d < slots; ++d)
    for (int i = 0; i < phi.rows(); ++i)
      for (int j = 0; j < phi.cols(); ++j)
        out.at(d * phi.rows() + i, d * phi.cols() + j) = phi.at(i, j);
  return out;
}

HeckeModule coinduct(const ParabolicContext& ctx, const HeckeModule& m) {
  const HeckeAlgebra& H = *ctx.H;
  const Field* f = H.coeff();
  const FiniteGroup& g = H.group();
  int r = m.rank();
  int slots = static_cast<int>(ctx.coset_reps.size());
  int rank = r * slots;
  return assemble(H, rank, [&](int gen_elt) {
    Mat out(f, rank, rank);
    int gb = H.basis_index(gen_elt);
    // (f.h)(tau_{n_d^-1}) = f(h tau_{n_d^-1}); peel tau^M factors on the right
    for (int d = 0; d < slots; ++d) {
      int dinv_basis = H.basis_index(g.inv(ctx.coset_lifts[d]));
      const auto& prod = H.mul_basis(gb, dinv_basis);
      for (const auto& [hb, c] : prod) {
        auto [mb, dd] = free_basis_split_right(ctx, hb);
        Mat mact = m.act_basis(mb).scaled(c);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) out.at(dd * r + i, d * r + j) += mact.at(i, j);
      }
    }
    return out;
  });
}

HeckeModule restrict_module(const ParabolicContext& ctx, const HeckeModule& n) {
  const HeckeAlgebra& HM = *ctx.HM;
  const FiniteGroup& gm = HM.group();
  std::vector<Mat> torus, simples;
  for (int t : gm.torus_gens())
    torus.push_back(n.act_basis(ctx.H->basis_index(ctx.H->group().index_of(gm.elt(t)))));
  for (int s = 0; s < gm.datum().rank(); ++s) {
    int lifted = ctx.H->group().index_of(gm.elt(gm.lift_simple(s)));
    simples.push_back(n.act_basis(ctx.H->basis_index(lifted)));
  }
  return HeckeModule(&HM, n.rank(), std::move(torus), std::move(simples));
}

HeckeModule left_adjoint(const ParabolicContext& ctx, const HeckeModule& n) {
  const HeckeAlgebra& HM = *ctx.HM;
  const FiniteGroup& g = ctx.H->group();
  const FiniteGroup& gm = HM.group();
  int nw = g.lift(g.datum().longest_element());
  int nwm = g.lift(gm.datum().longest_element());
  int nwinv = g.inv(nw);
  auto twist = [&](int levi_elt) {
    // iota^-1 iota_M on indices: x -> nw^-1 (nwm x nwm^-1) nw, landing in M'
    int x = g.index_of(gm.elt(levi_elt));
    int conj = g.mul(g.mul(nwm, x), g.inv(nwm));
    return g.mul(g.mul(nwinv, conj), nw);
  };
  std::vector<Mat> torus, simples;
  for (int t : gm.torus_gens()) torus.push_back(n.act_basis(ctx.H->basis_index(twist(t))));
  for (int s = 0; s < gm.datum().rank(); ++s)
    simples.push_back(n.act_basis(ctx.H->basis_index(twist(gm.lift_simple(s)))));
  return HeckeModule(&HM, n.rank(), std::move(torus), std::move(simples));
}

HeckeModule twist_to_conjugate_levi(const ParabolicContext& ctx, const HeckeAlgebra& HMprime,
                                    const HeckeModule& m) {
  // m over H_M becomes a module over H_{M'} through iota_M^-1 iota
  const FiniteGroup& g = ctx.H->group();
  const FiniteGroup& gm = ctx.HM->group();
  const FiniteGroup& gmp = HMprime.group();
  int nw = g.lift(g.datum().longest_element());
  int nwm = g.lift(gm.datum().longest_element());
  auto map_elt = [&](int mp_elt) {
    // iota_M^-1 iota : H_{M'} -> H_M, x -> nwm^-1 (nw x nw^-1) nwm
    int x = g.index_of(gmp.elt(mp_elt));
    int conj = g.mul(g.mul(nw, x), g.inv(nw));
    int y = g.mul(g.mul(g.inv(nwm), conj), nwm);
    return gm.index_of(g.elt(y));
  };
  std::vector<Mat> torus, simples;
  for (int t : gmp.torus_gens()) torus.push_back(m.act_torus(map_elt(t)));
  for (int s = 0; s < gmp.datum().rank(); ++s)
    simples.push_back(m.act_basis(ctx.HM->basis_index(map_elt(gmp.lift_simple(s)))));
  return HeckeModule(&HMprime, m.rank(), std::move(torus), std::move(simples));
}

std::vector<HeckeModule> all_torus_characters(const HeckeAlgebra& HT) {
  const FiniteGroup& g = HT.group();
  if (g.datum().rank() != 0)
    throw std::invalid_argument("all_torus_characters expects a torus block group");
  const Field* f = HT.coeff();
  auto gens = g.torus_gens();
  std::vector<Scalar> cands;
  if (f->is_rational()) {
    cands.push_back(Scalar::from_int(f, 1));
    if ((g.q() - 1) % 2 == 0 && g.q() > 2) cands.push_back(Scalar::from_int(f, -1));
  } else {
    for (int v = 1; v < f->order(); ++v) {
      Scalar s = Scalar::gf_code(f, v);
      if (pow(s, g.q() - 1).is_one()) cands.push_back(s);
    }
  }
  std::vector<HeckeModule> out;
  std::vector<size_t> idx(gens.size(), 0);
  while (true) {
    std::vector<Mat> torus;
    for (size_t i = 0; i < gens.size(); ++i) {
      Mat mm(f, 1, 1);
      mm.at(0, 0) = cands[idx[i]];
      torus.push_back(mm);
    }
    out.push_back(HeckeModule(&HT, 1, torus, {}));
    if (gens.empty()) break;
    size_t pos = 0;
    while (pos < gens.size() && ++idx[pos] == cands.size()) idx[pos++] = 0;
    if (pos == gens.size()) break;
  }
  return out;
}

AdjunctionReport check_adjunction(const ParabolicContext& ctx, const HeckeModule& m,
                                  const HeckeModule& n) {
  AdjunctionReport rep;
  HeckeModule ind = induct(ctx, m);
  HeckeModule res = restrict_module(ctx, n);
  HeckeModule lad = left_adjoint(ctx, n);
  rep.dim_hom_ind_m_n = hom_dim(ind, n);
  rep.dim_hom_m_res_n = hom_dim(m, res);
  rep.dim_hom_l_n_m = hom_dim(lad, m);
  rep.dim_hom_n_ind_m = hom_dim(n, ind);
  rep.right_adjoint_ok = rep.dim_hom_ind_m_n == rep.dim_hom_m_res_n;
  rep.left_adjoint_ok = rep.dim_hom_l_n_m == rep.dim_hom_n_ind_m;
  return rep;
}

bool check_ind_coind_twist(const ParabolicContext& ctx, const HeckeAlgebra& HMprime,
                           const ParabolicContext& ctx_prime, const HeckeModule& m) {
  HeckeModule lhs = induct(ctx, m);
  HeckeModule twisted = twist_to_conjugate_levi(ctx, HMprime, m);
  HeckeModule rhs = coinduct(ctx_prime, twisted);
  return find_module_isomorphism(lhs, rhs).has_value();
}

BimoduleReport check_bimodule_isomorphism(const ParabolicContext& ctx, bool untwisted) {
  const HeckeAlgebra& H = *ctx.H;
  const HeckeAlgebra& HM = *ctx.HM;
  const FiniteGroup& g = H.group();
  const Field* f = H.coeff();
  int slots = static_cast<int>(ctx.coset_reps.size());
  int dM = HM.dim(), dH = H.dim();

  FrobeniusData fd = H.frobenius();
  FrobeniusData fdM = HM.frobenius();
  int nw_inv = g.inv(fd.lift);
  auto iota_inv = [&](int h_basis) {
    return H.basis_index(g.mul(g.mul(nw_inv, H.basis_element(h_basis)), fd.lift));
  };
  auto delta_H = [&](const HeckeElt& x) {
    return untwisted ? H.delta_prime(x) : H.delta(fd, x);
  };
  auto delta_M = [&](const HeckeElt& x) {
    return untwisted ? HM.delta_prime(x) : HM.delta(fdM, x);
  };
  // Gram matrix of the chosen form on H_M: [delta_M(tau_a tau_b)]
  Mat gram(f, dM, dM);
  for (int a = 0; a < dM; ++a)
    for (int b = 0; b < dM; ++b) gram.at(a, b) = delta_M(HM.tau(a) * HM.tau(b));
  Mat gram_inv = *gram.inverse();

  // Psi(y): Hom coordinates are (f_y(tau_{n_d}))_d, each in the H_M basis,
  // pinned by delta_M(tau^M_a f(tau_{n_d})) = delta_H(y iota^-1(tau_a tau_{n_d}))
  int hom_dim_total = dM * slots;
  Mat psi(f, dH, hom_dim_total);
  for (int y = 0; y < dH; ++y)
    for (int d = 0; d < slots; ++d) {
      Mat rhs(f, 1, dM);
      for (int a = 0; a < dM; ++a) {
        int xa = g.mul(g.index_of(HM.group().elt(HM.basis_element(a))), ctx.coset_lifts[d]);
        int xx = untwisted ? H.basis_index(xa) : iota_inv(H.basis_index(xa));
        rhs.at(0, a) = delta_H(H.tau(y) * H.tau(xx));
      }
      // solve gram * coef = rhs^T, i.e. coef = rows of gram_inv applied
      for (int b = 0; b < dM; ++b) {
        Scalar acc(f);
        for (int a = 0; a < dM; ++a) acc += gram_inv.at(b, a) * rhs.at(0, a);
        // delta_M(tau_a sum_b coef_b tau_b) = sum_b gram[a][b] coef_b
        psi.at(y, d * dM + b) = acc;
      }
    }

  BimoduleReport rep;
  rep.bijective = psi.rank() == dH && hom_dim_total == dH;

  // Hom-side action matrices in the (d, H_M-basis) coordinates
  auto hom_left_action = [&](int gen_elt) {
    // (h . f)(x) = f(x h): image of coordinate block d under expansion of
    // tau_{n_d} tau_gen = sum c tau^M_a tau_{n_dd}
    Mat op(f, hom_dim_total, hom_dim_total);
    int gb = H.basis_index(gen_elt);
    for (int d = 0; d < slots; ++d) {
      const auto& prod = H.mul_basis(H.basis_index(ctx.coset_lifts[d]), gb);
      for (const auto& [hb, c] : prod) {
        auto [mb, dd] = free_basis_split(ctx, hb);
        // f(tau^M_mb tau_{n_dd}) = tau^M_mb * f(tau_{n_dd}): left mult in H_M
        for (int b = 0; b < dM; ++b) {
          const auto& lm = HM.mul_basis(mb, b);
          for (const auto& [k, v] : lm) op.at(dd * dM + b, d * dM + k) += c * v;
        }
      }
    }
    return op;
  };
  auto hom_right_action = [&](int levi_gen_basis) {
    // (f . h_M)(x) = f(x) h_M: right multiplication blockwise
    Mat op(f, hom_dim_total, hom_dim_total);
    for (int d = 0; d < slots; ++d)
      for (int b = 0; b < dM; ++b) {
        const auto& rm = HM.mul_basis(b, levi_gen_basis);
        for (const auto& [k, v] : rm) op.at(d * dM + b, d * dM + k) += v;
      }
    return op;
  };

  std::vector<int> h_gens = g.torus_gens();
  for (int s = 0; s < g.datum().rank(); ++s) h_gens.push_back(g.lift_simple(s));
  rep.left_equivariant = true;
  for (int gen : h_gens) {
    Mat lmul(f, dH, dH);
    int gb = H.basis_index(gen);
    for (int y = 0; y < dH; ++y)
      for (const auto& [k, v] : H.mul_basis(gb, y)) lmul.at(y, k) = v;
    if (!(lmul * psi == psi * hom_left_action(gen))) {
      rep.left_equivariant = false;
      break;
    }
  }

  rep.right_equivariant = true;
  int nwm = fdM.lift;
  for (int genM = 0; genM < dM; ++genM) {
    // right action of tau^M_genM on H side: y -> y iota^-1(iota_M(tau_genM))
    int xm = HM.basis_element(genM);
    int x_in_g = g.index_of(HM.group().elt(xm));
    int twisted_elt;
    if (untwisted) {
      twisted_elt = x_in_g;
    } else {
      int conj = g.mul(g.mul(g.index_of(HM.group().elt(nwm)), x_in_g),
                       g.inv(g.index_of(HM.group().elt(nwm))));
      twisted_elt = g.mul(g.mul(nw_inv, conj), fd.lift);
    }
    Mat rmul = H.right_multiplication(H.tau_of_group(twisted_elt));
    if (!(rmul * psi == psi * hom_right_action(genM))) {
      rep.right_equivariant = false;
      break;
    }
  }
  return rep;
}

}  // namespace heckelab
