#include "heckelab/rep_finite.hpp"

#include <algorithm>
#include <random>

namespace heckelab {

namespace {

// coordinates of a row vector in a row basis (throws if outside the span)
Mat coords_in_rowspace(const Mat& basis, const Mat& vec) {
  const Field* f = basis.field();
  Mat aug(f, basis.cols(), basis.rows() + 1);
  for (int r = 0; r < basis.cols(); ++r) {
    for (int c = 0; c < basis.rows(); ++c) aug.at(r, c) = basis.at(c, r);
    aug.at(r, basis.rows()) = vec.at(0, r);
  }
  auto piv = aug.rref();
  Mat x(f, 1, basis.rows());
  for (size_t pr = 0; pr < piv.size(); ++pr) {
    if (piv[pr] == basis.rows()) throw std::logic_error("vector outside subspace");
    x.at(0, piv[pr]) = aug.at(static_cast<int>(pr), basis.rows());
  }
  return x;
}

// restriction of a column-convention operator to the column space spanned by
// the transposed rows of `basis`
Mat restrict_col(const Mat& basis, const Mat& op) {
  return restrict_to_rowspace(basis, op.transpose()).transpose();
}

// fixed vectors of a family of column operators, as rows
Mat fixed_space(const Field* f, int dim, const std::vector<Mat>& ops) {
  if (ops.empty()) return Mat::identity(f, dim);
  std::vector<Mat> parts;
  for (const auto& a : ops) parts.push_back(a - Mat::identity(f, dim));
  return Mat::vstack(parts).kernel();
}

// block-diagonal (Levi) part of a parabolic element
int levi_part(const FiniteGroup& G, const FiniteGroup& levi, int p_elt) {
  GroupElt e = G.elt(p_elt);
  GroupElt md;
  md.n = e.n;
  int start = 0;
  for (int b : levi.blocks()) {
    for (int i = start; i < start + b; ++i)
      for (int j = start; j < start + b; ++j) md.at(i, j) = e.at(i, j);
    start += b;
  }
  return levi.index_of(md);
}

}  // namespace

GroupRep::GroupRep(std::shared_ptr<const FiniteGroup> g, const Field* f, int dim,
                   std::vector<Mat> gen_images)
    : g_(std::move(g)), f_(f), dim_(dim), gen_images_(std::move(gen_images)) {
  if (gen_images_.size() != g_->group_gens().size())
    throw std::invalid_argument("one image per group generator expected");
  for (const auto& m : gen_images_)
    if (m.rows() != dim_ || m.cols() != dim_ || !m.invertible())
      throw std::invalid_argument("generator image is not an invertible dim x dim matrix");
  memo_.emplace(g_->identity(), Mat::identity(f_, dim_));
}

GroupRep GroupRep::trivial(std::shared_ptr<const FiniteGroup> g, const Field* f) {
  std::vector<Mat> imgs(g->group_gens().size(), Mat::identity(f, 1));
  return GroupRep(std::move(g), f, 1, std::move(imgs));
}

GroupRep GroupRep::regular(std::shared_ptr<const FiniteGroup> g, const Field* f) {
  std::vector<Mat> imgs;
  for (int gen : g->group_gens()) {
    Mat a(f, g->size(), g->size());
    for (int h = 0; h < g->size(); ++h) a.at(g->mul(gen, h), h) = Scalar::from_int(f, 1);
    imgs.push_back(std::move(a));
  }
  int dim = g->size();
  return GroupRep(std::move(g), f, dim, std::move(imgs));
}

GroupRep GroupRep::universal(std::shared_ptr<const FiniteGroup> g, const Field* f) {
  auto cs = g->left_quotient(g->U());
  int n = static_cast<int>(cs.reps.size());
  std::vector<Mat> imgs;
  for (int gen : g->group_gens()) {
    Mat a(f, n, n);
    int inv = g->inv(gen);
    for (int c = 0; c < n; ++c)
      a.at(cs.coset_of[g->mul(cs.reps[c], inv)], c) = Scalar::from_int(f, 1);
    imgs.push_back(std::move(a));
  }
  return GroupRep(std::move(g), f, n, std::move(imgs));
}

Mat GroupRep::act(int elt) const {
  auto it = memo_.find(elt);
  if (it != memo_.end()) return it->second;
  const auto& table = g_->word_table();
  std::vector<int> chain;
  int cur = elt;
  while (memo_.find(cur) == memo_.end()) {
    chain.push_back(cur);
    cur = table[cur].parent;
  }
  Mat acc = memo_.at(cur);
  for (auto rit = chain.rbegin(); rit != chain.rend(); ++rit) {
    acc = acc * gen_images_[table[*rit].gen];
    memo_.emplace(*rit, acc);
  }
  return acc;
}

bool GroupRep::homomorphism_sampled(int samples, uint64_t seed) const {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    int a = static_cast<int>(rng() % g_->size());
    int b = static_cast<int>(rng() % g_->size());
    if (!(act(a) * act(b) == act(g_->mul(a, b)))) return false;
  }
  return true;
}

GroupRep GroupRep::contragredient() const {
  std::vector<Mat> imgs;
  for (int gen : g_->group_gens()) imgs.push_back(act(g_->inv(gen)).transpose());
  return GroupRep(g_, f_, dim_, std::move(imgs));
}

Mat UniversalModule::h_action(int h_basis) const {
  const FiniteGroup& g = *rep.group_ptr();
  const Field* f = rep.coeff();
  const auto& dc = g.u_double_cosets();
  int n = rep.dim();
  Mat a(f, n, n);
  int cell = dc.cell_of[H->basis_element(h_basis)];
  for (int c = 0; c < n; ++c) {
    // tau_n * 1_{Uy} is the indicator of U n U y
    std::vector<char> seen(n, 0);
    for (int x : dc.right_coset_reps[cell]) {
      int z = cosets.coset_of[g.mul(x, cosets.reps[c])];
      if (!seen[z]) {
        seen[z] = 1;
        a.at(z, c) += Scalar::from_int(f, 1);
      }
    }
  }
  return a;
}

bool UniversalModule::actions_commute_sampled(int samples, uint64_t seed) const {
  std::mt19937_64 rng(seed);
  const FiniteGroup& g = *rep.group_ptr();
  for (int i = 0; i < samples; ++i) {
    int e = static_cast<int>(rng() % g.size());
    int b = static_cast<int>(rng() % H->dim());
    if (!(rep.act(e) * h_action(b) == h_action(b) * rep.act(e))) return false;
  }
  return true;
}

UniversalModule universal_module(const HeckeAlgebra& H) {
  return UniversalModule{GroupRep::universal(H.group_ptr(), H.coeff()),
                         H.group().left_quotient(H.group().U()), &H};
}

Invariants u_invariants(const GroupRep& V, const HeckeAlgebra& H) {
  const FiniteGroup& g = *V.group_ptr();
  const Field* f = V.coeff();
  std::vector<Mat> gens;
  for (int u : g.unipotent_gens()) gens.push_back(V.act(u));
  Mat basis = fixed_space(f, V.dim(), gens);
  int k = basis.rows();
  const auto& dc = g.u_double_cosets();

  auto act_of = [&](int group_elt) {
    int cell = dc.cell_of[group_elt];
    Mat out(f, k, k);
    for (int i = 0; i < k; ++i) {
      // v tau_n = sum_y y^-1 v over the right cosets U n U = sqcup U y
      Mat acc(f, 1, V.dim());
      for (int y : dc.right_coset_reps[cell]) {
        Mat op = V.act(g.inv(y));
        for (int r = 0; r < V.dim(); ++r) {
          Scalar s(f);
          for (int c = 0; c < V.dim(); ++c) s += op.at(r, c) * basis.at(i, c);
          acc.at(0, r) += s;
        }
      }
      Mat coords = coords_in_rowspace(basis, acc);
      for (int j = 0; j < k; ++j) out.at(i, j) = coords.at(0, j);
    }
    return out;
  };

  std::vector<Mat> torus, simples;
  for (int t : g.torus_gens()) torus.push_back(act_of(t));
  for (int s = 0; s < g.datum().rank(); ++s) simples.push_back(act_of(g.lift_simple(s)));
  return Invariants{basis, HeckeModule(&H, k, std::move(torus), std::move(simples))};
}

GroupRep tensor_X(const HeckeModule& m, const UniversalModule& X) {
  const HeckeAlgebra& H = *X.H;
  const Field* f = H.coeff();
  const FiniteGroup& g = *X.rep.group_ptr();
  int r = m.rank(), N = X.rep.dim();
  int big = r * N;
  // balancing relations (v tau_n) ox x - v ox (tau_n * x)
  std::vector<Mat> rel_rows;
  for (int b = 0; b < H.dim(); ++b) {
    Mat ma = m.act_basis(b);
    Mat xa = X.h_action(b);
    for (int i = 0; i < r; ++i)
      for (int c = 0; c < N; ++c) {
        Mat row(f, 1, big);
        for (int k = 0; k < r; ++k) row.at(0, k * N + c) += ma.at(i, k);
        for (int z = 0; z < N; ++z) row.at(0, i * N + z) -= xa.at(z, c);
        if (!row.is_zero()) rel_rows.push_back(std::move(row));
      }
  }
  Mat rel = rel_rows.empty() ? Mat(f, 0, big) : Mat::vstack(rel_rows).row_basis();
  auto [proj, section] = quotient_maps(rel, big);

  auto big_act = [&](int gen) {
    Mat a = X.rep.act(gen);
    Mat out(f, big, big);
    for (int i = 0; i < r; ++i)
      for (int z = 0; z < N; ++z)
        for (int c = 0; c < N; ++c)
          if (!a.at(z, c).is_zero()) out.at(i * N + z, i * N + c) = a.at(z, c);
    return out;
  };

  std::vector<Mat> imgs;
  for (int gen : g.group_gens()) {
    Mat a = big_act(gen);
    for (int i = 0; i < rel.rows(); ++i)
      if (!rowspace_contains(rel, rel.row(i) * a.transpose()))
        throw std::logic_error("balancing relations not G-stable");
    imgs.push_back(proj.transpose() * a * section.transpose());
  }
  int dim = big - rel.rows();
  return GroupRep(X.rep.group_ptr(), f, dim, std::move(imgs));
}

GroupRep parabolic_induce(const GroupRep& V, std::shared_ptr<const FiniteGroup> Gp,
                          const std::vector<int>& J) {
  const FiniteGroup& G = *Gp;
  const Field* f = V.coeff();
  const FiniteGroup& levi = *V.group_ptr();
  auto cs = G.left_quotient(G.P(J));
  int nc = static_cast<int>(cs.reps.size());
  int dv = V.dim();
  int dim = nc * dv;

  std::vector<Mat> imgs;
  for (int gen : G.group_gens()) {
    Mat a(f, dim, dim);
    for (int i = 0; i < nc; ++i) {
      int xig = G.mul(cs.reps[i], gen);
      int j = cs.coset_of[xig];
      int p = G.mul(xig, G.inv(cs.reps[j]));
      Mat mv = V.act(levi_part(G, levi, p));
      for (int r = 0; r < dv; ++r)
        for (int c = 0; c < dv; ++c) a.at(i * dv + r, j * dv + c) = mv.at(r, c);
    }
    imgs.push_back(std::move(a));
  }
  return GroupRep(Gp, f, dim, std::move(imgs));
}

Mat f_P_v(const GroupRep& V, std::shared_ptr<const FiniteGroup> Gp, const std::vector<int>& J,
          const Mat& v) {
  const FiniteGroup& G = *Gp;
  const Field* f = V.coeff();
  const FiniteGroup& levi = *V.group_ptr();
  auto cs = G.left_quotient(G.P(J));
  int dv = V.dim();
  Mat out(f, static_cast<int>(cs.reps.size()) * dv, 1);
  int i0 = cs.coset_of[G.identity()];
  Mat val = V.act(levi_part(G, levi, cs.reps[i0]));  // value at the rep is m_rep . v
  for (int r = 0; r < dv; ++r) {
    Scalar acc(f);
    for (int c = 0; c < dv; ++c) acc += val.at(r, c) * v.at(0, c);
    out.at(i0 * dv + r, 0) = acc;
  }
  return out;
}

GroupRep n_invariants(const GroupRep& V, const std::vector<int>& J, Mat* basis_out) {
  const FiniteGroup& G = *V.group_ptr();
  const Field* f = V.coeff();
  auto levi = G.levi(J);
  std::vector<Mat> ops;
  std::vector<int> scalars{1};
  if (G.q() == 4) scalars.push_back(2);
  auto levi_pos = G.datum().levi_positive_roots(J);
  for (const auto& a : G.datum().positive_roots()) {
    if (std::find(levi_pos.begin(), levi_pos.end(), a) != levi_pos.end()) continue;
    for (int c : scalars) ops.push_back(V.act(G.root_element(a, c)));
  }
  Mat basis = fixed_space(f, V.dim(), ops);
  if (basis_out) *basis_out = basis;
  std::vector<Mat> imgs;
  for (int gen : levi->group_gens())
    imgs.push_back(restrict_col(basis, V.act(G.index_of(levi->elt(gen)))));
  int k = basis.rows();
  return GroupRep(levi, f, k, std::move(imgs));
}

GroupRep n_coinvariants(const GroupRep& V, const std::vector<int>& J, Mat* proj_out,
                        Mat* section_out) {
  const FiniteGroup& G = *V.group_ptr();
  const Field* f = V.coeff();
  auto levi = G.levi(J);
  Subgroup N = G.N(J);
  std::vector<Mat> rel_rows;
  for (int n : N.elems) {
    if (n == G.identity()) continue;
    Mat d = V.act(n) - Mat::identity(f, V.dim());
    for (int c = 0; c < V.dim(); ++c) {
      Mat row(f, 1, V.dim());
      bool nz = false;
      for (int r = 0; r < V.dim(); ++r) {
        row.at(0, r) = d.at(r, c);
        if (!row.at(0, r).is_zero()) nz = true;
      }
      if (nz) rel_rows.push_back(std::move(row));
    }
  }
  Mat rel = rel_rows.empty() ? Mat(f, 0, V.dim()) : Mat::vstack(rel_rows).row_basis();
  auto [proj, section] = quotient_maps(rel, V.dim());
  if (proj_out) *proj_out = proj;
  if (section_out) *section_out = section;
  std::vector<Mat> imgs;
  for (int gen : levi->group_gens())
    imgs.push_back(proj.transpose() * V.act(G.index_of(levi->elt(gen))) * section.transpose());
  int k = V.dim() - rel.rows();
  return GroupRep(levi, f, k, std::move(imgs));
}

GroupRep dagger(const GroupRep& V, Mat* basis_out) {
  const FiniteGroup& G = *V.group_ptr();
  const Field* f = V.coeff();
  std::vector<Mat> ops;
  for (int u : G.unipotent_gens()) ops.push_back(V.act(u));
  Mat basis = fixed_space(f, V.dim(), ops);
  bool grew = true;
  while (grew) {
    grew = false;
    for (int gen : G.group_gens()) {
      Mat a = V.act(gen).transpose();
      for (int i = 0; i < basis.rows(); ++i) {
        Mat moved = basis.row(i) * a;
        if (!rowspace_contains(basis, moved)) {
          basis = Mat::vstack({basis, moved}).row_basis();
          grew = true;
        }
      }
    }
  }
  if (basis_out) *basis_out = basis;
  std::vector<Mat> imgs;
  for (int gen : G.group_gens()) imgs.push_back(restrict_col(basis, V.act(gen)));
  int k = basis.rows();
  return GroupRep(V.group_ptr(), f, k, std::move(imgs));
}

std::vector<Mat> group_hom_space(const GroupRep& V, const GroupRep& W) {
  std::vector<Mat> a, b;
  for (int gen : V.group_ptr()->group_gens()) {
    a.push_back(V.act(gen).transpose());
    b.push_back(W.act(gen).transpose());
  }
  auto space = intertwiner_space(a, b);
  for (auto& x : space) x = x.transpose();
  return space;
}

int group_hom_dim(const GroupRep& V, const GroupRep& W) {
  return static_cast<int>(group_hom_space(V, W).size());
}

std::optional<Mat> find_rep_isomorphism(const GroupRep& V, const GroupRep& W, uint64_t seed) {
  if (V.dim() != W.dim()) return std::nullopt;
  return find_invertible_in_span(group_hom_space(V, W), seed);
}

bool check_diag_q1(const GroupRep& V, const ParabolicContext& ctx) {
  const HeckeAlgebra& H = *ctx.H;
  const HeckeAlgebra& HM = *ctx.HM;
  const FiniteGroup& G = H.group();
  const Field* f = H.coeff();

  Invariants invM = u_invariants(V, HM);
  HeckeModule A = induct(ctx, invM.mod);
  GroupRep W = parabolic_induce(V, H.group_ptr(), ctx.J);
  Invariants invG = u_invariants(W, H);
  const HeckeModule& B = invG.mod;
  if (A.rank() != B.rank()) return false;

  int k = invM.mod.rank();
  int slots = static_cast<int>(ctx.coset_reps.size());
  const auto& dc = G.u_double_cosets();
  Mat phi(f, A.rank(), B.rank());
  for (int d = 0; d < slots; ++d)
    for (int i = 0; i < k; ++i) {
      Mat fP = f_P_v(V, H.group_ptr(), ctx.J, invM.basis.row(i));
      int cell = dc.cell_of[ctx.coset_lifts[d]];
      Mat img(f, W.dim(), 1);
      for (int y : dc.right_coset_reps[cell]) img = img + W.act(G.inv(y)) * fP;
      Mat row(f, 1, W.dim());
      for (int r = 0; r < W.dim(); ++r) row.at(0, r) = img.at(r, 0);
      Mat coords = coords_in_rowspace(invG.basis, row);
      for (int j = 0; j < B.rank(); ++j) phi.at(d * k + i, j) = coords.at(0, j);
    }
  if (!phi.invertible()) return false;
  auto agens = A.generator_mats();
  auto bgens = B.generator_mats();
  for (size_t t = 0; t < agens.size(); ++t)
    if (!(agens[t] * phi == phi * bgens[t])) return false;
  return true;
}

bool check_diag_q2(const GroupRep& V, const ParabolicContext& ctx) {
  const HeckeAlgebra& H = *ctx.H;
  const HeckeAlgebra& HM = *ctx.HM;

  Mat nbasis;
  GroupRep VN = n_invariants(V, ctx.J, &nbasis);
  Invariants inner = u_invariants(VN, HM);  // (V^N)^{U_M} with its H_M-action
  Invariants outer = u_invariants(V, H);    // V^U with its H-action
  Mat composed = inner.basis * nbasis;
  if (composed.rows() != outer.basis.rows()) return false;
  if (Mat::vstack({composed, outer.basis}).rank() != composed.rows()) return false;

  HeckeModule res = restrict_module(ctx, outer.mod);
  int k = composed.rows();
  Mat change(H.coeff(), k, k);
  for (int i = 0; i < k; ++i) {
    Mat coords = coords_in_rowspace(outer.basis, composed.row(i));
    for (int j = 0; j < k; ++j) change.at(i, j) = coords.at(0, j);
  }
  auto in_gens = inner.mod.generator_mats();
  auto res_gens = res.generator_mats();
  if (in_gens.size() != res_gens.size()) return false;
  for (size_t t = 0; t < in_gens.size(); ++t)
    if (!(in_gens[t] * change == change * res_gens[t])) return false;
  return true;
}

bool check_q3_char_ne_p(const GroupRep& V, const ParabolicContext& ctx) {
  const HeckeAlgebra& H = *ctx.H;
  const HeckeAlgebra& HM = *ctx.HM;
  if (H.coeff()->characteristic() == H.group().entry_field()->characteristic())
    throw std::domain_error("Q3 comparison requires char != p");

  Mat proj, section;
  GroupRep VN = n_coinvariants(V, ctx.J, &proj, &section);
  Invariants m1 = u_invariants(VN, HM);
  Invariants outer = u_invariants(V, H);
  HeckeModule m2 = restrict_module(ctx, outer.mod);
  if (m1.mod.rank() != m2.rank()) return false;

  int k = m2.rank();
  Mat phi(H.coeff(), k, k);
  for (int i = 0; i < k; ++i) {
    Mat qcoords = outer.basis.row(i) * proj;
    Mat coords = coords_in_rowspace(m1.basis, qcoords);
    for (int j = 0; j < k; ++j) phi.at(i, j) = coords.at(0, j);
  }
  if (!phi.invertible()) return false;
  auto a = m2.generator_mats();
  auto b = m1.mod.generator_mats();
  for (size_t t = 0; t < a.size(); ++t)
    if (!(a[t] * phi == phi * b[t])) return false;
  return true;
}

bool check_dagger_commutes(const GroupRep& V, const ParabolicContext& ctx) {
  const FiniteGroup& G = ctx.H->group();
  GroupRep ind = parabolic_induce(V, ctx.H->group_ptr(), ctx.J);
  Mat dag_basis;
  dagger(ind, &dag_basis);

  Mat sub_basis;
  dagger(V, &sub_basis);
  auto cs = G.left_quotient(G.P(ctx.J));
  int nc = static_cast<int>(cs.reps.size());
  const Field* f = V.coeff();
  Mat img(f, nc * sub_basis.rows(), ind.dim());
  for (int i = 0; i < nc; ++i)
    for (int a = 0; a < sub_basis.rows(); ++a)
      for (int c = 0; c < V.dim(); ++c)
        img.at(i * sub_basis.rows() + a, i * V.dim() + c) = sub_basis.at(a, c);
  Mat imgb = img.row_basis();
  if (imgb.rows() != dag_basis.rows()) return false;
  return Mat::vstack({imgb, dag_basis}).rank() == dag_basis.rows();
}

bool check_contra_ind(const GroupRep& V, const ParabolicContext& ctx) {
  const FiniteGroup& G = ctx.H->group();
  // Ind_P(V^vee) -> (Ind_P V)^vee is the identity matrix in our coordinates;
  // it is an isomorphism iff the two actions literally agree
  GroupRep lhs = parabolic_induce(V.contragredient(), ctx.H->group_ptr(), ctx.J);
  GroupRep rhs = parabolic_induce(V, ctx.H->group_ptr(), ctx.J);
  for (int gen : G.group_gens())
    if (!(lhs.act(gen) == rhs.act(G.inv(gen)).transpose())) return false;

  // (W_N)^vee iso (W^vee)^N via xi -> xi o proj, for W the induced G-rep
  GroupRep W = parabolic_induce(V, ctx.H->group_ptr(), ctx.J);
  Mat proj, section;
  GroupRep WN = n_coinvariants(W, ctx.J, &proj, &section);
  GroupRep Wdual = W.contragredient();
  Mat fix_basis;
  GroupRep dualN = n_invariants(Wdual, ctx.J, &fix_basis);
  if (WN.dim() != dualN.dim()) return false;
  const Field* f = V.coeff();
  int k = WN.dim();
  Mat phi(f, k, k);
  for (int i = 0; i < k; ++i) {
    Mat row(f, 1, W.dim());
    for (int r = 0; r < W.dim(); ++r) row.at(0, r) = proj.at(r, i);
    Mat coords = coords_in_rowspace(fix_basis, row);
    for (int j = 0; j < k; ++j) phi.at(i, j) = coords.at(0, j);
  }
  if (!phi.invertible()) return false;
  auto levi = WN.group_ptr();
  for (int gen : levi->group_gens()) {
    // dual of the quotient action against the restricted dual action
    Mat a = WN.act(levi->inv(gen));
    Mat b = dualN.act(gen);
    if (!(a * phi == phi * b.transpose())) return false;
  }
  return true;
}

std::pair<int, long long> projectivity_defect(const HeckeAlgebra& H) {
  UniversalModule X = universal_module(H);
  Invariants inv = u_invariants(X.rep, H);
  return {X.rep.dim(), static_cast<long long>(H.group().U().size()) * inv.mod.rank()};
}

Q3Witness q3_witness(const HeckeAlgebra& H) {
  const FiniteGroup& g = H.group();
  const Field* f = H.coeff();
  UniversalModule X = universal_module(H);
  Invariants invX = u_invariants(X.rep, H);

  Q3Witness w;
  w.full_dim = invX.mod.rank();
  // R[G]^U has basis the orbit sums over the cosets Uc; the evaluation map
  // R[G] ->> X, e_h -> 1_{U h^-1}, sends the orbit sum of Uc to
  // sum_{u in U} 1_{U c^-1 u^-1}, multiplicities included
  std::vector<Mat> image_rows;
  for (int c : X.cosets.reps) {
    Mat row(f, 1, X.rep.dim());
    for (int u : g.U().elems) {
      int target = X.cosets.coset_of[g.inv(g.mul(u, c))];
      row.at(0, target) += Scalar::from_int(f, 1);
    }
    image_rows.push_back(std::move(row));
  }
  Mat img = Mat::vstack(image_rows);
  std::vector<Mat> coord_rows;
  for (int i = 0; i < img.rows(); ++i)
    coord_rows.push_back(coords_in_rowspace(invX.basis, img.row(i)));
  Mat coords = Mat::vstack(coord_rows);
  w.image_dim = coords.rank();
  w.surjective = w.image_dim == w.full_dim;

  Mat unit_row(f, 1, X.rep.dim());
  unit_row.at(0, X.cosets.coset_of[g.identity()]) = Scalar::from_int(f, 1);
  Mat unit_coords = coords_in_rowspace(invX.basis, unit_row);
  w.unit_in_image = rowspace_contains(coords.row_basis(), unit_coords);
  return w;
}

}  // namespace heckelab
