#include "heckelab/reports.hpp"

#include <atomic>
#include <chrono>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace heckelab {

const std::vector<std::string> kSuiteNames = {
    "coxeter",        "finite-oracle",  "frobenius",     "finite-diagrams",
    "affine-presentation", "affine-functors", "supersingular", "all"};

int Report::failures() const {
  int n = 0;
  for (const auto& c : checks)
    if (!c.pass) ++n;
  return n;
}

nlohmann::json Report::to_json(bool with_times) const {
  nlohmann::json j;
  j["suite"] = suite;
  j["config"] = config;
  nlohmann::json arr = nlohmann::json::array();
  int pass = 0;
  for (const auto& c : checks) {
    nlohmann::json e{{"name", c.name}, {"params", c.params}, {"pass", c.pass},
                     {"measured", c.measured}};
    if (with_times) e["ms"] = c.ms;
    arr.push_back(std::move(e));
    if (c.pass) ++pass;
  }
  j["checks"] = std::move(arr);
  j["summary"] = {{"pass", pass}, {"fail", static_cast<int>(checks.size()) - pass}};
  return j;
}

std::tuple<std::string, int, int> parse_group(const std::string& descriptor) {
  auto c1 = descriptor.find(':');
  auto c2 = descriptor.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("group descriptor must be fam:n:q, got '" + descriptor + "'");
  std::string fam = descriptor.substr(0, c1);
  int n = std::stoi(descriptor.substr(c1 + 1, c2 - c1 - 1));
  int q = std::stoi(descriptor.substr(c2 + 1));
  return {fam, n, q};
}

namespace {

using Job = std::pair<std::string, std::function<CheckResult()>>;

CheckResult timed(const std::string& name, const std::string& params,
                  const std::function<std::pair<bool, std::string>()>& body) {
  CheckResult r;
  r.name = name;
  r.params = params;
  auto t0 = std::chrono::steady_clock::now();
  try {
    auto [pass, measured] = body();
    r.pass = pass;
    r.measured = measured;
  } catch (const std::exception& e) {
    r.pass = false;
    r.measured = std::string("exception: ") + e.what();
  }
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
             .count();
  return r;
}

std::string subset_name(const std::vector<int>& J) {
  if (J.empty()) return "{}";
  std::string s = "{";
  for (size_t i = 0; i < J.size(); ++i) s += (i ? "," : "") + std::to_string(J[i]);
  return s + "}";
}

std::vector<std::vector<int>> all_subsets(int rank) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << rank); ++mask) {
    std::vector<int> J;
    for (int i = 0; i < rank; ++i)
      if (mask & (1 << i)) J.push_back(i);
    out.push_back(J);
  }
  return out;
}

// ---------------- coxeter ----------------

void coxeter_jobs(std::vector<Job>& jobs) {
  for (auto type : {CartanType::A1, CartanType::A1xA1, CartanType::A2}) {
    std::string tn = cartan_name(type);
    jobs.emplace_back("coxeter/deletion-exchange:" + tn, [type, tn]() {
      return timed("deletion-exchange", tn, [&]() {
        RootDatum d(type);
        for (const auto& w : d.weyl_elements())
          for (int s = 0; s < d.rank(); ++s) {
            int diff = d.length(w * d.simple_reflection(s)) - d.length(w);
            if (diff != 1 && diff != -1) return std::make_pair(false, std::string("bad step"));
          }
        return std::make_pair(true, std::string("all elements"));
      });
    });
    jobs.emplace_back("coxeter/coset-partition:" + tn, [type, tn]() {
      return timed("coset-partition", tn, [&]() {
        RootDatum d(type);
        for (int mask = 0; mask < (1 << d.rank()); ++mask) {
          std::vector<int> J;
          for (int i = 0; i < d.rank(); ++i)
            if (mask & (1 << i)) J.push_back(i);
          auto reps = d.min_coset_reps(J);
          std::set<std::vector<int>> seen;
          size_t levi = 0;
          for (const auto& w : d.weyl_elements()) {
            if (!d.in_levi_weyl(w, J)) continue;
            ++levi;
            for (const auto& rep : reps) {
              Perm prod = w * rep;
              if (d.length(prod) != d.length(w) + d.length(rep))
                return std::make_pair(false, std::string("length not additive"));
              seen.insert(prod.p);
            }
          }
          if (seen.size() != d.weyl_elements().size() ||
              levi * reps.size() != d.weyl_elements().size())
            return std::make_pair(false, std::string("not a partition"));
        }
        return std::make_pair(true, std::string("all Levi subsets"));
      });
    });
    jobs.emplace_back("coxeter/positivity-count:" + tn, [type, tn]() {
      return timed("positivity-count", tn, [&]() {
        RootDatum d(type);
        for (const auto& w : d.weyl_elements()) {
          int neg = 0;
          for (const auto& a : d.positive_roots())
            if (!d.is_positive_root(d.apply(w, a))) ++neg;
          if (neg != d.length(w)) return std::make_pair(false, std::string("count mismatch"));
        }
        return std::make_pair(true, std::string("all elements"));
      });
    });
  }
  jobs.emplace_back("coxeter/affine-action-group-law", []() {
    return timed("affine-action-group-law", "A1 box [-3,3], A2 box [-2,2]", [&]() {
      for (auto [type, box] : std::vector<std::pair<CartanType, int>>{
               {CartanType::A1, 3}, {CartanType::A2, 2}}) {
        RootDatum d(type);
        int n = d.ambient_dim();
        std::vector<AffineRoot> roots;
        for (const auto& a : d.positive_roots()) {
          roots.push_back({a, 0});
          roots.push_back({a, 1});
          IntVec na(a.size());
          for (size_t i = 0; i < a.size(); ++i) na[i] = -a[i];
          roots.push_back({na, 1});
        }
        std::vector<IntVec> lambdas;
        IntVec cur(n, -box);
        while (true) {
          lambdas.push_back(cur);
          int i = 0;
          while (i < n && ++cur[i] > box) cur[i++] = -box;
          if (i == n) break;
        }
        for (const auto& l1 : lambdas)
          for (const auto& w1 : d.weyl_elements())
            for (const auto& l2 : lambdas)
              for (const auto& w2 : d.weyl_elements()) {
                IntVec l1w = d.apply(w2.inverse(), l1);
                IntVec lam(n);
                for (int i = 0; i < n; ++i) lam[i] = l1w[i] + l2[i];
                Perm w12 = w1 * w2;
                for (const auto& a : roots) {
                  AffineRoot lhs = d.affine_action(l1, w1, d.affine_action(l2, w2, a));
                  AffineRoot rhs = d.affine_action(lam, w12, a);
                  if (!(lhs == rhs)) return std::make_pair(false, std::string("not an action"));
                }
              }
      }
      return std::make_pair(true, std::string("exhaustive over the boxes"));
    });
  });
}

// ---------------- finite-oracle ----------------

void finite_oracle_jobs(std::vector<Job>& jobs, const std::string& group,
                        const std::string& coeff, uint64_t seed) {
  auto [fam, n, q] = parse_group(group);
  std::string params = group + " coeff=" + coeff;
  jobs.emplace_back("finite-oracle/tables-match:" + params, [=]() {
    return timed("oracle-vs-presentation", params, [&]() {
      auto g = FiniteGroup::build(fam, n, q);
      HeckeAlgebra H(g, Field::parse(coeff));
      bool ok = H.oracle_matches_presentation();
      return std::make_pair(ok, "dim " + std::to_string(H.dim()));
    });
  });
  jobs.emplace_back("finite-oracle/associativity:" + params, [=]() {
    return timed("associativity", params, [&]() {
      auto g = FiniteGroup::build(fam, n, q);
      HeckeAlgebra H(g, Field::parse(coeff));
      bool ok = H.dim() <= 8 ? H.presentation_associative_exhaustive()
                             : H.presentation_associative_sampled(10000, seed);
      return std::make_pair(ok, H.dim() <= 8 ? std::string("exhaustive")
                                             : std::string("10000 seeded triples"));
    });
  });
  jobs.emplace_back("finite-oracle/quadratic-data:" + params, [=]() {
    return timed("quadratic-data", params, [&]() {
      auto g = FiniteGroup::build(fam, n, q);
      HeckeAlgebra H(g, Field::parse(coeff));
      std::ostringstream m;
      for (int s = 0; s < g->datum().rank(); ++s) {
        const auto& qd = H.quadratic(s);
        long long sum = 0;
        for (const auto& [z, c] : qd.c) sum += c;
        if (qd.q_s != q || sum != qd.q_s - 1)
          return std::make_pair(false, std::string("sum rule violated"));
        auto zp = H.z_prime(s);
        // Z'_s equals the coroot image, and c is supported exactly there
        if (zp.size() != qd.c.size()) return std::make_pair(false, std::string("support"));
        m << "s" << s << ": q_s=" << qd.q_s << " |Z'|=" << zp.size() << "; ";
      }
      return std::make_pair(true, m.str());
    });
  });
  jobs.emplace_back("finite-oracle/bruhat-bsbsb:" + params, [=]() {
    return timed("bruhat-BsBsB", params, [&]() {
      auto g = FiniteGroup::build(fam, n, q);
      for (int s = 0; s < g->datum().rank(); ++s)
        if (!g->verify_bruhat_bsbsb(s)) return std::make_pair(false, "s" + std::to_string(s));
      return std::make_pair(true, std::string("all simple reflections"));
    });
  });
  jobs.emplace_back("finite-oracle/parabolic-cosets:" + params, [=]() {
    return timed("parabolic-cosets", params, [&]() {
      auto g = FiniteGroup::build(fam, n, q);
      for (const auto& J : all_subsets(g->datum().rank()))
        if (!g->verify_parabolic_decomposition(J))
          return std::make_pair(false, "J=" + subset_name(J));
      return std::make_pair(true, std::string("all Levi subsets"));
    });
  });
}

// ---------------- frobenius ----------------

void frobenius_jobs(std::vector<Job>& jobs, const std::string& group, const std::string& coeff) {
  auto [fam, n, q] = parse_group(group);
  std::string params = group + " coeff=" + coeff;
  jobs.emplace_back("frobenius/identities:" + params, [=]() {
    return timed("frobenius-identities", params, [&]() {
      auto g = FiniteGroup::build(fam, n, q);
      HeckeAlgebra H(g, Field::parse(coeff));
      auto rep = H.check_frobenius();
      std::string m = "trace+gram";
      if (rep.applicable_symmetric) m += "+symmetric";
      bool ok = rep.trace_identity && rep.gram_invertible &&
                (!rep.applicable_symmetric || rep.symmetric_case);
      return std::make_pair(ok, m);
    });
  });
  jobs.emplace_back("frobenius/bimodule-iso:" + params, [=]() {
    return timed("bimodule-isomorphism", params, [&]() {
      auto g = FiniteGroup::build(fam, n, q);
      HeckeAlgebra H(g, Field::parse(coeff));
      auto levi = g->levi({});
      HeckeAlgebra HM(levi, Field::parse(coeff));
      auto ctx = parabolic_context(HM, H, {});
      auto rep = check_bimodule_isomorphism(ctx, false);
      bool ok = rep.ok();
      std::string m = "twisted";
      if (Field::parse(coeff)->characteristic() != q || Field::parse(coeff)->is_rational()) {
        if (Field::parse(coeff)->characteristic() !=
            g->entry_field()->characteristic()) {
          ok = ok && check_bimodule_isomorphism(ctx, true).ok();
          m += "+untwisted";
        }
      }
      return std::make_pair(ok, m);
    });
  });
}

// ---------------- finite-diagrams ----------------

void finite_diagram_jobs(std::vector<Job>& jobs, const std::string& group,
                         const std::string& coeff) {
  auto [fam, n, q] = parse_group(group);
  std::string params = group + " coeff=" + coeff;
  RootDatum datum(n, {n});
  for (const auto& J : all_subsets(datum.rank())) {
    std::string pj = params + " J=" + subset_name(J);
    jobs.emplace_back("finite-diagrams/q1:" + pj, [=]() {
      return timed("diagram-Q1", pj, [&]() {
        auto g = FiniteGroup::build(fam, n, q);
        const Field* f = Field::parse(coeff);
        HeckeAlgebra H(g, f);
        auto levi = g->levi(J);
        HeckeAlgebra HM(levi, f);
        auto ctx = parabolic_context(HM, H, J);
        if (!check_diag_q1(GroupRep::trivial(levi, f), ctx))
          return std::make_pair(false, std::string("V=Triv"));
        if (!check_diag_q1(GroupRep::universal(levi, f), ctx))
          return std::make_pair(false, std::string("V=X_M"));
        return std::make_pair(true, std::string("V in {Triv, X_M}"));
      });
    });
    jobs.emplace_back("finite-diagrams/q2:" + pj, [=]() {
      return timed("diagram-Q2", pj, [&]() {
        auto g = FiniteGroup::build(fam, n, q);
        const Field* f = Field::parse(coeff);
        HeckeAlgebra H(g, f);
        auto levi = g->levi(J);
        HeckeAlgebra HM(levi, f);
        auto ctx = parabolic_context(HM, H, J);
        if (!check_diag_q2(GroupRep::trivial(g, f), ctx))
          return std::make_pair(false, std::string("V=Triv"));
        if (!check_diag_q2(GroupRep::universal(g, f), ctx))
          return std::make_pair(false, std::string("V=X"));
        return std::make_pair(true, std::string("V in {Triv, X}"));
      });
    });
    jobs.emplace_back("finite-diagrams/dagger-contra:" + pj, [=]() {
      return timed("dagger-and-contragredient", pj, [&]() {
        auto g = FiniteGroup::build(fam, n, q);
        const Field* f = Field::parse(coeff);
        HeckeAlgebra H(g, f);
        auto levi = g->levi(J);
        HeckeAlgebra HM(levi, f);
        auto ctx = parabolic_context(HM, H, J);
        GroupRep v = GroupRep::trivial(levi, f);
        if (!check_dagger_commutes(v, ctx)) return std::make_pair(false, std::string("dagger"));
        if (!check_contra_ind(v, ctx)) return std::make_pair(false, std::string("contra"));
        return std::make_pair(true, std::string("Triv fiber"));
      });
    });
    const Field* f = Field::parse(coeff);
    auto g_probe = FiniteGroup::build(fam, n, q);
    if (f->characteristic() != g_probe->entry_field()->characteristic()) {
      jobs.emplace_back("finite-diagrams/q3:" + pj, [=]() {
        return timed("diagram-Q3-char-ne-p", pj, [&]() {
          auto g = FiniteGroup::build(fam, n, q);
          const Field* ff = Field::parse(coeff);
          HeckeAlgebra H(g, ff);
          auto levi = g->levi(J);
          HeckeAlgebra HM(levi, ff);
          auto ctx = parabolic_context(HM, H, J);
          if (!check_q3_char_ne_p(GroupRep::trivial(g, ff), ctx))
            return std::make_pair(false, std::string("V=Triv"));
          if (!check_q3_char_ne_p(GroupRep::universal(g, ff), ctx))
            return std::make_pair(false, std::string("V=X"));
          return std::make_pair(true, std::string("V in {Triv, X}"));
        });
      });
    }
  }
  const Field* f = Field::parse(coeff);
  auto g_probe = FiniteGroup::build(fam, n, q);
  if (f->characteristic() == g_probe->entry_field()->characteristic()) {
    jobs.emplace_back("finite-diagrams/char-p-failure:" + params, [=]() {
      return timed("projectivity-defect-and-q3-witness", params, [&]() {
        auto g = FiniteGroup::build(fam, n, q);
        HeckeAlgebra H(g, Field::parse(coeff));
        auto [dimX, bound] = projectivity_defect(H);
        Q3Witness w = q3_witness(H);
        std::ostringstream m;
        m << "dimX=" << dimX << " bound=" << bound << " image=" << w.image_dim << "/"
          << w.full_dim;
        bool ok = dimX < bound && !w.surjective;
        return std::make_pair(ok, m.str());
      });
    });
  }
  if (f->is_rational()) {
    jobs.emplace_back("finite-diagrams/triv-tensor-X:" + params, [=]() {
      return timed("triv-tensor-X-dim-1", params, [&]() {
        auto g = FiniteGroup::build(fam, n, q);
        HeckeAlgebra H(g, Field::rationals());
        UniversalModule X = universal_module(H);
        GroupRep t = tensor_X(HeckeModule::trivial_character(&H), X);
        return std::make_pair(t.dim() == 1, "dim " + std::to_string(t.dim()));
      });
    });
    jobs.emplace_back("finite-diagrams/q3-control-surjective:" + params, [=]() {
      return timed("q3-witness-control", params, [&]() {
        auto g = FiniteGroup::build(fam, n, q);
        HeckeAlgebra H(g, Field::rationals());
        Q3Witness w = q3_witness(H);
        return std::make_pair(w.surjective && w.unit_in_image, std::string("surjective"));
      });
    });
  }
}

// ---------------- affine suites ----------------

std::string type_of(const std::string& fam, int n) { return fam + std::to_string(n); }

void affine_presentation_jobs(std::vector<Job>& jobs, const std::string& fam, int n, int p,
                              const std::string& coeff, uint64_t seed) {
  std::string params = type_of(fam, n) + " p=" + std::to_string(p) + " coeff=" + coeff;
  jobs.emplace_back("affine-presentation/matrix-model:" + params, [=]() {
    return timed("matrix-model-equivalence", params, [&]() {
      ProPAlgebra A(fam, n, p, Field::parse(coeff));
      // exhaustive over the box [-2,2]^n with all units
      std::vector<ProPWeyl> elems;
      {
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end());
        do {
          Perm prm(n);
          prm.p = idx;
          long long vcount = 1, ucount = 1;
          for (int i = 0; i < n; ++i) vcount *= 5, ucount *= (p - 1);
          for (long long vv = 0; vv < vcount; ++vv)
            for (long long uu = 0; uu < ucount; ++uu) {
              ProPWeyl w{prm, IntVec(n), std::vector<int>(n)};
              long long v = vv, u = uu;
              for (int i = 0; i < n; ++i) {
                w.val[i] = static_cast<int>(v % 5) - 2;
                v /= 5;
                w.unit[i] = 1 + static_cast<int>(u % (p - 1));
                u /= (p - 1);
              }
              if (A.member(w)) elems.push_back(w);
            }
        } while (std::next_permutation(idx.begin(), idx.end()));
      }
      // independent oracle: generic product of monomial matrices over
      // Laurent monomials, failing loudly on any entry collision
      struct Mono {
        bool zero = true;
        int unit = 1;
        int expo = 0;
      };
      auto to_matrix = [&](const ProPWeyl& w) {
        std::vector<Mono> m(n * n);
        for (int j = 0; j < n; ++j) {
          Mono& e = m[w.sigma(j) * n + j];
          e.zero = false;
          e.unit = w.unit[j];
          e.expo = w.val[j];
        }
        return m;
      };
      std::mt19937_64 rng(seed + 1);
      for (int t = 0; t < 5000; ++t) {
        const auto& a = elems[rng() % elems.size()];
        const auto& b = elems[rng() % elems.size()];
        auto ma = to_matrix(a), mb = to_matrix(b);
        std::vector<Mono> prod(n * n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
              if (ma[i * n + k].zero || mb[k * n + j].zero) continue;
              Mono& e = prod[i * n + j];
              if (!e.zero) return std::make_pair(false, std::string("not monomial"));
              e.zero = false;
              e.unit = A.unit_field()->mul(ma[i * n + k].unit, mb[k * n + j].unit);
              e.expo = ma[i * n + k].expo + mb[k * n + j].expo;
            }
        auto mc = to_matrix(A.mul(a, b));
        for (int i = 0; i < n * n; ++i)
          if (prod[i].zero != mc[i].zero ||
              (!prod[i].zero && (prod[i].unit != mc[i].unit || prod[i].expo != mc[i].expo)))
            return std::make_pair(false, std::string("group law"));
        if (!(A.mul(a, A.inverse(a)) == A.identity()))
          return std::make_pair(false, std::string("inverse"));
      }
      return std::make_pair(true, std::to_string(elems.size()) + " elements, 5000 products");
    });
  });
  jobs.emplace_back("affine-presentation/length-oracle:" + params, [=]() {
    return timed("length-oracle", params, [&]() {
      ProPAlgebra A(fam, n, p, Field::parse(coeff));
      const RootDatum& d = A.datum();
      int count = 0;
      IntVec cur(n, -2);
      while (true) {
        ProPWeyl w = A.translation(cur);
        for (const auto& perm : d.weyl_elements()) {
          ProPWeyl x = w;
          x.sigma = perm;
          if (A.member(x)) {
            ++count;
            int brute = 0;
            for (const auto& a : d.positive_roots())
              for (int s = 0; s < 2; ++s) {
                IntVec alpha(a.size());
                for (size_t i = 0; i < a.size(); ++i) alpha[i] = s == 0 ? a[i] : -a[i];
                for (int r = -4; r <= 4; ++r) {
                  if (!d.affine_positive({alpha, r})) continue;
                  int c = 0;
                  for (int i = 0; i < n; ++i) c += x.val[i] * alpha[i];
                  if (!d.affine_positive({d.apply(x.sigma, alpha), r + c})) ++brute;
                }
              }
            if (A.length(x) != brute) return std::make_pair(false, std::string("mismatch"));
          }
        }
        int i = 0;
        while (i < n && ++cur[i] > 2) cur[i++] = -2;
        if (i == n) break;
      }
      return std::make_pair(true, std::to_string(count) + " elements in the box");
    });
  });
  jobs.emplace_back("affine-presentation/associativity:" + params, [=]() {
    return timed("associativity-10k", params, [&]() {
      ProPAlgebra A(fam, n, p, Field::parse(coeff));
      std::mt19937_64 rng(seed);
      std::vector<ProPWeyl> pool;
      {
        // elements of word length <= 6 over the affine generators
        std::vector<ProPWeyl> frontier{A.identity()};
        std::set<ProPWeyl> seen{A.identity()};
        for (int step = 0; step < 6; ++step) {
          std::vector<ProPWeyl> next;
          for (const auto& w : frontier)
            for (int s = 0; s < A.num_saff(); ++s) {
              ProPWeyl x = A.mul(w, A.lift_saff(s));
              if (seen.insert(x).second) next.push_back(x);
            }
          frontier = std::move(next);
        }
        pool.assign(seen.begin(), seen.end());
      }
      for (int i = 0; i < 10000; ++i) {
        const auto& a = pool[rng() % pool.size()];
        const auto& b = pool[rng() % pool.size()];
        const auto& c = pool[rng() % pool.size()];
        auto lhs = A.mul(A.mul(A.tau(a), A.tau(b)), A.tau(c));
        auto rhs = A.mul(A.tau(a), A.mul(A.tau(b), A.tau(c)));
        if (!(lhs == rhs)) return std::make_pair(false, std::string("triple failed"));
      }
      return std::make_pair(true, std::string("10000 seeded triples, pool ") +
                                      std::to_string(pool.size()));
    });
  });
  jobs.emplace_back("affine-presentation/star-triangular:" + params, [=]() {
    return timed("star-unitriangular", params, [&]() {
      ProPAlgebra A(fam, n, p, Field::parse(coeff));
      std::mt19937_64 rng(seed + 2);
      for (int i = 0; i < 100; ++i) {
        ProPWeyl w = A.identity();
        for (int l = 0; l < static_cast<int>(rng() % 5); ++l)
          w = A.mul(w, A.lift_saff(static_cast<int>(rng() % A.num_saff())));
        auto diff = A.sub(A.star(w), A.tau(w));
        for (const auto& [u, c] : diff)
          if (A.length(u) >= A.length(w))
            return std::make_pair(false, std::string("not triangular"));
        if (!(A.from_star_coords(A.to_star_coords(A.tau(w))) == A.tau(w)))
          return std::make_pair(false, std::string("bad round trip"));
      }
      return std::make_pair(true, std::string("100 samples"));
    });
  });
  jobs.emplace_back("affine-presentation/eta:" + params, [=]() {
    return timed("eta-involution-and-swap", params, [&]() {
      ProPAlgebra A(fam, n, p, Field::parse(coeff));
      auto rep = check_eta(A, 60, seed);
      return std::make_pair(rep.ok(), std::string("60 samples"));
    });
  });
}

void affine_functor_jobs(std::vector<Job>& jobs, const std::string& fam, int n, int p,
                         const std::string& coeff) {
  std::string params = type_of(fam, n) + " p=" + std::to_string(p) + " coeff=" + coeff;
  jobs.emplace_back("affine-functors/theta-monoid:" + params, [=]() {
    return timed("theta-products", params, [&]() {
      const Field* f = Field::parse(coeff);
      ProPAlgebra H(fam, n, p, f);
      ProPAlgebra HT(fam, n, p, f, std::vector<int>(n, 1));
      auto ctx = affine_parabolic(HT, H, {});
      std::vector<ProPWeyl> ms;
      ms.push_back(ctx.mu);
      ms.push_back(H.mul(ctx.mu, ctx.mu));
      ms.push_back(H.translation(IntVec(n, fam == "sl" ? 0 : 1)));
      for (const auto& a : ms)
        for (const auto& b : ms) {
          auto lhs = theta_plain(ctx, HT.mul(a, b), false);
          auto rhs = H.mul(theta_plain(ctx, a, false), theta_plain(ctx, b, false));
          if (!(lhs == rhs)) return std::make_pair(false, std::string("theta"));
          auto lhs2 = theta_star(ctx, HT.mul(a, b), false);
          auto rhs2 = H.mul(theta_star(ctx, a, false), theta_star(ctx, b, false));
          if (!(lhs2 == rhs2)) return std::make_pair(false, std::string("theta*"));
        }
      return std::make_pair(true, std::string("positive monoid samples"));
    });
  });
  if (Field::parse(coeff)->is_rational()) {
    jobs.emplace_back("affine-functors/theta-compare:" + params, [=]() {
      return timed("theta-star-plus-vs-minus-delta", params, [&]() {
        const Field* f = Field::rationals();
        ProPAlgebra H(fam, n, p, f);
        ProPAlgebra HT(fam, n, p, f, std::vector<int>(n, 1));
        auto ctx = affine_parabolic(HT, H, {});
        std::vector<ProPWeyl> sample{H.translation(IntVec(n, 1)), ctx.mu,
                                     H.inverse(ctx.mu)};
        if (fam == "sl") sample[0] = H.identity();
        bool ok = check_theta_compare(ctx, sample);
        return std::make_pair(ok, std::string("3 sampled m"));
      });
    });
  }
  jobs.emplace_back("affine-functors/ind-rank-and-twist:" + params, [=]() {
    return timed("ind-rank-and-twisted-coind", params, [&]() {
      const Field* f = Field::parse(coeff);
      ProPAlgebra H(fam, n, p, f);
      ProPAlgebra HT(fam, n, p, f, std::vector<int>(n, 1));
      auto ctx = affine_parabolic(HT, H, {});
      AffineModule trivT = AffineModule::trivial_character(&HT);
      AffineModule ind = affine_induct(ctx, trivT);
      int expect = static_cast<int>(ctx.coset_reps.size());
      if (ind.rank() != expect) return std::make_pair(false, std::string("rank"));
      if (!check_ind_coind_twist_affine(ctx, HT, ctx, trivT))
        return std::make_pair(false, std::string("twist iso"));
      return std::make_pair(true, "rank " + std::to_string(ind.rank()));
    });
  });
  jobs.emplace_back("affine-functors/adjunctions:" + params, [=]() {
    return timed("adjunction-dims", params, [&]() {
      const Field* f = Field::parse(coeff);
      ProPAlgebra H(fam, n, p, f);
      ProPAlgebra HT(fam, n, p, f, std::vector<int>(n, 1));
      auto ctx = affine_parabolic(HT, H, {});
      std::vector<AffineModule> hmods;
      hmods.push_back(AffineModule::trivial_character(&H));
      hmods.push_back(AffineModule::sign_character(&H));
      if (fam == "sl" && f->characteristic() == p) {
        hmods.push_back(AffineModule::mixed_character(&H, {0, -1}));
        hmods.push_back(AffineModule::mixed_character(&H, {-1, 0}));
      }
      std::vector<AffineModule> tmods;
      tmods.push_back(AffineModule::trivial_character(&HT));
      for (const auto& m : tmods)
        for (const auto& nn : hmods) {
          auto rep = check_affine_adjunction(ctx, m, nn);
          if (!rep.right_ok || !rep.left_ok)
            return std::make_pair(false, std::string("dims differ"));
        }
      return std::make_pair(true, std::to_string(tmods.size() * hmods.size()) + " pairs");
    });
  });
  if (Field::parse(coeff)->characteristic() == p) {
    jobs.emplace_back("affine-functors/nonsplit-ses:" + params, [=]() {
      return timed("nonsplit-ses", params, [&]() {
        const Field* f = Field::parse(coeff);
        ProPAlgebra H(fam, n, p, f);
        ProPAlgebra HT(fam, n, p, f, std::vector<int>(n, 1));
        auto ctx = affine_parabolic(HT, H, {});
        auto rep = check_nonsplit_ses(ctx);
        return std::make_pair(rep.ok(), std::string("Triv sub, Sign quotient, no splitting"));
      });
    });
  }
}

void supersingular_jobs(std::vector<Job>& jobs, const std::string& fam, int n, int p,
                        const std::string& coeff) {
  std::string params = type_of(fam, n) + " p=" + std::to_string(p) + " coeff=" + coeff;
  if (Field::parse(coeff)->characteristic() != p) return;
  if (fam == "sl") {
    jobs.emplace_back("supersingular/character-grid:" + params, [=]() {
      return timed("character-grid", params, [&]() {
        const Field* f = Field::parse(coeff);
        ProPAlgebra S(fam, n, p, f);
        auto ss = [&](int a0, int a1) {
          return is_supersingular(AffineModule::mixed_character(&S, {a0, a1})).supersingular;
        };
        bool ok = !ss(0, 0) && !ss(-1, -1) && ss(0, -1) && ss(-1, 0);
        return std::make_pair(ok, std::string("(0,-1),(-1,0) supersingular only"));
      });
    });
  }
  jobs.emplace_back("supersingular/composition-factors:" + params, [=]() {
    return timed("ind-trivT-factors", params, [&]() {
      const Field* f = Field::parse(coeff);
      ProPAlgebra H(fam, n, p, f);
      ProPAlgebra HT(fam, n, p, f, std::vector<int>(n, 1));
      auto ctx = affine_parabolic(HT, H, {});
      AffineModule ind = affine_induct(ctx, AffineModule::trivial_character(&HT));
      auto factors = composition_factors(ind);
      int triv = 0, sign = 0;
      for (const auto& x : factors) {
        if (find_module_isomorphism(x, AffineModule::trivial_character(&H)).has_value())
          ++triv;
        if (find_module_isomorphism(x, AffineModule::sign_character(&H)).has_value()) ++sign;
      }
      bool exact_names = fam == "sl" || p == 2;
      bool ok = factors.size() == 2 && (!exact_names || (triv == 1 && sign == 1));
      return std::make_pair(ok, std::to_string(factors.size()) + " factors");
    });
  });
  jobs.emplace_back("supersingular/triple-roundtrip:" + params, [=]() {
    return timed("I_H-roundtrip", params, [&]() {
      const Field* f = Field::parse(coeff);
      ProPAlgebra H(fam, n, p, f);
      ProPAlgebra HT(fam, n, p, f, std::vector<int>(n, 1));
      auto ctxB = affine_parabolic(HT, H, {});
      AffineModule trivT = AffineModule::trivial_character(&HT);
      // P = B: never supersingular
      for (const auto& JQ : std::vector<std::vector<int>>{{}, {0}}) {
        AffineModule ih = i_h_triple(ctxB, trivT, JQ);
        if (ih.rank() > 0 && is_supersingular(ih).supersingular)
          return std::make_pair(false, std::string("P=B claimed supersingular"));
      }
      // P = Q = G: matches the input
      auto ctxG = affine_parabolic(H, H, [&] {
        std::vector<int> full;
        for (int i = 0; i < H.datum().rank(); ++i) full.push_back(i);
        return full;
      }());
      std::vector<AffineModule> sigmas;
      sigmas.push_back(AffineModule::trivial_character(&H));
      sigmas.push_back(AffineModule::sign_character(&H));
      if (fam == "sl") {
        sigmas.push_back(AffineModule::mixed_character(&H, {0, -1}));
        sigmas.push_back(AffineModule::mixed_character(&H, {-1, 0}));
      }
      std::vector<int> full;
      for (int i = 0; i < H.datum().rank(); ++i) full.push_back(i);
      for (const auto& s : sigmas) {
        AffineModule ih = i_h_triple(ctxG, s, full);
        if (is_supersingular(ih).supersingular != is_supersingular(s).supersingular)
          return std::make_pair(false, std::string("G-level mismatch"));
      }
      return std::make_pair(true, std::string("grid"));
    });
  });
}

}  // namespace

Report run_suite(const SuiteConfig& config) {
  Report report;
  report.suite = config.suite;
  auto [fam, n, q] = parse_group(config.group);
  int p = config.p > 0 ? config.p : q;
  std::string finite_coeff = config.coeff.empty() ? ("fp:" + std::to_string(q)) : config.coeff;
  std::string affine_coeff = config.coeff.empty() ? ("fp:" + std::to_string(p)) : config.coeff;
  report.config = {{"suite", config.suite}, {"group", config.group},
                   {"p", p},               {"coeff", config.coeff},
                   {"seed", config.seed},  {"jobs", config.jobs}};

  std::string suite = config.suite == "finite" ? "finite-diagrams" : config.suite;
  if (std::find(kSuiteNames.begin(), kSuiteNames.end(), suite) == kSuiteNames.end())
    throw std::invalid_argument("unknown suite '" + config.suite + "'");
  auto want = [&](const std::string& name) { return suite == name || suite == "all"; };

  std::vector<Job> jobs;
  if (want("coxeter")) coxeter_jobs(jobs);
  if (want("finite-oracle")) finite_oracle_jobs(jobs, config.group, finite_coeff, config.seed);
  if (want("frobenius")) frobenius_jobs(jobs, config.group, finite_coeff);
  if (want("finite-diagrams")) finite_diagram_jobs(jobs, config.group, finite_coeff);
  if (want("affine-presentation"))
    affine_presentation_jobs(jobs, fam, n, p, affine_coeff, config.seed);
  if (want("affine-functors")) affine_functor_jobs(jobs, fam, n, p, affine_coeff);
  if (want("supersingular")) supersingular_jobs(jobs, fam, n, p, affine_coeff);

  if (config.jobs <= 1) {
    for (auto& [name, fn] : jobs) report.checks.push_back(fn());
  } else {
    // bounded-parallel run preserving report order
    std::vector<CheckResult> results(jobs.size());
    std::atomic<size_t> cursor{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < config.jobs; ++t)
      pool.emplace_back([&]() {
        while (true) {
          size_t i = cursor.fetch_add(1);
          if (i >= jobs.size()) return;
          results[i] = jobs[i].second();
        }
      });
    for (auto& th : pool) th.join();
    report.checks = std::move(results);
  }
  return report;
}

}  // namespace heckelab
