// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hyp32/identities.hpp"
#include "hyp32/series.hpp"
#include "hyp32/transforms.hpp"
#include "hyp32/verify.hpp"

using namespace hyp32;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

bool near_exact(Cx x, Cx y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y)); }

// Worst relative error of f against g over sampled parameters; a non-ok
// status on either side counts as infinite error.
double pairing(const SampleConstraints& c, std::uint64_t seed, int count,
               const std::function<ValueWithError(const Params3F2NegDiff&)>& f,
               const std::function<ValueWithError(const Params3F2NegDiff&)>& g, int* used) {
  const Sampled s = sample_params(c, seed, count);
  *used = static_cast<int>(s.params.size());
  if (s.status != Status::ok) return INFINITY;
  double worst = 0.0;
  for (const Params3F2NegDiff& p : s.params) {
    const ValueWithError x = f(p), y = g(p);
    worst = std::max(worst, x.ok() && y.ok() ? rel_err(x.value, y.value) : INFINITY);
  }
  return worst;
}

Outcome report_outcome(const VerifyReport& r, int expected, double tol) {
  const bool pass =
      r.failures.empty() && r.excluded == 0 && r.samples == expected && r.max_rel_err <= tol;
  return {pass, r.identity + " vs " + r.reference + ": " + std::to_string(r.evaluated()) +
                    " samples, max_rel_err " + fmt("%.2e", r.max_rel_err)};
}

Outcome criterion1() {
  return report_outcome(check_identity(IdentityId::ZY, {}, 42, 200, 1e-8), 200, 1e-8);
}

Outcome criterion2() {
  CheckOptions o;
  o.reference = IdentityId::ZY;
  return report_outcome(check_identity(IdentityId::KB, {}, 42, 200, 1e-11, o), 200, 1e-11);
}

Outcome criterion3() {
  constexpr double tol = 1e-11;
  SampleConstraints equal;
  equal.equal_mn = true;
  SampleConstraints m_zero;
  m_zero.m_hi = 0;
  SampleConstraints n_zero;
  n_zero.n_hi = 0;
  const auto mn = [](const Params3F2NegDiff& p) { return eval_theorem2(p).value; };
  struct Pair {
    const char* name;
    const SampleConstraints* c;
    std::function<ValueWithError(const Params3F2NegDiff&)> f, g;
  };
  const std::vector<Pair> pairs{
      {"mn(m=n)=tt", &equal, mn, [](const auto& p) { return eval_theorem1(p); }},
      {"tt=zx", &equal, [](const auto& p) { return eval_theorem1(p); },
       [](const auto& p) { return eval_zx(p); }},
      {"mn(m=0)=fa", &m_zero, mn,
       [](const auto& p) {
         return eval_miller_paris(MillerParisVariant::FA, p.a, p.c, p.b, p.n);
       }},
      {"mn(n=0)=fa", &n_zero, mn,
       [](const auto& p) {
         return eval_miller_paris(MillerParisVariant::FA, p.a, p.b, p.c, p.m);
       }},
      {"mn(n=0)=fb", &n_zero, mn,
       [](const auto& p) {
         return eval_miller_paris(MillerParisVariant::FB, p.a, p.b, p.c, p.m);
       }},
      {"om=zy", &n_zero, [](const auto& p) { return eval_milgram_om(p.a, p.b, p.c, p.m + 1); },
       [](const auto& p) { return eval_zy(p); }},
  };
  Outcome out{true, ""};
  std::uint64_t seed = 42;
  for (const Pair& pr : pairs) {
    int used = 0;
    const double e = pairing(*pr.c, seed++, 100, pr.f, pr.g, &used);
    out.pass = out.pass && used == 100 && e <= tol;
    out.detail += std::string(out.detail.empty() ? "" : ", ") + pr.name + " " + fmt("%.1e", e);
  }
  return out;
}

Outcome criterion4() {
  SampleConstraints c;
  c.equal_mn = true;
  c.m_hi = c.n_hi = 3;
  c.b_box = {0.2, 1.5, -1.0, 1.0};
  c.c_box = {2.0, 6.0, -1.0, 1.0};
  c.min_c_minus_b_minus_n = 0.1;
  const Sampled s = sample_params(c, 42, 50);
  if (s.params.size() != 50) return {false, "sampler: " + s.reason};
  int structural_bad = 0;
  double worst = 0.0;
  for (const Params3F2NegDiff& p : s.params) {
    const int n = p.n;
    const double nd = n;
    const Rewrite r = thomae_three_term(p.spec());
    if (r.status != Status::ok || r.results.size() != 2) {
      ++structural_bad;
      continue;
    }
    const Hyp32Spec& s1 = r.results[0].spec;
    const Hyp32Spec& s2 = r.results[1].spec;
    const bool pairs_ok = near_exact(s1.num[0], p.a) && near_exact(s1.den[0], p.a - nd) &&
                          near_exact(s2.num[2], 2.0 - p.a + 2.0 * nd) &&
                          near_exact(s2.den[0], 2.0 - p.a + nd);
    if (!pairs_ok) ++structural_bad;
    const GaussCombination g1 = pf_reduce(s1, n, 0, 0);
    const GaussCombination g2 = pf_reduce(s2, n, 2, 0);
    Cx total = 0.0;
    bool ok = g1.status == Status::ok && g2.status == Status::ok;
    for (const auto& [coef, g] : {std::pair{r.results[0].coefficient, &g1},
                                  std::pair{r.results[1].coefficient, &g2}}) {
      Cx part = 0.0;
      for (const GaussTerm& t : g->terms) {
        const ValueWithError v = gauss_2f1_unit(t.spec.a, t.spec.b, t.spec.c);
        ok = ok && v.ok();
        part += t.coefficient * v.value;
      }
      total += coef * part;
    }
    total *= r.prefactor;
    const ValueWithError ref = eval_theorem1(p);
    worst = std::max(worst, ok && ref.ok() ? rel_err(total, ref.value) : INFINITY);
  }
  return {structural_bad == 0 && worst <= 1e-10,
          "50 samples, structural mismatches " + std::to_string(structural_bad) +
              ", max_rel_err " + fmt("%.2e", worst)};
}

Outcome criterion5() {
  const Params3F2NegDiff p{0.5, 1.0, 2.0, 0, 0};
  int applicable = 0;
  double worst = 0.0;
  for (const IdentityInfo& info : identity_registry()) {
    if (!info.applicable(p)) continue;
    ++applicable;
    const ValueWithError v = info.evaluate(p, Precision::binary128);
    worst = std::max(worst, v.ok() ? rel_err(v.value, 4.0 / 3.0) : INFINITY);
  }
  SampleConstraints zero;
  zero.a_box = {0.0, 0.0, 0.0, 0.0};
  zero.check_a_lattice = false;
  const Sampled s = sample_params(zero, 42, 50);
  double worst_zero = s.params.size() == 50 ? 0.0 : INFINITY;
  int evaluations = 0;
  for (const Params3F2NegDiff& base : s.params) {
    for (const IdentityInfo& info : identity_registry()) {
      Params3F2NegDiff q = base;
      if (info.needs_equal_mn) q.n = q.m;
      if (info.needs_n_zero) q.n = 0;
      if (info.id == IdentityId::P7_4_4_16) q.m = 0;
      if (!info.applicable(q)) continue;
      ++evaluations;
      const ValueWithError v = info.evaluate(q, Precision::binary128);
      worst_zero = std::max(worst_zero, v.ok() ? rel_err(v.value, 1.0) : INFINITY);
    }
  }
  return {worst <= 1e-12 && worst_zero <= 1e-12 && applicable >= 11,
          "4/3 via " + std::to_string(applicable) + " evaluators " + fmt("%.1e", worst) +
              "; a=0 over " + std::to_string(evaluations) + " evaluations " +
              fmt("%.1e", worst_zero)};
}

Outcome criterion6() {
  TransformOptions o;
  o.constraints.m_hi = o.constraints.n_hi = 3;
  o.z = Cx{0.5, 0.0};
  const VerifyReport r = check_transform(TransformId::KA, 42, 50, 1e-12, o);
  Outcome out = report_outcome(r, 50, 1e-12);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.2, 4.0), ui(-1.0, 1.0), ua(-2.0, 0.9);
  int specimen_bad = 0;
  for (int i = 0; i < 20; ++i) {
    const Cx a{ua(rng), ui(rng)}, b{u(rng), ui(rng)}, c{u(rng), ui(rng)}, z{0.5 * ui(rng), 0.3};
    const GaussCombination g = karlsson_z_reduce({a, b, c, 0, 0}, z);
    bool ok = g.status == Status::ok && g.terms.size() == 2;
    if (ok) {
      const GaussTerm* tb = nullptr;
      const GaussTerm* tc = nullptr;
      for (const GaussTerm& t : g.terms) {
        ok = ok && t.spec.a == a && t.spec.z == z && t.spec.c == t.spec.b + 1.0;
        if (t.spec.b == b) tb = &t;
        if (t.spec.b == c) tc = &t;
      }
      ok = ok && tb && tc && rel_err(tb->coefficient, c / (c - b)) <= 4 * kUnitRoundoff &&
           rel_err(tc->coefficient, -b / (c - b)) <= 4 * kUnitRoundoff;
    }
    if (!ok) ++specimen_bad;
  }
  out.pass = out.pass && specimen_bad == 0;
  out.detail += "; m=n=0 two-term structure mismatches " + std::to_string(specimen_bad) + "/20";
  return out;
}

Outcome criterion7() {
  SampleConstraints c;
  c.a_box = {1.0, 1.0, 0.0, 0.0};
  c.check_a_lattice = false;
  const Sampled bases = sample_params(c, 7, 10);
  if (bases.params.size() != 10) return {false, "sampler: " + bases.reason};
  double min_growth = INFINITY, max_variation = 0.0;
  for (const Params3F2NegDiff& base : bases.params) {
    const std::vector<ProbePoint> pts = probe_singular(IdentityId::ZY, ProbePath::a_to_1, 5, base);
    if (pts.size() != 5) return {false, "probe returned too few points"};
    // offsets 1e-2, 1e-3, 1e-4, 1e-5, 1e-6
    min_growth = std::min({min_growth, pts[4].first_term / pts[0].first_term,
                           pts[4].second_term / pts[0].second_term});
    max_variation = std::max(max_variation, rel_err(pts[2].value, pts[3].value));
  }
  const VerifyReport a1 = check_identity(IdentityId::A1_LIMIT, c, 42, 20, 1e-6);
  const Outcome o = report_outcome(a1, 20, 1e-6);
  return {o.pass && min_growth >= 1e3 && max_variation < 1e-5,
          "term growth >= " + fmt("%.2e", min_growth) + ", variation 1e-4..1e-5 " +
              fmt("%.1e", max_variation) + "; " + o.detail};
}

Outcome criterion8() {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uz(0.0, 0.9), up(0.1, 5.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double z = uz(rng), a = up(rng), b = up(rng);
    const ValueWithError h = incomplete_beta_hypergeometric(z, a, b);
    const ValueWithError p = incomplete_beta_pfaff(z, a, b);
    worst = std::max(worst, h.ok() && p.ok() ? rel_err(h.value, p.value) : INFINITY);
  }
  const ValueWithError twelfth = incomplete_beta(0.5, 2.0, 2.0);
  const double e12 = twelfth.ok() ? rel_err(twelfth.value, 1.0 / 12.0) : INFINITY;
  return {worst <= 1e-11 && e12 <= 1e-13,
          "dual paths " + fmt("%.1e", worst) + ", B_0.5(2,2) vs 1/12 " + fmt("%.1e", e12)};
}

Outcome criterion9() {
  Outcome out{true, ""};
  for (const TransformId id : {TransformId::TH, TransformId::THOMAE2, TransformId::RD,
                               TransformId::RE, TransformId::PF, TransformId::LIN,
                               TransformId::KAR}) {
    const VerifyReport r = check_transform(id, 42, 100, 1e-10);
    const Outcome o = report_outcome(r, 100, 1e-10);
    out.pass = out.pass && o.pass;
    out.detail += std::string(out.detail.empty() ? "" : ", ") + std::string(to_string(id)) +
                  " " + fmt("%.1e", r.max_rel_err);
  }
  return out;
}

Outcome criterion10() {
  const std::string first = report_to_json(check_identity(IdentityId::ZY, {}, 42, 200, 1e-8));
  const std::string second = report_to_json(check_identity(IdentityId::ZY, {}, 42, 200, 1e-8));
  return {first == second, "two seed-42 reports, " + std::to_string(first.size()) + " bytes, " +
                               (first == second ? "identical" : "different")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"ZY agrees with the oracle", criterion1},
      {"Beta double sum agrees with ZY", criterion2},
      {"specialization chain", criterion3},
      {"three-term Thomae replay", criterion4},
      {"exact special cases", criterion5},
      {"z-dependent reduction", criterion6},
      {"limit at a = 1", criterion7},
      {"incomplete Beta", criterion8},
      {"transform value preservation", criterion9},
      {"deterministic reports", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const Outcome o = criteria[i].second();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s criterion %2zu  %-30s %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
