#include "hyp32/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <thread>

#include <json.hpp>

#include "hyp32/gamma_kit.hpp"
#include "hyp32/transforms.hpp"

namespace hyp32 {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  if (lo == hi) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Cx draw(Rng& rng, const Box& b, bool complex) {
  const double re = uniform(rng, b.re_lo, b.re_hi);
  const double im = uniform(rng, b.im_lo, b.im_hi);
  return {re, complex ? im : 0.0};
}

// |z| <= 0.6 with Re z < 0.4, the region where both Pfaff sides converge
// comfortably.
Cx draw_z(Rng& rng) {
  for (;;) {
    const Cx z{uniform(rng, -0.6, 0.4), uniform(rng, -0.6, 0.6)};
    if (std::abs(z) <= 0.6) return z;
  }
}

double integer_distance(Cx z) {
  return std::abs(z - Cx{std::round(z.real()), 0.0});
}

void run_parallel(int count, int threads, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  int t = threads > 0 ? threads
                      : static_cast<int>(std::min(16u, std::max(1u, std::thread::hardware_concurrency())));
  t = std::min(t, count);
  if (t <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int k = 0; k < t; ++k) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct Outcome {
  std::vector<NamedValue> params;
  ValueWithError lhs;
  ValueWithError rhs;
};

VerifyReport aggregate(std::string identity, std::string reference, int count,
                       std::uint64_t seed, double tol, std::vector<Outcome>& outcomes) {
  VerifyReport r;
  r.identity = std::move(identity);
  r.reference = std::move(reference);
  r.samples = count;
  r.seed = seed;
  r.tol = tol;
  std::vector<double> errs;
  for (Outcome& o : outcomes) {
    if (!o.rhs.ok()) {
      ++r.excluded;
      continue;
    }
    const double e = o.lhs.ok() ? rel_err(o.lhs.value, o.rhs.value)
                                : std::numeric_limits<double>::infinity();
    errs.push_back(std::isnan(e) ? std::numeric_limits<double>::infinity() : e);
    if (!(errs.back() <= tol)) {
      r.failures.push_back({std::move(o.params), o.lhs.value, o.rhs.value, errs.back()});
    }
  }
  if (!errs.empty()) {
    std::sort(errs.begin(), errs.end());
    r.max_rel_err = errs.back();
    const std::size_t k = errs.size();
    r.median_rel_err = k % 2 ? errs[k / 2] : 0.5 * (errs[k / 2 - 1] + errs[k / 2]);
  }
  return r;
}

std::vector<NamedValue> named(const Params3F2NegDiff& p) {
  return {{"a", p.a, false},
          {"b", p.b, false},
          {"c", p.c, false},
          {"m", Cx{static_cast<double>(p.m), 0.0}, true},
          {"n", Cx{static_cast<double>(p.n), 0.0}, true}};
}

}  // namespace

// ---- sampling --------------------------------------------------------------

bool satisfies(const SampleConstraints& c, const Params3F2NegDiff& p) {
  const double delta = c.lattice_margin;
  if (p.decay() < c.min_decay) return false;
  if (c.check_a_lattice && integer_distance(p.a) < delta) return false;
  if (distance_to_integers(p.b - p.c, -p.m, p.n) < delta) return false;
  if (c.min_c_minus_b_minus_n && (p.c - p.b).real() - p.n < *c.min_c_minus_b_minus_n) {
    return false;
  }
  const double m = p.m, n = p.n;
  std::vector<Cx> gamma_args{p.b,           p.c,           1.0 + p.b - p.a,
                             1.0 + p.c - p.a, 2.0 - p.a + m, 2.0 - p.a + n,
                             p.b + 1.0 + m, p.c + 1.0 + n, 1.0 - p.a + p.b + m};
  if (c.check_a_lattice) gamma_args.push_back(1.0 - p.a);
  for (const Cx& x : gamma_args) {
    if (pole_distance(x) < delta) return false;
  }
  return true;
}

Sampled sample_params(const SampleConstraints& c, std::uint64_t seed, int count) {
  Sampled out;
  if (count <= 0) return out;
  Rng rng(seed);
  const long cap = 1000L * count;
  for (long attempt = 0; attempt < cap && static_cast<int>(out.params.size()) < count;
       ++attempt) {
    Params3F2NegDiff p;
    p.a = draw(rng, c.a_box, c.allow_complex);
    p.b = draw(rng, c.b_box, c.allow_complex);
    p.c = draw(rng, c.c_box, c.allow_complex);
    p.m = uniform_int(rng, c.m_lo, c.m_hi);
    p.n = uniform_int(rng, c.n_lo, c.n_hi);
    if (c.equal_mn) p.n = p.m;
    if (satisfies(c, p)) out.params.push_back(p);
  }
  if (static_cast<int>(out.params.size()) < count) {
    out.params.clear();
    out.status = Status::domain_violation;
    out.reason = "sampling constraints infeasible: rejection cap of 1000 x count reached";
  }
  return out;
}

// ---- identity checks -------------------------------------------------------

VerifyReport check_identity(IdentityId id, SampleConstraints c, std::uint64_t seed,
                            int count, double tol, const CheckOptions& opt) {
  const IdentityInfo& info = identity_info(id);
  if (info.needs_equal_mn) c.equal_mn = true;
  if (info.needs_n_zero) {
    c.n_lo = c.n_hi = 0;
    if (info.needs_equal_mn) c.m_lo = c.m_hi = 0;
  }
  if (id == IdentityId::A1_LIMIT) {
    c.a_box = Box{1.0, 1.0, 0.0, 0.0};
    c.check_a_lattice = false;
  }
  const std::string ref_name =
      opt.reference ? std::string(to_string(*opt.reference)) : std::string("oracle");
  Sampled s = sample_params(c, seed, count);
  std::vector<Outcome> outcomes(s.params.size());
  run_parallel(static_cast<int>(s.params.size()), opt.threads, [&](int i) {
    const Params3F2NegDiff& p = s.params[i];
    Outcome& o = outcomes[i];
    o.params = named(p);
    o.lhs = info.evaluate(p, opt.precision);
    o.rhs = opt.reference ? identity_info(*opt.reference).evaluate(p, Precision::binary128)
                          : sum_3f2_unit_oracle(p, opt.oracle_tol);
  });
  VerifyReport r = aggregate(std::string(info.key), ref_name, count, seed, tol, outcomes);
  if (s.status != Status::ok) r.excluded = count;
  return r;
}

// ---- transform checks ------------------------------------------------------

namespace {

constexpr std::array<std::string_view, 8> kTransformKeys = {
    "th", "thomae2", "pf", "rd", "re", "lin", "kar", "ka"};

struct Case {
  std::vector<NamedValue> params;
  std::function<std::pair<ValueWithError, ValueWithError>()> eval;
};

const Box kParamBox{0.1, 2.0, -0.5, 0.5};
const Box kWideBox{-2.0, 4.0, -1.0, 1.0};

bool off_poles(std::initializer_list<Cx> xs, double delta = 0.05) {
  for (const Cx& x : xs) {
    if (pole_distance(x) < delta) return false;
  }
  return true;
}

// Denominator d of a terminating sum of order n: d + k != 0 for k < n.
bool off_terminating_poles(Cx d, int n, double delta = 0.05) {
  return n == 0 || distance_to_integers(d, -(n - 1), 0) >= delta;
}

std::vector<NamedValue> spec_params(const Hyp32Spec& s) {
  return {{"a1", s.num[0]}, {"a2", s.num[1]}, {"a3", s.num[2]},
          {"b1", s.den[0]}, {"b2", s.den[1]}, {"z", s.z}};
}

std::optional<Case> make_th(Rng& rng, const TransformOptions& o) {
  Hyp32Spec s;
  const Cx A = draw(rng, kParamBox, true), B = draw(rng, kParamBox, true);
  const bool terminating = uniform_int(rng, 0, 3) == 0;
  const Cx C = terminating ? Cx{-static_cast<double>(uniform_int(rng, 0, 5)), 0.0}
                           : draw(rng, kParamBox, true);
  const Cx D = C + 1.0 + draw(rng, {0.0, 3.0, -0.5, 0.5}, true);
  const Cx E = A + B + C - D + 1.0 + draw(rng, {0.0, 3.0, -0.5, 0.5}, true);
  s.num = {A, B, C};
  s.den = {D, E};
  const Cx p = s.thomae_p();
  if (!off_poles({D, E, p, p - C, D - C})) return std::nullopt;
  const Tolerance tol = o.series_tol;
  return Case{spec_params(s), [s, tol] {
                return std::pair{assemble(thomae_two_term(s), tol), evaluate_3f2(s, tol)};
              }};
}

std::optional<Case> make_thomae2(Rng& rng, const TransformOptions& o) {
  const Cx A = draw(rng, kParamBox, true), B = draw(rng, kParamBox, true);
  const Cx E = draw(rng, {0.5, 2.5, -0.5, 0.5}, true);
  const Cx C = E + draw(rng, {0.0, 2.0, -0.5, 0.5}, true);
  const Cx F = A + B + C - E + 1.0 + draw(rng, {0.0, 2.0, -0.5, 0.5}, true);
  if (!off_poles({A, B, E, F, E - A, E - B, E - A - B, A + B - E, F - C,
                  E + F - A - B, A + B - E + 1.0, E - A - B + 1.0})) {
    return std::nullopt;
  }
  const Hyp32Spec s{{A, B, C}, {E, F}, 1.0};
  const Tolerance tol = o.series_tol;
  return Case{spec_params(s), [s, tol] {
                return std::pair{assemble(thomae_three_term(s), tol), evaluate_3f2(s, tol)};
              }};
}

std::optional<Case> make_pf(Rng& rng, const TransformOptions& o) {
  const int n = uniform_int(rng, 0, 4);
  const Cx alpha = draw(rng, kWideBox, true);
  const Cx b = draw(rng, kWideBox, true), c = draw(rng, kWideBox, true);
  const Cx d = draw(rng, {0.2, 4.0, -1.0, 1.0}, true);
  const Cx z = o.z ? *o.z : draw_z(rng);
  if (integer_distance(alpha) < 0.05 || !off_poles({alpha - static_cast<double>(n), d})) {
    return std::nullopt;
  }
  const Hyp32Spec s{{alpha, b, c}, {alpha - static_cast<double>(n), d}, z};
  std::vector<NamedValue> params = spec_params(s);
  params.push_back({"n", Cx{static_cast<double>(n), 0.0}, true});
  const Tolerance tol = o.series_tol;
  return Case{params, [s, n, tol] {
                return std::pair{assemble(pf_reduce(s, n, 0, 0), tol), evaluate_3f2(s, tol)};
              }};
}

std::optional<Case> make_rd(Rng& rng, const TransformOptions&) {
  const int n = uniform_int(rng, 0, 6);
  const double nd = n;
  const Cx a = draw(rng, kWideBox, true), b = draw(rng, kWideBox, true);
  const Cx c = draw(rng, kWideBox, true), d = draw(rng, kWideBox, true);
  if (!off_terminating_poles(c - nd, n) || !off_terminating_poles(d, n) ||
      !off_terminating_poles(1.0 + a - c, n) || !off_terminating_poles(1.0 - c, n)) {
    return std::nullopt;
  }
  const Hyp32Spec s{{-nd, a, b}, {c - nd, d}, 1.0};
  std::vector<NamedValue> params = spec_params(s);
  params.push_back({"n", Cx{nd, 0.0}, true});
  return Case{params, [s, n] {
                return std::pair{assemble(rd_reverse(s, n)), sum_terminating_3f2(s)};
              }};
}

std::optional<Case> make_re(Rng& rng, const TransformOptions&) {
  const int n = uniform_int(rng, 0, 6);
  const double nd = n;
  const Cx a = draw(rng, kWideBox, true), b = draw(rng, kWideBox, true);
  const Cx c = draw(rng, kWideBox, true), d = draw(rng, kWideBox, true);
  if (!off_terminating_poles(c - nd, n) || !off_terminating_poles(d - nd, n) ||
      !off_terminating_poles(1.0 + a - c, n) || !off_terminating_poles(1.0 - b, n) ||
      !off_terminating_poles(1.0 - c, n) || !off_terminating_poles(1.0 - d, n)) {
    return std::nullopt;
  }
  const Hyp32Spec s{{-nd, a, b - nd}, {c - nd, d - nd}, 1.0};
  std::vector<NamedValue> params = spec_params(s);
  params.push_back({"n", Cx{nd, 0.0}, true});
  return Case{params, [s, n] {
                return std::pair{assemble(re_transform(s, n)), sum_terminating_3f2(s)};
              }};
}

std::optional<Case> make_lin(Rng& rng, const TransformOptions& o) {
  const bool terminating = uniform_int(rng, 0, 4) == 0;
  const Cx a = terminating ? Cx{-static_cast<double>(uniform_int(rng, 0, 6)), 0.0}
                           : draw(rng, kWideBox, true);
  const Cx b = draw(rng, kWideBox, true);
  const Cx c = draw(rng, {0.2, 4.0, -1.0, 1.0}, true);
  const Cx z = o.z ? *o.z : draw_z(rng);
  if (!off_poles({c})) return std::nullopt;
  const GaussSpec g{a, b, c, z};
  const Tolerance tol = o.series_tol;
  return Case{{{"a", a}, {"b", b}, {"c", c}, {"z", z}}, [g, tol] {
                const LinearTransform t = pfaff_linear(g);
                ValueWithError rhs = t.status == Status::ok
                                         ? sum_2f1_direct(t.spec, tol) * t.prefactor
                                         : ValueWithError::failure(t.status, t.reason);
                return std::pair{rhs, sum_2f1_direct(g, tol)};
              }};
}

std::optional<Case> make_kar(Rng& rng, const TransformOptions& o) {
  KarMintonSpec k;
  const int kind = uniform_int(rng, 0, 4);  // 0, 1: r = 1; 2, 3: r = 2; 4: r = 2 at z = 1
  k.b1 = draw(rng, {0.2, 4.0, -1.0, 1.0}, true);
  k.m1 = uniform_int(rng, 0, 4);
  if (kind <= 1) {
    k.remaining_num = {draw(rng, kWideBox, true), draw(rng, kWideBox, true)};
    k.remaining_den = {draw(rng, {0.2, 4.0, -1.0, 1.0}, true)};
    k.z = o.z ? *o.z : draw_z(rng);
  } else {
    k.b2 = draw(rng, {0.2, 4.0, -1.0, 1.0}, true);
    k.m2 = uniform_int(rng, 0, 4);
    if (kind == 4) {
      // N > m1 + m2 gives exactly zero, where a relative check is meaningless.
      k.remaining_num = {Cx{-static_cast<double>(uniform_int(rng, 0, k.m1 + k.m2)), 0.0}};
      k.z = 1.0;
    } else {
      k.remaining_num = {draw(rng, kWideBox, true)};
      k.z = o.z ? *o.z : draw_z(rng);
    }
  }
  const Hyp32Spec s = k.as_3f2();
  if (!off_poles({s.den[0], s.den[1]})) return std::nullopt;
  std::vector<NamedValue> params = spec_params(s);
  params.push_back({"m1", Cx{static_cast<double>(k.m1), 0.0}, true});
  params.push_back({"m2", Cx{static_cast<double>(k.m2), 0.0}, true});
  const Tolerance tol = o.series_tol;
  return Case{params, [k, s, tol] {
                return std::pair{assemble(karlsson_minton_reduce(k), tol), evaluate_3f2(s, tol)};
              }};
}

std::optional<Case> make_ka(Rng& rng, const TransformOptions& o) {
  Sampled one = sample_params(o.constraints, rng(), 1);
  if (one.params.empty()) return std::nullopt;
  const Params3F2NegDiff p = one.params.front();
  const Cx z = o.z ? *o.z : draw_z(rng);
  std::vector<NamedValue> params = named(p);
  params.push_back({"z", z});
  const Tolerance tol = o.series_tol;
  return Case{params, [p, z, tol] {
                return std::pair{assemble(karlsson_z_reduce_ext(p, z)),
                                 evaluate_3f2(p.spec(z), tol)};
              }};
}

}  // namespace

std::string_view to_string(TransformId id) { return kTransformKeys[static_cast<int>(id)]; }

std::optional<TransformId> transform_from_key(std::string_view key) {
  for (std::size_t i = 0; i < kTransformKeys.size(); ++i) {
    if (kTransformKeys[i] == key) return static_cast<TransformId>(i);
  }
  return std::nullopt;
}

VerifyReport check_transform(TransformId id, std::uint64_t seed, int count, double tol,
                             const TransformOptions& opt) {
  using Maker = std::optional<Case> (*)(Rng&, const TransformOptions&);
  static constexpr std::array<Maker, 8> makers = {make_th,  make_thomae2, make_pf,  make_rd,
                                                  make_re,  make_lin,     make_kar, make_ka};
  const Maker make = makers[static_cast<int>(id)];
  Rng rng(seed);
  std::vector<Case> cases;
  const long cap = 1000L * std::max(count, 0);
  for (long attempt = 0; attempt < cap && static_cast<int>(cases.size()) < count; ++attempt) {
    if (auto c = make(rng, opt)) cases.push_back(std::move(*c));
  }
  std::vector<Outcome> outcomes(cases.size());
  run_parallel(static_cast<int>(cases.size()), opt.threads, [&](int i) {
    auto [lhs, rhs] = cases[i].eval();
    outcomes[i] = {cases[i].params, std::move(lhs), std::move(rhs)};
  });
  VerifyReport r = aggregate(std::string(to_string(id)), "direct", count, seed, tol, outcomes);
  r.excluded += count - static_cast<int>(cases.size());
  return r;
}

// ---- singular probes -------------------------------------------------------

std::vector<ProbePoint> probe_singular(IdentityId id, ProbePath path, int steps,
                                       const Params3F2NegDiff& base) {
  const IdentityInfo& info = identity_info(id);
  std::vector<ProbePoint> out;
  double h = 1e-2;
  if (path == ProbePath::a_to_1) {
    Params3F2NegDiff at1 = base;
    at1.a = 1.0;
    const ValueWithError limit = eval_a1_limit(at1);
    for (int i = 0; i < steps; ++i, h /= 10.0) {
      Params3F2NegDiff up = base, down = base;
      up.a = 1.0 + h;
      down.a = 1.0 - h;
      const ValueWithError vu = info.evaluate(up, Precision::binary128);
      const ValueWithError vd = info.evaluate(down, Precision::binary128);
      const ZyTerms terms = zy_terms(up);
      ProbePoint pt;
      pt.offset = h;
      pt.value = 0.5 * (vu.value + vd.value);
      pt.status = worst(vu.status, vd.status);
      pt.first_term = std::abs(terms.first);
      pt.second_term = std::abs(terms.second);
      pt.reference = limit.value;
      pt.reference_status = limit.status;
      out.push_back(pt);
    }
    return out;
  }
  const double j = std::clamp(std::round((base.b - base.c).real()), -static_cast<double>(base.m),
                              static_cast<double>(base.n));
  for (int i = 0; i < steps; ++i, h /= 10.0) {
    Params3F2NegDiff p = base;
    p.b = base.c + j + h;
    const ValueWithError v = info.evaluate(p, Precision::binary128);
    const ValueWithError ref = sum_3f2_unit_oracle(p, Tolerance{1e-12});
    const ZyTerms terms = zy_terms(p);
    out.push_back({h, v.value, v.status, std::abs(terms.first), std::abs(terms.second),
                   ref.value, ref.status});
  }
  return out;
}

// ---- serialization ---------------------------------------------------------

namespace {

nlohmann::ordered_json cx_json(Cx z) {
  nlohmann::ordered_json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

}  // namespace

std::string report_to_json(const VerifyReport& r, int indent) {
  nlohmann::ordered_json j;
  j["identity"] = r.identity;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["tol"] = r.tol;
  j["max_rel_err"] = r.max_rel_err;
  j["median_rel_err"] = r.median_rel_err;
  j["excluded"] = r.excluded;
  j["failures"] = nlohmann::ordered_json::array();
  for (const Failure& f : r.failures) {
    nlohmann::ordered_json params;
    for (const NamedValue& v : f.params) {
      if (v.integer) {
        params[v.name] = static_cast<long>(v.value.real());
      } else {
        params[v.name] = cx_json(v.value);
      }
    }
    nlohmann::ordered_json fj;
    fj["params"] = params;
    fj["lhs"] = cx_json(f.lhs);
    fj["rhs"] = cx_json(f.rhs);
    fj["rel_err"] = f.rel_err;
    j["failures"].push_back(fj);
  }
  return j.dump(indent);
}

}  // namespace hyp32
