#include "hyp32/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hyp32/gamma_kit.hpp"

namespace hyp32 {

namespace {

constexpr std::int64_t kMinCheckpoint = 2048;

bool is_zero(Cx z) { return z == Cx{0.0, 0.0}; }

// Exact nonpositive integer -> N >= 0.
std::optional<int> terminating_order(Cx z) {
  if (!is_nonpositive_integer(z) || z.real() < -1e9) return std::nullopt;
  return static_cast<int>(-z.real());
}

ValueWithError not_terminating() {
  return ValueWithError::failure(Status::domain_violation,
                                 "series does not terminate");
}

// Any denominator equal to a nonpositive integer reached before `limit` terms.
std::optional<std::string> denominator_pole(std::span<const Cx> den,
                                            std::int64_t limit) {
  for (const Cx& d : den) {
    if (auto q = terminating_order(d); q && *q < limit) {
      return "denominator parameter is a nonpositive integer reached by the "
             "series";
    }
  }
  return std::nullopt;
}

Cx richardson(Cx coarse, Cx fine, Cx factor) {
  return (factor * fine - coarse) / (factor - 1.0);
}

}  // namespace

ValueWithError sum_3f2_unit(const Hyp32Spec& s, const Tolerance& tol) {
  tol.validate();
  for (const Cx& x : s.num) {
    if (terminating_order(x)) return sum_terminating_3f2(s);
  }
  if (auto why = denominator_pole(s.den, std::numeric_limits<std::int64_t>::max())) {
    return ValueWithError::failure(Status::domain_violation, *why);
  }
  const Cx sigma = s.excess();
  if (sigma.real() < 0.25) {
    return ValueWithError::failure(
        Status::slow_convergence,
        "unit-argument series with Re(excess) = " +
            std::to_string(sigma.real()) + " < 0.25");
  }

  double scale = 1.0;
  for (const Cx& x : s.num) scale = std::max(scale, std::abs(x));
  for (const Cx& x : s.den) scale = std::max(scale, std::abs(x));
  std::int64_t checkpoint = kMinCheckpoint;
  while (checkpoint < 64.0 * (1.0 + scale)) checkpoint *= 2;

  // Richardson factor for an error term proportional to K^(-1-sigma).
  const Cx factor = std::pow(Cx{2.0, 0.0}, 1.0 + sigma);
  const auto& [a, b, c] = s.num;
  const Cx d = s.den[0], e = s.den[1];

  CompensatedSum acc;
  double drift = 0.0;  // sum k |t_k|: recurrence error grows linearly in k
  Cx t = 1.0;
  std::vector<Cx> estimates;
  Cx best{std::numeric_limits<double>::quiet_NaN(), 0.0};
  double best_err = std::numeric_limits<double>::infinity();

  for (std::int64_t k = 0;; ++k) {
    const double kd = static_cast<double>(k);
    if (k == checkpoint) {
      estimates.push_back(acc.value() + t * kd / sigma);
      const std::size_t ne = estimates.size();
      if (ne >= 3) {
        const Cx r1 = richardson(estimates[ne - 3], estimates[ne - 2], factor);
        const Cx r2 = richardson(estimates[ne - 2], estimates[ne - 1], factor);
        const double diff = std::abs(r2 - r1);
        const double roundoff =
            4.0 * kUnitRoundoff * (acc.magnitude() + drift);
        best = r2;
        best_err = diff + roundoff;
        if (diff <= tol.rel_tol * std::abs(r2) || diff <= tol.abs_floor) {
          return ValueWithError::approx(r2, best_err);
        }
      }
      if (checkpoint > tol.max_terms / 2) break;
      checkpoint *= 2;
    }
    // Terms are monotone once k exceeds the parameter scale; stop when the
    // whole algebraic tail is below the rounding level of the sum.
    if (k > 4.0 * scale + 16.0) {
      const Cx tail = t * kd / sigma;
      if (std::abs(tail) <= 0.25 * kUnitRoundoff * std::abs(acc.value())) {
        const Cx v = acc.value() + tail;
        return ValueWithError::approx(
            v, std::abs(tail) +
                   4.0 * kUnitRoundoff * (acc.magnitude() + drift));
      }
    }
    if (k >= tol.max_terms) break;
    acc.add(t);
    drift += kd * std::abs(t);
    t *= (a + kd) * (b + kd) * (c + kd) / ((d + kd) * (e + kd) * (kd + 1.0));
  }
  ValueWithError r{best, best_err, Status::slow_convergence,
                   "oracle did not reach rel_tol within max_terms"};
  return r;
}

ValueWithError sum_3f2_unit_oracle(const Params3F2NegDiff& p,
                                   const Tolerance& tol) {
  if (p.m < 0 || p.n < 0) {
    return ValueWithError::failure(Status::domain_violation,
                                   "m and n must be nonnegative");
  }
  return sum_3f2_unit(p.spec(1.0), tol);
}

ValueWithError gauss_2f1_unit(Cx a, Cx b, Cx c) {
  // Chu-Vandermonde for terminating series.
  for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
    if (auto N = terminating_order(x)) {
      ValueWithError den = pochhammer({c, *N});
      if (!den.ok()) return den;
      if (is_zero(den.value)) {
        return ValueWithError::failure(Status::domain_violation,
                                       "gauss: (c)_N vanishes");
      }
      return pochhammer({c - y, *N}) / den;
    }
  }
  if (is_nonpositive_integer(c)) {
    return ValueWithError::failure(Status::domain_violation,
                                   "gauss: c is a nonpositive integer");
  }
  if (!((c - a - b).real() > 0.0)) {
    return ValueWithError::failure(Status::domain_violation,
                                   "gauss: Re(c - a - b) <= 0, series diverges");
  }
  return gamma_ratio(c, c - a) * gamma_ratio(c - a - b, c - b);
}

ValueWithError sum_pfq_series(std::span<const Cx> num, std::span<const Cx> den,
                              Cx z, const Tolerance& tol) {
  tol.validate();
  std::optional<int> order;
  for (const Cx& x : num) {
    if (auto q = terminating_order(x)) order = order ? std::min(*order, *q) : *q;
  }
  const std::int64_t limit =
      order ? *order : std::numeric_limits<std::int64_t>::max();
  if (auto why = denominator_pole(den, limit)) {
    return ValueWithError::failure(Status::domain_violation, *why);
  }
  if (!order && !(std::abs(z) < 1.0)) {
    return ValueWithError::failure(
        Status::domain_violation,
        "non-terminating series requires |z| < 1");
  }
  CompensatedSum acc;
  double drift = 0.0;
  Cx t = 1.0;
  const double width = static_cast<double>(num.size() + den.size() + 2);
  for (std::int64_t k = 0;; ++k) {
    const double kd = static_cast<double>(k);
    acc.add(t);
    drift += kd * std::abs(t);
    if (order && k == *order) {
      return ValueWithError::approx(
          acc.value(), 2.0 * kUnitRoundoff * (acc.magnitude() + width * drift));
    }
    Cx ratio = z / (kd + 1.0);
    for (const Cx& x : num) ratio *= x + kd;
    for (const Cx& x : den) ratio /= x + kd;
    t *= ratio;
    const double r = std::abs(ratio);
    if (!order && r < 1.0 && k > 2) {
      const double tail = std::abs(t) / (1.0 - r);
      if (tail <= 0.5 * kUnitRoundoff * std::abs(acc.value()) ||
          tail <= tol.abs_floor) {
        acc.add(t);
        return ValueWithError::approx(
            acc.value(),
            tail + 2.0 * kUnitRoundoff * (acc.magnitude() + width * drift));
      }
    }
    if (k >= tol.max_terms) {
      return {acc.value(), std::abs(t) / std::max(1e-300, 1.0 - r),
              Status::slow_convergence,
              "series did not converge within max_terms"};
    }
  }
}

ValueWithError sum_2f1_direct(const GaussSpec& g, const Tolerance& tol) {
  const std::array<Cx, 2> num{g.a, g.b};
  const std::array<Cx, 1> den{g.c};
  return sum_pfq_series(num, den, g.z, tol);
}

ValueWithError sum_2f1_series(const GaussSpec& g, const Tolerance& tol) {
  if (terminating_order(g.a) || terminating_order(g.b)) {
    return sum_2f1_direct(g, tol);
  }
  if (g.z == Cx{1.0, 0.0}) {
    return ValueWithError::failure(Status::domain_violation,
                                   "sum_2f1_series: z = 1 (use Gauss)");
  }
  const Cx one_minus_z = 1.0 - g.z;
  if (one_minus_z.imag() == 0.0 && one_minus_z.real() <= 0.0) {
    return ValueWithError::failure(Status::domain_violation,
                                   "sum_2f1_series: z on the branch cut");
  }
  const Cx w = g.z / (g.z - 1.0);
  if (std::abs(w) < std::abs(g.z)) {
    if (!(std::abs(w) < 1.0)) {
      return ValueWithError::failure(Status::domain_violation,
                                     "sum_2f1_series: outside both regions");
    }
    ValueWithError inner = sum_2f1_direct({g.a, g.c - g.b, g.c, w}, tol);
    const Cx pref = std::exp(-g.a * std::log(one_minus_z));
    return inner * pref;
  }
  return sum_2f1_direct(g, tol);
}

ValueWithError partial_sum_2f1(Cx a, Cx b, Cx c, int n) {
  if (n < 0) {
    return ValueWithError::failure(Status::domain_violation,
                                   "partial sum: negative order");
  }
  CompensatedSum acc;
  Cx t = 1.0;
  for (int k = 0; k <= n; ++k) {
    acc.add(t);
    if (k == n) break;
    const Cx den = (c + static_cast<double>(k)) * (k + 1.0);
    if (is_zero(den)) {
      return ValueWithError::failure(Status::domain_violation,
                                     "partial sum: (c)_k vanishes");
    }
    t *= (a + static_cast<double>(k)) * (b + static_cast<double>(k)) / den;
  }
  return ValueWithError::approx(acc.value(),
                                4.0 * kUnitRoundoff * (n + 1) * acc.magnitude());
}

ValueWithError partial_sum_via_3f2(Cx a, Cx b, Cx c, int n) {
  if (n < 0) {
    return ValueWithError::failure(Status::domain_violation,
                                   "partial sum: negative order");
  }
  ValueWithError pref = pochhammer({1.0 + b, n}) / gamma(n + 1.0);
  return pref * sum_terminating_3f2(n, b, c - a, 1.0 + b, c);
}

ValueWithError sum_terminating_3f2(int N, Cx b, Cx c, Cx d, Cx e, Cx z) {
  if (N < 0) return not_terminating();
  const std::array<Cx, 2> den{d, e};
  if (auto why = denominator_pole(den, N)) {
    return ValueWithError::failure(Status::domain_violation, *why);
  }
  CompensatedSum acc;
  double drift = 0.0;
  Cx t = 1.0;
  for (int k = 0; k <= N; ++k) {
    acc.add(t);
    drift += k * std::abs(t);
    if (k == N) break;
    const double kd = k;
    t *= (kd - N) * (b + kd) * (c + kd) * z /
         ((d + kd) * (e + kd) * (kd + 1.0));
  }
  ValueWithError r = ValueWithError::approx(
      acc.value(), 2.0 * kUnitRoundoff * (acc.magnitude() + 6.0 * drift));
  for (const Cx& x : den) {
    if (N > 0 && distance_to_integers(x, -(N - 1), 0) < kPoleTolerance) {
      r.status = Status::near_singular;
      r.reason = "denominator within 1e-13 of a nonpositive integer";
    }
  }
  return r;
}

ValueWithError sum_terminating_3f2(const Hyp32Spec& s) {
  int best = -1;
  std::optional<int> order;
  for (int i = 0; i < 3; ++i) {
    if (auto q = terminating_order(s.num[i]); q && (!order || *q < *order)) {
      order = q;
      best = i;
    }
  }
  if (!order) return not_terminating();
  std::array<Cx, 2> rest{};
  for (int i = 0, j = 0; i < 3; ++i) {
    if (i != best) rest[j++] = s.num[i];
  }
  return sum_terminating_3f2(*order, rest[0], rest[1], s.den[0], s.den[1], s.z);
}

ValueWithError evaluate_3f2(const Hyp32Spec& s, const Tolerance& tol) {
  for (const Cx& x : s.num) {
    if (terminating_order(x)) return sum_terminating_3f2(s);
  }
  if (s.z == Cx{1.0, 0.0}) return sum_3f2_unit(s, tol);
  return sum_pfq_series(s.num, s.den, s.z, tol);
}

ValueWithError evaluate_2f1(const GaussSpec& g, const Tolerance& tol) {
  if (g.z == Cx{1.0, 0.0}) return gauss_2f1_unit(g.a, g.b, g.c);
  return sum_2f1_series(g, tol);
}

namespace {

ValueWithError check_incomplete_beta_args(Cx a) {
  if (is_zero(a)) {
    return ValueWithError::failure(Status::domain_violation,
                                   "incomplete beta: a = 0");
  }
  return {};
}

}  // namespace

ValueWithError incomplete_beta_hypergeometric(Cx z, Cx a, Cx b) {
  if (auto bad = check_incomplete_beta_args(a); !bad.ok()) return bad;
  const Cx pref = std::pow(z, a) / a;
  return sum_2f1_direct({a, 1.0 - b, a + 1.0, z}) * pref;
}

ValueWithError incomplete_beta_pfaff(Cx z, Cx a, Cx b) {
  if (auto bad = check_incomplete_beta_args(a); !bad.ok()) return bad;
  if (z == Cx{1.0, 0.0}) {
    return ValueWithError::failure(Status::domain_violation,
                                   "incomplete beta (Pfaff form): z = 1");
  }
  const Cx w = z / (z - 1.0);
  const Cx pref = std::pow(z, a) * std::pow(1.0 - z, b - 1.0) / a;
  // The unit parameter goes first so that a second Pfaff step, when needed,
  // acts on it and yields 2F1(1, a+b; a+1; z).
  return sum_2f1_series({1.0, 1.0 - b, a + 1.0, w}) * pref;
}

ValueWithError incomplete_beta(Cx z, Cx a, Cx b) {
  const Cx w = z / (z - 1.0);
  if (std::abs(z) < 1.0 && std::abs(z) <= std::abs(w)) {
    return incomplete_beta_hypergeometric(z, a, b);
  }
  return incomplete_beta_pfaff(z, a, b);
}

namespace quad {

cx sum_terminating_3f2(int N, cx b, cx c, cx d, cx e, real* magnitude) {
  cx sum = make(0);
  cx t = make(1);
  real mag = 0;
  for (int k = 0; k <= N; ++k) {
    sum += t;
    mag += abs(t);
    if (k == N) break;
    const cx kq = make(k);
    t *= make(k - N) * (b + kq) * (c + kq) /
         ((d + kq) * (e + kq) * make(k + 1));
  }
  if (magnitude) *magnitude = mag;
  return sum;
}

cx sum_2f1(cx a, cx b, cx c, cx z, real* magnitude) {
  const bool terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
  if (!terminating && z == make(1)) {
    const cx v = gamma_ratio(c, c - a) * gamma_ratio(c - a - b, c - b);
    if (magnitude) *magnitude = abs(v);
    return v;
  }
  if (!terminating && !(abs(z) < 1)) return nan();
  cx sum = make(0);
  cx t = make(1);
  real mag = 0;
  for (int k = 0; k < 100'000'000; ++k) {
    sum += t;
    mag += abs(t);
    const cx kq = make(k);
    const cx ratio = (a + kq) * (b + kq) / ((c + kq) * make(k + 1)) * z;
    t *= ratio;
    if (t == make(0)) break;
    if (abs(ratio) < 1 && abs(t) <= kEps * abs(sum) * (1 - abs(ratio))) {
      sum += t;
      break;
    }
  }
  if (magnitude) *magnitude = mag;
  return sum;
}

}  // namespace quad

}  // namespace hyp32
