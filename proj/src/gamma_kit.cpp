#include "hyp32/gamma_kit.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace hyp32 {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Relative accuracy of the Lanczos sum for this coefficient set.
constexpr double kLanczosRel = 2e-15;

const std::array<double, 171>& factorial_table() {
  static const std::array<double, 171> table = [] {
    std::array<double, 171> t{};
    t[0] = 1.0;
    for (int k = 1; k <= 170; ++k) t[k] = t[k - 1] * k;
    return t;
  }();
  return table;
}

bool is_real(Cx z) { return z.imag() == 0.0; }

Cx sin_pi(Cx z) {
  const double x = z.real() - 2.0 * std::round(z.real() / 2.0);
  const double n = std::round(x);
  const double f = x - n;
  const double sign = (static_cast<long>(n) % 2 == 0) ? 1.0 : -1.0;
  const double y = std::numbers::pi * z.imag();
  return sign * Cx{std::sin(std::numbers::pi * f) * std::cosh(y),
                   std::cos(std::numbers::pi * f) * std::sinh(y)};
}

// log Gamma for Re(z) >= 1/2.
Cx lanczos_lgamma(Cx z, double& abs_err) {
  const Cx zm = z - 1.0;
  Cx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    x += kLanczos[i] / (zm + static_cast<double>(i));
  }
  const Cx t = zm + kLanczosG + 0.5;
  const Cx log_t = std::log(t);
  abs_err = kLanczosRel +
            4.0 * kUnitRoundoff * (std::abs((zm + 0.5) * log_t) + std::abs(t));
  return 0.5 * std::log(2.0 * std::numbers::pi) + (zm + 0.5) * log_t - t +
         std::log(x);
}

ValueWithError pole_failure(Cx z, std::string_view what) {
  return ValueWithError::failure(
      Status::near_singular,
      std::string(what) + ": argument (" + std::to_string(z.real()) + "," +
          std::to_string(z.imag()) + ") at or near a Gamma pole");
}

}  // namespace

double pole_distance(Cx z) {
  double k = std::round(z.real());
  if (k > 0.0) k = 0.0;
  return std::abs(z - Cx{k, 0.0});
}

ValueWithError lgamma(Cx z) {
  if (!is_finite(z)) {
    return ValueWithError::failure(Status::domain_violation,
                                   "lgamma: non-finite argument");
  }
  if (is_nonpositive_integer(z) || pole_distance(z) < kPoleTolerance) {
    return pole_failure(z, "lgamma");
  }
  double err = 0.0;
  if (z.real() >= 0.5) {
    const Cx v = lanczos_lgamma(z, err);
    return ValueWithError::approx(v, err);
  }
  const Cx s = sin_pi(z);
  const Cx v = std::log(std::numbers::pi) - std::log(s) -
               lanczos_lgamma(1.0 - z, err);
  err += 4.0 * kUnitRoundoff * (1.0 + std::abs(z) * std::numbers::pi);
  return ValueWithError::approx(v, err);
}

ValueWithError gamma(Cx z) {
  if (is_real(z) && z.real() >= 1.0 && z.real() <= 171.0 &&
      z.real() == std::floor(z.real())) {
    const double v = factorial_table()[static_cast<int>(z.real()) - 1];
    return ValueWithError::approx(v, kUnitRoundoff * v);
  }
  ValueWithError lg = lgamma(z);
  if (!lg.ok()) return lg;
  Cx v = std::exp(lg.value);
  if (!is_finite(v)) {
    return ValueWithError::failure(Status::domain_violation,
                                   "gamma: overflow");
  }
  if (is_real(z)) v = Cx{v.real(), 0.0};
  return ValueWithError::approx(v, std::abs(v) * (lg.abs_err + kUnitRoundoff));
}

ValueWithError reflection(Cx a, int j) {
  if (is_real(a) && a.real() == std::round(a.real())) {
    return ValueWithError::failure(Status::domain_violation,
                                   "reflection: integer a");
  }
  ValueWithError g = gamma(a);
  if (!g.ok()) return g;
  ValueWithError p = pochhammer({1.0 - a, j});
  if (!p.ok()) return p;
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  return (g * Cx{sign, 0.0}) / p;
}

ValueWithError pochhammer(PochArg arg) {
  const Cx x = arg.base;
  const int n = arg.order;
  if (n == 0) return ValueWithError::exact(1.0);
  if (!is_finite(x)) {
    return ValueWithError::failure(Status::domain_violation,
                                   "pochhammer: non-finite base");
  }
  if (n < 0) {
    const int m = -n;
    ValueWithError d = pochhammer({1.0 - x, m});
    if (!d.ok()) return d;
    if (d.value == Cx{0.0, 0.0}) {
      return ValueWithError::failure(
          Status::domain_violation,
          "pochhammer: (1 - base)_m vanishes for negative order");
    }
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return ValueWithError::exact(sign) / d;
  }
  if (is_nonpositive_integer(x) && -x.real() < n) {
    return ValueWithError::exact(0.0);
  }
  if (n <= kMaxDirectPochhammer) {
    Cx prod = 1.0;
    for (int k = 0; k < n; ++k) prod *= x + static_cast<double>(k);
    return ValueWithError::approx(prod, 2.0 * n * kUnitRoundoff *
                                            std::abs(prod));
  }
  return gamma_ratio(x + static_cast<double>(n), x);
}

ValueWithError gamma_ratio(Cx x, Cx y) {
  const Cx diff = y - x;
  const double k = std::round(diff.real());
  if (std::abs(diff - Cx{k, 0.0}) <=
          1e-12 * std::max(1.0, std::abs(x)) &&
      std::abs(k) <= kMaxDirectPochhammer) {
    const int ki = static_cast<int>(k);
    if (ki >= 0) {
      ValueWithError p = pochhammer({x, ki});
      if (!p.ok()) return p;
      if (p.value == Cx{0.0, 0.0}) {
        return pole_failure(x, "gamma_ratio numerator");
      }
      return ValueWithError::exact(1.0) / p;
    }
    return pochhammer({y, -ki});
  }
  if (is_nonpositive_integer(x) || pole_distance(x) < kPoleTolerance) {
    return pole_failure(x, "gamma_ratio numerator");
  }
  if (is_nonpositive_integer(y)) return ValueWithError::exact(0.0);
  if (pole_distance(y) < kPoleTolerance) {
    return pole_failure(y, "gamma_ratio denominator");
  }
  ValueWithError lx = lgamma(x);
  ValueWithError ly = lgamma(y);
  if (!lx.ok()) return lx;
  if (!ly.ok()) return ly;
  Cx v = std::exp(lx.value - ly.value);
  if (!is_finite(v)) {
    return ValueWithError::failure(Status::domain_violation,
                                   "gamma_ratio: overflow");
  }
  if (is_real(x) && is_real(y)) v = Cx{v.real(), 0.0};
  return ValueWithError::approx(
      v, std::abs(v) * (lx.abs_err + ly.abs_err + kUnitRoundoff));
}

ValueWithError beta(Cx a, Cx b) {
  if (is_nonpositive_integer(a) || pole_distance(a) < kPoleTolerance) {
    return pole_failure(a, "beta first argument");
  }
  if (is_nonpositive_integer(b) || pole_distance(b) < kPoleTolerance) {
    return pole_failure(b, "beta second argument");
  }
  const Cx s = a + b;
  if (is_nonpositive_integer(s)) return ValueWithError::exact(0.0);
  auto small_positive_integer = [](Cx z) {
    return is_real(z) && z.real() >= 1.0 &&
           z.real() <= kMaxDirectPochhammer && z.real() == std::floor(z.real());
  };
  // Integer arguments give (k - 1)! / (other)_k through the product path.
  if (small_positive_integer(a)) return gamma(a) * gamma_ratio(b, s);
  if (small_positive_integer(b)) return gamma(b) * gamma_ratio(a, s);
  if (pole_distance(s) < kPoleTolerance) {
    return pole_failure(s, "beta sum argument");
  }
  ValueWithError la = lgamma(a), lb = lgamma(b), ls = lgamma(s);
  for (const auto* v : {&la, &lb, &ls}) {
    if (!v->ok()) return *v;
  }
  Cx v = std::exp(la.value + lb.value - ls.value);
  if (!is_finite(v)) {
    return ValueWithError::failure(Status::domain_violation, "beta: overflow");
  }
  if (is_real(a) && is_real(b)) v = Cx{v.real(), 0.0};
  return ValueWithError::approx(
      v, std::abs(v) * (la.abs_err + lb.abs_err + ls.abs_err + kUnitRoundoff));
}

}  // namespace hyp32
