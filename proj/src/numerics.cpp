#include "hyp32/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hyp32 {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::ok:
      return "ok";
    case Status::slow_convergence:
      return "slow_convergence";
    case Status::near_singular:
      return "near_singular";
    case Status::domain_violation:
      return "domain_violation";
  }
  return "unknown";
}

Status worst(Status a, Status b) {
  return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

ValueWithError ValueWithError::failure(Status s, std::string why) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {Cx{nan, nan}, std::numeric_limits<double>::infinity(), s,
          std::move(why)};
}

void merge_status(ValueWithError& into, const ValueWithError& from) {
  if (static_cast<int>(from.status) > static_cast<int>(into.status)) {
    into.status = from.status;
    into.reason = from.reason;
  }
}

namespace {

ValueWithError combine(Cx v, double err, const ValueWithError& x,
                       const ValueWithError& y) {
  ValueWithError r{v, err + kUnitRoundoff * std::abs(v), x.status, x.reason};
  merge_status(r, y);
  return r;
}

}  // namespace

ValueWithError operator+(const ValueWithError& x, const ValueWithError& y) {
  return combine(x.value + y.value, x.abs_err + y.abs_err, x, y);
}

ValueWithError operator-(const ValueWithError& x, const ValueWithError& y) {
  return combine(x.value - y.value, x.abs_err + y.abs_err, x, y);
}

ValueWithError operator*(const ValueWithError& x, const ValueWithError& y) {
  const double err =
      std::abs(x.value) * y.abs_err + std::abs(y.value) * x.abs_err;
  return combine(x.value * y.value, err, x, y);
}

ValueWithError operator/(const ValueWithError& x, const ValueWithError& y) {
  const double ay = std::abs(y.value);
  const Cx q = x.value / y.value;
  const double err = (x.abs_err + std::abs(q) * y.abs_err) / ay;
  return combine(q, err, x, y);
}

ValueWithError operator*(const ValueWithError& x, Cx k) {
  ValueWithError r = x;
  r.value *= k;
  r.abs_err = x.abs_err * std::abs(k) + kUnitRoundoff * std::abs(r.value);
  return r;
}

ValueWithError operator*(Cx k, const ValueWithError& x) { return x * k; }

ValueWithError operator-(const ValueWithError& x) {
  ValueWithError r = x;
  r.value = -x.value;
  return r;
}

void Tolerance::validate() const {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
  if (max_terms < 1) throw std::invalid_argument("max_terms must be >= 1");
}

namespace {

inline void neumaier(double& sum, double& comp, double t) {
  const double s = sum + t;
  if (std::abs(sum) >= std::abs(t)) {
    comp += (sum - s) + t;
  } else {
    comp += (t - s) + sum;
  }
  sum = s;
}

}  // namespace

void CompensatedSum::add(Cx t) {
  neumaier(re_sum_, re_comp_, t.real());
  neumaier(im_sum_, im_comp_, t.imag());
  magnitude_ += std::abs(t);
  ++count_;
}

Cx compensated_sum(std::span<const Cx> terms) {
  CompensatedSum acc;
  for (const Cx& t : terms) acc.add(t);
  return acc.value();
}

double rel_err(Cx x, Cx y, double abs_floor) {
  return std::abs(x - y) / std::max(std::abs(y), abs_floor);
}

double rel_err_symmetric(Cx x, Cx y, double abs_floor) {
  return std::abs(x - y) /
         std::max({std::abs(x), std::abs(y), abs_floor});
}

bool is_finite(Cx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

bool is_nonpositive_integer(Cx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 &&
         z.real() == std::floor(z.real());
}

double distance_to_integers(Cx z, long lo, long hi) {
  if (lo > hi) return std::numeric_limits<double>::infinity();
  const double k = std::clamp(std::round(z.real()), static_cast<double>(lo),
                              static_cast<double>(hi));
  return std::abs(z - Cx{k, 0.0});
}

}  // namespace hyp32
