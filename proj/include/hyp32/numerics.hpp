#pragma once

// Error-tracked complex arithmetic and compensated accumulation shared by
// every evaluator in the library.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace hyp32 {

using Cx = std::complex<double>;

inline constexpr double kUnitRoundoff = 0x1p-53;

enum class Status { ok, slow_convergence, near_singular, domain_violation };

std::string_view to_string(Status s);

/// Returns the more severe of two statuses (ok < slow_convergence <
/// near_singular < domain_violation).
Status worst(Status a, Status b);

/// A value together with an absolute error estimate. When `status` is ok,
/// `abs_err` is believed to bound |true - value|. `reason` is free text set by
/// the producer whenever status is not ok.
struct ValueWithError {
  Cx value{};
  double abs_err = 0.0;
  Status status = Status::ok;
  std::string reason;

  bool ok() const { return status == Status::ok; }

  static ValueWithError exact(Cx v) { return {v, 0.0, Status::ok, {}}; }
  static ValueWithError approx(Cx v, double err) {
    return {v, err, Status::ok, {}};
  }
  static ValueWithError failure(Status s, std::string why);
};

// Linear combinations add absolute errors; products and quotients add
// relative errors. Each operation also charges one rounding of the result.
ValueWithError operator+(const ValueWithError& x, const ValueWithError& y);
ValueWithError operator-(const ValueWithError& x, const ValueWithError& y);
ValueWithError operator*(const ValueWithError& x, const ValueWithError& y);
ValueWithError operator/(const ValueWithError& x, const ValueWithError& y);
ValueWithError operator*(const ValueWithError& x, Cx k);
ValueWithError operator*(Cx k, const ValueWithError& x);
ValueWithError operator-(const ValueWithError& x);

/// Merges status/reason of `from` into `into` (keeps the more severe one).
void merge_status(ValueWithError& into, const ValueWithError& from);

struct Tolerance {
  double rel_tol = 1e-10;
  double abs_floor = 1e-300;
  std::int64_t max_terms = 10'000'000;

  /// Throws std::invalid_argument if rel_tol <= 0 or max_terms < 1.
  void validate() const;
};

/// Neumaier-compensated accumulator, applied independently to the real and
/// imaginary parts.
class CompensatedSum {
 public:
  void add(Cx t);
  CompensatedSum& operator+=(Cx t) {
    add(t);
    return *this;
  }
  Cx value() const { return {re_sum_ + re_comp_, im_sum_ + im_comp_}; }
  /// Running sum of |t|, used for roundoff bounds.
  double magnitude() const { return magnitude_; }
  std::int64_t count() const { return count_; }

 private:
  double re_sum_ = 0.0, re_comp_ = 0.0;
  double im_sum_ = 0.0, im_comp_ = 0.0;
  double magnitude_ = 0.0;
  std::int64_t count_ = 0;
};

Cx compensated_sum(std::span<const Cx> terms);

/// |x - y| / max(|y|, abs_floor). The second argument is the reference.
double rel_err(Cx x, Cx y, double abs_floor = 1e-300);

/// |x - y| / max(|x|, |y|, abs_floor).
double rel_err_symmetric(Cx x, Cx y, double abs_floor = 1e-300);

bool is_finite(Cx z);

/// True when z is exactly a nonpositive integer (imaginary part exactly 0).
bool is_nonpositive_integer(Cx z);

/// Distance from z to the nearest integer in [lo, hi]; +inf if lo > hi.
double distance_to_integers(Cx z, long lo, long hi);

}  // namespace hyp32
