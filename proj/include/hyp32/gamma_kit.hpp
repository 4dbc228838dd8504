#pragma once

// Gamma, log-Gamma, Beta, Pochhammer and Gamma-ratio evaluation over C.
//
// The binary64 functions use the Lanczos approximation (g = 7, 9 terms) for
// Re(z) >= 1/2 and the reflection formula otherwise. Arguments within
// kPoleTolerance of a nonpositive integer are reported as near_singular
// instead of returning a huge value.
//
// The hyp32::quad functions are the binary128 counterparts used internally by
// the closed-form evaluators. They return raw values: poles give inf/nan,
// reciprocal Gamma gives exact zeros.

#include "hyp32/numerics.hpp"
#include "hyp32/quad.hpp"

namespace hyp32 {

inline constexpr double kPoleTolerance = 1e-13;
inline constexpr int kMaxDirectPochhammer = 64;

/// Distance from z to the nearest nonpositive integer.
double pole_distance(Cx z);

ValueWithError lgamma(Cx z);
ValueWithError gamma(Cx z);

/// Gamma(a - j) = (-1)^j Gamma(a) / (1 - a)_j, for non-integer a.
ValueWithError reflection(Cx a, int j);

/// (base)_order for any integer order. Negative orders use
/// (x)_{-m} = (-1)^m / (1 - x)_m.
struct PochArg {
  Cx base;
  int order = 0;
};
ValueWithError pochhammer(PochArg arg);

ValueWithError beta(Cx a, Cx b);

/// Gamma(x) / Gamma(y). Integer offsets y - x = k with |k| <= 64 go through a
/// finite product, which also resolves ratios of two poles.
ValueWithError gamma_ratio(Cx x, Cx y);

namespace quad {

cx lgamma(cx z);
cx gamma(cx z);
/// 1 / Gamma(z); exactly zero at nonpositive integers.
cx rgamma(cx z);
cx pochhammer(cx x, int n);
cx gamma_ratio(cx x, cx y);
cx beta(cx a, cx b);
/// sin(pi z) with exact argument reduction of the real part.
cx sin_pi(cx z);

}  // namespace quad

}  // namespace hyp32
