#pragma once

// IEEE binary128 complex scalars (GCC __float128 / libquadmath). The closed
// forms are evaluated in this type because their two-term combinations cancel
// by many orders of magnitude.

#include <quadmath.h>

#include <cmath>

#include "hyp32/numerics.hpp"

namespace hyp32::quad {

using real = __float128;
using cx = __complex128;

inline constexpr double kEps = 1.925929944387235853e-34;  // 2^-112

inline cx make(real re, real im = 0) {
  cx z;
  __real__ z = re;
  __imag__ z = im;
  return z;
}

inline cx from(Cx z) { return make(z.real(), z.imag()); }

inline Cx to_cx(cx z) {
  return {static_cast<double>(crealq(z)), static_cast<double>(cimagq(z))};
}

inline real re(cx z) { return crealq(z); }
inline real im(cx z) { return cimagq(z); }
inline real abs(cx z) { return cabsq(z); }
inline double absd(cx z) { return static_cast<double>(cabsq(z)); }

inline bool finite(cx z) {
  return finiteq(crealq(z)) && finiteq(cimagq(z));
}

inline bool is_nonpositive_integer(cx z) {
  return cimagq(z) == 0 && crealq(z) <= 0 && crealq(z) == floorq(crealq(z));
}

/// Distance from z to the nearest nonpositive integer.
inline double pole_distance(cx z) {
  real k = roundq(crealq(z));
  if (k > 0) k = 0;
  return static_cast<double>(cabsq(z - make(k)));
}

inline cx nan() { return make(nanq(""), nanq("")); }

}  // namespace hyp32::quad
