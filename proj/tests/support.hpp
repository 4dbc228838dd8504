#pragma once

#include <complex>

#include "hyp32/numerics.hpp"

namespace hyp32::test {

inline bool close(Cx x, Cx y, double tol) { return rel_err(x, y) <= tol; }

// Frozen 40-digit references (mpmath), rounded to double.
inline const Cx kZyRef{1.0442999740388061279, 0.031353694926050742042};  // (0.3+0.2i, 1.4, 2.9, 3, 2)
inline constexpr double kTcRef = 1.8753537960914411161;       // 3F2(2, 1, 2.5; 3, 4.5; 1)
inline constexpr double kTcShiftRef = 1.9739023123317508996;  // (4.2, 0.8, 2.2, 2, 2)
inline constexpr double kMnRef = 1.1154519340653102822;       // (0.6, 1.3, 3.1, 1, 4)
inline constexpr double kA1Ref = 0.48214285714285714286;      // (1, -2.5, 2.5, 1, 2)
inline constexpr double kA1ZyRef = 1.1861198727697662048;     // (1, 0.6, 2.3, 1, 1)
inline constexpr double kKaRef = 1.0473523187202308012;       // 3F2(0.5, 1, 2; 3, 4; 0.5)
inline constexpr double kKarRef = 1.2588883987059061615;      // 3F2(2.3, 0.7, 1.1; 1.3, 2.9; 0.4)

}  // namespace hyp32::test
