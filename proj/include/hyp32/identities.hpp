#pragma once

// Closed-form evaluators for 3F2(a, b, c; b+1+m, c+1+n; 1).
//
// Every two-term combination below cancels heavily for generic complex
// parameters, so the formulas are assembled in binary128 by default and
// rounded once at the end. Precision::binary64 runs the same formulas in
// double and is kept for measuring that cancellation.

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "hyp32/numerics.hpp"
#include "hyp32/series.hpp"

namespace hyp32 {

enum class IdentityId { ZY, ZX, TT, TC, MN, KB, OM, MP, FA, FB, P7_4_4_16, A1_LIMIT };

enum class Precision { binary128, binary64 };

/// Distance below which b - c counts as sitting on the colliding lattice
/// [-m, n]; auto dispatch falls back to the oracle there.
inline constexpr double kLatticeTolerance = 1e-6;
/// Distance below which a counts as a positive integer (Beta pole of 1 - a).
inline constexpr double kIntegerATolerance = 1e-8;

/// Both right-hand terms of the two-term result, scaled back to the 3F2.
struct ZyTerms {
  Cx first{};
  Cx second{};
  ValueWithError value;
};

ValueWithError eval_zy(const Params3F2NegDiff& p,
                       Precision prec = Precision::binary128);
ZyTerms zy_terms(const Params3F2NegDiff& p,
                 Precision prec = Precision::binary128);

/// Symmetric m = n form.
ValueWithError eval_zx(const Params3F2NegDiff& p,
                       Precision prec = Precision::binary128);

/// m = n, terminating factors with the (1 + n) numerator pair.
ValueWithError eval_theorem1(const Params3F2NegDiff& p,
                             Precision prec = Precision::binary128);

/// 3F2(a + 2n, b, c; b+1+n, c+1+n; 1). At integer a the Gamma poles cancel
/// and the removable limit is taken by centered extrapolation in a.
ValueWithError eval_corollary1(Cx a, Cx b, Cx c, int n,
                               Precision prec = Precision::binary128);

/// t1 + t2 = 3F2 * (c-b)_{n+1} / ((b)_{m+1} (c)_{n+1}).
struct Theorem2Terms {
  Cx t1{};
  Cx t2{};
};
struct Theorem2Result {
  Theorem2Terms terms;
  ValueWithError value;
};
Theorem2Result eval_theorem2(const Params3F2NegDiff& p,
                             Precision prec = Precision::binary128);

/// Double sum over i <= m, j <= n of Beta functions. Exact integer b - c is
/// a domain violation; within kLatticeTolerance it is flagged near_singular.
ValueWithError eval_karlsson_kb(const Params3F2NegDiff& p,
                                Precision prec = Precision::binary128);

/// Sum_{k=0}^{m} (-m)_k / ((x - j + k) k!), summed directly.
ValueWithError eval_inner_sum_su(int m, Cx bc_diff, int j);
/// m! / (x)_{m+1} * (-x - m)_j / (1 - x)_j.
ValueWithError inner_sum_su_closed(int m, Cx bc_diff, int j);

/// 3F2(a, b, c; b+n, c+1; 1), n >= 1, with an l-sum of Gamma ratios.
ValueWithError eval_milgram_om(Cx a, Cx b, Cx c, int n,
                               Precision prec = Precision::binary128);

enum class MillerParisVariant { MP, FA, FB };
/// MP: 3F2(a, b, c; b+n, c+1; 1), n >= 1, through a Gauss partial sum.
/// FA, FB: 3F2(a, b, c; b+1+n, c+1; 1), n >= 0.
ValueWithError eval_miller_paris(MillerParisVariant v, Cx a, Cx b, Cx c, int n,
                                 Precision prec = Precision::binary128);

/// 3F2(a, b, c; b+1, c+1; 1) = bc/(c-b) G(1-a) [G(b)/G(1-a+b) - G(c)/G(1-a+c)].
ValueWithError eval_special_7_4_4_16(Cx a, Cx b, Cx c,
                                     Precision prec = Precision::binary128);

/// Limit of the two-term result as a approaches the given point (meant for
/// a = 1 or another positive integer): centered values at a +- h for
/// h = 1e-4, 1e-5, Richardson-extrapolated in h^2.
ValueWithError eval_a1_limit(const Params3F2NegDiff& p);

struct AutoResult {
  ValueWithError value;
  IdentityId method = IdentityId::ZY;
  bool used_oracle = false;
};
/// a near a positive integer -> A1_LIMIT; b - c near the colliding lattice or
/// b, c near a Gamma pole -> oracle; otherwise ZY.
AutoResult evaluate_auto(const Params3F2NegDiff& p, const Tolerance& tol = {});

struct IdentityInfo {
  IdentityId id;
  std::string_view key;    // CLI name
  std::string_view label;  // human description
  /// Which Params3F2NegDiff the identity can express.
  std::function<bool(const Params3F2NegDiff&)> applicable;
  /// Evaluates 3F2(a, b, c; b+1+m, c+1+n; 1) through this identity, mapping
  /// (a, b, c, m, n) onto the identity's own parameters.
  std::function<ValueWithError(const Params3F2NegDiff&, Precision)> evaluate;
  bool needs_equal_mn = false;
  bool needs_n_zero = false;
};

std::span<const IdentityInfo> identity_registry();
const IdentityInfo& identity_info(IdentityId id);
std::optional<IdentityId> identity_from_key(std::string_view key);
std::string_view to_string(IdentityId id);

}  // namespace hyp32
