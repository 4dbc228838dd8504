#pragma once

// Direct series evaluation: the unit-argument 3F2 oracle, Gauss's theorem,
// 2F1 series with the Pfaff transformation, partial and terminating sums, and
// the incomplete Beta function.

#include <array>
#include <span>

#include "hyp32/numerics.hpp"
#include "hyp32/quad.hpp"

namespace hyp32 {

/// General 3F2(num; den; z).
struct Hyp32Spec {
  std::array<Cx, 3> num{};
  std::array<Cx, 2> den{};
  Cx z{1.0, 0.0};

  /// Parametric excess d + e - a - b - c.
  Cx excess() const { return den[0] + den[1] - num[0] - num[1] - num[2]; }
  /// Thomae's p := d + e - a - b.
  Cx thomae_p() const { return den[0] + den[1] - num[0] - num[1]; }
};

/// 3F2(a, b, c; b+1+m, c+1+n; z): two pairs with negative integral
/// parameter differences.
struct Params3F2NegDiff {
  Cx a{}, b{}, c{};
  int m = 0;
  int n = 0;

  /// sigma = 2 - a + m + n; the k-th unit-argument term decays like
  /// k^(-1-sigma).
  Cx excess() const { return 2.0 - a + static_cast<double>(m + n); }
  double decay() const { return excess().real(); }
  Hyp32Spec spec(Cx z = 1.0) const {
    return {{a, b, c},
            {b + 1.0 + static_cast<double>(m), c + 1.0 + static_cast<double>(n)},
            z};
  }
};

/// 2F1(a, b; c; z).
struct GaussSpec {
  Cx a{}, b{}, c{};
  Cx z{};
};

/// Oracle for 3F2(a,b,c; b+1+m, c+1+n; 1): compensated partial sums with an
/// algebraic tail t_K K / sigma and Richardson refinement over K, 2K, 4K.
/// Refuses (slow_convergence) when Re(sigma) < 0.25.
ValueWithError sum_3f2_unit_oracle(const Params3F2NegDiff& p,
                                   const Tolerance& tol = {});

/// Same method for an arbitrary convergent 3F2 at z = 1.
ValueWithError sum_3f2_unit(const Hyp32Spec& s, const Tolerance& tol = {});

/// Gauss: 2F1(a,b;c;1) = G(c)G(c-a-b) / (G(c-a)G(c-b)). Terminating cases use
/// Chu-Vandermonde and need no convergence condition.
ValueWithError gauss_2f1_unit(Cx a, Cx b, Cx c);

/// 2F1 by its defining series, switching to the Pfaff form
/// (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)) when that converges faster.
ValueWithError sum_2f1_series(const GaussSpec& g, const Tolerance& tol = {});

/// 2F1 by its defining series only (|z| < 1 or terminating).
ValueWithError sum_2f1_direct(const GaussSpec& g, const Tolerance& tol = {});

/// Sum_{k=0}^{n} (a)_k (b)_k / ((c)_k k!).
ValueWithError partial_sum_2f1(Cx a, Cx b, Cx c, int n);

/// The same partial sum as (1+b)_n / n! * 3F2(-n, b, c-a; 1+b, c; 1).
ValueWithError partial_sum_via_3f2(Cx a, Cx b, Cx c, int n);

/// 3F2(-N, b, c; d, e; z) as an exact (N+1)-term sum.
ValueWithError sum_terminating_3f2(int N, Cx b, Cx c, Cx d, Cx e,
                                   Cx z = 1.0);

/// Terminating 3F2 given as a spec; one numerator must be exactly a
/// nonpositive integer (the smallest |N| is used).
ValueWithError sum_terminating_3f2(const Hyp32Spec& s);

/// pFq by its defining series. Requires |z| < 1 unless it terminates.
ValueWithError sum_pfq_series(std::span<const Cx> num, std::span<const Cx> den,
                              Cx z, const Tolerance& tol = {});

/// Evaluates a 3F2 spec by the appropriate route: terminating sum, unit
/// argument oracle, or direct series.
ValueWithError evaluate_3f2(const Hyp32Spec& s, const Tolerance& tol = {});

/// Evaluates a 2F1 spec: Gauss at z = 1, otherwise sum_2f1_series.
ValueWithError evaluate_2f1(const GaussSpec& g, const Tolerance& tol = {});

/// B_z(a, b) = a^-1 z^a 2F1(a, 1-b; a+1; z).
ValueWithError incomplete_beta_hypergeometric(Cx z, Cx a, Cx b);

/// B_z(a, b) = a^-1 z^a (1-z)^(b-1) 2F1(1-b, 1; a+1; z/(z-1)).
ValueWithError incomplete_beta_pfaff(Cx z, Cx a, Cx b);

/// Incomplete Beta, picking whichever representation converges faster.
ValueWithError incomplete_beta(Cx z, Cx a, Cx b);

namespace quad {

/// Binary128 3F2(-N, b, c; d, e; 1). `magnitude` receives sum |t_k|.
cx sum_terminating_3f2(int N, cx b, cx c, cx d, cx e, real* magnitude = nullptr);

/// Binary128 2F1(a, b; c; z): Gauss at z = 1, the defining series for
/// |z| < 1 or when it terminates, NaN otherwise. `magnitude` receives
/// sum |t_k| (|value| at z = 1).
cx sum_2f1(cx a, cx b, cx c, cx z, real* magnitude = nullptr);

}  // namespace quad

}  // namespace hyp32
