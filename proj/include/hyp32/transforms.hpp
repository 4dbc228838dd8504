#pragma once

// Value-preserving rewrites of 3F2 and 2F1 specs. Nothing here sums a series;
// the assemble_* helpers do that when the caller wants a number.

#include <optional>
#include <string>
#include <vector>

#include "hyp32/numerics.hpp"
#include "hyp32/series.hpp"

namespace hyp32 {

struct RewriteTerm {
  Cx coefficient{1.0, 0.0};
  Hyp32Spec spec;
};

/// value(input) = prefactor * sum_i coefficient_i * value(spec_i).
struct Rewrite {
  Cx prefactor{1.0, 0.0};
  std::vector<RewriteTerm> results;
  Status status = Status::ok;
  std::string reason;
};

struct GaussTerm {
  Cx coefficient{1.0, 0.0};
  GaussSpec spec;
};

/// value(input) = sum_i coefficient_i * 2F1(spec_i).
struct GaussCombination {
  std::vector<GaussTerm> terms;
  Status status = Status::ok;
  std::string reason;
};

/// pFq(num; den; z) with arbitrary parameter counts.
struct PfqSpec {
  std::vector<Cx> num;
  std::vector<Cx> den;
  Cx z{};
};

struct PfqTerm {
  Cx coefficient{1.0, 0.0};
  PfqSpec spec;
};

struct PfqCombination {
  std::vector<PfqTerm> terms;
  Status status = Status::ok;
  std::string reason;
};

/// 3F2(a, b, c; d, e; 1) = G(d)G(p-c)/(G(p)G(d-c)) 3F2(e-a, e-b, c; p, e; 1)
/// with p = d + e - a - b. The third numerator and second denominator pass
/// through unchanged.
Rewrite thomae_two_term(const Hyp32Spec& s);

/// Three-term relation for 3F2(a, b, c; e, f; 1) (num = {a, b, c},
/// den = {e, f}); both results need Re(1 + c - e) > 0.
Rewrite thomae_three_term(const Hyp32Spec& s);

/// s has numerator alpha = num[num_idx] and denominator den[den_idx] =
/// alpha - n. Returns the n + 1 weighted 2F1(b+p, c+p; d+p; z).
GaussCombination pf_reduce(const Hyp32Spec& s, int n, int num_idx, int den_idx);

/// s = 3F2(-n, a, b; c - n, d; 1) laid out as num = {-n, a, b},
/// den = {c - n, d}. Result: (1+a-c)_n/(1-c)_n 3F2(-n, a, d-b; 1+a-c, d; 1).
Rewrite rd_reverse(const Hyp32Spec& s, int n);

/// s = 3F2(-n, a, b - n; c - n, d - n; 1) laid out in that order. Result:
/// (1+a-c)_n (1-b)_n / ((1-c)_n (1-d)_n) 3F2(-n, d-b, 1-c; 1+a-c, 1-b; 1).
Rewrite re_transform(const Hyp32Spec& s, int n);

struct LinearTransform {
  Cx prefactor{1.0, 0.0};
  GaussSpec spec;
  Status status = Status::ok;
  std::string reason;
};

/// 2F1(a, b; c; z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)), principal branch.
LinearTransform pfaff_linear(const GaussSpec& g);

/// 3F2(a, b, c; b+1+m, c+1+n; z) as 2(m+1)(n+1) weighted
/// 2F1(a, c+j; c+j+1; z) and 2F1(a, b+i; b+i+1; z).
GaussCombination karlsson_z_reduce(const Params3F2NegDiff& p, Cx z);

/// The same reduction with coefficients and shifted parameters kept in
/// binary128. The terms cancel by up to ~1e4 for b - c near the lattice, so
/// rounding them to double costs digits; karlsson_z_reduce is this list
/// rounded.
struct GaussTermExt {
  quad::cx coefficient;
  quad::cx a, b, c, z;
};
struct GaussCombinationExt {
  std::vector<GaussTermExt> terms;
  Status status = Status::ok;
  std::string reason;
};
GaussCombinationExt karlsson_z_reduce_ext(const Params3F2NegDiff& p, Cx z);

/// 3F2 with r <= 2 positive integral differences:
///   r = 1: 3F2(b1+m1, a2, a3; b1, d; z), remaining_num = {a2, a3},
///          remaining_den = {d};
///   r = 2: 3F2(b1+m1, b2+m2, a3; b1, b2; z), remaining_num = {a3},
///          remaining_den = {}.
struct KarMintonSpec {
  Cx b1{};
  int m1 = 0;
  std::optional<Cx> b2;
  int m2 = 0;
  std::vector<Cx> remaining_num;
  std::vector<Cx> remaining_den;
  Cx z{};

  /// The 3F2 this spec describes.
  Hyp32Spec as_3f2() const;
};

inline constexpr int kMaxKarlssonMinton = 16;

PfqCombination karlsson_minton_reduce(const KarMintonSpec& s);

// Numeric assembly of the rewrites.
ValueWithError assemble(const Rewrite& r, const Tolerance& tol = {});
ValueWithError assemble(const GaussCombination& g, const Tolerance& tol = {});
ValueWithError assemble(const PfqCombination& g, const Tolerance& tol = {});
/// Sums in binary128; every 2F1 must be Gauss-summable or have |z| < 1.
ValueWithError assemble(const GaussCombinationExt& g);

}  // namespace hyp32
