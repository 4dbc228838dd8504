#include "hyp32/identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hyp32/gamma_kit.hpp"

namespace hyp32 {

namespace {

// Scalar kernels. Formulas are written once against this interface.
struct QuadKernel {
  using C = quad::cx;
  static constexpr double kEps = quad::kEps;
  static C r(double x) { return quad::make(x); }
  static C from(Cx z) { return quad::from(z); }
  static Cx to(C z) { return quad::to_cx(z); }
  static double mag(C z) { return quad::absd(z); }
  static bool finite(C z) { return quad::finite(z); }
  static C gamma(C z) { return quad::gamma(z); }
  static C ratio(C x, C y) { return quad::gamma_ratio(x, y); }
  static C beta(C x, C y) { return quad::beta(x, y); }
  static C poch(C x, int n) { return quad::pochhammer(x, n); }
};

struct DoubleKernel {
  using C = Cx;
  static constexpr double kEps = kUnitRoundoff;
  static C r(double x) { return x; }
  static C from(Cx z) { return z; }
  static Cx to(C z) { return z; }
  static double mag(C z) { return std::abs(z); }
  static bool finite(C z) { return is_finite(z); }
  static C gamma(C z) { return hyp32::gamma(z).value; }
  static C ratio(C x, C y) { return gamma_ratio(x, y).value; }
  static C beta(C x, C y) { return hyp32::beta(x, y).value; }
  static C poch(C x, int n) { return pochhammer({x, n}).value; }
};

template <class K>
using CT = typename K::C;

// 3F2(-N, b, c; d, e; 1); adds sum |t_k| to `magnitude`.
template <class K>
CT<K> terminating(int N, CT<K> b, CT<K> c, CT<K> d, CT<K> e, double& magnitude) {
  using C = CT<K>;
  C sum = K::r(0.0);
  C t = K::r(1.0);
  double mag = 0.0;
  for (int k = 0; k <= N; ++k) {
    sum += t;
    mag += K::mag(t);
    if (k == N) break;
    const C kc = K::r(k);
    t *= K::r(k - N) * (b + kc) * (c + kc) / ((d + kc) * (e + kc) * K::r(k + 1));
  }
  magnitude = mag;
  return sum;
}

template <class K>
CT<K> factorial(int n) {
  return K::poch(K::r(1.0), n);
}

double sign_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// A closed-form value with the summed magnitude of everything that cancelled
// into it.
template <class K>
struct Assembled {
  CT<K> value;
  double magnitude = 0.0;
};

template <class K>
ValueWithError finish(const Assembled<K>& r, std::string_view what) {
  const Cx v = K::to(r.value);
  if (!K::finite(r.value) || !is_finite(v)) {
    return ValueWithError::failure(
        Status::near_singular,
        std::string(what) + ": closed form is singular at these parameters");
  }
  return ValueWithError::approx(
      v, 2.0 * kUnitRoundoff * std::abs(v) + 64.0 * K::kEps * r.magnitude);
}

// ---- two-term result -------------------------------------------------------

template <class K>
struct ZyParts {
  CT<K> first, second;
  double magnitude = 0.0;
};

template <class K>
ZyParts<K> zy_parts(const Params3F2NegDiff& p) {
  using C = CT<K>;
  const C a = K::from(p.a), b = K::from(p.b), c = K::from(p.c);
  const C one = K::r(1.0);
  const int m = p.m, n = p.n;
  const C pref = K::poch(b, m + 1) * K::poch(c, n + 1);
  double mag1 = 0.0, mag2 = 0.0;
  const C f1 = terminating<K>(m, b, b - c - K::r(n), one + b - a, one + b - c, mag1);
  const C f2 = terminating<K>(n, c, c - b - K::r(m), one + c - a, one + c - b, mag2);
  const C k1 = pref * K::beta(one - a, b) / (K::poch(c - b, n + 1) * factorial<K>(m));
  const C k2 = pref * K::beta(one - a, c) / (K::poch(b - c, m + 1) * factorial<K>(n));
  return {k1 * f1, k2 * f2, K::mag(k1) * mag1 + K::mag(k2) * mag2};
}

template <class K>
Assembled<K> zy(const Params3F2NegDiff& p) {
  const ZyParts<K> parts = zy_parts<K>(p);
  return {parts.first + parts.second, parts.magnitude};
}

template <class K>
Assembled<K> zx(const Params3F2NegDiff& p) {
  using C = CT<K>;
  const C a = K::from(p.a), b = K::from(p.b), c = K::from(p.c);
  const C one = K::r(1.0);
  const int n = p.n;
  const C nc = K::r(n);
  double mag1 = 0.0, mag2 = 0.0;
  const C f1 = terminating<K>(n, b, b - c - nc, one + b - a, one + b - c, mag1);
  const C f2 = terminating<K>(n, c, c - b - nc, one + c - a, one + c - b, mag2);
  const C k1 = K::beta(one - a, b) / K::poch(c - b, n + 1);
  const C k2 = K::beta(one - a, c) / K::poch(b - c, n + 1);
  const C scale = K::poch(b, n + 1) * K::poch(c, n + 1) / factorial<K>(n);
  return {scale * (k1 * f1 + k2 * f2),
          K::mag(scale) * (K::mag(k1) * mag1 + K::mag(k2) * mag2)};
}

template <class K>
Assembled<K> theorem1(const Params3F2NegDiff& p) {
  using C = CT<K>;
  const C a = K::from(p.a), b = K::from(p.b), c = K::from(p.c);
  const C one = K::r(1.0), two = K::r(2.0);
  const int n = p.n;
  const C nc = K::r(n);
  double mag1 = 0.0, mag2 = 0.0;
  const C f1 = terminating<K>(n, b, one + nc, one + b - c, a - nc, mag1);
  const C f2 = terminating<K>(n, one - a + b + nc, one + nc, one + b - c,
                              two - a + nc, mag2);
  const C k1 = K::beta(one - a, b) * K::poch(one - a, n) / K::poch(one + b - a, n);
  const C k2 = K::r(sign_pow(1 + n)) * K::beta(one - a, c) *
               K::poch(two - a + nc, n) / K::poch(one - a + c, n);
  const C scale = K::poch(b, n + 1) * K::poch(c, n + 1) /
                  (K::poch(c - b, n + 1) * factorial<K>(n));
  return {scale * (k1 * f1 + k2 * f2),
          K::mag(scale) * (K::mag(k1) * mag1 + K::mag(k2) * mag2)};
}

// Value of 3F2(a + 2n, b, c; b+1+n, c+1+n; 1) from the shifted formula.
template <class K>
Assembled<K> corollary1(Cx a_, Cx b_, Cx c_, int n) {
  using C = CT<K>;
  const C a = K::from(a_), b = K::from(b_), c = K::from(c_);
  const C one = K::r(1.0), two = K::r(2.0);
  const C nc = K::r(n);
  double mag1 = 0.0, mag2 = 0.0;
  const C f1 = terminating<K>(n, b, one + nc, one + b - c, a + nc, mag1);
  const C f2 = terminating<K>(n, one - a + b - nc, one + nc, one + b - c,
                              two - a - nc, mag2);
  const C k1 = K::ratio(b, one - a + b - nc) * K::gamma(one - a - nc);
  const C k2 = K::ratio(c, one - a + c - nc) * K::gamma(two - a) *
               K::ratio(a + nc - one, a + two * nc);
  const C scale = K::poch(b, n + 1) * K::poch(c, n + 1) /
                  (K::poch(c - b, n + 1) * factorial<K>(n));
  return {scale * (k1 * f1 + k2 * f2),
          K::mag(scale) * (K::mag(k1) * mag1 + K::mag(k2) * mag2)};
}

template <class K>
struct Theorem2Parts {
  CT<K> t1, t2, scale;
  double magnitude = 0.0;
};

template <class K>
Theorem2Parts<K> theorem2(const Params3F2NegDiff& p) {
  using C = CT<K>;
  const C a = K::from(p.a), b = K::from(p.b), c = K::from(p.c);
  const C one = K::r(1.0), two = K::r(2.0);
  const int m = p.m, n = p.n;
  const C mc = K::r(m), nc = K::r(n);
  double mag1 = 0.0, mag2 = 0.0;
  const C f1 = terminating<K>(m, b, one + nc, one + b - c, a - mc, mag1);
  const C f2 = terminating<K>(n, one - a + b + mc, one + mc, two - a + mc,
                              one + b - c + mc - nc, mag2);
  const C k1 = K::beta(one - a, b) * K::poch(one - a, m) /
               (K::poch(one + b - a, m) * factorial<K>(m));
  const C k2 = K::r(sign_pow(1 + m)) * K::beta(one - a, c) *
               K::poch(two - a + mc, n) / (K::poch(one - a + c, n) * factorial<K>(n)) *
               K::poch(c - b, n - m);
  const C scale = K::poch(b, m + 1) * K::poch(c, n + 1) / K::poch(c - b, n + 1);
  return {k1 * f1, k2 * f2, scale,
          K::mag(scale) * (K::mag(k1) * mag1 + K::mag(k2) * mag2)};
}

template <class K>
Assembled<K> karlsson_kb(const Params3F2NegDiff& p) {
  using C = CT<K>;
  const C a = K::from(p.a), b = K::from(p.b), c = K::from(p.c);
  const C one = K::r(1.0);
  const int m = p.m, n = p.n;
  C sum = K::r(0.0);
  double mag = 0.0;
  for (int i = 0; i <= m; ++i) {
    const C wi = K::poch(K::r(-m), i) / factorial<K>(i);
    for (int j = 0; j <= n; ++j) {
      const C w = wi * K::poch(K::r(-n), j) / factorial<K>(j);
      const C d = b - c + K::r(i - j);
      const C x = w * K::beta(one - a, c + K::r(j)) / d;
      const C y = -w * K::beta(one - a, b + K::r(i)) / d;
      sum += x + y;
      mag += K::mag(x) + K::mag(y);
    }
  }
  const C scale = K::poch(b, m + 1) * K::poch(c, n + 1) /
                  (factorial<K>(m) * factorial<K>(n));
  return {scale * sum, K::mag(scale) * mag};
}

template <class K>
Assembled<K> milgram_om(Cx a_, Cx b_, Cx c_, int n) {
  using C = CT<K>;
  const C a = K::from(a_), b = K::from(b_), c = K::from(c_);
  const C one = K::r(1.0), two = K::r(2.0);
  const C nc = K::r(n);
  const C s1 = K::poch(b, n) / K::poch(b - c, n) * K::ratio(c + one, c + one - a) *
               K::gamma(one - a);
  C s2 = K::r(0.0);
  double mag = 0.0;
  for (int l = 0; l < n; ++l) {
    const C lc = K::r(l);
    const C t = K::r(sign_pow(l)) * K::ratio(b + nc, b + nc - a - lc) *
                K::ratio(nc - lc - a, nc - lc) *
                K::ratio(c - b + one - nc, c - b - nc + two + lc);
    s2 += t;
    mag += K::mag(t);
  }
  return {s1 + c * s2, K::mag(s1) + K::mag(c) * mag};
}

template <class K>
Assembled<K> miller_paris_mp(Cx a_, Cx b_, Cx c_, int n) {
  using C = CT<K>;
  const C a = K::from(a_), b = K::from(b_), c = K::from(c_);
  const C one = K::r(1.0);
  C ps = K::r(0.0);
  C t = one;
  double ps_mag = 0.0;
  for (int k = 0; k < n; ++k) {
    ps += t;
    ps_mag += K::mag(t);
    const C kc = K::r(k);
    t *= (one - a + kc) * (b - c + kc) / ((one + b - a + kc) * K::r(k + 1));
  }
  const C pref = c * K::gamma(one - a) * K::poch(b, n) / K::poch(b - c, n);
  const C g1 = K::ratio(c, one + c - a);
  const C g2 = K::ratio(b, one + b - a);
  return {pref * (g1 - g2 * ps), K::mag(pref) * (K::mag(g1) + K::mag(g2) * ps_mag)};
}

template <class K>
Assembled<K> miller_paris_fa(Cx a_, Cx b_, Cx c_, int n) {
  using C = CT<K>;
  const C a = K::from(a_), b = K::from(b_), c = K::from(c_);
  const C one = K::r(1.0);
  double mag = 0.0;
  const C f = terminating<K>(n, b, b - c, one + b - a, one + b - c, mag);
  const C k1 = K::beta(one - a, c) / K::poch(b - c, n + 1);
  const C k2 = K::beta(one - a, b) / ((b - c) * factorial<K>(n));
  const C scale = c * K::poch(b, n + 1);
  return {scale * (k1 - k2 * f), K::mag(scale) * (K::mag(k1) + K::mag(k2) * mag)};
}

template <class K>
Assembled<K> miller_paris_fb(Cx a_, Cx b_, Cx c_, int n) {
  using C = CT<K>;
  const C a = K::from(a_), b = K::from(b_), c = K::from(c_);
  const C one = K::r(1.0), two = K::r(2.0);
  double mag = 0.0;
  const C f = terminating<K>(n, one - a, one - a + c, two - a, one - a + b, mag);
  const C k1 = K::beta(one - a, c);
  const C k2 = K::beta(one - a, b) * K::poch(two - a, n) / factorial<K>(n);
  const C scale = c * K::poch(b, n + 1) / K::poch(b - c, n + 1);
  return {scale * (k1 - k2 * f), K::mag(scale) * (K::mag(k1) + K::mag(k2) * mag)};
}

template <class K>
Assembled<K> special_7_4_4_16(Cx a_, Cx b_, Cx c_) {
  using C = CT<K>;
  const C a = K::from(a_), b = K::from(b_), c = K::from(c_);
  const C one = K::r(1.0);
  const C pref = b * c / (c - b) * K::gamma(one - a);
  const C g1 = K::ratio(b, one - a + b);
  const C g2 = K::ratio(c, one - a + c);
  return {pref * (g1 - g2), K::mag(pref) * (K::mag(g1) + K::mag(g2))};
}

// ---- preconditions ---------------------------------------------------------

std::optional<ValueWithError> check_family(const Params3F2NegDiff& p) {
  if (p.m < 0 || p.n < 0) {
    return ValueWithError::failure(Status::domain_violation,
                                   "m and n must be nonnegative");
  }
  if (!(p.excess().real() > 0.0)) {
    return ValueWithError::failure(Status::domain_violation,
                                   "Re(2 - a + m + n) <= 0: series diverges");
  }
  const Cx d = p.b + 1.0 + static_cast<double>(p.m);
  const Cx e = p.c + 1.0 + static_cast<double>(p.n);
  if (is_nonpositive_integer(d) || is_nonpositive_integer(e)) {
    return ValueWithError::failure(Status::domain_violation,
                                   "denominator parameter is a nonpositive integer");
  }
  return std::nullopt;
}

double positive_integer_distance(Cx a) {
  const double k = std::max(1.0, std::round(a.real()));
  return std::abs(a - Cx{k, 0.0});
}

// Flags (without discarding the value) the singular regions of the two-term
// family: Beta poles in 1 - a, b, c and the colliding b - c lattice.
void flag_family(const Params3F2NegDiff& p, ValueWithError& v, bool beta_in_a = true) {
  if (!v.ok()) return;
  if (beta_in_a && positive_integer_distance(p.a) < kIntegerATolerance) {
    v.status = Status::near_singular;
    v.reason = "a is within 1e-8 of a positive integer (Beta pole in 1 - a)";
  } else if (distance_to_integers(p.b - p.c, -p.m, p.n) < kLatticeTolerance) {
    v.status = Status::near_singular;
    v.reason = "b - c is within 1e-6 of an integer in [-m, n]";
  } else if (pole_distance(p.b) < kPoleTolerance || pole_distance(p.c) < kPoleTolerance) {
    v.status = Status::near_singular;
    v.reason = "b or c is at a Gamma pole";
  }
}

template <class F>
ValueWithError dispatch(Precision prec, F&& f) {
  if (prec == Precision::binary64) return f(DoubleKernel{});
  return f(QuadKernel{});
}

Params3F2NegDiff vb_params(Cx a, Cx b, Cx c, int m, int n) { return {a, b, c, m, n}; }

// Centered Richardson in h^2 around a0 using h = 1e-4 and 1e-5.
template <class Eval>
ValueWithError centered_limit(Eval&& eval, Cx a0, std::string_view what) {
  constexpr double kH1 = 1e-4, kH2 = 1e-5;
  auto centered = [&](double h, double& mag) {
    const auto up = eval(a0 + h);
    const auto down = eval(a0 - h);
    mag = std::max(mag, up.magnitude + down.magnitude);
    return (up.value + down.value) * quad::make(0.5);
  };
  double mag = 0.0;
  const quad::cx c1 = centered(kH1, mag);
  const quad::cx c2 = centered(kH2, mag);
  const quad::real ratio = (kH1 / kH2) * (kH1 / kH2);
  const quad::cx r = (ratio * c2 - c1) / (ratio - 1);
  const Cx value = quad::to_cx(r);
  if (!quad::finite(r) || !is_finite(value)) {
    return ValueWithError::failure(Status::near_singular,
                                   std::string(what) + ": limit is not finite");
  }
  const double residual = quad::absd(r - c2);
  ValueWithError out = ValueWithError::approx(
      value, 0.01 * residual + 64.0 * quad::kEps * mag + 2.0 * kUnitRoundoff * std::abs(value));
  if (residual > 1e-6 * std::abs(value)) {
    out.status = Status::near_singular;
    out.reason = std::string(what) + ": extrapolation disagrees by more than 1e-6";
  }
  return out;
}

}  // namespace

// ---- public evaluators -----------------------------------------------------

ValueWithError eval_zy(const Params3F2NegDiff& p, Precision prec) {
  if (auto bad = check_family(p)) return *bad;
  ValueWithError v = dispatch(prec, [&](auto k) {
    using K = decltype(k);
    return finish<K>(zy<K>(p), "zy");
  });
  flag_family(p, v);
  return v;
}

ZyTerms zy_terms(const Params3F2NegDiff& p, Precision prec) {
  ZyTerms out;
  out.value = eval_zy(p, prec);
  if (check_family(p)) return out;
  auto fill = [&](auto k) {
    using K = decltype(k);
    const ZyParts<K> parts = zy_parts<K>(p);
    out.first = K::to(parts.first);
    out.second = K::to(parts.second);
  };
  if (prec == Precision::binary64) {
    fill(DoubleKernel{});
  } else {
    fill(QuadKernel{});
  }
  return out;
}

ValueWithError eval_zx(const Params3F2NegDiff& p, Precision prec) {
  if (p.m != p.n) {
    return ValueWithError::failure(Status::domain_violation, "zx requires m = n");
  }
  if (auto bad = check_family(p)) return *bad;
  ValueWithError v = dispatch(prec, [&](auto k) {
    using K = decltype(k);
    return finish<K>(zx<K>(p), "zx");
  });
  flag_family(p, v);
  return v;
}

ValueWithError eval_theorem1(const Params3F2NegDiff& p, Precision prec) {
  if (p.m != p.n) {
    return ValueWithError::failure(Status::domain_violation, "tt requires m = n");
  }
  if (auto bad = check_family(p)) return *bad;
  ValueWithError v = dispatch(prec, [&](auto k) {
    using K = decltype(k);
    return finish<K>(theorem1<K>(p), "tt");
  });
  flag_family(p, v);
  return v;
}

ValueWithError eval_corollary1(Cx a, Cx b, Cx c, int n, Precision prec) {
  if (n < 0) {
    return ValueWithError::failure(Status::domain_violation, "n must be nonnegative");
  }
  const Params3F2NegDiff shifted{a + 2.0 * n, b, c, n, n};
  if (auto bad = check_family(shifted)) return *bad;
  const double ka = std::round(a.real());
  ValueWithError v;
  if (std::abs(a - Cx{ka, 0.0}) < kIntegerATolerance) {
    // Integer a: the Gamma poles of both terms cancel; take the limit.
    v = centered_limit(
        [&](Cx x) {
          const auto r = corollary1<QuadKernel>(x, b, c, n);
          return r;
        },
        a, "tc");
    // The centered stencil needs the shifted series to stay convergent.
    if (v.ok() && !((2.0 - a).real() > 1e-4)) {
      v = ValueWithError::failure(Status::domain_violation, "tc: Re(2 - a) <= 0");
    }
  } else {
    v = dispatch(prec, [&](auto k) {
      using K = decltype(k);
      return finish<K>(corollary1<K>(a, b, c, n), "tc");
    });
  }
  flag_family(shifted, v, false);
  return v;
}

Theorem2Result eval_theorem2(const Params3F2NegDiff& p, Precision prec) {
  Theorem2Result out;
  if (auto bad = check_family(p)) {
    out.value = *bad;
    return out;
  }
  auto run = [&](auto k) {
    using K = decltype(k);
    const Theorem2Parts<K> parts = theorem2<K>(p);
    out.terms = {K::to(parts.t1), K::to(parts.t2)};
    out.value = finish<K>(
        Assembled<K>{parts.scale * (parts.t1 + parts.t2), parts.magnitude}, "mn");
  };
  if (prec == Precision::binary64) {
    run(DoubleKernel{});
  } else {
    run(QuadKernel{});
  }
  flag_family(p, out.value);
  return out;
}

namespace {

// b - c equal to an integer in [-m, n] zeroes one of the denominators.
bool kb_collides(const Params3F2NegDiff& p) {
  const Cx d = p.b - p.c;
  return d.imag() == 0.0 && d.real() == std::round(d.real()) && d.real() >= -p.m &&
         d.real() <= p.n;
}

}  // namespace

ValueWithError eval_karlsson_kb(const Params3F2NegDiff& p, Precision prec) {
  if (auto bad = check_family(p)) return *bad;
  if (kb_collides(p)) {
    return ValueWithError::failure(Status::domain_violation,
                                   "kb: b - c + i - j vanishes for some i <= m, j <= n");
  }
  ValueWithError v = dispatch(prec, [&](auto k) {
    using K = decltype(k);
    return finish<K>(karlsson_kb<K>(p), "kb");
  });
  flag_family(p, v);
  return v;
}

ValueWithError eval_inner_sum_su(int m, Cx bc_diff, int j) {
  if (m < 0 || j < 0) {
    return ValueWithError::failure(Status::domain_violation,
                                   "inner sum: negative index");
  }
  CompensatedSum acc;
  Cx w = 1.0;
  for (int k = 0; k <= m; ++k) {
    const Cx d = bc_diff - static_cast<double>(j) + static_cast<double>(k);
    if (d == Cx{0.0, 0.0}) {
      return ValueWithError::failure(Status::domain_violation,
                                     "inner sum: zero denominator");
    }
    acc.add(w / d);
    w *= static_cast<double>(k - m) / static_cast<double>(k + 1);
  }
  return ValueWithError::approx(acc.value(),
                                4.0 * kUnitRoundoff * (m + 2) * acc.magnitude());
}

ValueWithError inner_sum_su_closed(int m, Cx bc_diff, int j) {
  if (m < 0 || j < 0) {
    return ValueWithError::failure(Status::domain_violation,
                                   "inner sum: negative index");
  }
  const Cx x = bc_diff;
  ValueWithError den = pochhammer({x, m + 1}) * pochhammer({1.0 - x, j});
  if (!den.ok()) return den;
  if (den.value == Cx{0.0, 0.0}) {
    return ValueWithError::failure(Status::domain_violation,
                                   "inner sum: pole of the closed form");
  }
  return gamma(m + 1.0) * pochhammer({-x - static_cast<double>(m), j}) / den;
}

ValueWithError eval_milgram_om(Cx a, Cx b, Cx c, int n, Precision prec) {
  if (n < 1) {
    return ValueWithError::failure(Status::domain_violation, "om requires n >= 1");
  }
  const Params3F2NegDiff p = vb_params(a, b, c, n - 1, 0);
  if (auto bad = check_family(p)) return *bad;
  ValueWithError v = dispatch(prec, [&](auto k) {
    using K = decltype(k);
    return finish<K>(milgram_om<K>(a, b, c, n), "om");
  });
  flag_family(p, v);
  return v;
}

ValueWithError eval_miller_paris(MillerParisVariant variant, Cx a, Cx b, Cx c,
                                 int n, Precision prec) {
  const bool mp = variant == MillerParisVariant::MP;
  if (mp ? n < 1 : n < 0) {
    return ValueWithError::failure(Status::domain_violation,
                                   mp ? "mp requires n >= 1" : "fa/fb require n >= 0");
  }
  const Params3F2NegDiff p = vb_params(a, b, c, mp ? n - 1 : n, 0);
  if (auto bad = check_family(p)) return *bad;
  ValueWithError v = dispatch(prec, [&](auto k) {
    using K = decltype(k);
    switch (variant) {
      case MillerParisVariant::MP:
        return finish<K>(miller_paris_mp<K>(a, b, c, n), "mp");
      case MillerParisVariant::FA:
        return finish<K>(miller_paris_fa<K>(a, b, c, n), "fa");
      case MillerParisVariant::FB:
        break;
    }
    return finish<K>(miller_paris_fb<K>(a, b, c, n), "fb");
  });
  flag_family(p, v);
  return v;
}

ValueWithError eval_special_7_4_4_16(Cx a, Cx b, Cx c, Precision prec) {
  if (b == c) {
    return ValueWithError::failure(Status::domain_violation, "p7 requires b != c");
  }
  const Params3F2NegDiff p = vb_params(a, b, c, 0, 0);
  if (auto bad = check_family(p)) return *bad;
  ValueWithError v = dispatch(prec, [&](auto k) {
    using K = decltype(k);
    return finish<K>(special_7_4_4_16<K>(a, b, c), "p7");
  });
  flag_family(p, v);
  return v;
}

ValueWithError eval_a1_limit(const Params3F2NegDiff& p) {
  if (auto bad = check_family(p)) return *bad;
  if (positive_integer_distance(p.a) >= kIntegerATolerance) {
    return ValueWithError::failure(
        Status::domain_violation,
        "a1 limit requires a within 1e-8 of a positive integer");
  }
  ValueWithError v = centered_limit(
      [&](Cx x) {
        Params3F2NegDiff q = p;
        q.a = x;
        return zy<QuadKernel>(q);
      },
      p.a, "a1");
  flag_family(p, v, false);
  return v;
}

AutoResult evaluate_auto(const Params3F2NegDiff& p, const Tolerance& tol) {
  if (auto bad = check_family(p)) return {*bad, IdentityId::ZY, false};
  if (positive_integer_distance(p.a) < kIntegerATolerance) {
    return {eval_a1_limit(p), IdentityId::A1_LIMIT, false};
  }
  if (distance_to_integers(p.b - p.c, -p.m, p.n) < kLatticeTolerance ||
      pole_distance(p.b) < kIntegerATolerance || pole_distance(p.c) < kIntegerATolerance) {
    return {sum_3f2_unit_oracle(p, tol), IdentityId::ZY, true};
  }
  return {eval_zy(p), IdentityId::ZY, false};
}

// ---- registry --------------------------------------------------------------

namespace {

bool any(const Params3F2NegDiff&) { return true; }
bool equal_mn(const Params3F2NegDiff& p) { return p.m == p.n; }
bool n_zero(const Params3F2NegDiff& p) { return p.n == 0; }

std::array<IdentityInfo, 12> build_registry() {
  using P = const Params3F2NegDiff&;
  return {{
      {IdentityId::ZY, "zy", "two-term result, general m and n", any,
       [](P p, Precision pr) { return eval_zy(p, pr); }},
      {IdentityId::ZX, "zx", "symmetric two-term result, m = n", equal_mn,
       [](P p, Precision pr) { return eval_zx(p, pr); }, true},
      {IdentityId::TT, "tt", "m = n result with (1+n) pairs", equal_mn,
       [](P p, Precision pr) { return eval_theorem1(p, pr); }, true},
      {IdentityId::TC, "tc", "shifted m = n result, evaluated at a - 2n", equal_mn,
       [](P p, Precision pr) {
         return eval_corollary1(p.a - 2.0 * p.n, p.b, p.c, p.n, pr);
       },
       true},
      {IdentityId::MN, "mn", "two-term result with T1 and T2", any,
       [](P p, Precision pr) { return eval_theorem2(p, pr).value; }},
      {IdentityId::KB, "kb", "Karlsson double sum of Beta functions",
       [](P p) { return !kb_collides(p); },
       [](P p, Precision pr) { return eval_karlsson_kb(p, pr); }},
      {IdentityId::OM, "om", "Milgram sum of Gamma ratios, n = 0 (order m+1)", n_zero,
       [](P p, Precision pr) { return eval_milgram_om(p.a, p.b, p.c, p.m + 1, pr); },
       false, true},
      {IdentityId::MP, "mp", "Miller-Paris partial-sum form, n = 0 (order m+1)", n_zero,
       [](P p, Precision pr) {
         return eval_miller_paris(MillerParisVariant::MP, p.a, p.b, p.c, p.m + 1, pr);
       },
       false, true},
      {IdentityId::FA, "fa", "terminating form with (b, b-c) pair, n = 0", n_zero,
       [](P p, Precision pr) {
         return eval_miller_paris(MillerParisVariant::FA, p.a, p.b, p.c, p.m, pr);
       },
       false, true},
      {IdentityId::FB, "fb", "terminating form with (1-a, 1-a+c) pair, n = 0", n_zero,
       [](P p, Precision pr) {
         return eval_miller_paris(MillerParisVariant::FB, p.a, p.b, p.c, p.m, pr);
       },
       false, true},
      {IdentityId::P7_4_4_16, "p7", "Gamma-ratio form for m = n = 0",
       [](P p) { return p.m == 0 && p.n == 0; },
       [](P p, Precision pr) { return eval_special_7_4_4_16(p.a, p.b, p.c, pr); }, true,
       true},
      {IdentityId::A1_LIMIT, "a1", "limit at a positive integer a",
       [](P p) { return positive_integer_distance(p.a) < kIntegerATolerance; },
       [](P p, Precision) { return eval_a1_limit(p); }},
  }};
}

}  // namespace

std::span<const IdentityInfo> identity_registry() {
  static const std::array<IdentityInfo, 12> registry = build_registry();
  return registry;
}

const IdentityInfo& identity_info(IdentityId id) {
  for (const IdentityInfo& info : identity_registry()) {
    if (info.id == id) return info;
  }
  return identity_registry().front();
}

std::optional<IdentityId> identity_from_key(std::string_view key) {
  for (const IdentityInfo& info : identity_registry()) {
    if (info.key == key) return info.id;
  }
  return std::nullopt;
}

std::string_view to_string(IdentityId id) { return identity_info(id).key; }

}  // namespace hyp32
