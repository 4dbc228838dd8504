#include "hyp32/transforms.hpp"

#include <cmath>
#include <string>

#include "hyp32/gamma_kit.hpp"

namespace hyp32 {

namespace {

// Multiplies `acc` by a Gamma-ratio factor, recording the worst status.
void fold(Cx& acc, Status& status, std::string& reason, const ValueWithError& f) {
  if (!f.ok()) {
    if (worst(status, f.status) != status) {
      status = f.status;
      reason = f.reason;
    }
    return;
  }
  acc *= f.value;
}

bool near(Cx x, Cx y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y)); }

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Cx poch_value(Cx x, int n) { return pochhammer({x, n}).value; }

template <class R>
R failed(Status s, std::string why) {
  R r;
  r.status = s;
  r.reason = std::move(why);
  return r;
}

}  // namespace

Rewrite thomae_two_term(const Hyp32Spec& s) {
  if (s.z != Cx{1.0, 0.0}) {
    return failed<Rewrite>(Status::domain_violation, "thomae: z must be 1");
  }
  const auto& [a, b, c] = s.num;
  const Cx d = s.den[0], e = s.den[1];
  const Cx p = s.thomae_p();
  Rewrite r;
  fold(r.prefactor, r.status, r.reason, gamma_ratio(d, d - c));
  fold(r.prefactor, r.status, r.reason, gamma_ratio(p - c, p));
  r.results.push_back({1.0, Hyp32Spec{{e - a, e - b, c}, {p, e}, 1.0}});
  return r;
}

Rewrite thomae_three_term(const Hyp32Spec& s) {
  if (s.z != Cx{1.0, 0.0}) {
    return failed<Rewrite>(Status::domain_violation, "thomae: z must be 1");
  }
  const auto& [a, b, c] = s.num;
  const Cx e = s.den[0], f = s.den[1];
  Rewrite r;
  Cx c1 = 1.0;
  fold(c1, r.status, r.reason, gamma_ratio(e, e - a));
  fold(c1, r.status, r.reason, gamma_ratio(e - a - b, e - b));
  Cx c2 = 1.0;
  fold(c2, r.status, r.reason, gamma_ratio(e, a));
  fold(c2, r.status, r.reason, gamma_ratio(f, f - c));
  fold(c2, r.status, r.reason, gamma_ratio(a + b - e, b));
  fold(c2, r.status, r.reason, gamma_ratio(e + f - a - b - c, e + f - a - b));
  r.results.push_back({c1, Hyp32Spec{{a, b, f - c}, {a + b - e + 1.0, f}, 1.0}});
  r.results.push_back(
      {c2, Hyp32Spec{{e - a, e - b, e + f - a - b - c}, {e - a - b + 1.0, e + f - a - b}, 1.0}});
  return r;
}

GaussCombination pf_reduce(const Hyp32Spec& s, int n, int num_idx, int den_idx) {
  if (n < 0 || num_idx < 0 || num_idx > 2 || den_idx < 0 || den_idx > 1) {
    return failed<GaussCombination>(Status::domain_violation, "pf: bad indices");
  }
  const Cx alpha = s.num[num_idx];
  if (!near(s.den[den_idx], alpha - static_cast<double>(n))) {
    return failed<GaussCombination>(Status::domain_violation,
                                    "pf: no (alpha, alpha - n) pair at the given indices");
  }
  Cx rest[2];
  for (int i = 0, j = 0; i < 3; ++i) {
    if (i != num_idx) rest[j++] = s.num[i];
  }
  const Cx b = rest[0], c = rest[1];
  const Cx d = s.den[1 - den_idx];
  const Cx norm = poch_value(1.0 - alpha, n);
  if (norm == Cx{0.0, 0.0} || !is_finite(norm)) {
    return failed<GaussCombination>(Status::domain_violation, "pf: (1 - alpha)_n vanishes");
  }
  GaussCombination out;
  Cx zp = 1.0;
  for (int p = 0; p <= n; ++p) {
    const Cx coef = zp * binomial(n, p) * poch_value(1.0 - alpha, n - p) *
                    poch_value(b, p) * poch_value(c, p) / (poch_value(d, p) * norm);
    const double pd = p;
    out.terms.push_back({coef, GaussSpec{b + pd, c + pd, d + pd, s.z}});
    zp *= -s.z;
  }
  return out;
}

Rewrite rd_reverse(const Hyp32Spec& s, int n) {
  if (n < 0 || s.num[0] != Cx{-static_cast<double>(n), 0.0}) {
    return failed<Rewrite>(Status::domain_violation, "rd: first numerator must be -n");
  }
  const Cx a = s.num[1], b = s.num[2];
  const Cx c = s.den[0] + static_cast<double>(n), d = s.den[1];
  const Cx den = poch_value(1.0 - c, n);
  if (den == Cx{0.0, 0.0}) {
    return failed<Rewrite>(Status::domain_violation, "rd: (1 - c)_n vanishes");
  }
  Rewrite r;
  r.prefactor = poch_value(1.0 + a - c, n) / den;
  r.results.push_back({1.0, Hyp32Spec{{s.num[0], a, d - b}, {1.0 + a - c, d}, s.z}});
  return r;
}

Rewrite re_transform(const Hyp32Spec& s, int n) {
  if (n < 0 || s.num[0] != Cx{-static_cast<double>(n), 0.0}) {
    return failed<Rewrite>(Status::domain_violation, "re: first numerator must be -n");
  }
  const double nd = n;
  const Cx a = s.num[1], b = s.num[2] + nd;
  const Cx c = s.den[0] + nd, d = s.den[1] + nd;
  const Cx den = poch_value(1.0 - c, n) * poch_value(1.0 - d, n);
  if (den == Cx{0.0, 0.0}) {
    return failed<Rewrite>(Status::domain_violation, "re: (1 - c)_n (1 - d)_n vanishes");
  }
  Rewrite r;
  r.prefactor = poch_value(1.0 + a - c, n) * poch_value(1.0 - b, n) / den;
  r.results.push_back(
      {1.0, Hyp32Spec{{s.num[0], d - b, 1.0 - c}, {1.0 + a - c, 1.0 - b}, s.z}});
  return r;
}

LinearTransform pfaff_linear(const GaussSpec& g) {
  if (g.z == Cx{1.0, 0.0}) {
    return failed<LinearTransform>(Status::domain_violation, "pfaff: z = 1");
  }
  const Cx w = 1.0 - g.z;
  if (w.imag() == 0.0 && w.real() < 0.0) {
    return failed<LinearTransform>(Status::domain_violation,
                                   "pfaff: z on the branch cut (1, inf)");
  }
  LinearTransform t;
  t.prefactor = std::exp(-g.a * std::log(w));
  t.spec = GaussSpec{g.a, g.c - g.b, g.c, g.z / (g.z - 1.0)};
  return t;
}

GaussCombinationExt karlsson_z_reduce_ext(const Params3F2NegDiff& p, Cx z) {
  if (p.m < 0 || p.n < 0) {
    return failed<GaussCombinationExt>(Status::domain_violation, "ka: negative m or n");
  }
  const Cx w = 1.0 - z;
  if (w.imag() == 0.0 && w.real() < 0.0) {
    return failed<GaussCombinationExt>(Status::domain_violation,
                                       "ka: z on the branch cut (1, inf)");
  }
  for (const Cx& d : {p.b + 1.0 + static_cast<double>(p.m), p.c + 1.0 + static_cast<double>(p.n)}) {
    if (is_nonpositive_integer(d)) {
      return failed<GaussCombinationExt>(Status::domain_violation,
                                         "ka: denominator parameter is a nonpositive integer");
    }
  }
  using quad::cx;
  using quad::make;
  const cx a = quad::from(p.a), b = quad::from(p.b), c = quad::from(p.c);
  const cx zq = quad::from(z);
  // (x)_{K+1} / (x + skip), computed as the product without that factor so
  // that no division by a small x + skip is introduced.
  auto poch_skip = [](cx x, int K, int skip) {
    cx prod = make(1);
    for (int k = 0; k <= K; ++k) {
      if (k != skip) prod *= x + make(k);
    }
    return prod;
  };
  const cx mf = quad::pochhammer(make(1), p.m), nf = quad::pochhammer(make(1), p.n);
  const cx bm = quad::pochhammer(b, p.m + 1), cn = quad::pochhammer(c, p.n + 1);
  GaussCombinationExt out;
  for (int i = 0; i <= p.m; ++i) {
    const double wi = (i % 2 == 0 ? 1.0 : -1.0) * binomial(p.m, i);
    for (int j = 0; j <= p.n; ++j) {
      const double wj = (j % 2 == 0 ? 1.0 : -1.0) * binomial(p.n, j);
      const cx diff = b - c + make(i - j);
      if (diff == make(0)) {
        return failed<GaussCombinationExt>(Status::domain_violation,
                                           "ka: b - c + i - j vanishes");
      }
      const cx wij = make(wi * wj) / (mf * nf);
      const cx cj = c + make(j);
      const cx bi = b + make(i);
      out.terms.push_back({wij * bm / diff * poch_skip(c, p.n, j), a, cj, cj + make(1), zq});
      out.terms.push_back({wij * cn / -diff * poch_skip(b, p.m, i), a, bi, bi + make(1), zq});
    }
  }
  return out;
}

GaussCombination karlsson_z_reduce(const Params3F2NegDiff& p, Cx z) {
  const GaussCombinationExt ext = karlsson_z_reduce_ext(p, z);
  GaussCombination out;
  out.status = ext.status;
  out.reason = ext.reason;
  for (const GaussTermExt& t : ext.terms) {
    out.terms.push_back({quad::to_cx(t.coefficient),
                         GaussSpec{quad::to_cx(t.a), quad::to_cx(t.b), quad::to_cx(t.c),
                                   quad::to_cx(t.z)}});
  }
  return out;
}

Hyp32Spec KarMintonSpec::as_3f2() const {
  Hyp32Spec s;
  s.z = z;
  if (b2) {
    s.num = {b1 + static_cast<double>(m1), *b2 + static_cast<double>(m2),
             remaining_num.empty() ? Cx{} : remaining_num[0]};
    s.den = {b1, *b2};
  } else {
    s.num = {b1 + static_cast<double>(m1),
             remaining_num.size() > 0 ? remaining_num[0] : Cx{},
             remaining_num.size() > 1 ? remaining_num[1] : Cx{}};
    s.den = {b1, remaining_den.empty() ? Cx{} : remaining_den[0]};
  }
  return s;
}

PfqCombination karlsson_minton_reduce(const KarMintonSpec& s) {
  const int r = s.b2 ? 2 : 1;
  if (s.remaining_num.size() != static_cast<std::size_t>(3 - r) ||
      s.remaining_den.size() != static_cast<std::size_t>(2 - r)) {
    return failed<PfqCombination>(Status::domain_violation,
                                  "kar: parameter counts do not describe a 3F2");
  }
  if (s.m1 < 0 || s.m2 < 0 || s.m1 > kMaxKarlssonMinton || s.m2 > kMaxKarlssonMinton) {
    return failed<PfqCombination>(Status::domain_violation,
                                  "kar: differences must lie in [0, 16]");
  }
  PfqCombination out;
  auto shifted = [&](int J) {
    PfqSpec spec;
    spec.z = s.z;
    for (const Cx& x : s.remaining_num) spec.num.push_back(x + static_cast<double>(J));
    for (const Cx& x : s.remaining_den) spec.den.push_back(x + static_cast<double>(J));
    return spec;
  };
  auto lambda_tail = [&](int J) {
    Cx v = 1.0;
    for (const Cx& x : s.remaining_num) v *= poch_value(x, J);
    for (const Cx& x : s.remaining_den) v /= poch_value(x, J);
    return v;
  };
  const int m2 = r == 2 ? s.m2 : 0;
  for (int j1 = 0; j1 <= s.m1; ++j1) {
    for (int j2 = 0; j2 <= m2; ++j2) {
      const int J1 = j1, J2 = j1 + j2;
      Cx lambda = binomial(s.m1, j1) * binomial(m2, j2);
      Cx den = poch_value(s.b1, J1);
      if (r == 2) {
        lambda *= poch_value(*s.b2 + static_cast<double>(s.m2), J1);
        den *= poch_value(*s.b2, J2);
      }
      if (den == Cx{0.0, 0.0}) {
        return failed<PfqCombination>(Status::domain_violation,
                                      "kar: denominator Pochhammer vanishes");
      }
      const int J = r == 2 ? J2 : J1;
      lambda = lambda / den * lambda_tail(J) * std::pow(s.z, J);
      out.terms.push_back({lambda, shifted(J)});
    }
  }
  return out;
}

namespace {

ValueWithError combine(ValueWithError acc, const ValueWithError& term, Cx coef) {
  if (!term.ok()) {
    ValueWithError f = term;
    f.value = Cx{std::nan(""), std::nan("")};
    return f;
  }
  return acc + term * coef;
}

}  // namespace

ValueWithError assemble(const Rewrite& r, const Tolerance& tol) {
  if (r.status != Status::ok) return ValueWithError::failure(r.status, r.reason);
  ValueWithError acc = ValueWithError::exact(0.0);
  for (const RewriteTerm& t : r.results) {
    if (t.coefficient == Cx{0.0, 0.0}) continue;
    acc = combine(acc, evaluate_3f2(t.spec, tol), t.coefficient);
    if (!acc.ok()) return acc;
  }
  return acc * r.prefactor;
}

ValueWithError assemble(const GaussCombination& g, const Tolerance& tol) {
  if (g.status != Status::ok) return ValueWithError::failure(g.status, g.reason);
  ValueWithError acc = ValueWithError::exact(0.0);
  for (const GaussTerm& t : g.terms) {
    if (t.coefficient == Cx{0.0, 0.0}) continue;
    acc = combine(acc, evaluate_2f1(t.spec, tol), t.coefficient);
    if (!acc.ok()) return acc;
  }
  return acc;
}

ValueWithError assemble(const PfqCombination& g, const Tolerance& tol) {
  if (g.status != Status::ok) return ValueWithError::failure(g.status, g.reason);
  ValueWithError acc = ValueWithError::exact(0.0);
  for (const PfqTerm& t : g.terms) {
    if (t.coefficient == Cx{0.0, 0.0}) continue;
    acc = combine(acc, sum_pfq_series(t.spec.num, t.spec.den, t.spec.z, tol),
                  t.coefficient);
    if (!acc.ok()) return acc;
  }
  return acc;
}

ValueWithError assemble(const GaussCombinationExt& g) {
  if (g.status != Status::ok) return ValueWithError::failure(g.status, g.reason);
  quad::cx sum = quad::make(0);
  quad::real mag = 0;
  for (const GaussTermExt& t : g.terms) {
    quad::real term_mag = 0;
    const quad::cx f = quad::sum_2f1(t.a, t.b, t.c, t.z, &term_mag);
    if (!quad::finite(f)) {
      return ValueWithError::failure(Status::domain_violation,
                                     "2F1 term outside its convergence region");
    }
    sum += t.coefficient * f;
    mag += quad::abs(t.coefficient) * term_mag;
  }
  const Cx v = quad::to_cx(sum);
  return ValueWithError::approx(v, 2.0 * kUnitRoundoff * std::abs(v) +
                                       64.0 * quad::kEps * static_cast<double>(mag));
}

}  // namespace hyp32
