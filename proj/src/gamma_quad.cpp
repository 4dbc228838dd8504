// Binary128 Gamma kernel: Stirling series after shifting Re(z) past 30,
// reflection for Re(z) < 1/2.

#include <array>

#include "hyp32/gamma_kit.hpp"

namespace hyp32::quad {

namespace {

constexpr real kShift = 30;

// B_{2k} = num / den for k = 1..15.
struct Bernoulli {
  long long num;
  long long den;
};
constexpr std::array<Bernoulli, 15> kBernoulli = {{{1, 6},
                                                   {-1, 30},
                                                   {1, 42},
                                                   {-1, 30},
                                                   {5, 66},
                                                   {-691, 2730},
                                                   {7, 6},
                                                   {-3617, 510},
                                                   {43867, 798},
                                                   {-174611, 330},
                                                   {854513, 138},
                                                   {-236364091, 2730},
                                                   {8553103, 6},
                                                   {-23749461029LL, 870},
                                                   {8615841276005LL, 14322}}};

const std::array<real, 15>& stirling_coefficients() {
  static const std::array<real, 15> c = [] {
    std::array<real, 15> out{};
    for (int k = 1; k <= 15; ++k) {
      const Bernoulli& b = kBernoulli[k - 1];
      out[k - 1] = static_cast<real>(b.num) /
                   (static_cast<real>(b.den) * (2 * k) * (2 * k - 1));
    }
    return out;
  }();
  return c;
}

cx lgamma_right(cx z) {
  cx w = z;
  cx prod = make(1);
  while (re(w) < kShift) {
    prod *= w;
    w += make(1);
  }
  const cx w2inv = make(1) / (w * w);
  cx pw = make(1) / w;
  cx series = make(0);
  for (real c : stirling_coefficients()) {
    series += c * pw;
    pw *= w2inv;
  }
  const real half_log_2pi = 0.5Q * logq(2 * M_PIq);
  return (w - make(0.5Q)) * clogq(w) - w + make(half_log_2pi) + series -
         clogq(prod);
}

}  // namespace

cx sin_pi(cx z) {
  real x = re(z) - 2 * roundq(re(z) / 2);
  const real n = roundq(x);
  const real f = x - n;
  const real sign = (fmodq(fabsq(n), 2) == 0) ? 1 : -1;
  const real y = M_PIq * im(z);
  return make(sign * sinq(M_PIq * f) * coshq(y),
              sign * cosq(M_PIq * f) * sinhq(y));
}

cx lgamma(cx z) {
  if (is_nonpositive_integer(z)) return make(HUGE_VALQ);
  if (re(z) >= 0.5Q) return lgamma_right(z);
  return make(logq(M_PIq)) - clogq(sin_pi(z)) - lgamma_right(make(1) - z);
}

cx gamma(cx z) {
  if (is_nonpositive_integer(z)) return make(HUGE_VALQ);
  return cexpq(lgamma(z));
}

cx rgamma(cx z) {
  if (is_nonpositive_integer(z)) return make(0);
  return cexpq(-lgamma(z));
}

cx pochhammer(cx x, int n) {
  cx prod = make(1);
  if (n >= 0) {
    for (int k = 0; k < n; ++k) prod *= x + make(k);
    return prod;
  }
  for (int k = n; k < 0; ++k) prod *= x + make(k);
  return make(1) / prod;
}

cx gamma_ratio(cx x, cx y) {
  const cx d = y - x;
  if (im(d) == 0 && re(d) == roundq(re(d)) &&
      fabsq(re(d)) <= kMaxDirectPochhammer) {
    const int k = static_cast<int>(re(d));
    if (k >= 0) return make(1) / pochhammer(x, k);
    return pochhammer(y, -k);
  }
  if (is_nonpositive_integer(x)) return make(HUGE_VALQ);
  if (is_nonpositive_integer(y)) return make(0);
  return cexpq(lgamma(x) - lgamma(y));
}

cx beta(cx a, cx b) { return gamma(a) * gamma_ratio(b, a + b); }

}  // namespace hyp32::quad
