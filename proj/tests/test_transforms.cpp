#include <cmath>

#include "doctest.h"
#include "hyp32/series.hpp"
#include "hyp32/transforms.hpp"
#include "support.hpp"

using hyp32::Cx;
using hyp32::GaussSpec;
using hyp32::Hyp32Spec;
using hyp32::Params3F2NegDiff;
using hyp32::Status;
using hyp32::test::close;

namespace {

bool near(Cx x, Cx y) { return std::abs(x - y) <= 1e-14 * std::max(1.0, std::abs(y)); }

}  // namespace

TEST_SUITE("transforms") {
  TEST_CASE("two-term Thomae") {
    const Hyp32Spec zero_c{{0.4, 1.3, 0.0}, {2.2, 3.1}};
    const hyp32::Rewrite r0 = hyp32::thomae_two_term(zero_c);
    REQUIRE(r0.status == Status::ok);
    CHECK(close(r0.prefactor, 1.0, 1e-14));
    CHECK(close(hyp32::assemble(r0).value, 1.0, 1e-14));

    const Hyp32Spec s{{-2.0, 1.0, 0.5}, {3.0, 2.5}};
    const hyp32::Rewrite r = hyp32::thomae_two_term(s);
    REQUIRE(r.results.size() == 1);
    // The last numerator and the last denominator pass through untouched.
    CHECK(r.results[0].spec.num[2] == s.num[2]);
    CHECK(r.results[0].spec.den[1] == s.den[1]);
    CHECK(close(hyp32::assemble(r, {1e-14}).value, hyp32::sum_terminating_3f2(s).value, 1e-12));

    // From the (m, 0) member of the family onto another 3F2 of the same value.
    const Params3F2NegDiff p{0.25, 0.9, 2.7, 2, 0};
    CHECK(close(hyp32::assemble(hyp32::thomae_two_term(p.spec()), {1e-14}).value,
                1.0545481400673859118, 1e-11));
    CHECK(hyp32::thomae_two_term(Hyp32Spec{{0.4, 1.3, 0.2}, {2.2, 3.1}, 0.5}).status ==
          Status::domain_violation);
  }

  TEST_CASE("three-term Thomae") {
    // c = 0: the left side is 1.
    const hyp32::Rewrite r0 = hyp32::thomae_three_term(Hyp32Spec{{0.3, 0.6, 0.0}, {0.5, 3.1}});
    REQUIRE(r0.status == Status::ok);
    CHECK(close(hyp32::assemble(r0, {1e-13}).value, 1.0, 1e-9));

    const Hyp32Spec t{{-2.0, 0.6, 0.4}, {0.7, 3.1}};
    CHECK(close(hyp32::assemble(hyp32::thomae_three_term(t), {1e-14}).value,
                hyp32::sum_terminating_3f2(t).value, 1e-10));
  }

  TEST_CASE("three-term Thomae on the m = n member gives (x, x - n) pairs") {
    const Cx a{0.35, 0.2}, b{0.8, -0.3}, c{3.9, 0.1};
    const int n = 2;
    const double nd = n;
    const Params3F2NegDiff p{a, b, c, n, n};
    const hyp32::Rewrite r = hyp32::thomae_three_term(p.spec());
    REQUIRE(r.results.size() == 2);
    const Hyp32Spec& s1 = r.results[0].spec;
    const Hyp32Spec& s2 = r.results[1].spec;
    CHECK(near(s1.num[0], a));
    CHECK(near(s1.den[0], a - nd));
    CHECK(near(s1.num[2], 1.0 + nd));
    CHECK(near(s2.num[2], 2.0 - a + 2.0 * nd));
    CHECK(near(s2.den[0], 2.0 - a + nd));
    CHECK(near(s1.num[0] - s1.den[0], nd));
    CHECK(near(s2.num[2] - s2.den[0], nd));
  }

  TEST_CASE("pf reduction") {
    const Hyp32Spec s0{{0.7, 1.2, 0.4}, {0.7, 3.3}, 0.4};
    const hyp32::GaussCombination g0 = hyp32::pf_reduce(s0, 0, 0, 0);
    REQUIRE(g0.terms.size() == 1);
    CHECK(g0.terms[0].coefficient == Cx{1.0, 0.0});
    CHECK(g0.terms[0].spec.a == Cx{1.2, 0.0});
    CHECK(g0.terms[0].spec.b == Cx{0.4, 0.0});
    CHECK(g0.terms[0].spec.c == Cx{3.3, 0.0});

    const Hyp32Spec s1{{0.5, 1.0, 1.0}, {-0.5, 4.0}};
    const hyp32::GaussCombination g1 = hyp32::pf_reduce(s1, 1, 0, 0);
    REQUIRE(g1.terms.size() == 2);
    CHECK(close(hyp32::assemble(g1).value, -1.5, 1e-14));
    CHECK(close(hyp32::sum_3f2_unit(s1, {1e-13}).value, -1.5, 1e-11));

    const Hyp32Spec s2{{1.7, -2.0, 0.9}, {2.4, -0.3}, 0.6};
    CHECK(close(hyp32::assemble(hyp32::pf_reduce(s2, 2, 0, 1)).value,
                hyp32::sum_terminating_3f2(2, 1.7, 0.9, 2.4, -0.3, 0.6).value,
                1e-13));
    CHECK(hyp32::pf_reduce(s1, 1, 0, 1).status == Status::domain_violation);
    CHECK(hyp32::pf_reduce(Hyp32Spec{{1.0, 1.0, 1.0}, {0.0, 4.0}}, 1, 0, 0).status ==
          Status::domain_violation);
  }

  TEST_CASE("reversed terminating relation") {
    const Hyp32Spec s0{{0.0, 0.3, 0.8}, {2.1, 3.4}};
    const hyp32::Rewrite r0 = hyp32::rd_reverse(s0, 0);
    CHECK(r0.prefactor == Cx{1.0, 0.0});
    const int n = 2;
    const Cx a = 0.3, b = 0.8, c = 2.1, d = 3.4;
    const Hyp32Spec s{{-2.0, a, b}, {c - 2.0, d}};
    const hyp32::Rewrite r = hyp32::rd_reverse(s, n);
    REQUIRE(r.status == Status::ok);
    CHECK(near(r.results[0].spec.num[2], d - b));
    CHECK(near(r.results[0].spec.den[0], 1.0 + a - c));
    CHECK(close(hyp32::assemble(r).value, hyp32::sum_terminating_3f2(s).value, 1e-13));
    CHECK(hyp32::rd_reverse(Hyp32Spec{{-1.5, a, b}, {c, d}}, 1).status ==
          Status::domain_violation);
  }

  TEST_CASE("terminating relation with shifted denominators") {
    const hyp32::Rewrite r0 = hyp32::re_transform(Hyp32Spec{{0.0, 0.4, 1.6}, {2.3, 3.7}}, 0);
    CHECK(r0.prefactor == Cx{1.0, 0.0});
    const Cx a = 0.4, b = 1.6, c = 2.3, d = 3.7;
    const Hyp32Spec s{{-1.0, a, b - 1.0}, {c - 1.0, d - 1.0}};
    const hyp32::Rewrite r = hyp32::re_transform(s, 1);
    REQUIRE(r.status == Status::ok);
    const Cx expect = 1.0 - a * (b - 1.0) / ((c - 1.0) * (d - 1.0));
    CHECK(close(hyp32::sum_terminating_3f2(s).value, expect, 1e-15));
    CHECK(close(hyp32::assemble(r).value, expect, 1e-14));
  }

  TEST_CASE("Pfaff linear transformation") {
    const GaussSpec g0{0.4, 1.3, 2.2, 0.0};
    const hyp32::LinearTransform t0 = hyp32::pfaff_linear(g0);
    CHECK(t0.prefactor == Cx{1.0, 0.0});
    const GaussSpec g{1.0, 1.0, 2.0, 0.3};
    const hyp32::LinearTransform t = hyp32::pfaff_linear(g);
    CHECK(close(t.prefactor * hyp32::sum_2f1_direct(t.spec).value, -std::log(0.7) / 0.3, 1e-14));
    CHECK(close(hyp32::sum_2f1_direct(g).value, -std::log(0.7) / 0.3, 1e-14));
    const GaussSpec poly{-2.0, 1.5, 2.5, 0.3};
    const hyp32::LinearTransform tp = hyp32::pfaff_linear(poly);
    const double z = 0.3;
    const double expect = 1.0 - 2.0 * 1.5 * z / 2.5 + 1.5 * 2.5 * z * z / (2.5 * 3.5);
    CHECK(close(tp.prefactor * hyp32::sum_2f1_direct(tp.spec).value, expect, 1e-14));
    // Applying it twice returns to the original value.
    const GaussSpec h{{0.3, 0.2}, 1.1, {2.4, -0.5}, {0.35, 0.2}};
    const hyp32::LinearTransform once = hyp32::pfaff_linear(h);
    const hyp32::LinearTransform twice = hyp32::pfaff_linear(once.spec);
    CHECK(close(once.prefactor * twice.prefactor * hyp32::sum_2f1_direct(twice.spec).value,
                hyp32::sum_2f1_direct(h).value, 1e-12));
    CHECK(hyp32::pfaff_linear({0.4, 1.3, 2.2, 1.0}).status == Status::domain_violation);
    CHECK(hyp32::pfaff_linear({0.4, 1.3, 2.2, 3.0}).status == Status::domain_violation);
  }

  TEST_CASE("z reduction, m = n = 0") {
    const Cx a{0.3, 0.1}, b{1.2, 0.4}, c{2.9, -0.3}, z{0.45, 0.1};
    const hyp32::GaussCombination g = hyp32::karlsson_z_reduce({a, b, c, 0, 0}, z);
    REQUIRE(g.status == Status::ok);
    REQUIRE(g.terms.size() == 2);
    int seen = 0;
    for (const hyp32::GaussTerm& t : g.terms) {
      CHECK(t.spec.a == a);
      CHECK(t.spec.z == z);
      CHECK(t.spec.c == t.spec.b + 1.0);
      if (t.spec.b == b) {
        CHECK(close(t.coefficient, c / (c - b), 1e-15));
        ++seen;
      } else if (t.spec.b == c) {
        CHECK(close(t.coefficient, -b / (c - b), 1e-15));
        ++seen;
      }
    }
    CHECK(seen == 2);
  }

  TEST_CASE("z reduction") {
    const hyp32::GaussCombination at0 = hyp32::karlsson_z_reduce({0.5, 1.3, 2.0, 2, 1}, 0.0);
    REQUIRE(at0.status == Status::ok);
    CHECK(at0.terms.size() == 12);
    Cx coefficient_sum = 0.0;
    for (const hyp32::GaussTerm& t : at0.terms) coefficient_sum += t.coefficient;
    CHECK(close(coefficient_sum, 1.0, 1e-12));

    const Params3F2NegDiff p{0.5, 1.3, 2.0, 1, 1};
    constexpr double kRef = 1.0564865389012264031;  // 3F2(0.5, 1.3, 2; 3.3, 4; 0.5), mpmath
    CHECK(close(hyp32::assemble(hyp32::karlsson_z_reduce_ext(p, 0.5)).value, kRef, 1e-14));
    CHECK(close(hyp32::assemble(hyp32::karlsson_z_reduce(p, 0.5)).value, kRef, 1e-12));
    CHECK(close(hyp32::evaluate_3f2(p.spec(0.5)).value, kRef, 1e-14));

    // b - c = -1 with m = n = 1 makes b - c + i - j vanish at (i, j) = (1, 0).
    CHECK(hyp32::karlsson_z_reduce({0.5, 1.0, 2.0, 1, 1}, 0.5).status ==
          Status::domain_violation);
    CHECK(hyp32::karlsson_z_reduce({0.5, 1.3, 2.0, 1, 1}, 2.0).status ==
          Status::domain_violation);
  }

  TEST_CASE("z reduction at z = 1 reproduces the Beta double sum") {
    const Params3F2NegDiff p{{0.3, 0.2}, 1.4, 2.9, 3, 2};
    CHECK(close(hyp32::assemble(hyp32::karlsson_z_reduce_ext(p, 1.0)).value,
                hyp32::test::kZyRef, 1e-13));
  }

  TEST_CASE("positive-difference reduction") {
    hyp32::KarMintonSpec id{0.8, 0, std::nullopt, 0, {0.6, 1.4}, {2.7}, 0.3};
    const hyp32::PfqCombination r0 = hyp32::karlsson_minton_reduce(id);
    REQUIRE(r0.terms.size() == 1);
    CHECK(r0.terms[0].coefficient == Cx{1.0, 0.0});

    const hyp32::KarMintonSpec one{1.3, 1, std::nullopt, 0, {0.7, 1.1}, {2.9}, 0.4};
    const hyp32::PfqCombination r1 = hyp32::karlsson_minton_reduce(one);
    CHECK(r1.terms.size() == 2);
    CHECK(close(hyp32::assemble(r1).value, hyp32::test::kKarRef, 1e-14));
    CHECK(close(hyp32::evaluate_3f2(one.as_3f2()).value, hyp32::test::kKarRef, 1e-14));

    const hyp32::KarMintonSpec two{1.2, 1, Cx{0.7}, 2, {-3.0}, {}, 1.0};
    constexpr double kRef = -4.2016806722689120960;  // 3F2(2.2, 2.7, -3; 1.2, 0.7; 1), mpmath
    CHECK(close(hyp32::assemble(hyp32::karlsson_minton_reduce(two)).value, kRef, 1e-13));
    CHECK(close(hyp32::sum_terminating_3f2(two.as_3f2()).value, kRef, 1e-14));

    // A terminating order above m1 + m2 gives exactly zero.
    for (const double N : {4.0, 6.0}) {
      const hyp32::KarMintonSpec zero{1.2, 1, Cx{0.7}, 2, {-N}, {}, 1.0};
      CHECK(std::abs(hyp32::assemble(hyp32::karlsson_minton_reduce(zero)).value) <= 1e-12);
      CHECK(std::abs(hyp32::sum_terminating_3f2(zero.as_3f2()).value) <= 1e-12);
    }

    hyp32::KarMintonSpec big = one;
    big.m1 = hyp32::kMaxKarlssonMinton + 1;
    CHECK(hyp32::karlsson_minton_reduce(big).status == Status::domain_violation);
  }
}
