#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ec/analytic.hpp"
#include "ec/cocycle.hpp"
#include "ec/kernels.hpp"

using namespace ec;

namespace {
MatQ2 m(const char* s) { return parse_matrix(s); }
TorusPoint pt(const char* s) { return TorusPoint::parse(s); }
Rational q(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

struct ScalarGuard {
  ScalarGuard() { kernels::set_force_scalar(true); }
  ~ScalarGuard() { kernels::set_force_scalar(false); }
};
}  // namespace

TEST(Kernels, Avx2MatchesScalar) {
  if (!kernels::avx2_supported()) GTEST_SKIP() << "no AVX2 on this CPU";
  for (double start : {1.0, -37.5, 1000.25}) {
    for (long count : {1L, 3L, 4L, 7L, 1001L}) {
      const Complex z{0.3, 0.7};
      const Complex a = kernels::scalar::inv_square_sum(z, start, 2.0, count);
      const Complex b = kernels::avx2::inv_square_sum(z, start, 2.0, count);
      EXPECT_LT(rel(a, b), 1e-13) << start << " " << count;
    }
  }
  for (long mmax : {1L, 2L, 5L, 8L, 41L, 200L}) {
    kernels::QSeries in;
    in.q = std::exp(Complex(0, 2 * std::numbers::pi) * Complex(0.1, 0.8));
    in.u1 = std::exp(Complex(0, 2 * std::numbers::pi) * Complex(0.1, 0.8) * (2.0 / 3));
    in.u2 = std::exp(Complex(0, 2 * std::numbers::pi) * Complex(0.1, 0.8) * (1.0 / 3));
    in.ph = std::exp(Complex(0, 2 * std::numbers::pi * 0.25));
    in.c1 = 2.0 / 3;
    in.c2 = 1.0 / 3;
    in.m_max = mmax;
    EXPECT_LT(rel(kernels::scalar::qseries_sum(in), kernels::avx2::qseries_sum(in)), 1e-13) << mmax;
  }
}

TEST(Kernels, DispatchHonoursForceScalar) {
  {
    ScalarGuard g;
    EXPECT_FALSE(kernels::using_avx2());
  }
  EXPECT_EQ(kernels::using_avx2(), kernels::avx2_supported());
}

TEST(Series, ScalarAndSimdPathsAgree) {
  const UpperHalfPoint tau{0.2, 0.9};
  for (const char* p : {"1/2,1/3", "0,1/4", "2/5,0"}) {
    for (auto method : {SeriesMethod::ClosedForm, SeriesMethod::Direct}) {
      const SeriesParams params{40, 20000, method};
      const Complex fast = e2_value(tau, pt(p), params);
      ScalarGuard g;
      EXPECT_LT(rel(fast, e2_value(tau, pt(p), params)), 1e-12) << p;
    }
  }
}

TEST(Series, DirectAgreesWithClosedForm) {
  for (const char* p : {"1/2,1/3", "0,1/4", "1/3,0", "3/7,5/7"}) {
    for (UpperHalfPoint tau : {UpperHalfPoint{0.1, 1.0}, UpperHalfPoint{-0.4, 0.5}}) {
      const Complex closed = e2_value(tau, pt(p));
      const Complex direct = e2_value(tau, pt(p), {40, 100000, SeriesMethod::Direct});
      EXPECT_LT(rel(closed, direct), 1e-8) << p << " tau=" << tau.re << "+" << tau.im << "i";
    }
  }
}

TEST(Series, ConvergenceWithinTailBound) {
  const UpperHalfPoint tau{0.3, 0.8};
  const SeriesValue a = e2_series(tau, pt("1/2,1/3"), {40, 20000, SeriesMethod::Direct});
  const SeriesValue b = e2_series(tau, pt("1/2,1/3"), {40, 40000, SeriesMethod::Direct});
  EXPECT_LE(std::abs(a.value - b.value), a.tail_bound + b.tail_bound);
  EXPECT_GT(a.tail_bound, 0);
}

TEST(Series, ModularCovariance) {
  const UpperHalfPoint tau{0.15, 0.85};
  const std::vector<std::pair<MatQ2, TorusPoint>> cases{
      {m("1,0;2,1"), pt("1/2,1/3")}, {m("1,2;0,1"), pt("0,1/2")}, {m("1,3;0,1"), pt("1/3,2/3")}, {m("7,-18;2,-5"), pt("1/2,1/2")}};
  for (const auto& [g, p] : cases) {
    ASSERT_EQ(apply(g, p), p);
    const Complex ct = g.c.to_double() * tau.z() + g.d.to_double();
    const Complex lhs = e2_value(act(g, tau), p);
    EXPECT_LT(rel(lhs, ct * ct * e2_value(tau, p)), 1e-9) << format_matrix(g);
  }
}

TEST(Series, ConjugationSymmetry) {
  const UpperHalfPoint tau{0.23, 0.7}, mirror{-0.23, 0.7};
  for (const char* p : {"1/3,1/4", "1/2,1/5", "0,2/3"}) {
    const TorusPoint x = pt(p);
    const TorusPoint flipped{-x.x1(), x.x2()};
    EXPECT_LT(rel(std::conj(e2_value(tau, x)), e2_value(mirror, flipped)), 1e-12) << p;
  }
}

TEST(Series, RejectsZeroPoint) { EXPECT_THROW(e2_value({0, 1}, TorusPoint{}), AnalyticError); }

TEST(Period, Witnesses) {
  for (auto [g, p, exact] : {std::tuple{"1,1;0,1", "1/2,0", q(1, 6)}, std::tuple{"0,-1;1,0", "1/2,1/2", q(0)},
                             std::tuple{"1,0;2,1", "1/2,1/3", q(1, 6)}}) {
    const PeriodReport r = compare(m(g), pt(p));
    EXPECT_EQ(r.exact, exact);
    EXPECT_TRUE(r.passes(1e-6)) << g << " " << r.numeric;
    EXPECT_LT(std::abs(r.numeric.imag()), 1e-6);
    EXPECT_GE(r.abs_error_estimate, 0);
  }
}

TEST(Period, IdentityAndBasepointIndependence) {
  EXPECT_EQ(period_integral(mat::identity(), {0.2, 1.3}, pt("1/3,1/3")).value, Complex(0));
  const MatQ2 g = m("3,-2;8,-5");
  const TorusPoint p = pt("1/2,1/2");
  const Complex a = period_integral(g, default_basepoint(g), p).value;
  const Complex b = period_integral(g, {0.1, 1.4}, p).value;
  const Complex c = period_integral(g, {-0.6, 0.3}, p).value;
  EXPECT_LT(std::abs(a - b), 1e-7);
  EXPECT_LT(std::abs(a - c), 1e-7);
  EXPECT_NEAR(a.real(), phi_classical(g, p).to_double(), 1e-7);
}

TEST(Period, Preconditions) {
  EXPECT_THROW(period_integral(mat::T(), {0, 1}, pt("1/3,1/3")), PreconditionError);
  EXPECT_THROW(period_integral(m("2,0;0,1"), {0, 1}, pt("1/2,0")), PreconditionError);
}

TEST(Period, RandomStabilizers) {
  Rng rng(73);
  for (int n = 3; n <= 6; ++n) {
    const TorusPoint p{q(1, n), q(2, n)};
    for (const auto& g : stabilizer_sample(p, 3, 3, rng, 60)) {
      const PeriodReport r = compare(g, p);
      EXPECT_TRUE(r.passes(1e-6)) << format_matrix(g) << " " << p.str() << " " << r.numeric << " vs " << r.exact;
    }
  }
}

TEST(Report, Json) {
  const auto j = to_json(compare(m("1,0;2,1"), pt("1/2,1/3")));
  EXPECT_EQ(j["gamma"], "1,0;2,1");
  EXPECT_EQ(j["exact"], "1/6");
  EXPECT_EQ(j["point"], "1/2,1/3");
  ASSERT_TRUE(j["numeric"].is_array());
  EXPECT_EQ(j["numeric"].size(), 2u);
  EXPECT_TRUE(j.contains("err"));
}
