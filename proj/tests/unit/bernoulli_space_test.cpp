#include <gtest/gtest.h>

#include "ec/bernoulli_space.hpp"
#include "ec/gl2.hpp"
#include "ec/rng.hpp"

using namespace ec;

namespace {
MatQ2 m(const char* s) { return parse_matrix(s); }
Rational q(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }
TorusPoint pt(const char* s) { return TorusPoint::parse(s); }

std::vector<MElement> corpus() {
  return {MElement::base(Kernel::B1xB1, 1), MElement::base(Kernel::B2Second, q(1, 2)),
          MElement::term(m("1,1;0,2"), Kernel::B1xB1, -1), MElement::term(m("2,-1;3,1"), Kernel::B2Second, 3),
          MElement::term(m("1,2;0,3"), Kernel::B1xB1, q(2, 5)) + MElement::base(Kernel::B2Second, 1)};
}

std::vector<TorusPoint> grid(long n) {
  std::vector<TorusPoint> out;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) out.emplace_back(q(i, n), q(j, n));
  return out;
}
}  // namespace

TEST(MElement, Base) {
  const MElement half = MElement::base(Kernel::B2Second, q(1, 2));
  EXPECT_EQ(half.size(), 1u);
  EXPECT_EQ(half.terms().begin()->second, q(1, 2));
  EXPECT_TRUE(half.terms().begin()->first.push.is_identity());
  EXPECT_TRUE(MElement::base(Kernel::B2Second, 0).is_zero());
  EXPECT_EQ(eval(MElement::base(Kernel::B1xB1, -1), pt("1/6,1/6")), q(-1, 9));
}

TEST(MElement, MergesEqualKeys) {
  const MElement a = MElement::term(m("1,1/2;0,1"), Kernel::B1xB1, 1);
  const MElement b = MElement::term(m("2,1;0,2"), Kernel::B1xB1, 2);
  EXPECT_EQ((a + b).size(), 1u);
  EXPECT_TRUE((a - MElement::term(m("4,2;0,4"), Kernel::B1xB1, 1)).is_zero());
}

TEST(Push, Examples) {
  const MElement e = MElement::base(Kernel::B2Second, 1);
  EXPECT_EQ(push(mat::identity(), e), e);
  for (int a : {2, 3})
    EXPECT_EQ(push(mat::diag(a, a), MElement::base(Kernel::B1xB1, 1)), MElement::base(Kernel::B1xB1, 1));
  const MatQ2 h = m("1,1;0,2");
  EXPECT_EQ(push(h, push(h, e)), push(h * h, e));
  EXPECT_THROW(push(m("0,1;1,0"), e), MatrixDomainError);
}

TEST(Eval, Examples) {
  EXPECT_EQ(eval(MElement::base(Kernel::B1xB1, 1), pt("1/6,1/6")), q(1, 9));
  EXPECT_EQ(eval(push(m("1,1;0,2"), MElement::base(Kernel::B1xB1, 1)), pt("1/2,1/3")), q(1, 9));
  EXPECT_EQ(eval(push(m("1,-1;2,0"), MElement::base(Kernel::B2Second, 1)), pt("1/2,1/3")), q(-1, 36));
}

TEST(Eval, ScalarInvariance) {
  for (const auto& e : corpus())
    for (long a = 2; a <= 8; ++a)
      for (const auto& x : grid(12)) ASSERT_EQ(eval(push(mat::diag(a, a), e), x), eval(e, x));
}

TEST(Eval, Functoriality) {
  Rng rng(31);
  auto integral = [&] {
    for (;;) {
      MatQ2 g{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)};
      if (g.det() > Rational(0) && g.det() <= Rational(12)) return g;
    }
  };
  for (int t = 0; t < 40; ++t) {
    const MatQ2 a = integral(), b = integral();
    for (const auto& e : corpus()) {
      for (int k = 0; k < 5; ++k) {
        const TorusPoint x = rng.torus_point(15);
        ASSERT_EQ(eval(push(a, push(b, e)), x), eval(push(a * b, e), x));
      }
    }
  }
}

TEST(Locus, Examples) {
  EXPECT_TRUE(discont_locus(MElement::base(Kernel::B2Second, 1)).lines.empty());
  const auto base = discont_locus(MElement::base(Kernel::B1xB1, 1));
  EXPECT_EQ(base.lines, (std::set<AffineLine>{AffineLine::make(1, 0, 0), AffineLine::make(0, 1, 0)}));
  // (1,1;0,2)_* B1(y1) B1(y2) jumps where y1 = z1 - z2/2 or y2 = z2/2 is an integer.
  const auto pushed = discont_locus(push(m("1,1;0,2"), MElement::base(Kernel::B1xB1, 1)));
  EXPECT_EQ(pushed.lines, (std::set<AffineLine>{AffineLine::make(2, -1, 0), AffineLine::make(0, 1, 0)}));
  EXPECT_TRUE(pushed.contains(pt("1/4,1/2")));
  EXPECT_FALSE(pushed.contains(pt("1/4,1/3")));
}

TEST(Locus, OffLocusContinuity) {
  // Off the locus a pushed element is locally constant in its jump behaviour:
  // nudging x by a tiny amount changes the value by a tiny amount.
  for (const auto& e : corpus()) {
    const auto locus = discont_locus(e);
    for (const auto& x : random_points(locus, 30, 9)) {
      const TorusPoint y{x.x1() + q(1, 1000003), x.x2() + q(1, 1000033)};
      EXPECT_LT((eval(e, x) - eval(e, y)).abs(), q(1, 1000)) << e.str() << " at " << x.str();
    }
  }
}

TEST(SmoothedEval, Examples) {
  EXPECT_EQ(smoothed_eval(MElement::base(Kernel::B2Second, 1), 2, pt("0,1/4")), q(0));
  EXPECT_EQ(smoothed_eval(MElement(), 5, pt("1/3,1/7")), q(0));
  const MElement e = corpus()[2];
  EXPECT_EQ(smoothed_eval(e, 4, pt("1/3,2/3")), q(-15) * eval(e, pt("1/3,2/3")));
}

TEST(FunctionsEqual, Examples) {
  for (const auto& e : corpus()) EXPECT_TRUE(functions_equal(e, e, 20, 1));
  EXPECT_FALSE(functions_equal(MElement::base(Kernel::B1xB1, 1), MElement::base(Kernel::B2Second, 1), 20, 1));
}

TEST(FunctionsEqual, DistributionRelationsAsFunctions) {
  // Different formal sums, same functions: (1,0;0,2)_* sums over the two halves
  // of the second coordinate.
  EXPECT_TRUE(functions_equal(MElement::term(m("1,0;0,2"), Kernel::B2Second, 2), MElement::base(Kernel::B2Second, 1),
                              30, 3));
  EXPECT_TRUE(functions_equal(MElement::term(m("1,0;0,3"), Kernel::B1xB1, 1), MElement::base(Kernel::B1xB1, 1), 30, 3));
  EXPECT_FALSE(functions_equal(MElement::term(m("1,0;0,2"), Kernel::B2Second, 1), MElement::base(Kernel::B2Second, 1),
                               30, 3));
}

TEST(Json, RoundTrip) {
  for (const auto& e : corpus()) EXPECT_EQ(melement_from_json(to_json(e)), e);
  const auto j = to_json(MElement::term(m("1,1;0,2"), Kernel::B1xB1, q(-1, 3)));
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["coeff"], "-1/3");
  EXPECT_EQ(j[0]["matrix"], "1,1;0,2");
  EXPECT_EQ(j[0]["kernel"], "B1XB1");
}
