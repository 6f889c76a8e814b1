#include <gtest/gtest.h>

#include "ec/cocycle.hpp"

using namespace ec;

namespace {
MatQ2 m(const char* s) { return parse_matrix(s); }
Rational q(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }
TorusPoint pt(const char* s) { return TorusPoint::parse(s); }

// The closed formula written out independently of the library.
Rational classical_reference(long a, long b, long c, long d, const TorusPoint& p) {
  const Rational alpha = p.x1(), beta = p.x2();
  if (c == 0) return q(b, d) * b2(beta);
  Rational sum;
  const long ac = c < 0 ? -c : c;
  for (long i = 0; i < ac; ++i) sum += b1((beta + q(i)) / q(ac)) * b1(q(a) * (beta + q(i)) / q(c) - alpha);
  return q(a + d, c) * b2(beta) - q(2) * sum;
}
}  // namespace

TEST(Theta10Bruhat, Examples) {
  EXPECT_TRUE(theta10_bruhat(mat::diag(2, 3)).is_zero());
  EXPECT_TRUE(theta10_bruhat(mat::identity()).is_zero());
  EXPECT_EQ(theta10_bruhat(mat::T()), MElement::base(Kernel::B2Second, q(1, 2)));
  EXPECT_EQ(theta10_bruhat(m("2,3;0,1")), MElement::base(Kernel::B2Second, q(3, 2)));
  EXPECT_EQ(eval(theta10_bruhat(m("1,0;2,1")), pt("1/2,1/3")), q(1, 12));
  EXPECT_EQ(theta10_bruhat(mat::S()), MElement::base(Kernel::B1xB1, 1));
  EXPECT_THROW(theta10_bruhat(m("0,1;1,0")), std::invalid_argument);
}

TEST(Theta10Recursive, Examples) {
  EXPECT_EQ(theta10_recursive(mat::S()), MElement::base(Kernel::B1xB1, 1));
  EXPECT_EQ(theta10_recursive(mat::T(2)), MElement::base(Kernel::B2Second, 1));
  EXPECT_TRUE(functions_equal(theta10_recursive(m("1,0;2,1")), theta10_bruhat(m("1,0;2,1")), 50, 1));
  // -I = S S: (S)_* B1(z1) B1(z2) = B1(z2) B1(-z1) cancels B1(z1) B1(z2) off the axes.
  EXPECT_TRUE(functions_equal(theta10_recursive(m("-1,0;0,-1")), MElement(), 50, 1));
  EXPECT_TRUE(theta10_bruhat(m("-1,0;0,-1")).is_zero());
}

TEST(PhiClassical, Examples) {
  EXPECT_EQ(phi_classical(mat::T(), pt("1/2,0")), q(1, 6));
  EXPECT_EQ(phi_classical(mat::S(), pt("1/2,1/2")), q(0));
  EXPECT_EQ(phi_classical(m("1,0;2,1"), pt("1/2,1/3")), q(1, 6));
  EXPECT_THROW(phi_classical(m("2,0;0,1"), pt("1/2,0")), PreconditionError);
  EXPECT_THROW(phi_classical(m("1,1/2;0,1"), pt("1/2,0")), PreconditionError);
  EXPECT_THROW(phi_classical(mat::T(), TorusPoint{}), PreconditionError);
}

TEST(PhiClassical, MatchesReferenceFormula) {
  Rng rng(53);
  for (int t = 0; t < 300; ++t) {
    const MatQ2 g = random_sl2z(rng, 12);
    const TorusPoint p = rng.torus_point(9);
    if (p.is_zero()) continue;
    const Rational ref = classical_reference(to_long(g.a.num()), to_long(g.b.num()), to_long(g.c.num()),
                                             to_long(g.d.num()), p);
    ASSERT_EQ(phi_classical(g, p), ref) << format_matrix(g) << " " << p.str();
  }
}

TEST(PhiViaTheta, Examples) {
  EXPECT_EQ(phi_via_theta(mat::T(), pt("1/2,0")), q(1, 6));
  EXPECT_EQ(phi_via_theta(m("1,0;2,1"), pt("1/2,1/3")), q(1, 6));
  EXPECT_EQ(phi_via_theta(mat::identity(), pt("2/7,3/7")), q(0));
  EXPECT_THROW(phi_via_theta(mat::T(), pt("1/3,1/3")), PreconditionError);
}

TEST(PeriodEquality, SmallSweepIncludingZeroCoordinates) {
  Rng rng(59);
  for (int n = 2; n <= 6; ++n) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const TorusPoint p{q(i, n), q(j, n)};
        if (p.is_zero()) continue;
        for (const auto& g : stabilizer_sample(p, 10, 4, rng)) {
          ASSERT_EQ(apply(g, p), p);
          ASSERT_EQ(phi_classical(g, p), phi_via_theta(g, p)) << format_matrix(g) << " " << p.str();
        }
      }
    }
  }
}

TEST(Homomorphism, StabilizerPairs) {
  Rng rng(61);
  for (int n : {3, 4, 5}) {
    const TorusPoint p{q(1, n), q(n - 2, n)};
    const auto sample = stabilizer_sample(p, 20, 3, rng);
    for (std::size_t k = 0; k + 1 < sample.size(); ++k) {
      const MatQ2 &g1 = sample[k], &g2 = sample[k + 1];
      EXPECT_EQ(phi_classical(g1 * g2, p), phi_classical(g1, p) + phi_classical(g2, p));
    }
  }
}

TEST(Stabilizer, RespectsBoundsAndFixesPoint) {
  Rng rng(67);
  const TorusPoint p = pt("1/4,3/4");
  const auto sample = stabilizer_sample(p, 30, 5, rng, 50);
  EXPECT_EQ(sample.size(), 30u);
  for (const auto& g : sample) {
    EXPECT_EQ(apply(g, p), p);
    EXPECT_EQ(g.det(), q(1));
    for (const Rational* e : {&g.a, &g.b, &g.c, &g.d}) EXPECT_LE(e->abs(), q(50));
  }
}

TEST(CocycleDefect, Examples) {
  EXPECT_EQ(cocycle_defect(mat::identity(), m("2,1;1,1"), 20, 1), q(0));
  EXPECT_EQ(cocycle_defect(mat::S(), mat::T(), 20, 1), q(0));
  EXPECT_EQ(cocycle_defect(m("1,1/2;1/3,2"), m("3,-1;1,1/2"), 20, 1), q(0));
  Rng rng(71);
  for (int t = 0; t < 30; ++t) EXPECT_EQ(cocycle_defect(random_sl2z(rng, 10), random_sl2z(rng, 10), 20, t), q(0));
}

TEST(SmoothedClassEval, Examples) {
  EXPECT_EQ(smoothed_class_eval(m("1,0;2,1"), 7, pt("1/2,1/3")), q(-4));
  EXPECT_EQ(smoothed_class_eval(mat::T(), 3, pt("1/2,0")), q(-2, 3));
  EXPECT_EQ(smoothed_class_eval(mat::identity(), 4, pt("1/3,1/5")), q(0));
  EXPECT_THROW(smoothed_class_eval(mat::T(), 2, pt("1/2,0")), PreconditionError);
  EXPECT_THROW(smoothed_class_eval(mat::T(), 1, pt("1/3,0")), PreconditionError);
}

TEST(Dedekind, SymbolAndEulerDefect) {
  for (int b = -10; b <= 10; ++b) EXPECT_EQ(dedekind_symbol(mat::T(b)), q(b, 6));
  EXPECT_EQ(dedekind_symbol(mat::S()), q(0));
  EXPECT_EQ(dedekind_symbol(m("1,0;1,1")), q(1, 3));
  EXPECT_EQ(euler_defect(mat::T(), mat::T()), q(0));
  EXPECT_EQ(euler_defect(mat::S(), mat::inverse(mat::S())), q(0));
  // S S = -I lands in the c = 0 branch with b = 0.
  EXPECT_EQ(euler_defect(mat::S(), mat::S()), q(0));
  // L = (1,0;1,1): D(L) = 2/6 and D(L^2) = 2/12 - 2 (B1(0)^2 + B1(1/2)^2) = 1/6.
  EXPECT_EQ(euler_defect(m("1,0;1,1"), m("1,0;1,1")), q(-1, 2));
}
