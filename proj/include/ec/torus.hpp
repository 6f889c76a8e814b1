#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "ec/rational.hpp"

namespace ec {

/// Fractional part: the representative of x modulo 1 in [0, 1).
Rational frac(const Rational& x);

/// First periodic Bernoulli function. Takes the value 0 at integers
/// (the midpoint of the jump), {x} - 1/2 elsewhere.
Rational b1(const Rational& x);

/// Second periodic Bernoulli function {x}^2 - {x} + 1/6. Continuous on R/Z.
Rational b2(const Rational& x);

/// A rational point of the torus (Q/Z)^2, stored by its representative in [0,1)^2.
class TorusPoint {
 public:
  TorusPoint() = default;
  TorusPoint(const Rational& x1, const Rational& x2) : x1_(frac(x1)), x2_(frac(x2)) {}

  /// Parses "p1/q1,p2/q2".
  static TorusPoint parse(std::string_view text);

  const Rational& x1() const { return x1_; }
  const Rational& x2() const { return x2_; }
  bool is_zero() const { return x1_.is_zero() && x2_.is_zero(); }

  TorusPoint operator+(const TorusPoint& o) const { return {x1_ + o.x1_, x2_ + o.x2_}; }
  TorusPoint operator-() const { return {-x1_, -x2_}; }
  TorusPoint scaled(const BigInt& n) const { return {x1_ * Rational(n), x2_ * Rational(n)}; }

  std::string str() const { return x1_.str() + "," + x2_.str(); }

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
  friend auto operator<=>(const TorusPoint&, const TorusPoint&) = default;

 private:
  Rational x1_;
  Rational x2_;
};

/// Least n >= 1 with n * p = 0 on the torus.
BigInt torsion_order(const TorusPoint& p);

}  // namespace ec
