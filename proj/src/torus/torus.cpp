#include "ec/torus.hpp"

#include <stdexcept>

namespace ec {

Rational frac(const Rational& x) {
  if (x.is_integer()) return Rational(0);
  return x - Rational(x.floor());
}

Rational b1(const Rational& x) {
  if (x.is_integer()) return Rational(0);
  return frac(x) - Rational(1, 2);
}

Rational b2(const Rational& x) {
  const Rational f = frac(x);
  return f * f - f + Rational(1, 6);
}

TorusPoint TorusPoint::parse(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos)
    throw std::invalid_argument("torus point must look like 'x1,x2', got '" + std::string(text) + "'");
  return {Rational::parse(text.substr(0, comma)), Rational::parse(text.substr(comma + 1))};
}

BigInt torsion_order(const TorusPoint& p) { return lcm(p.x1().den(), p.x2().den()); }

}  // namespace ec
