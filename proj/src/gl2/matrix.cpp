#include <sstream>

#include "ec/gl2.hpp"

namespace ec {

bool operator<(const MatZ2& l, const MatZ2& r) {
  if (l.a != r.a) return l.a < r.a;
  if (l.b != r.b) return l.b < r.b;
  if (l.c != r.c) return l.c < r.c;
  return l.d < r.d;
}

MatQ2 to_rational(const MatZ2& m) { return {m.a, m.b, m.c, m.d}; }

bool is_integral(const MatQ2& m) {
  return m.a.is_integer() && m.b.is_integer() && m.c.is_integer() && m.d.is_integer();
}

MatZ2 to_integral(const MatQ2& m) {
  if (!is_integral(m)) throw MatrixDomainError("matrix " + format_matrix(m) + " is not integral");
  return {m.a.num(), m.b.num(), m.c.num(), m.d.num()};
}

MatQ2 parse_matrix(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos || text.find(';', semi + 1) != std::string_view::npos)
    throw std::invalid_argument("matrix must look like 'a,b;c,d', got '" + std::string(text) + "'");
  auto row = [&](std::string_view r) {
    const auto comma = r.find(',');
    if (comma == std::string_view::npos || r.find(',', comma + 1) != std::string_view::npos)
      throw std::invalid_argument("matrix must look like 'a,b;c,d', got '" + std::string(text) + "'");
    return std::pair{Rational::parse(r.substr(0, comma)), Rational::parse(r.substr(comma + 1))};
  };
  auto [a, b] = row(text.substr(0, semi));
  auto [c, d] = row(text.substr(semi + 1));
  return {a, b, c, d};
}

std::string format_matrix(const MatQ2& m) {
  return m.a.str() + "," + m.b.str() + ";" + m.c.str() + "," + m.d.str();
}

std::string format_matrix(const MatZ2& m) {
  return m.a.get_str() + "," + m.b.get_str() + ";" + m.c.get_str() + "," + m.d.get_str();
}

namespace mat {
MatQ2 identity() { return {1, 0, 0, 1}; }
MatQ2 S() { return {0, -1, 1, 0}; }
MatQ2 T(long n) { return {1, Rational(n), 0, 1}; }
MatQ2 diag(const Rational& x, const Rational& y) { return {x, 0, 0, y}; }
MatQ2 inverse(const MatQ2& m) {
  const Rational det = m.det();
  if (det.is_zero()) throw MatrixDomainError("singular matrix " + format_matrix(m));
  const Rational inv = Rational(1) / det;
  return m.adj().scaled(inv);
}
}  // namespace mat

PrimitiveIntegralForm trace_normalize(const MatQ2& m) {
  if (m.det().sign() <= 0)
    throw MatrixDomainError("matrix " + format_matrix(m) + " must have positive determinant");
  const BigInt l = lcm(lcm(m.a.den(), m.b.den()), lcm(m.c.den(), m.d.den()));
  const MatZ2 z = to_integral(m.scaled(Rational(l)));
  const BigInt g = gcd(gcd(z.a, z.b), gcd(z.c, z.d));
  MatZ2 prim{z.a / g, z.b / g, z.c / g, z.d / g};
  return {Rational(g, l), prim};
}

HermiteSplit hermite_right(const MatZ2& m) {
  const BigInt det = m.det();
  if (det <= 0) throw MatrixDomainError("matrix " + format_matrix(m) + " must have positive determinant");
  // Column operations V with (c, d) V = (0, g).
  const ExtGcd e = ext_gcd(m.c, m.d);
  MatZ2 v{m.d / e.g, e.x, -m.c / e.g, e.y};
  MatZ2 h = m * v;
  const BigInt k = floor_div(h.b, h.a);
  const MatZ2 shift{1, -k, 0, 1};
  v = v * shift;
  h = h * shift;
  return {h, v.adj()};
}

}  // namespace ec
