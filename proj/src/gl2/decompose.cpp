#include <algorithm>

#include "ec/gl2.hpp"

namespace ec {

namespace {

Rational sgn(const Rational& x) { return Rational(x.sign()); }

}  // namespace

BruhatFactors bruhat_factor(const MatQ2& g) {
  const Rational det = g.det();
  if (det.sign() <= 0)
    throw MatrixDomainError("matrix " + format_matrix(g) + " must have positive determinant");
  if (g.c.is_zero()) return BorelFactors{{1, g.b / g.d, 0, 1}, mat::diag(g.a, g.d)};

  const Rational s = sgn(g.c);
  const Rational abs_c = g.c.abs();
  BigCellFactors f;
  f.m1 = {1, g.a * s, 0, abs_c};
  f.s = mat::S();
  f.sign = mat::diag(s, s);
  f.m2 = {1, g.d / g.c, 0, det / abs_c};
  f.u1 = {1, g.a / g.c, 0, 1};
  f.d1 = mat::diag(1, abs_c);
  f.u2 = {1, g.d * s / det, 0, 1};
  f.d2 = mat::diag(1, det / abs_c);
  return f;
}

std::vector<MatQ2> factor_list(const BruhatFactors& f) {
  if (const auto* b = std::get_if<BorelFactors>(&f)) return {b->u, b->t};
  const auto& c = std::get<BigCellFactors>(f);
  return {c.m1, c.s, c.sign, c.m2};
}

MatQ2 product(const BruhatFactors& f) {
  MatQ2 out = mat::identity();
  for (const auto& m : factor_list(f)) out = out * m;
  return out;
}

MatQ2 STLetter::matrix() const {
  if (is_s) return mat::S();
  return {1, Rational(power), 0, 1};
}

std::string STLetter::str() const {
  if (is_s) return "S";
  if (power == 1) return "T";
  return "T^" + power.get_str();
}

MatQ2 STWord::product() const {
  MatQ2 out = mat::identity();
  for (const auto& l : letters) out = out * l.matrix();
  return out;
}

std::string STWord::str() const {
  if (letters.empty()) return "I";
  std::string out;
  for (const auto& l : letters) {
    if (!out.empty()) out += ' ';
    out += l.str();
  }
  return out;
}

STWord st_decompose(const MatQ2& g) {
  MatZ2 m = to_integral(g);
  if (m.det() != 1) throw MatrixDomainError("matrix " + format_matrix(g) + " is not in SL2(Z)");
  STWord w;
  // m = T^q S m' with m' = S^-1 T^-q m; |c| strictly drops since q rounds a/c
  // to the nearest integer (halves round up).
  while (m.c != 0) {
    const BigInt q = floor_div(2 * m.a + m.c, 2 * m.c);
    if (q != 0) w.letters.push_back(STLetter::t(q));
    w.letters.push_back(STLetter::s());
    const BigInt a = m.a - q * m.c;
    const BigInt b = m.b - q * m.d;
    m = MatZ2{m.c, m.d, -a, -b};
  }
  // Now m = +-(1, k; 0, 1).
  if (m.a == 1) {
    if (m.b != 0) w.letters.push_back(STLetter::t(m.b));
  } else {
    if (m.b != 0) w.letters.push_back(STLetter::t(-m.b));
    w.letters.push_back(STLetter::s());
    w.letters.push_back(STLetter::s());
    w.minus_identity_pairs = 1;
  }
  return w;
}

TorusPoint apply(const MatZ2& g, const TorusPoint& x) {
  const Rational a(g.a), b(g.b), c(g.c), d(g.d);
  return {a * x.x1() + b * x.x2(), c * x.x1() + d * x.x2()};
}

TorusPoint apply(const MatQ2& g, const TorusPoint& x) { return apply(to_integral(g), x); }

std::vector<TorusPoint> preimages(const MatZ2& m, const TorusPoint& x) {
  const HermiteSplit hs = hermite_right(m);
  const MatZ2 adj = m.adj();
  const Rational det(m.det());
  std::vector<TorusPoint> out;
  for (BigInt i = 0; i < hs.h.a; ++i) {
    for (BigInt j = 0; j < hs.h.d; ++j) {
      const Rational v1 = x.x1() + Rational(i);
      const Rational v2 = x.x2() + Rational(j);
      out.emplace_back((Rational(adj.a) * v1 + Rational(adj.b) * v2) / det,
                       (Rational(adj.c) * v1 + Rational(adj.d) * v2) / det);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TorusPoint> preimages(const MatQ2& m, const TorusPoint& x) { return preimages(to_integral(m), x); }

}  // namespace ec
