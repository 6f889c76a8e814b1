#include "ec/cocycle.hpp"

namespace ec {

namespace {

Rational sgn(const Rational& x) { return Rational(x.sign()); }

MatZ2 require_sl2z(const MatQ2& g) {
  if (!is_integral(g)) throw PreconditionError("matrix " + format_matrix(g) + " is not integral");
  MatZ2 m = to_integral(g);
  if (m.det() != 1) throw PreconditionError("matrix " + format_matrix(g) + " does not have determinant 1");
  return m;
}

Rational closed_form(const MatZ2& m, const Rational& alpha, const Rational& beta) {
  const Rational a(m.a), b(m.b), c(m.c), d(m.d);
  if (m.c == 0) return b / d * b2(beta);
  const BigInt abs_c = abs(m.c);
  Rational sum;
  for (BigInt i = 0; i < abs_c; ++i) {
    const Rational shifted = beta + Rational(i);
    sum += b1(shifted / Rational(abs_c)) * b1(a * shifted / c - alpha);
  }
  return (a + d) / c * b2(beta) - Rational(2) * sum;
}

MElement letter_lift(const STLetter& l) {
  if (l.is_s) return MElement::base(Kernel::B1xB1, 1);
  return MElement::base(Kernel::B2Second, Rational(l.power) / Rational(2));
}

}  // namespace

MElement theta10_bruhat(const MatQ2& g) {
  const Rational det = g.det();
  if (det.sign() <= 0) throw PreconditionError("matrix " + format_matrix(g) + " must have positive determinant");
  if (g.c.is_zero()) return MElement::base(Kernel::B2Second, g.b / (Rational(2) * g.d));
  const Rational s = sgn(g.c);
  const Rational abs_c = g.c.abs();
  MElement out = MElement::base(Kernel::B2Second, g.a / (Rational(2) * g.c));
  out += MElement::term({1, g.a * s, 0, abs_c}, Kernel::B1xB1, 1);
  out += MElement::term({g.a * s, -1, abs_c, 0}, Kernel::B2Second, g.d * s / (Rational(2) * det));
  return out;
}

MElement theta10_recursive(const MatQ2& g) {
  const STWord w = st_decompose(g);
  MElement acc;
  // theta(L x) = L_* theta(x) + theta(L), folding letters from the right.
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) acc = push(it->matrix(), acc) + letter_lift(*it);
  return acc;
}

Rational phi_classical(const MatQ2& g, const TorusPoint& p) {
  const MatZ2 m = require_sl2z(g);
  if (p.is_zero()) throw PreconditionError("phi_classical needs a nonzero torsion point; use dedekind_symbol");
  return closed_form(m, p.x1(), p.x2());
}

Rational phi_via_theta(const MatQ2& g, const TorusPoint& p) {
  if (g.det().sign() <= 0) throw PreconditionError("matrix " + format_matrix(g) + " must have positive determinant");
  if (p.is_zero()) throw PreconditionError("phi_via_theta needs a nonzero torsion point");
  if (!is_integral(g)) throw PreconditionError("matrix " + format_matrix(g) + " does not act on the torus");
  if (apply(g, p) != p) throw PreconditionError("matrix " + format_matrix(g) + " does not fix " + p.str());
  return Rational(2) * eval(theta10_bruhat(g), p);
}

Rational smoothed_class_eval(const MatQ2& g, const BigInt& c, const TorusPoint& p) {
  if (c <= 1) throw PreconditionError("smoothing parameter must exceed 1");
  if (p.scaled(c).is_zero()) throw PreconditionError("point " + p.str() + " lies in T[" + c.get_str() + "]");
  return smoothed_eval(theta10_bruhat(g), c, p);
}

Rational dedekind_symbol(const MatQ2& g) { return closed_form(require_sl2z(g), 0, 0); }

Rational euler_defect(const MatQ2& g1, const MatQ2& g2) {
  return dedekind_symbol(g1 * g2) - dedekind_symbol(g1) - dedekind_symbol(g2);
}

Rational cocycle_defect(const MatQ2& g1, const MatQ2& g2, int samples, std::uint64_t seed) {
  const MElement diff = theta10_bruhat(g2 * g1) - push(g2, theta10_bruhat(g1)) - theta10_bruhat(g2);
  Rational worst;
  if (diff.is_zero()) return worst;
  for (const auto& x : random_points(discont_locus(diff), samples, seed)) worst = std::max(worst, eval(diff, x).abs());
  return worst;
}

}  // namespace ec
