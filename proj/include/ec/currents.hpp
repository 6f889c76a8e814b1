#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ec/bernoulli_space.hpp"
#include "ec/gl2.hpp"
#include "ec/rational.hpp"
#include "ec/torus.hpp"

namespace ec {

/// B_order(a z1 + b z2 + offset), order 1 or 2.
///
/// Canonical factors have (a, b) primitive with first nonzero entry positive
/// and offset in [0, 1). Factors attached to a line current use the fixed
/// transversal covector of that line instead.
struct Factor {
  int order = 1;
  BigInt a, b;
  Rational offset;

  Rational value_at(const TorusPoint& x) const;
  std::string str() const;

  friend bool operator<(const Factor& l, const Factor& r);
  friend bool operator==(const Factor& l, const Factor& r) {
    return l.order == r.order && l.a == r.a && l.b == r.b && l.offset == r.offset;
  }
};

/// The form part of a monomial.
///  Delta        delta(p z1 + q z2 - t) d(p z1 + q z2), an oriented line current
///  LineDensity  Delta wedge dw for any w with det((p,q), w) = 1
///  Point        the point mass at `point`
enum class Form { One, Dz1, Dz2, Delta, Area, LineDensity, Point };

struct Monomial {
  std::vector<Factor> factors;
  Form form = Form::One;
  BigInt p = 0, q = 0;  // line covector for Delta and LineDensity
  Rational t;           // line offset
  TorusPoint point;
  /// When set, the monomial stands for wrapper_*(rest); used for pushforwards
  /// of factor products that are not themselves products of Bernoulli factors.
  std::optional<MatZ2> wrapper;

  int degree() const;
  std::string str() const;

  friend bool operator<(const Monomial& l, const Monomial& r);
  friend bool operator==(const Monomial& l, const Monomial& r);
};

/// Finite linear combination of canonical monomials.
class CurrentExpr {
 public:
  CurrentExpr() = default;

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest degree among the terms; 0 for the zero expression.
  int degree() const;

  /// Adds coeff * m after canonicalizing m.
  void add(const Monomial& m, const Rational& coeff);

  CurrentExpr& operator+=(const CurrentExpr& o);
  CurrentExpr& operator-=(const CurrentExpr& o);
  friend CurrentExpr operator+(CurrentExpr a, const CurrentExpr& b) { return a += b; }
  friend CurrentExpr operator-(CurrentExpr a, const CurrentExpr& b) { return a -= b; }
  friend CurrentExpr operator*(const Rational& s, const CurrentExpr& e);
  friend bool operator==(const CurrentExpr&, const CurrentExpr&) = default;

  std::string str() const;

 private:
  void add_canonical(const Monomial& m, const Rational& coeff);
  std::map<Monomial, Rational> terms_;
};

// Building blocks.
CurrentExpr constant(const Rational& c);
CurrentExpr bernoulli(int order, const BigInt& a, const BigInt& b, const Rational& offset = 0);
CurrentExpr dz1();
CurrentExpr dz2();
CurrentExpr delta_line(const BigInt& p, const BigInt& q, const Rational& t = 0);
CurrentExpr area();
CurrentExpr delta_point(const TorusPoint& x);
CurrentExpr delta0();
/// Sum of point masses over the c-torsion points.
CurrentExpr delta_torsion(const BigInt& c);

/// Wedge product; at most one side may have positive degree unless both are
/// 1-currents. Wrapped monomials are not supported here.
CurrentExpr wedge(const CurrentExpr& x, const CurrentExpr& y);

/// B1(z1) delta(z2 = 0) - B1(z2) dz1.
CurrentExpr theta01();

/// Exterior derivative on currents of degree <= 1.
///
/// Degree 0: d B1(l) = dl - delta(l = 0), d B2(l) = 2 B1(l) dl, Leibniz.
/// Degree 1: the form-model derivative times -1, so that
/// d(theta01) = delta0 - dz1^dz2.
CurrentExpr d(const CurrentExpr& e);

/// Pushforward along the torus map z -> M z, with M replaced by its primitive
/// integral form. Requires det M > 0.
CurrentExpr push_current(const MatQ2& m, const CurrentExpr& e);

/// Pullback along z -> c z.
CurrentExpr pullback_c(const BigInt& c, const CurrentExpr& e);

/// The 0-current of the function represented by an element of M.
CurrentExpr embed(const MElement& e);

/// d(embed(m)) == push_current(g, theta01) - theta01.
bool verify_lift(const MatQ2& g, const MElement& m);

/// Value of a 0-current as a function, with b1 = 0 at integers.
Rational eval_function(const CurrentExpr& e, const TorusPoint& x);

/// Thrown for operations outside the supported fragment.
class CurrentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ec
