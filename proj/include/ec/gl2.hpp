#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ec/rational.hpp"
#include "ec/torus.hpp"

namespace ec {

/// 2x2 matrix (a b; c d), row-major.
template <typename T>
struct Mat2 {
  T a{1}, b{0}, c{0}, d{1};

  T det() const { return a * d - b * c; }
  T trace() const { return a + d; }

  friend Mat2 operator*(const Mat2& l, const Mat2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }
  Mat2 scaled(const T& s) const { return {a * s, b * s, c * s, d * s}; }
  /// Adjugate (d -b; -c a); equals det * inverse.
  Mat2 adj() const { return {d, -b, -c, a}; }

  friend bool operator==(const Mat2&, const Mat2&) = default;
  friend auto operator<=>(const Mat2& l, const Mat2& r) {
    if (auto o = l.a <=> r.a; o != 0) return o;
    if (auto o = l.b <=> r.b; o != 0) return o;
    if (auto o = l.c <=> r.c; o != 0) return o;
    return l.d <=> r.d;
  }
};

using MatQ2 = Mat2<Rational>;

/// Integer matrix. mpz_class lacks <=>, so ordering is spelled out.
struct MatZ2 {
  BigInt a{1}, b{0}, c{0}, d{1};

  BigInt det() const { return a * d - b * c; }
  friend MatZ2 operator*(const MatZ2& l, const MatZ2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }
  MatZ2 adj() const { return {d, -b, -c, a}; }
  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }

  friend bool operator==(const MatZ2& l, const MatZ2& r) {
    return l.a == r.a && l.b == r.b && l.c == r.c && l.d == r.d;
  }
  friend bool operator<(const MatZ2& l, const MatZ2& r);
};

MatQ2 to_rational(const MatZ2& m);
bool is_integral(const MatQ2& m);
/// Throws std::invalid_argument if some entry is not an integer.
MatZ2 to_integral(const MatQ2& m);

/// Parses "a,b;c,d" with rational entries.
MatQ2 parse_matrix(std::string_view text);
std::string format_matrix(const MatQ2& m);
std::string format_matrix(const MatZ2& m);

namespace mat {
MatQ2 identity();
MatQ2 S();
MatQ2 T(long n = 1);
MatQ2 diag(const Rational& x, const Rational& y);
MatQ2 inverse(const MatQ2& m);
}  // namespace mat

/// Thrown when a matrix violates a documented precondition.
class MatrixDomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// M = scale * mat with mat integral of content 1.
struct PrimitiveIntegralForm {
  Rational scale;
  MatZ2 mat;
};

/// Splits a matrix of positive determinant into a positive scalar and a
/// primitive integral matrix. Throws MatrixDomainError if det <= 0.
PrimitiveIntegralForm trace_normalize(const MatQ2& m);

/// Right Hermite form M = H * U with U in SL2(Z) and
/// H = (h1 h2; 0 h3), h1, h3 > 0, 0 <= h2 < h1. Requires det M > 0.
struct HermiteSplit {
  MatZ2 h;
  MatZ2 u;
};
HermiteSplit hermite_right(const MatZ2& m);

// ---------------------------------------------------------------------------
// Bruhat factorization.

struct BorelFactors {
  MatQ2 u;  // (1 b/d; 0 1)
  MatQ2 t;  // diag(a, d)
};

struct BigCellFactors {
  MatQ2 m1;    // (1 a*sgn(c); 0 |c|)
  MatQ2 s;     // S
  MatQ2 sign;  // sgn(c) * I
  MatQ2 m2;    // (1 d/c; 0 det/|c|)
  // Refinements m1 = u1 * d1 and m2 = u2 * d2 through the unipotent/diagonal split.
  MatQ2 u1, d1, u2, d2;
};

using BruhatFactors = std::variant<BorelFactors, BigCellFactors>;

BruhatFactors bruhat_factor(const MatQ2& g);
MatQ2 product(const BruhatFactors& f);
/// Ordered factor list (u, t) or (m1, S, sign, m2).
std::vector<MatQ2> factor_list(const BruhatFactors& f);

// ---------------------------------------------------------------------------
// Words in S and T^n.

struct STLetter {
  bool is_s = true;
  BigInt power;  // exponent of T when !is_s; never zero

  static STLetter s() { return {true, 0}; }
  static STLetter t(const BigInt& n) { return {false, n}; }
  MatQ2 matrix() const;
  std::string str() const;
  friend bool operator==(const STLetter& l, const STLetter& r) { return l.is_s == r.is_s && l.power == r.power; }
};

struct STWord {
  std::vector<STLetter> letters;
  /// Number of S^2 = -I pairs appended to close the word.
  std::size_t minus_identity_pairs = 0;

  MatQ2 product() const;
  /// "S T^3 S T^-2"; the empty word prints as "I".
  std::string str() const;
};

/// Euclidean decomposition of an SL2(Z) matrix. Throws MatrixDomainError
/// when the input is not integral of determinant 1.
STWord st_decompose(const MatQ2& g);

// ---------------------------------------------------------------------------
// Torus action.

/// Left action x -> g x on (Q/Z)^2. Throws MatrixDomainError for non-integral g.
TorusPoint apply(const MatQ2& g, const TorusPoint& x);
TorusPoint apply(const MatZ2& g, const TorusPoint& x);

/// All y with M y = x on the torus (exactly det M of them), sorted.
/// Throws MatrixDomainError unless M is integral with det M > 0.
std::vector<TorusPoint> preimages(const MatQ2& m, const TorusPoint& x);
std::vector<TorusPoint> preimages(const MatZ2& m, const TorusPoint& x);

}  // namespace ec
