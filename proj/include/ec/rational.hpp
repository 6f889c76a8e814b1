#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ec {

using BigInt = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Thin value wrapper over GMP's mpq_class.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long long v) : q_(BigInt(std::to_string(v))) {}  // NOLINT
  Rational(const BigInt& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  template <class U>
  Rational(const __gmp_expr<mpz_t, U>& e) : q_(BigInt(e)) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(mpq_class q);

  /// Parses "p/q", "n" or "-p/q". Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_integer() const { return q_.get_den() == 1; }
  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }

  BigInt floor() const;
  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  double to_double() const { return q_.get_d(); }
  std::string str() const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

// Integer helpers shared by the lattice code.
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt mod_floor(const BigInt& a, const BigInt& b);
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

/// Returns g = gcd(a, b) >= 0 and Bezout coefficients with x*a + y*b = g.
struct ExtGcd {
  BigInt g, x, y;
};
ExtGcd ext_gcd(const BigInt& a, const BigInt& b);

/// Converts to a machine integer; throws std::overflow_error if it does not fit.
long to_long(const BigInt& v);

}  // namespace ec
