#include "ec/rational.hpp"

#include <stdexcept>

namespace ec {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty rational");
  const auto slash = s.find('/');
  auto parse_int = [](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) throw std::invalid_argument("malformed integer '" + part + "'");
    for (std::size_t k = i; k < part.size(); ++k)
      if (part[k] < '0' || part[k] > '9') throw std::invalid_argument("malformed integer '" + part + "'");
    return BigInt(part[0] == '+' ? part.substr(1) : part, 10);
  };
  if (slash == std::string::npos) return Rational(parse_int(s));
  BigInt num = parse_int(s.substr(0, slash));
  BigInt den = parse_int(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return Rational(num, den);
}

BigInt Rational::floor() const {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return out;
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational");
  q_ /= o.q_;
  return *this;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw std::domain_error("floor_div by zero");
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

BigInt mod_floor(const BigInt& a, const BigInt& b) { return a - b * floor_div(a, b); }

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

ExtGcd ext_gcd(const BigInt& a, const BigInt& b) {
  ExtGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

long to_long(const BigInt& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("integer " + v.get_str() + " exceeds machine range");
  return v.get_si();
}

}  // namespace ec
