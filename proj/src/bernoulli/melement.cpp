#include "ec/bernoulli_space.hpp"

#include <stdexcept>

#include "ec/rng.hpp"

namespace ec {

std::string kernel_name(Kernel k) { return k == Kernel::B2Second ? "B2(z2)" : "B1(z1)B1(z2)"; }

Kernel parse_kernel(std::string_view name) {
  if (name == "B2(z2)" || name == "B2_SECOND") return Kernel::B2Second;
  if (name == "B1(z1)B1(z2)" || name == "B1XB1") return Kernel::B1xB1;
  throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
}

Rational eval_kernel(Kernel k, const TorusPoint& y) {
  if (k == Kernel::B2Second) return b2(y.x2());
  return b1(y.x1()) * b1(y.x2());
}

MElement MElement::base(Kernel k, const Rational& coeff) { return term(mat::identity(), k, coeff); }

MElement MElement::term(const MatQ2& push, Kernel k, const Rational& coeff) {
  MElement e;
  e.add({trace_normalize(push).mat, k}, coeff);
  return e;
}

void MElement::add(const MKey& key, const Rational& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

MElement& MElement::operator+=(const MElement& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

MElement& MElement::operator-=(const MElement& o) {
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

MElement operator*(const Rational& s, const MElement& e) {
  MElement out;
  if (s.is_zero()) return out;
  for (const auto& [k, c] : e.terms_) out.terms_.emplace(k, s * c);
  return out;
}

std::string MElement::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += c.str() + "*";
    if (!k.push.is_identity()) out += "(" + format_matrix(k.push) + ")_*";
    out += kernel_name(k.kernel);
  }
  return out;
}

MElement push(const MatQ2& m, const MElement& e) {
  if (m.det().sign() <= 0) throw MatrixDomainError("push needs positive determinant, got " + format_matrix(m));
  MElement out;
  for (const auto& [k, c] : e.terms()) out.add({trace_normalize(m * to_rational(k.push)).mat, k.kernel}, c);
  return out;
}

Rational eval(const MElement& e, const TorusPoint& x) {
  Rational total;
  for (const auto& [k, c] : e.terms()) {
    Rational s;
    if (k.push.is_identity()) {
      s = eval_kernel(k.kernel, x);
    } else {
      for (const auto& y : preimages(k.push, x)) s += eval_kernel(k.kernel, y);
    }
    total += c * s;
  }
  return total;
}

AffineLine AffineLine::make(const BigInt& p, const BigInt& q, const Rational& t) {
  const BigInt g = gcd(p, q);
  if (g == 0) throw std::invalid_argument("line covector must be nonzero");
  BigInt pp = p / g, qq = q / g;
  Rational tt = t;
  if (pp < 0 || (pp == 0 && qq < 0)) {
    pp = -pp;
    qq = -qq;
    tt = -tt;
  }
  return {pp, qq, frac(tt)};
}

bool AffineLine::contains(const TorusPoint& x) const {
  return (Rational(p) * x.x1() + Rational(q) * x.x2() - t).is_integer();
}

std::string AffineLine::str() const {
  return "(" + p.get_str() + "," + q.get_str() + ")." + "z=" + t.str();
}

bool operator<(const AffineLine& l, const AffineLine& r) {
  if (l.p != r.p) return l.p < r.p;
  if (l.q != r.q) return l.q < r.q;
  return l.t < r.t;
}

bool DiscontinuityLocus::contains(const TorusPoint& x) const {
  for (const auto& l : lines)
    if (l.contains(x)) return true;
  return false;
}

DiscontinuityLocus discont_locus(const MElement& e) {
  DiscontinuityLocus out;
  for (const auto& [k, c] : e.terms()) {
    if (k.kernel != Kernel::B1xB1) continue;
    // Images of the axes y1 = 0 and y2 = 0: subtori spanned by the columns.
    const MatZ2& a = k.push;
    out.lines.insert(AffineLine::make(a.d, -a.b, 0));
    out.lines.insert(AffineLine::make(a.c, -a.a, 0));
  }
  return out;
}

Rational smoothed_eval(const MElement& e, const BigInt& c, const TorusPoint& x) {
  return eval(e, x.scaled(c)) - Rational(c * c) * eval(e, x);
}

std::vector<TorusPoint> sample_points(const DiscontinuityLocus& locus, int trials, std::uint64_t seed) {
  std::vector<TorusPoint> out;
  for (long q : {5L, 7L, 24L}) {
    for (long i = 0; i < q; ++i) {
      for (long j = 0; j < q; ++j) {
        TorusPoint x{Rational(BigInt(i), BigInt(q)), Rational(BigInt(j), BigInt(q))};
        if (!x.is_zero() && !locus.contains(x)) out.push_back(x);
      }
    }
  }
  const auto extra = random_points(locus, trials, seed);
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

std::vector<TorusPoint> random_points(const DiscontinuityLocus& locus, int trials, std::uint64_t seed) {
  std::vector<TorusPoint> out;
  Rng rng(seed);
  for (int attempts = 0; static_cast<int>(out.size()) < trials && attempts < 1000 * (trials + 1); ++attempts) {
    const TorusPoint x = rng.torus_point(97);
    if (x.is_zero() || locus.contains(x)) continue;
    out.push_back(x);
  }
  return out;
}

bool functions_equal(const MElement& e1, const MElement& e2, int trials, std::uint64_t seed) {
  const MElement diff = e1 - e2;
  if (diff.is_zero()) return true;
  for (const auto& x : sample_points(discont_locus(diff), trials, seed))
    if (!eval(diff, x).is_zero()) return false;
  return true;
}

nlohmann::json to_json(const MElement& e) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [k, c] : e.terms())
    arr.push_back({{"coeff", c.str()},
                   {"matrix", format_matrix(k.push)},
                   {"kernel", k.kernel == Kernel::B2Second ? "B2_SECOND" : "B1XB1"}});
  return arr;
}

MElement melement_from_json(const nlohmann::json& j) {
  MElement out;
  for (const auto& rec : j)
    out += MElement::term(parse_matrix(rec.at("matrix").get<std::string>()),
                          parse_kernel(rec.at("kernel").get<std::string>()),
                          Rational::parse(rec.at("coeff").get<std::string>()));
  return out;
}

}  // namespace ec
