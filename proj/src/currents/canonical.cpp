#include <algorithm>
#include <tuple>

#include "internal.hpp"

namespace ec {

namespace detail {

namespace {

bool canonical_sign(const BigInt& a, const BigInt& b) { return a > 0 || (a == 0 && b > 0); }

struct Alt {
  Rational coeff;
  std::optional<Factor> factor;
};

Rational bernoulli_value(int order, const Rational& x) { return order == 1 ? b1(x) : b2(x); }

// B_k(m * base.z + o) as a sum of factors with covector exactly `base`.
std::vector<Alt> expand(int order, BigInt m, const BigInt& ba, const BigInt& bb, Rational o) {
  Rational sign = 1;
  if (m < 0) {
    m = -m;
    o = -o;
    if (order == 1) sign = -1;
  }
  const Rational scale = order == 1 ? sign : sign * Rational(m);
  std::vector<Alt> out;
  for (BigInt j = 0; j < m; ++j) out.push_back({scale, Factor{order, ba, bb, frac((o + Rational(j)) / Rational(m))}});
  return out;
}

std::vector<Alt> reduce_free(const Factor& f) {
  if (f.a == 0 && f.b == 0) return {{bernoulli_value(f.order, f.offset), std::nullopt}};
  const BigInt g = gcd(f.a, f.b);
  BigInt a = f.a / g, b = f.b / g;
  BigInt m = g;
  if (!canonical_sign(a, b)) {
    a = -a;
    b = -b;
    m = -m;
  }
  return expand(f.order, m, a, b, f.offset);
}

std::vector<Alt> reduce_on_line(const Factor& f, const BigInt& p, const BigInt& q, const Rational& t) {
  const BigInt n = -f.a * q + f.b * p;
  if (n == 0) {
    const BigInt lambda = p != 0 ? BigInt(f.a / p) : BigInt(f.b / q);
    return {{bernoulli_value(f.order, Rational(lambda) * t + f.offset), std::nullopt}};
  }
  const auto [u1, u2] = line_transversal(p, q);
  const BigInt eu = -u1 * q + u2 * p;
  const BigInt m = n * eu;
  const BigInt r1 = f.a - m * u1, r2 = f.b - m * u2;
  const BigInt k = p != 0 ? BigInt(r1 / p) : BigInt(r2 / q);
  return expand(f.order, m, u1, u2, f.offset + Rational(k) * t);
}

void rewrite_squares(std::vector<Factor> fs, const Rational& coeff, const Monomial& shape, Terms& out) {
  std::sort(fs.begin(), fs.end());
  for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
    if (fs[i].order != 1 || !(fs[i] == fs[i + 1])) continue;
    // B1(l)^2 = B2(l) + 1/12 away from l = 0.
    std::vector<Factor> sq = fs;
    sq[i].order = 2;
    sq.erase(sq.begin() + static_cast<long>(i) + 1);
    std::vector<Factor> rest = fs;
    rest.erase(rest.begin() + static_cast<long>(i), rest.begin() + static_cast<long>(i) + 2);
    rewrite_squares(std::move(sq), coeff, shape, out);
    rewrite_squares(std::move(rest), coeff / Rational(12), shape, out);
    return;
  }
  Monomial m = shape;
  m.factors = std::move(fs);
  out.emplace_back(std::move(m), coeff);
}

Terms canonicalize_plain(const Monomial& raw, const Rational& coeff) {
  Terms out;
  if (raw.form == Form::Point) {
    Rational v = coeff;
    for (const auto& f : raw.factors) v *= f.value_at(raw.point);
    if (!v.is_zero()) {
      Monomial m;
      m.form = Form::Point;
      m.point = raw.point;
      out.emplace_back(m, v);
    }
    return out;
  }

  // One entry per primitive line (or a single entry for free forms).
  struct Shape {
    Monomial m;
    Rational coeff;
  };
  std::vector<Shape> shapes;
  const bool on_line = raw.form == Form::Delta || raw.form == Form::LineDensity;
  if (on_line) {
    const BigInt g = gcd(raw.p, raw.q);
    if (g == 0) throw CurrentError("line current with zero covector");
    BigInt p = raw.p / g, q = raw.q / g;
    Rational c = raw.form == Form::LineDensity ? coeff * Rational(g) : coeff;
    bool flip = !canonical_sign(p, q);
    if (flip) {
      p = -p;
      q = -q;
    }
    for (BigInt j = 0; j < g; ++j) {
      Rational t = (raw.t + Rational(j)) / Rational(g);
      Rational cj = c;
      if (flip) {
        t = -t;
        if (raw.form == Form::Delta) cj = -cj;
      }
      Monomial m;
      m.form = raw.form;
      m.p = p;
      m.q = q;
      m.t = frac(t);
      shapes.push_back({m, cj});
    }
  } else {
    Monomial m;
    m.form = raw.form;
    shapes.push_back({m, coeff});
  }

  for (const auto& shape : shapes) {
    std::vector<std::pair<Rational, std::vector<Factor>>> partial{{shape.coeff, {}}};
    for (const auto& f : raw.factors) {
      const auto alts = on_line ? reduce_on_line(f, shape.m.p, shape.m.q, shape.m.t) : reduce_free(f);
      std::vector<std::pair<Rational, std::vector<Factor>>> next;
      for (const auto& [c, fs] : partial) {
        for (const auto& alt : alts) {
          const Rational nc = c * alt.coeff;
          if (nc.is_zero()) continue;
          auto nfs = fs;
          if (alt.factor) nfs.push_back(*alt.factor);
          next.emplace_back(nc, std::move(nfs));
        }
      }
      partial = std::move(next);
    }
    for (auto& [c, fs] : partial) rewrite_squares(std::move(fs), c, shape.m, out);
  }
  return out;
}

Terms canonicalize_wrapped(const MatZ2& w, const Monomial& inner, const Rational& coeff) {
  if (w.is_identity()) return {{inner, coeff}};
  if (auto pushed = try_push(w, inner, coeff)) return *pushed;
  const HermiteSplit hs = hermite_right(w);
  Terms base{{inner, coeff}};
  if (!hs.u.is_identity()) {
    auto moved = try_push(hs.u, inner, coeff);
    if (!moved) throw CurrentError("unimodular pushforward failed to expand");
    base = std::move(*moved);
  }
  for (auto& [m, c] : base) m.wrapper = hs.h;
  return base;
}

}  // namespace

std::pair<BigInt, BigInt> line_transversal(const BigInt& p, const BigInt& q) {
  if (p == 0) return {1, 0};
  if (q == 0) return {0, 1};
  const ExtGcd e = ext_gcd(p, q);
  BigInt u1 = -e.y, u2 = e.x;
  const BigInt k = floor_div(u1, p);
  u1 -= k * p;
  u2 -= k * q;
  return {u1, u2};
}

std::pair<BigInt, BigInt> unit_section(const BigInt& p, const BigInt& q) {
  const ExtGcd e = ext_gcd(p, q);
  if (e.g != 1) throw CurrentError("line covector is not primitive");
  return {e.x, e.y};
}

Terms canonicalize(const Monomial& m, const Rational& coeff) {
  if (coeff.is_zero()) return {};
  if (!m.wrapper) return canonicalize_plain(m, coeff);
  Monomial inner = m;
  inner.wrapper.reset();
  Terms out;
  for (auto& [im, ic] : canonicalize_plain(inner, coeff)) {
    auto part = canonicalize_wrapped(*m.wrapper, im, ic);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace detail

Rational Factor::value_at(const TorusPoint& x) const {
  const Rational arg = Rational(a) * x.x1() + Rational(b) * x.x2() + offset;
  return order == 1 ? b1(arg) : b2(arg);
}

namespace {

std::string linear_str(const BigInt& a, const BigInt& b) {
  std::string out;
  auto piece = [&](const BigInt& c, const char* var) {
    if (c == 0) return;
    if (c < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    const BigInt mag = abs(c);
    if (mag != 1) out += mag.get_str();
    out += var;
  };
  piece(a, "z1");
  piece(b, "z2");
  return out.empty() ? "0" : out;
}

}  // namespace

std::string Factor::str() const {
  std::string out = "B" + std::to_string(order) + "(" + linear_str(a, b);
  if (!offset.is_zero()) out += (offset.sign() > 0 ? "+" : "") + offset.str();
  return out + ")";
}

bool operator<(const Factor& l, const Factor& r) {
  if (l.order != r.order) return l.order < r.order;
  if (l.a != r.a) return l.a < r.a;
  if (l.b != r.b) return l.b < r.b;
  return l.offset < r.offset;
}

int Monomial::degree() const {
  switch (form) {
    case Form::One: return 0;
    case Form::Dz1:
    case Form::Dz2:
    case Form::Delta: return 1;
    default: return 2;
  }
}

std::string Monomial::str() const {
  std::vector<std::string> parts;
  for (const auto& f : factors) parts.push_back(f.str());
  const std::string line = linear_str(p, q) + "=" + t.str();
  switch (form) {
    case Form::One: break;
    case Form::Dz1: parts.push_back("dz1"); break;
    case Form::Dz2: parts.push_back("dz2"); break;
    case Form::Area: parts.push_back("dz1^dz2"); break;
    case Form::Delta: parts.push_back("delta(" + line + ")"); break;
    case Form::LineDensity: parts.push_back("line(" + line + ")"); break;
    case Form::Point: parts.push_back("delta_pt(" + point.str() + ")"); break;
  }
  std::string body;
  for (const auto& s : parts) body += (body.empty() ? "" : "*") + s;
  if (body.empty()) body = "1";
  if (wrapper) return "(" + format_matrix(*wrapper) + ")_*[" + body + "]";
  return body;
}

bool operator<(const Monomial& l, const Monomial& r) {
  if (l.wrapper.has_value() != r.wrapper.has_value()) return !l.wrapper.has_value();
  if (l.wrapper && !(*l.wrapper == *r.wrapper)) return *l.wrapper < *r.wrapper;
  if (l.form != r.form) return l.form < r.form;
  if (l.p != r.p) return l.p < r.p;
  if (l.q != r.q) return l.q < r.q;
  if (l.t != r.t) return l.t < r.t;
  if (l.point != r.point) return l.point < r.point;
  return l.factors < r.factors;
}

bool operator==(const Monomial& l, const Monomial& r) {
  return l.wrapper == r.wrapper && l.form == r.form && l.p == r.p && l.q == r.q && l.t == r.t &&
         l.point == r.point && l.factors == r.factors;
}

int CurrentExpr::degree() const {
  int out = 0;
  for (const auto& [m, c] : terms_) out = std::max(out, m.degree());
  return out;
}

void CurrentExpr::add(const Monomial& m, const Rational& coeff) {
  for (const auto& [cm, cc] : detail::canonicalize(m, coeff)) add_canonical(cm, cc);
}

void CurrentExpr::add_canonical(const Monomial& m, const Rational& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

CurrentExpr& CurrentExpr::operator+=(const CurrentExpr& o) {
  for (const auto& [m, c] : o.terms_) add_canonical(m, c);
  return *this;
}

CurrentExpr& CurrentExpr::operator-=(const CurrentExpr& o) {
  for (const auto& [m, c] : o.terms_) add_canonical(m, -c);
  return *this;
}

CurrentExpr operator*(const Rational& s, const CurrentExpr& e) {
  CurrentExpr out;
  if (s.is_zero()) return out;
  for (const auto& [m, c] : e.terms_) out.terms_.emplace(m, s * c);
  return out;
}

std::string CurrentExpr::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    const bool neg = c.sign() < 0;
    const Rational mag = c.abs();
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (mag != Rational(1)) out += mag.str() + "*";
    out += m.str();
  }
  return out;
}

}  // namespace ec
