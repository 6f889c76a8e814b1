#include <map>

#include "internal.hpp"

namespace ec {

using detail::Terms;

namespace {

Monomial make(Form form, std::vector<Factor> factors = {}) {
  Monomial m;
  m.form = form;
  m.factors = std::move(factors);
  return m;
}

Monomial make_line(Form form, const BigInt& p, const BigInt& q, const Rational& t, std::vector<Factor> factors = {}) {
  Monomial m = make(form, std::move(factors));
  m.p = p;
  m.q = q;
  m.t = t;
  return m;
}

CurrentExpr single(const Monomial& m, const Rational& c = 1) {
  CurrentExpr e;
  e.add(m, c);
  return e;
}

std::vector<Factor> concat(std::vector<Factor> a, const std::vector<Factor>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Raw terms c * factors * alpha for the 1-forms alpha in d(prod of factors).
Terms d_factors(const std::vector<Factor>& fs) {
  Terms out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    std::vector<Factor> rest = fs;
    rest.erase(rest.begin() + static_cast<long>(i));
    const Factor& f = fs[i];
    if (f.order == 1) {
      out.emplace_back(make(Form::Dz1, rest), Rational(f.a));
      out.emplace_back(make(Form::Dz2, rest), Rational(f.b));
      out.emplace_back(make_line(Form::Delta, f.a, f.b, -f.offset, rest), Rational(-1));
    } else {
      auto with_b1 = rest;
      with_b1.push_back({1, f.a, f.b, f.offset});
      out.emplace_back(make(Form::Dz1, with_b1), Rational(2 * f.a));
      out.emplace_back(make(Form::Dz2, with_b1), Rational(2 * f.b));
    }
  }
  return out;
}

BigInt det2(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d) { return a * d - b * c; }

// Covector of a 1-form monomial that is a constant form.
std::pair<BigInt, BigInt> dz_covector(Form f) { return f == Form::Dz1 ? std::pair<BigInt, BigInt>{1, 0} : std::pair<BigInt, BigInt>{0, 1}; }

// x ^ y for unwrapped 1-form monomials, with the given factors on the result.
void wedge_one(const Monomial& x, const Monomial& y, const std::vector<Factor>& fs, const Rational& c,
               CurrentExpr& out) {
  const bool xd = x.form == Form::Delta, yd = y.form == Form::Delta;
  if (!xd && !yd) {
    if (x.form == y.form) return;
    out.add(make(Form::Area, fs), x.form == Form::Dz1 ? c : -c);
    return;
  }
  if (xd && !yd) {
    const auto [m1, m2] = dz_covector(y.form);
    out.add(make_line(Form::LineDensity, x.p, x.q, x.t, fs), c * Rational(det2(x.p, x.q, m1, m2)));
    return;
  }
  if (!xd && yd) {
    const auto [m1, m2] = dz_covector(x.form);
    out.add(make_line(Form::LineDensity, y.p, y.q, y.t, fs), -c * Rational(det2(y.p, y.q, m1, m2)));
    return;
  }
  const BigInt delta = det2(x.p, x.q, y.p, y.q);
  if (delta == 0) return;
  std::vector<TorusPoint> pts =
      delta > 0 ? preimages(MatZ2{x.p, x.q, y.p, y.q}, TorusPoint(x.t, y.t))
                : preimages(MatZ2{y.p, y.q, x.p, x.q}, TorusPoint(y.t, x.t));
  const Rational s = delta > 0 ? c : -c;
  for (const auto& pt : pts) {
    Monomial m = make(Form::Point, fs);
    m.point = pt;
    out.add(m, s);
  }
}

void require_unwrapped(const Monomial& m, const char* op) {
  if (m.wrapper) throw CurrentError(std::string(op) + " does not accept wrapped pushforward terms");
}

CurrentExpr d_monomial(const Monomial& m, const Rational& c) {
  CurrentExpr out;
  if (m.wrapper) {
    Monomial inner = m;
    inner.wrapper.reset();
    const CurrentExpr inner_d = d(single(inner, c));
    for (const auto& [dm, dc] : inner_d.terms()) {
      Monomial w = dm;
      w.wrapper = dm.wrapper ? *m.wrapper * *dm.wrapper : *m.wrapper;
      out.add(w, dc);
    }
    return out;
  }
  if (m.degree() == 0) {
    for (const auto& [rm, rc] : d_factors(m.factors)) out.add(rm, c * rc);
    return out;
  }
  if (m.degree() == 1) {
    // d(F w) = dF ^ w in the form model; currents of degree 1 carry an extra -1.
    for (const auto& [rm, rc] : d_factors(m.factors)) wedge_one(rm, m, rm.factors, -c * rc, out);
    return out;
  }
  throw CurrentError("d is only implemented for currents of degree 0 and 1");
}

}  // namespace

CurrentExpr constant(const Rational& c) { return single(make(Form::One), c); }

CurrentExpr bernoulli(int order, const BigInt& a, const BigInt& b, const Rational& offset) {
  if (order != 1 && order != 2) throw CurrentError("only B1 and B2 factors are supported");
  return single(make(Form::One, {Factor{order, a, b, offset}}));
}

CurrentExpr dz1() { return single(make(Form::Dz1)); }
CurrentExpr dz2() { return single(make(Form::Dz2)); }
CurrentExpr delta_line(const BigInt& p, const BigInt& q, const Rational& t) {
  return single(make_line(Form::Delta, p, q, t));
}
CurrentExpr area() { return single(make(Form::Area)); }

CurrentExpr delta_point(const TorusPoint& x) {
  Monomial m = make(Form::Point);
  m.point = x;
  return single(m);
}

CurrentExpr delta0() { return delta_point({}); }

CurrentExpr delta_torsion(const BigInt& c) {
  CurrentExpr out;
  for (BigInt i = 0; i < c; ++i)
    for (BigInt j = 0; j < c; ++j) out += delta_point({Rational(i, c), Rational(j, c)});
  return out;
}

CurrentExpr wedge(const CurrentExpr& x, const CurrentExpr& y) {
  CurrentExpr out;
  for (const auto& [mx, cx] : x.terms()) {
    require_unwrapped(mx, "wedge");
    for (const auto& [my, cy] : y.terms()) {
      require_unwrapped(my, "wedge");
      const auto fs = concat(mx.factors, my.factors);
      if (mx.degree() == 0 || my.degree() == 0) {
        Monomial m = mx.degree() == 0 ? my : mx;
        m.factors = fs;
        out.add(m, cx * cy);
      } else if (mx.degree() == 1 && my.degree() == 1) {
        wedge_one(mx, my, fs, cx * cy, out);
      } else {
        throw CurrentError("wedge product of degree above 2");
      }
    }
  }
  return out;
}

CurrentExpr theta01() {
  return wedge(bernoulli(1, 1, 0), delta_line(0, 1)) - wedge(bernoulli(1, 0, 1), dz1());
}

CurrentExpr d(const CurrentExpr& e) {
  CurrentExpr out;
  for (const auto& [m, c] : e.terms()) out += d_monomial(m, c);
  return out;
}

CurrentExpr push_current(const MatQ2& g, const CurrentExpr& e) {
  const MatZ2 m = trace_normalize(g).mat;
  CurrentExpr out;
  for (const auto& [mono, c] : e.terms()) {
    Monomial w = mono;
    w.wrapper = mono.wrapper ? m * *mono.wrapper : m;
    out.add(w, c);
  }
  return out;
}

CurrentExpr pullback_c(const BigInt& c, const CurrentExpr& e) {
  if (c < 1) throw CurrentError("pullback_c needs a positive integer");
  CurrentExpr out;
  const Rational rc(c);
  for (const auto& [mono, coeff] : e.terms()) {
    require_unwrapped(mono, "pullback_c");
    Monomial m = mono;
    for (auto& f : m.factors) {
      f.a *= c;
      f.b *= c;
    }
    switch (m.form) {
      case Form::One: out.add(m, coeff); break;
      case Form::Dz1:
      case Form::Dz2: out.add(m, coeff * rc); break;
      case Form::Area: out.add(m, coeff * rc * rc); break;
      case Form::Delta:
      case Form::LineDensity:
        m.p *= c;
        m.q *= c;
        out.add(m, coeff);
        break;
      case Form::Point:
        for (const auto& y : preimages(MatZ2{c, 0, 0, c}, m.point)) {
          Monomial pm = m;
          pm.point = y;
          out.add(pm, coeff);
        }
        break;
    }
  }
  return out;
}

CurrentExpr embed(const MElement& e) {
  CurrentExpr out;
  for (const auto& [key, c] : e.terms()) {
    Monomial m = key.kernel == Kernel::B2Second ? make(Form::One, {Factor{2, 0, 1, 0}})
                                                : make(Form::One, {Factor{1, 1, 0, 0}, Factor{1, 0, 1, 0}});
    m.wrapper = key.push;
    out.add(m, c);
  }
  return out;
}

bool verify_lift(const MatQ2& g, const MElement& m) {
  const CurrentExpr th = theta01();
  return d(embed(m)) == push_current(g, th) - th;
}

Rational eval_function(const CurrentExpr& e, const TorusPoint& x) {
  Rational total;
  for (const auto& [m, c] : e.terms()) {
    if (m.form != Form::One) throw CurrentError("eval_function needs a 0-current, got term " + m.str());
    auto value = [&](const TorusPoint& y) {
      Rational v = 1;
      for (const auto& f : m.factors) v *= f.value_at(y);
      return v;
    };
    Rational s;
    if (m.wrapper) {
      for (const auto& y : preimages(*m.wrapper, x)) s += value(y);
    } else {
      s = value(x);
    }
    total += c * s;
  }
  return total;
}

namespace detail {

namespace {

// Sum over a finite group of prod_f B_{k_f}(x_f + h_f(g)). When the image of
// the group is the product of its projections, this equals
// count * prod_f m_f^(1 - k_f) B_{k_f}(m_f x_f), with m_f the projection sizes.
struct SheetSum {
  Rational scale;
  std::vector<BigInt> m;
};

std::optional<SheetSum> sheet_sum(const std::vector<std::vector<Rational>>& images,
                                  const std::vector<Factor>& fs) {
  std::map<std::vector<Rational>, long> counts;
  for (const auto& img : images) ++counts[img];
  const long each = counts.begin()->second;
  for (const auto& [img, n] : counts)
    if (n != each) return std::nullopt;
  SheetSum out;
  out.scale = Rational(each);
  BigInt prod = 1;
  for (std::size_t f = 0; f < fs.size(); ++f) {
    std::map<Rational, int> proj;
    for (const auto& [img, n] : counts) proj[img[f]] = 1;
    const BigInt mf(static_cast<long>(proj.size()));
    out.m.push_back(mf);
    prod *= mf;
    if (fs[f].order == 2) out.scale /= Rational(mf);
  }
  if (prod != BigInt(static_cast<long>(counts.size()))) return std::nullopt;
  return out;
}

}  // namespace

std::optional<Terms> try_push(const MatZ2& m, const Monomial& mono, const Rational& coeff) {
  Terms out;
  auto emit = [&](const Monomial& raw, const Rational& c) {
    auto part = canonicalize(raw, c);
    out.insert(out.end(), part.begin(), part.end());
  };

  if (mono.form == Form::Point) {
    Monomial r = mono;
    r.point = apply(m, mono.point);
    emit(r, coeff);
    return out;
  }

  const BigInt det = m.det();
  const Rational rdet(det);
  const MatZ2 adj = m.adj();

  if (mono.form == Form::Delta || mono.form == Form::LineDensity) {
    const BigInt &p = mono.p, &q = mono.q;
    const auto [a1, a2] = unit_section(p, q);
    const Rational z1 = mono.t * Rational(a1), z2 = mono.t * Rational(a2);
    const BigInt dir1 = -q, dir2 = p;
    const BigInt md1 = m.a * dir1 + m.b * dir2, md2 = m.c * dir1 + m.d * dir2;
    const BigInt k = gcd(md1, md2);
    const BigInt e1 = md1 / k, e2 = md2 / k;
    const BigInt np = e2, nq = -e1;
    const Rational mz1 = Rational(m.a) * z1 + Rational(m.b) * z2;
    const Rational mz2 = Rational(m.c) * z1 + Rational(m.d) * z2;
    const Rational nt = Rational(np) * mz1 + Rational(nq) * mz2;
    const auto [r1, r2] = unit_section(e1, e2);
    const Rational rho0 = Rational(r1) * mz1 + Rational(r2) * mz2;

    std::vector<Rational> cf;
    std::vector<BigInt> nf;
    for (const auto& f : mono.factors) {
      cf.push_back(Rational(f.a) * z1 + Rational(f.b) * z2 + f.offset);
      nf.push_back(f.a * dir1 + f.b * dir2);
    }
    std::vector<std::vector<Rational>> images;
    for (BigInt i = 0; i < k; ++i) {
      std::vector<Rational> img;
      for (const auto& n : nf) img.push_back(frac(Rational(i * n, k)));
      images.push_back(std::move(img));
    }
    const auto sheets = sheet_sum(images, mono.factors);
    if (!sheets) return std::nullopt;
    Monomial r = make_line(mono.form, np, nq, nt);
    for (std::size_t f = 0; f < mono.factors.size(); ++f) {
      const BigInt& mf = sheets->m[f];
      const BigInt slope = mf * nf[f] / k;
      r.factors.push_back(
          {mono.factors[f].order, slope * r1, slope * r2, Rational(mf) * cf[f] - Rational(slope) * rho0});
    }
    Rational c = coeff * sheets->scale;
    if (mono.form == Form::LineDensity) c /= Rational(k);
    emit(r, c);
    return out;
  }

  // Free forms: preimage sum of the factors times (M^-1)^* of the form.
  const HermiteSplit hs = hermite_right(m);
  std::vector<std::pair<Rational, Rational>> wp;
  for (const auto& f : mono.factors)
    wp.emplace_back(Rational(f.a * adj.a + f.b * adj.c) / rdet, Rational(f.a * adj.b + f.b * adj.d) / rdet);
  std::vector<std::vector<Rational>> images;
  for (BigInt i = 0; i < hs.h.a; ++i) {
    for (BigInt j = 0; j < hs.h.d; ++j) {
      std::vector<Rational> img;
      for (const auto& [w1, w2] : wp) img.push_back(frac(w1 * Rational(i) + w2 * Rational(j)));
      images.push_back(std::move(img));
    }
  }
  const auto sheets = sheet_sum(images, mono.factors);
  if (!sheets) return std::nullopt;
  std::vector<Factor> fs;
  for (std::size_t f = 0; f < mono.factors.size(); ++f) {
    const Rational mf(sheets->m[f]);
    const Rational c1 = mf * wp[f].first, c2 = mf * wp[f].second;
    fs.push_back({mono.factors[f].order, c1.num(), c2.num(), mf * mono.factors[f].offset});
  }
  const Rational c = coeff * sheets->scale;
  switch (mono.form) {
    case Form::One: emit(make(Form::One, fs), c); break;
    case Form::Area: emit(make(Form::Area, fs), c / rdet); break;
    case Form::Dz1:
    case Form::Dz2: {
      // Row i of M^-1 = adj / det.
      const bool first = mono.form == Form::Dz1;
      const Rational r1 = Rational(first ? adj.a : adj.c) / rdet;
      const Rational r2 = Rational(first ? adj.b : adj.d) / rdet;
      emit(make(Form::Dz1, fs), c * r1);
      emit(make(Form::Dz2, fs), c * r2);
      break;
    }
    default: throw CurrentError("unexpected form in pushforward");
  }
  return out;
}

}  // namespace detail

}  // namespace ec
