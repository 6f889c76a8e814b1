#include <cmath>
#include <limits>
#include <numbers>

#include "ec/analytic.hpp"
#include "ec/kernels.hpp"

namespace ec {

namespace {

using std::numbers::pi;

// e(x) = exp(2 pi i x).
Complex unit(double x) { return std::polar(1.0, 2 * pi * x); }
Complex e_of(Complex z) { return std::exp(Complex(0, 2 * pi) * z); }

// Phase e(r * num / den) reduced exactly before converting to double.
Complex rational_phase(const Rational& x) { return unit(frac(x).to_double()); }

Rational neg_frac(const Rational& x) { return frac(-x); }

// sum_{|n| <= K, n != -z} e(n beta) / (z + n)^2 plus a tail estimate for |n| > K.
Complex inner_direct(Complex z, const Rational& beta, long K, bool skip_zero) {
  const long period = to_long(beta.den());
  Complex sum = 0;
  for (long r = 0; r < period; ++r) {
    const Complex phase = rational_phase(beta * Rational(r));
    // Smallest n >= -K with n = r mod period.
    long lo = -K + ((r + K) % period + period) % period;
    if (lo > K) continue;
    const long count = (K - lo) / period + 1;
    const double step = static_cast<double>(period);
    if (skip_zero && r == 0) {
      const long below = (0 - lo) / period;
      sum += phase * kernels::inv_square_sum(z, static_cast<double>(lo), step, below);
      sum += phase * kernels::inv_square_sum(z, static_cast<double>(period), step, count - below - 1);
    } else {
      sum += phase * kernels::inv_square_sum(z, static_cast<double>(lo), step, count);
    }
  }
  const double k = static_cast<double>(K);
  if (beta.is_zero()) return sum + 1.0 / (k + 0.5 + z) + 1.0 / (k + 0.5 - z);
  // Two rounds of summation by parts on each side.
  auto side = [&](Complex w, auto f) {
    const Complex one_minus = 1.0 - w;
    const Complex f1 = f(k + 1), f2 = f(k + 2);
    return std::pow(w, k + 1) * f1 / one_minus + std::pow(w, k + 2) * (f2 - f1) / (one_minus * one_minus);
  };
  const Complex w = rational_phase(beta);
  sum += side(w, [&](double n) { return 1.0 / ((z + n) * (z + n)); });
  sum += side(std::conj(w), [&](double n) { return 1.0 / ((n - z) * (n - z)); });
  return sum;
}

}  // namespace

UpperHalfPoint UpperHalfPoint::from(Complex z) {
  if (!(z.imag() > 0)) throw AnalyticError("point is not in the upper half-plane");
  return {z.real(), z.imag()};
}

UpperHalfPoint act(const MatQ2& g, UpperHalfPoint tau) {
  const Complex t = tau.z();
  return UpperHalfPoint::from((g.a.to_double() * t + g.b.to_double()) / (g.c.to_double() * t + g.d.to_double()));
}

SeriesValue e2_series(UpperHalfPoint tau, const TorusPoint& p, const SeriesParams& params) {
  if (p.is_zero()) throw AnalyticError("e2 needs a nonzero torsion point");
  if (!(tau.im > 0)) throw AnalyticError("tau must lie in the upper half-plane");
  if (params.m_max < 1 || params.n_max < 1) throw AnalyticError("series bounds must be positive");
  const Rational& alpha = p.x1();
  const Rational& beta = p.x2();
  const Complex t = tau.z();

  if (params.method == SeriesMethod::Direct) {
    Complex sum = inner_direct(0, beta, params.n_max, true);
    for (long m = 1; m <= params.m_max; ++m) {
      const Complex ph = rational_phase(alpha * Rational(m));
      const Complex mt = static_cast<double>(m) * t;
      // The m < 0 rows equal the m > 0 rows at (-alpha, -beta).
      sum += ph * inner_direct(mt, beta, params.n_max, false);
      sum += std::conj(ph) * inner_direct(mt, neg_frac(beta), params.n_max, false);
    }
    // Row m decays like exp(-2 pi m Im tau min(1 - b, 1 - b')); rounding grows
    // with the number of terms, each at most max(1, Im tau^-2) in size.
    const double slow = std::min(1 - beta.to_double(), 1 - neg_frac(beta).to_double());
    const double decay = std::exp(-2 * pi * tau.im * slow);
    const double m_tail = 8 * pi * pi * std::pow(decay, static_cast<double>(params.m_max + 1)) / (1 - decay);
    const double k = static_cast<double>(params.n_max);
    const double terms = (2.0 * static_cast<double>(params.m_max) + 1) * (2 * k + 1);
    const double rounding = 4 * std::numeric_limits<double>::epsilon() * terms * std::max(1.0, 1 / (tau.im * tau.im));
    return {sum, m_tail + 4.0 / (k * k * k) + rounding};
  }

  // Inner sums in closed form:
  //   sum_n e(n b) / (z + n)^2 = -4 pi^2 e(z (1 - b)) ((1 - b)/(1 - x) + x/(1 - x)^2), x = e(z).
  const double b = beta.to_double();
  const double bp = neg_frac(beta).to_double();
  kernels::QSeries in;
  in.q = e_of(t);
  in.u1 = e_of(t * (1 - b));
  in.u2 = e_of(t * (1 - bp));
  in.ph = rational_phase(alpha);
  in.c1 = 1 - b;
  in.c2 = 1 - bp;
  const double rate = 2 * pi * tau.im * std::min(in.c1, in.c2);
  const long needed = static_cast<long>(std::ceil(40.0 / rate));
  in.m_max = std::max(params.m_max, needed);
  const Complex sum = kernels::qseries_sum(in);
  const double next = std::exp(-rate * static_cast<double>(in.m_max + 1));
  const double qabs = std::abs(in.q);
  const double term_bound = 4 * pi * pi * 2 * next * (1 / (1 - qabs) + 1 / ((1 - qabs) * (1 - qabs)));
  return {2 * pi * pi * b2(beta).to_double() - 4 * pi * pi * sum, term_bound / (1 - std::exp(-rate))};
}

Complex e2_value(UpperHalfPoint tau, const TorusPoint& p, const SeriesParams& params) {
  return e2_series(tau, p, params).value;
}

}  // namespace ec
