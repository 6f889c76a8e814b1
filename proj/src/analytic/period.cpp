#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "ec/analytic.hpp"
#include "ec/cocycle.hpp"

namespace ec {

namespace {

using Rule = boost::math::quadrature::gauss<double, 20>;

struct Segment {
  Complex from, to;
  const TorusPoint& p;
  const SeriesParams& params;
  double tail = 0;

  // Gauss-Legendre on the parameter interval [s0, s1] of from + s (to - from).
  Complex rule(double s0, double s1) {
    const double half = 0.5 * (s1 - s0), mid = 0.5 * (s1 + s0);
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    Complex sum = 0;
    auto node = [&](double s, double weight) {
      const Complex tau = from + s * (to - from);
      if (!(tau.imag() > 0)) throw AnalyticError("integration path left the upper half-plane");
      const SeriesValue v = e2_series(UpperHalfPoint::from(tau), p, params);
      tail = std::max(tail, v.tail_bound);
      sum += weight * v.value;
    };
    // Abscissae are stored for the nonnegative half; x[0] = 0 only for odd orders.
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) {
        node(mid, w[i]);
      } else {
        node(mid + half * x[i], w[i]);
        node(mid - half * x[i], w[i]);
      }
    }
    return half * sum * (to - from);
  }

  Complex adapt(double s0, double s1, Complex whole, double tol, int depth, double& err) {
    const double mid = 0.5 * (s0 + s1);
    const Complex left = rule(s0, mid), right = rule(mid, s1);
    const double diff = std::abs(left + right - whole);
    if (diff <= tol || depth >= 40) {
      err += diff;
      return left + right;
    }
    return adapt(s0, mid, left, 0.5 * tol, depth + 1, err) + adapt(mid, s1, right, 0.5 * tol, depth + 1, err);
  }
};

}  // namespace

UpperHalfPoint default_basepoint(const MatQ2& g) {
  if (g.c.is_zero()) return {0.0, 1.0};
  const double c = g.c.to_double();
  return {-g.d.to_double() / c, 1.0 / std::abs(c)};
}

PeriodValue period_integral(const MatQ2& g, UpperHalfPoint tau0, const TorusPoint& p, const SeriesParams& params,
                            double tol) {
  if (!is_integral(g) || g.det() != Rational(1))
    throw PreconditionError("period_integral needs a matrix in SL2(Z), got " + format_matrix(g));
  if (apply(g, p) != p) throw PreconditionError("matrix " + format_matrix(g) + " does not fix " + p.str());
  const UpperHalfPoint tau1 = act(g, tau0);
  const Complex from = tau0.z(), to = tau1.z();
  if (from == to) return {};
  // The integrand varies on the scale of the height, so start from pieces
  // no longer than the lowest point of the segment.
  const double height = std::min(tau0.im, tau1.im);
  const long pieces = std::max(1L, static_cast<long>(std::ceil(std::abs(to - from) / height)));
  const double scale = 1.0 / (2 * std::numbers::pi * std::numbers::pi);
  Segment seg{from, to, p, params};
  Complex total = 0;
  double err = 0;
  const double piece_tol = tol / (scale * static_cast<double>(pieces));
  for (long k = 0; k < pieces; ++k) {
    const double s0 = static_cast<double>(k) / static_cast<double>(pieces);
    const double s1 = static_cast<double>(k + 1) / static_cast<double>(pieces);
    total += seg.adapt(s0, s1, seg.rule(s0, s1), piece_tol, 0, err);
  }
  err += seg.tail * std::abs(to - from);
  return {scale * total, scale * err};
}

double PeriodReport::deviation() const {
  return std::max(std::abs(numeric.real() - exact.to_double()), std::abs(numeric.imag()));
}

bool PeriodReport::passes(double tol) const { return deviation() <= tol; }

PeriodReport compare(const MatQ2& g, const TorusPoint& p, const SeriesParams& params) {
  PeriodReport r;
  r.gamma = g;
  r.point = p;
  r.exact = phi_classical(g, p);
  const PeriodValue v = period_integral(g, default_basepoint(g), p, params);
  r.numeric = v.value;
  r.abs_error_estimate = v.error;
  return r;
}

nlohmann::json to_json(const PeriodReport& r) {
  return {{"gamma", format_matrix(r.gamma)},
          {"point", r.point.str()},
          {"exact", r.exact.str()},
          {"numeric", {r.numeric.real(), r.numeric.imag()}},
          {"err", r.abs_error_estimate}};
}

}  // namespace ec
