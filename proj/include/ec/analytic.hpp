#pragma once

#include <complex>
#include <stdexcept>

#include <json.hpp>

#include "ec/gl2.hpp"
#include "ec/rational.hpp"
#include "ec/torus.hpp"

namespace ec {

using Complex = std::complex<double>;

struct UpperHalfPoint {
  double re = 0;
  double im = 1;

  Complex z() const { return {re, im}; }
  static UpperHalfPoint from(Complex z);
};

/// Moebius action (a tau + b) / (c tau + d).
UpperHalfPoint act(const MatQ2& g, UpperHalfPoint tau);

enum class SeriesMethod { ClosedForm, Direct };

/// Truncation of the lattice sum. The closed form sums the inner n-series
/// exactly and extends m past m_max until the terms drop below 1e-17; the
/// direct method sums |m| <= m_max, |n| <= n_max with tail corrections.
/// Arithmetic is IEEE double.
struct SeriesParams {
  long m_max = 40;
  long n_max = 100000;
  SeriesMethod method = SeriesMethod::ClosedForm;
};

struct SeriesValue {
  Complex value;
  double tail_bound = 0;
};

/// sum' e(m alpha + n beta) / (m tau + n)^2 by iterated summation
/// (inner over n, outer over m). Requires p != 0.
SeriesValue e2_series(UpperHalfPoint tau, const TorusPoint& p, const SeriesParams& params = {});
Complex e2_value(UpperHalfPoint tau, const TorusPoint& p, const SeriesParams& params = {});

struct PeriodValue {
  Complex value;
  double error = 0;
};

/// (1 / 2 pi^2) times the integral of e2 along the segment from tau0 to
/// g tau0, by adaptive Gauss-Legendre quadrature to absolute accuracy `tol`.
PeriodValue period_integral(const MatQ2& g, UpperHalfPoint tau0, const TorusPoint& p,
                            const SeriesParams& params = {}, double tol = 1e-10);

/// tau0 = -d/c + i/|c| (so tau0 and g tau0 share the height 1/|c|), or i when c = 0.
UpperHalfPoint default_basepoint(const MatQ2& g);

struct PeriodReport {
  MatQ2 gamma;
  TorusPoint point;
  Rational exact;
  Complex numeric;
  double abs_error_estimate = 0;

  double deviation() const;
  /// |Re numeric - exact| <= tol and |Im numeric| <= tol.
  bool passes(double tol) const;
};

PeriodReport compare(const MatQ2& g, const TorusPoint& p, const SeriesParams& params = {});
nlohmann::json to_json(const PeriodReport& r);

class AnalyticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace ec
