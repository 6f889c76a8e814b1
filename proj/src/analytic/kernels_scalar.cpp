#include "ec/kernels.hpp"

namespace ec::kernels::scalar {

cd inv_square_sum(cd z, double start, double step, long count) {
  double re = 0, im = 0;
  for (long i = 0; i < count; ++i) {
    const double a = z.real() + start + static_cast<double>(i) * step;
    const double b = z.imag();
    const double r2 = a * a + b * b;
    const double inv = 1.0 / (r2 * r2);
    re += (a * a - b * b) * inv;
    im -= 2.0 * a * b * inv;
  }
  return {re, im};
}

cd qseries_sum(const QSeries& in) {
  cd qm = 1, u1m = 1, u2m = 1, phm = 1, phmi = 1;
  const cd phi = std::conj(in.ph);
  cd sum = 0;
  for (long m = 1; m <= in.m_max; ++m) {
    qm *= in.q;
    u1m *= in.u1;
    u2m *= in.u2;
    phm *= in.ph;
    phmi *= phi;
    const cd inv = 1.0 / (1.0 - qm);
    const cd common = qm * inv * inv;
    sum += phm * u1m * (in.c1 * inv + common) + phmi * u2m * (in.c2 * inv + common);
  }
  return sum;
}

}  // namespace ec::kernels::scalar
