#pragma once

#include <complex>

namespace ec::kernels {

using cd = std::complex<double>;

/// Inputs of the q-series form of the Eisenstein m-sum:
///   sum_{m=1}^{m_max} ph^m u1^m (c1/(1-q^m) + q^m/(1-q^m)^2)
///                   + ph^-m u2^m (c2/(1-q^m) + q^m/(1-q^m)^2).
struct QSeries {
  cd q, u1, u2, ph;
  double c1 = 1, c2 = 1;
  long m_max = 0;
};

/// sum_{i < count} 1 / (z + start + i step)^2. The caller keeps poles out.
cd inv_square_sum(cd z, double start, double step, long count);
cd qseries_sum(const QSeries& in);

namespace scalar {
cd inv_square_sum(cd z, double start, double step, long count);
cd qseries_sum(const QSeries& in);
}  // namespace scalar

namespace avx2 {
cd inv_square_sum(cd z, double start, double step, long count);
cd qseries_sum(const QSeries& in);
}  // namespace avx2

/// True when the CPU reports AVX2 and FMA.
bool avx2_supported();
/// Routes the dispatching entry points to the scalar kernels.
void set_force_scalar(bool on);
bool using_avx2();

}  // namespace ec::kernels
