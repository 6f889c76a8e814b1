#include <immintrin.h>

#include "ec/kernels.hpp"

// Four lanes of complex numbers in split (re, im) registers.

namespace ec::kernels::avx2 {

namespace {

struct C4 {
  __m256d re, im;
};

inline C4 mul(C4 x, C4 y) {
  return {_mm256_fmsub_pd(x.re, y.re, _mm256_mul_pd(x.im, y.im)),
          _mm256_fmadd_pd(x.re, y.im, _mm256_mul_pd(x.im, y.re))};
}

inline C4 add(C4 x, C4 y) { return {_mm256_add_pd(x.re, y.re), _mm256_add_pd(x.im, y.im)}; }

inline C4 scale(C4 x, __m256d s) { return {_mm256_mul_pd(x.re, s), _mm256_mul_pd(x.im, s)}; }

inline C4 recip(C4 x) {
  const __m256d n = _mm256_fmadd_pd(x.re, x.re, _mm256_mul_pd(x.im, x.im));
  const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), n);
  return {_mm256_mul_pd(x.re, inv), _mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(x.im, inv))};
}

inline C4 broadcast(cd z) { return {_mm256_set1_pd(z.real()), _mm256_set1_pd(z.imag())}; }

inline double hsum(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[0] + t[1]) + (t[2] + t[3]);
}

// Lane l holds z^(l+1).
C4 first_powers(cd z) {
  const cd z2 = z * z, z3 = z2 * z, z4 = z3 * z;
  return {_mm256_setr_pd(z.real(), z2.real(), z3.real(), z4.real()),
          _mm256_setr_pd(z.imag(), z2.imag(), z3.imag(), z4.imag())};
}

}  // namespace

cd inv_square_sum(cd z, double start, double step, long count) {
  const __m256d b = _mm256_set1_pd(z.imag());
  const __m256d b2 = _mm256_mul_pd(b, b);
  const __m256d two_b = _mm256_add_pd(b, b);
  const __m256d lane = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  const __m256d stepv = _mm256_set1_pd(step);
  const __m256d base = _mm256_set1_pd(z.real() + start);
  __m256d re = _mm256_setzero_pd(), im = _mm256_setzero_pd();
  long i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d idx = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(i)), lane);
    const __m256d a = _mm256_fmadd_pd(idx, stepv, base);
    const __m256d r2 = _mm256_fmadd_pd(a, a, b2);
    const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), _mm256_mul_pd(r2, r2));
    re = _mm256_fmadd_pd(_mm256_fmsub_pd(a, a, b2), inv, re);
    im = _mm256_fnmadd_pd(_mm256_mul_pd(two_b, a), inv, im);
  }
  cd tail = scalar::inv_square_sum(z, start + static_cast<double>(i) * step, step, count - i);
  return {hsum(re) + tail.real(), hsum(im) + tail.imag()};
}

cd qseries_sum(const QSeries& in) {
  const long blocks = in.m_max / 4;
  C4 qm = first_powers(in.q), u1m = first_powers(in.u1), u2m = first_powers(in.u2);
  C4 phm = first_powers(in.ph), phmi = first_powers(std::conj(in.ph));
  const C4 q4 = broadcast(std::pow(in.q, 4)), u14 = broadcast(std::pow(in.u1, 4)),
           u24 = broadcast(std::pow(in.u2, 4)), ph4 = broadcast(std::pow(in.ph, 4)),
           phi4 = broadcast(std::pow(std::conj(in.ph), 4));
  const __m256d c1 = _mm256_set1_pd(in.c1), c2 = _mm256_set1_pd(in.c2), one = _mm256_set1_pd(1.0);
  C4 acc{_mm256_setzero_pd(), _mm256_setzero_pd()};
  for (long blk = 0; blk < blocks; ++blk) {
    const C4 inv = recip({_mm256_sub_pd(one, qm.re), _mm256_sub_pd(_mm256_setzero_pd(), qm.im)});
    const C4 common = mul(qm, mul(inv, inv));
    acc = add(acc, mul(mul(phm, u1m), add(scale(inv, c1), common)));
    acc = add(acc, mul(mul(phmi, u2m), add(scale(inv, c2), common)));
    qm = mul(qm, q4);
    u1m = mul(u1m, u14);
    u2m = mul(u2m, u24);
    phm = mul(phm, ph4);
    phmi = mul(phmi, phi4);
  }
  // Lanes now hold the powers for m = 4 * blocks + 1 + l; finish the last few terms.
  const long rest = in.m_max - 4 * blocks;
  const C4 inv = recip({_mm256_sub_pd(one, qm.re), _mm256_sub_pd(_mm256_setzero_pd(), qm.im)});
  const C4 common = mul(qm, mul(inv, inv));
  const C4 tail = add(mul(mul(phm, u1m), add(scale(inv, c1), common)), mul(mul(phmi, u2m), add(scale(inv, c2), common)));
  alignas(32) double tr[4], ti[4];
  _mm256_store_pd(tr, tail.re);
  _mm256_store_pd(ti, tail.im);
  cd sum{hsum(acc.re), hsum(acc.im)};
  for (long l = 0; l < rest; ++l) sum += cd(tr[l], ti[l]);
  return sum;
}

}  // namespace ec::kernels::avx2
