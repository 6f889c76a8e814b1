#include <atomic>

#include "ec/kernels.hpp"

namespace ec::kernels {

namespace {
std::atomic<bool> force_scalar{false};
}

bool avx2_supported() {
  static const bool ok = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return ok;
}

void set_force_scalar(bool on) { force_scalar = on; }

bool using_avx2() { return !force_scalar && avx2_supported(); }

cd inv_square_sum(cd z, double start, double step, long count) {
  return using_avx2() ? avx2::inv_square_sum(z, start, step, count) : scalar::inv_square_sum(z, start, step, count);
}

cd qseries_sum(const QSeries& in) { return using_avx2() ? avx2::qseries_sum(in) : scalar::qseries_sum(in); }

}  // namespace ec::kernels
