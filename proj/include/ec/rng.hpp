#pragma once

#include <cstdint>
#include <random>

#include "ec/rational.hpp"
#include "ec/torus.hpp"

namespace ec {

/// Seeded 64-bit Mersenne Twister. Bounded draws use rejection sampling on
/// the raw output so sequences agree across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi);
  bool coin() { return (next() >> 63) != 0; }

  /// p/q with q uniform in [1, max_den] and p uniform in [-range*q, range*q].
  Rational rational(long max_den, long range = 3);
  /// Point with both coordinates of denominator at most max_den.
  TorusPoint torus_point(long max_den);

 private:
  std::mt19937_64 engine_;
};

}  // namespace ec
