#include "ec/rng.hpp"

#include <stdexcept>

namespace ec {

long Rng::uniform(long lo, long hi) {
  if (hi < lo) throw std::invalid_argument("empty range in Rng::uniform");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<long>(next());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t r;
  do r = next();
  while (r >= limit);
  return lo + static_cast<long>(r % span);
}

Rational Rng::rational(long max_den, long range) {
  const long q = uniform(1, max_den);
  const long p = uniform(-range * q, range * q);
  return Rational(BigInt(p), BigInt(q));
}

TorusPoint Rng::torus_point(long max_den) {
  const long q1 = uniform(1, max_den);
  const long q2 = uniform(1, max_den);
  return {Rational(BigInt(uniform(0, q1 - 1)), BigInt(q1)), Rational(BigInt(uniform(0, q2 - 1)), BigInt(q2))};
}

}  // namespace ec
