#include "ec/cocycle.hpp"

namespace ec {

namespace {

MatZ2 word(Rng& rng, int max_len) {
  static const MatZ2 letters[3] = {{0, -1, 1, 0}, {1, 1, 0, 1}, {1, -1, 0, 1}};
  MatZ2 out;
  const long len = rng.uniform(1, max_len);
  for (long i = 0; i < len; ++i) out = out * letters[rng.uniform(0, 2)];
  return out;
}

MatZ2 inverse(const MatZ2& m) { return m.adj(); }

BigInt max_entry(const MatZ2& m) {
  BigInt out = abs(m.a);
  for (const BigInt* v : {&m.b, &m.c, &m.d})
    if (abs(*v) > out) out = abs(*v);
  return out;
}

long nonzero(Rng& rng, long bound) {
  const long k = rng.uniform(1, bound);
  return rng.coin() ? k : -k;
}

}  // namespace

MatQ2 random_sl2z(Rng& rng, int max_len) { return to_rational(word(rng, max_len)); }

std::vector<MatQ2> stabilizer_sample(const TorusPoint& p, int count, int max_factors, Rng& rng, long max_entry_bound) {
  const BigInt n_order = torsion_order(p);
  // p = s * (i0, j0) with (i0, j0) primitive; h has first column (i0, j0).
  const BigInt ni = p.x1().num() * (n_order / p.x1().den());
  const BigInt nj = p.x2().num() * (n_order / p.x2().den());
  MatZ2 h;
  BigInt lower_step = n_order;
  if (!p.is_zero()) {
    const BigInt g = gcd(ni, nj);
    const BigInt i0 = ni / g, j0 = nj / g;
    const ExtGcd e = ext_gcd(i0, j0);
    h = MatZ2{i0, -e.y, j0, e.x};
    lower_step = n_order / gcd(g, n_order);
  }
  auto generator = [&]() -> MatZ2 {
    switch (rng.uniform(0, 3)) {
      case 0: {
        const MatZ2 hh = h * MatZ2{1, rng.uniform(-2, 2), 0, 1};
        return hh * MatZ2{1, nonzero(rng, 3), 0, 1} * inverse(hh);
      }
      case 1: {
        const MatZ2 hh = h * MatZ2{1, rng.uniform(-2, 2), 0, 1};
        return hh * MatZ2{1, 0, lower_step * nonzero(rng, 2), 1} * inverse(hh);
      }
      case 2: {
        const MatZ2 w = word(rng, 3);
        return w * MatZ2{1, n_order * nonzero(rng, 1), 0, 1} * inverse(w);
      }
      default: {
        const MatZ2 w = word(rng, 3);
        return w * MatZ2{1, 0, n_order * nonzero(rng, 1), 1} * inverse(w);
      }
    }
  };
  std::vector<MatQ2> out;
  for (long attempts = 0; static_cast<int>(out.size()) < count && attempts < 200L * (count + 1); ++attempts) {
    MatZ2 g;
    const long factors = rng.uniform(1, max_factors);
    for (long i = 0; i < factors; ++i) g = g * generator();
    if (max_entry(g) > max_entry_bound) continue;
    if (apply(g, p) != p) throw std::logic_error("stabilizer sampler produced a matrix not fixing " + p.str());
    out.push_back(to_rational(g));
  }
  return out;
}

}  // namespace ec
