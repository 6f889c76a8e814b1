#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ec/bernoulli_space.hpp"
#include "ec/gl2.hpp"
#include "ec/rng.hpp"

namespace ec {

/// Thrown when an input violates the hypothesis of a formula.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Closed-form lift. For c = 0: (b/2d) B2(z2). Otherwise
///   (a/2c) B2(z2) + (1, a sgn c; 0, |c|)_* B1(z1)B1(z2)
///     + (d sgn c / 2 det) (a sgn c, -1; |c|, 0)_* B2(z2).
MElement theta10_bruhat(const MatQ2& g);

/// Lift obtained by folding an S/T word through
/// theta(g2 g1) = (g2)_* theta(g1) + theta(g2), from theta(S) = B1(z1)B1(z2)
/// and theta(T^b) = (b/2) B2(z2).
MElement theta10_recursive(const MatQ2& g);

/// Bernoulli closed form of the period; needs g in SL2(Z) and p != 0.
Rational phi_classical(const MatQ2& g, const TorusPoint& p);

/// 2 * eval(theta10_bruhat(g), p); refuses points that g does not fix.
Rational phi_via_theta(const MatQ2& g, const TorusPoint& p);

/// eval(theta(g), c p) - c^2 eval(theta(g), p); refuses p in T[c].
Rational smoothed_class_eval(const MatQ2& g, const BigInt& c, const TorusPoint& p);

/// The closed form at p = 0.
Rational dedekind_symbol(const MatQ2& g);

/// dedekind_symbol(g1 g2) - dedekind_symbol(g1) - dedekind_symbol(g2).
Rational euler_defect(const MatQ2& g1, const MatQ2& g2);

/// Largest |theta(g2 g1) - (g2)_* theta(g1) - theta(g2)| over `samples`
/// random points off the discontinuity locus.
Rational cocycle_defect(const MatQ2& g1, const MatQ2& g2, int samples, std::uint64_t seed);

/// Product of 1..max_len letters drawn from {S, T, T^-1}.
MatQ2 random_sl2z(Rng& rng, int max_len);

/// Random elements of SL2(Z) fixing p, built from products of 1..max_factors
/// conjugated unipotents. Every returned matrix is checked to fix p; entries
/// are bounded by max_entry.
std::vector<MatQ2> stabilizer_sample(const TorusPoint& p, int count, int max_factors, Rng& rng,
                                     long max_entry = 500);

}  // namespace ec
