#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ec/currents.hpp"

namespace ec::detail {

using Terms = std::vector<std::pair<Monomial, Rational>>;

/// Rewrites coeff * m (arbitrary covectors, offsets, line multiplicities and
/// wrappers) into canonical monomials.
Terms canonicalize(const Monomial& m, const Rational& coeff);

/// Pushes a canonical, unwrapped monomial along an integral matrix of
/// positive determinant; nullopt when the result is not a product of
/// Bernoulli factors.
std::optional<Terms> try_push(const MatZ2& m, const Monomial& mono, const Rational& coeff);

/// Fixed covector u with det((p, q), u) = 1 for a canonical primitive (p, q).
std::pair<BigInt, BigInt> line_transversal(const BigInt& p, const BigInt& q);

/// Some integer vector a with p a1 + q a2 = 1.
std::pair<BigInt, BigInt> unit_section(const BigInt& p, const BigInt& q);

}  // namespace ec::detail
