#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ec/gl2.hpp"
#include "ec/rational.hpp"
#include "ec/torus.hpp"

namespace ec {

/// The two base functions: B2(z2) and B1(z1) B1(z2).
enum class Kernel { B2Second, B1xB1 };

std::string kernel_name(Kernel k);
Kernel parse_kernel(std::string_view name);
Rational eval_kernel(Kernel k, const TorusPoint& y);

struct MKey {
  MatZ2 push;  // primitive integral, det > 0
  Kernel kernel;

  friend bool operator<(const MKey& l, const MKey& r) {
    if (l.kernel != r.kernel) return l.kernel < r.kernel;
    return l.push < r.push;
  }
  friend bool operator==(const MKey& l, const MKey& r) { return l.kernel == r.kernel && l.push == r.push; }
};

/// Finite formal sum of pushed kernels sum_i c_i (A_i)_* K_i.
/// Terms with equal (A, K) are merged and zero coefficients dropped.
class MElement {
 public:
  MElement() = default;

  /// coeff * K with identity push.
  static MElement base(Kernel k, const Rational& coeff);
  /// coeff * (A)_* K; A is replaced by its primitive integral form.
  static MElement term(const MatQ2& push, Kernel k, const Rational& coeff);

  const std::map<MKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const MKey& key, const Rational& coeff);
  MElement& operator+=(const MElement& o);
  MElement& operator-=(const MElement& o);
  friend MElement operator+(MElement a, const MElement& b) { return a += b; }
  friend MElement operator-(MElement a, const MElement& b) { return a -= b; }
  friend MElement operator*(const Rational& s, const MElement& e);
  friend bool operator==(const MElement&, const MElement&) = default;

  std::string str() const;

 private:
  std::map<MKey, Rational> terms_;
};

/// M_* e. Each push matrix becomes the primitive form of M * A.
MElement push(const MatQ2& m, const MElement& e);

/// Sum over terms of coeff * sum_{A y = x} K(y), with b1 = 0 at integers.
Rational eval(const MElement& e, const TorusPoint& x);

/// The affine line p z1 + q z2 = t (mod 1). Stored with (p, q) primitive,
/// first nonzero entry positive, t in [0, 1).
struct AffineLine {
  BigInt p, q;
  Rational t;

  static AffineLine make(const BigInt& p, const BigInt& q, const Rational& t);
  bool contains(const TorusPoint& x) const;
  std::string str() const;

  friend bool operator<(const AffineLine& l, const AffineLine& r);
  friend bool operator==(const AffineLine& l, const AffineLine& r) { return l.p == r.p && l.q == r.q && l.t == r.t; }
};

struct DiscontinuityLocus {
  std::set<AffineLine> lines;
  bool contains(const TorusPoint& x) const;
};

/// Lines off which every term of e is continuous.
DiscontinuityLocus discont_locus(const MElement& e);

/// eval(e, c x) - c^2 eval(e, x).
Rational smoothed_eval(const MElement& e, const BigInt& c, const TorusPoint& x);

/// `trials` seeded random points off `locus` and off 0.
std::vector<TorusPoint> random_points(const DiscontinuityLocus& locus, int trials, std::uint64_t seed);

/// Points used by functions_equal: a fixed grid of denominators 5, 7 and 24
/// plus `trials` seeded random points, all off `locus` and off 0.
std::vector<TorusPoint> sample_points(const DiscontinuityLocus& locus, int trials, std::uint64_t seed);

/// Compares e1 and e2 as functions on the torus minus 0 by exact evaluation
/// at sample_points(discont_locus(e1 - e2), trials, seed). A false result is
/// a proof of inequality; true is a high-confidence confirmation.
bool functions_equal(const MElement& e1, const MElement& e2, int trials, std::uint64_t seed);

nlohmann::json to_json(const MElement& e);
MElement melement_from_json(const nlohmann::json& j);

}  // namespace ec
