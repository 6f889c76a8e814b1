#include "ec/suites.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

#include "ec/analytic.hpp"
#include "ec/cocycle.hpp"
#include "ec/currents.hpp"
#include "ec/parallel.hpp"

namespace ec {

using nlohmann::json;

namespace {

using Failure = std::optional<json>;

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int pick(int given, int fallback) { return given > 0 ? given : fallback; }

template <class Case, class F>
void run_cases(SuiteResult& r, const std::vector<Case>& cases, F&& check, unsigned workers) {
  auto fails = parallel_map<Failure>(
      cases.size(), [&](std::size_t i) { return check(cases[i], i); },
      workers ? workers : std::thread::hardware_concurrency());
  r.cases += cases.size();
  for (auto& f : fails)
    if (f) r.failures.push_back(std::move(*f));
}

std::vector<TorusPoint> torsion_points(int n, bool exact_order) {
  std::vector<TorusPoint> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      TorusPoint p{Rational(i, n), Rational(j, n)};
      if (p.is_zero() || (exact_order && torsion_order(p) != n)) continue;
      out.push_back(p);
    }
  return out;
}

json mismatch(std::string identity, const Rational& lhs, const Rational& rhs) {
  return {{"identity", std::move(identity)}, {"lhs", lhs.str()}, {"rhs", rhs.str()}};
}

SuiteResult distribution(const SuiteConfig& cfg) {
  SuiteResult r{"distribution"};
  const int trials = pick(cfg.trials, 100);
  std::vector<std::pair<int, Rational>> cases;
  Rng rng(cfg.seed);
  for (int a = 2; a <= 12; ++a)
    for (int t = 0; t < trials; ++t) cases.emplace_back(a, rng.rational(60));
  run_cases(r, cases, [](const std::pair<int, Rational>& c, std::size_t) -> Failure {
    const auto& [a, x] = c;
    Rational s1, s2;
    for (int j = 0; j < a; ++j) {
      s1 += b1(x + Rational(j, a));
      s2 += b2(x + Rational(j, a));
    }
    const Rational ra(a);
    for (auto [k, lhs, rhs] : {std::tuple{1, b1(ra * x), s1}, std::tuple{2, b2(ra * x), ra * s2}}) {
      if (lhs != rhs) {
        json f = mismatch("B" + std::to_string(k) + "(a x) = a^(k-1) sum_j B" + std::to_string(k) + "(x + j/a)", lhs, rhs);
        f["a"] = a;
        f["x"] = x.str();
        return f;
      }
    }
    return std::nullopt;
  }, cfg.workers);
  r.info["a_range"] = "2..12";
  r.info["trials_per_a"] = trials;
  return r;
}

SuiteResult period_equality(const SuiteConfig& cfg) {
  SuiteResult r{"theorem"};
  const int lo = pick(cfg.n_lo, 2), hi = pick(cfg.n_hi, 10);
  const int trials = pick(cfg.trials, 50), len = pick(cfg.word_length, 6);
  std::vector<TorusPoint> points;
  for (int n = lo; n <= hi; ++n)
    for (auto& p : torsion_points(n, false)) points.push_back(p);
  std::size_t stabilizers = 0;
  std::vector<std::size_t> counts(points.size());
  run_cases(r, points, [&](const TorusPoint& p, std::size_t i) -> Failure {
    Rng rng(mix(cfg.seed, i));
    const auto sample = stabilizer_sample(p, trials, len, rng);
    counts[i] = sample.size();
    for (const auto& g : sample) {
      const Rational lhs = phi_classical(g, p), rhs = phi_via_theta(g, p);
      if (lhs != rhs) {
        json f = mismatch("phi_classical = 2 eval(theta10_bruhat)", lhs, rhs);
        f["gamma"] = format_matrix(g);
        f["point"] = p.str();
        return f;
      }
    }
    return std::nullopt;
  }, cfg.workers);
  for (auto c : counts) stabilizers += c;
  r.info["N_range"] = std::to_string(lo) + ".." + std::to_string(hi);
  r.info["points"] = points.size();
  r.info["stabilizer_elements"] = stabilizers;
  return r;
}

SuiteResult route(const SuiteConfig& cfg) {
  SuiteResult r{"route"};
  const int trials = pick(cfg.trials, 100), len = pick(cfg.word_length, 30);
  Rng rng(cfg.seed);
  std::vector<MatQ2> cases;
  for (int t = 0; t < trials; ++t) cases.push_back(random_sl2z(rng, len));
  run_cases(r, cases, [&](const MatQ2& g, std::size_t i) -> Failure {
    if (functions_equal(theta10_recursive(g), theta10_bruhat(g), 50, mix(cfg.seed, i))) return std::nullopt;
    return json{{"identity", "theta10_recursive = theta10_bruhat"}, {"gamma", format_matrix(g)}};
  }, cfg.workers);
  r.info["word_length"] = len;
  return r;
}

MatQ2 random_positive(Rng& rng) {
  for (;;) {
    MatQ2 m{rng.rational(3, 2), rng.rational(3, 2), rng.rational(3, 2), rng.rational(3, 2)};
    if (m.det() > Rational(0)) return m;
  }
}

SuiteResult cocycle(const SuiteConfig& cfg) {
  SuiteResult r{"cocycle"};
  const int trials = pick(cfg.trials, 100), len = pick(cfg.word_length, 10);
  Rng rng(cfg.seed);
  std::vector<std::pair<MatQ2, MatQ2>> pairs;
  for (int t = 0; t < trials; ++t) pairs.emplace_back(random_sl2z(rng, len), random_sl2z(rng, len));
  for (int t = 0; t < trials / 5; ++t) pairs.emplace_back(random_positive(rng), random_positive(rng));
  run_cases(r, pairs, [&](const std::pair<MatQ2, MatQ2>& c, std::size_t i) -> Failure {
    const Rational defect = cocycle_defect(c.first, c.second, 20, mix(cfg.seed, i));
    if (defect.is_zero()) return std::nullopt;
    json f = mismatch("theta(g2 g1) = (g2)_* theta(g1) + theta(g2)", defect, Rational(0));
    f["g1"] = format_matrix(c.first);
    f["g2"] = format_matrix(c.second);
    return f;
  }, cfg.workers);

  const int lo = pick(cfg.n_lo, 3), hi = pick(cfg.n_hi, 6);
  struct Hom {
    TorusPoint p;
    MatQ2 g1, g2;
  };
  std::vector<Hom> homs;
  for (int n = lo; n <= hi; ++n) {
    const auto points = torsion_points(n, false);
    for (int t = 0; t < trials; ++t) {
      const TorusPoint p = points[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(points.size()) - 1))];
      const auto g = stabilizer_sample(p, 2, 3, rng);
      homs.push_back({p, g[0], g[1]});
    }
  }
  run_cases(r, homs, [](const Hom& h, std::size_t) -> Failure {
    const Rational lhs = phi_classical(h.g1 * h.g2, h.p);
    const Rational rhs = phi_classical(h.g1, h.p) + phi_classical(h.g2, h.p);
    if (lhs == rhs) return std::nullopt;
    json f = mismatch("phi(g1 g2) = phi(g1) + phi(g2)", lhs, rhs);
    f["g1"] = format_matrix(h.g1);
    f["g2"] = format_matrix(h.g2);
    f["point"] = h.p.str();
    return f;
  }, cfg.workers);
  r.info["cocycle_pairs"] = pairs.size();
  r.info["homomorphism_pairs"] = homs.size();
  return r;
}

SuiteResult symbolic(const SuiteConfig& cfg) {
  SuiteResult r{"symbolic"};
  struct Identity {
    std::string name;
    std::function<CurrentExpr()> lhs, rhs;
  };
  std::vector<Identity> ids;
  ids.push_back({"d(theta01) = delta0 - dz1^dz2", [] { return d(theta01()); }, [] { return delta0() - area(); }});
  for (int a = 2; a <= 5; ++a)
    ids.push_back({"[" + std::to_string(a) + "]_* theta01 = theta01",
                   [a] { return push_current(mat::diag(a, a), theta01()); }, [] { return theta01(); }});
  auto lift = [](const MatQ2& g, const MElement& m) {
    return [g, m] { return d(embed(m)) - (push_current(g, theta01()) - theta01()); };
  };
  const auto zero = [] { return CurrentExpr(); };
  ids.push_back({"lift S", lift(mat::S(), MElement::base(Kernel::B1xB1, 1)), zero});
  for (int b = -3; b <= 3; ++b)
    if (b != 0)
      ids.push_back({"lift T^" + std::to_string(b), lift(mat::T(b), MElement::base(Kernel::B2Second, Rational(b, 2))), zero});
  for (auto [x, y] : {std::pair{2, 3}, {1, 5}, {4, 1}, {3, 3}})
    ids.push_back({"lift diag(" + std::to_string(x) + "," + std::to_string(y) + ")",
                   lift(mat::diag(x, y), theta10_bruhat(mat::diag(x, y))), zero});
  for (long c : {2L, 3L, 5L})
    ids.push_back({"d([" + std::to_string(c) + "]^* theta01 - c^2 theta01) = delta_T[c] - c^2 delta0",
                   [c] { return d(pullback_c(c, theta01()) - Rational(c * c) * theta01()); },
                   [c] { return delta_torsion(c) - Rational(c * c) * delta0(); }});
  std::vector<std::pair<std::string, std::function<CurrentExpr()>>> dd = {
      {"B1(z1) B1(z2)", [] { return wedge(bernoulli(1, 1, 0), bernoulli(1, 0, 1)); }},
      {"B2(z1 + 2 z2 + 1/3)", [] { return bernoulli(2, 1, 2, Rational(1, 3)); }},
      {"B1(2 z1 - z2) B1(z1 + z2 + 1/2)",
       [] { return wedge(bernoulli(1, 2, -1), bernoulli(1, 1, 1, Rational(1, 2))); }},
      {"B1(z1) B2(3 z2)", [] { return wedge(bernoulli(1, 1, 0), bernoulli(2, 0, 3)); }},
      {"B2(z1) B1(z1 + z2 + 1/5)", [] { return wedge(bernoulli(2, 1, 0), bernoulli(1, 1, 1, Rational(1, 5))); }},
      {"(1,1;0,2)_* B1(z1) B1(z2)",
       [] { return push_current(MatQ2{1, 1, 0, 2}, wedge(bernoulli(1, 1, 0), bernoulli(1, 0, 1))); }},
  };
  Rng rng(cfg.seed);
  for (int t = 0; t < 4; ++t) {
    const MatQ2 g = random_sl2z(rng, 8);
    dd.emplace_back("embed theta10(" + format_matrix(g) + ")", [g] { return embed(theta10_bruhat(g)); });
  }
  for (auto& [name, e] : dd)
    ids.push_back({"d d " + name + " = 0", [e] { return d(d(e())); }, zero});
  run_cases(r, ids, [](const Identity& id, std::size_t) -> Failure {
    const CurrentExpr lhs = id.lhs(), rhs = id.rhs();
    if (lhs == rhs) return std::nullopt;
    return json{{"identity", id.name}, {"lhs", lhs.str()}, {"rhs", rhs.str()}};
  }, cfg.workers);
  return r;
}

// 2 (B1(z1)B1(z2) + B1(z2)B1(z3) + B1(z3)B1(z1)) + B2(z1) + B2(z2) + B2(z3) with
// z3 = -z1 - z2: zero off the three lines, 1/2 at the origin.
MElement three_line_function() {
  // c K(A z) for unimodular A is the push of c K by A^-1.
  auto pushed = [](const MatQ2& a, Kernel k, const Rational& c) { return push(mat::inverse(a), MElement::base(k, c)); };
  MElement f;
  f += pushed(mat::identity(), Kernel::B1xB1, 2);
  f += pushed({0, 1, -1, -1}, Kernel::B1xB1, 2);
  f += pushed({-1, -1, 1, 0}, Kernel::B1xB1, 2);
  f += pushed({0, -1, 1, 0}, Kernel::B2Second, 1);
  f += pushed(mat::identity(), Kernel::B2Second, 1);
  f += pushed({0, 1, -1, -1}, Kernel::B2Second, 1);
  return f;
}

Rational three_line_direct(const TorusPoint& x) {
  const Rational z1 = x.x1(), z2 = x.x2(), z3 = -z1 - z2;
  return Rational(2) * (b1(z1) * b1(z2) + b1(z2) * b1(z3) + b1(z3) * b1(z1)) + b2(z1) + b2(z2) + b2(z3);
}

SuiteResult three_line(const SuiteConfig& cfg) {
  SuiteResult r{"three-line"};
  const MElement f = three_line_function();
  std::vector<std::pair<TorusPoint, Rational>> cases{{TorusPoint{}, Rational(1, 2)}};
  for (const auto& x : random_points(discont_locus(f), pick(cfg.trials, 200), cfg.seed)) cases.emplace_back(x, 0);
  run_cases(r, cases, [&](const std::pair<TorusPoint, Rational>& c, std::size_t) -> Failure {
    const Rational v = eval(f, c.first), direct = three_line_direct(c.first);
    if (v == c.second && direct == c.second) return std::nullopt;
    json out = mismatch("three-line function value", v, c.second);
    out["direct"] = direct.str();
    out["point"] = c.first.str();
    return out;
  }, cfg.workers);
  r.info["element"] = to_json(f);
  return r;
}

SuiteResult scaling(const SuiteConfig& cfg) {
  SuiteResult r{"scaling"};
  const int lo = pick(cfg.n_lo, 2), hi = pick(cfg.n_hi, 8), per_point = pick(cfg.trials, 3);
  struct Case {
    TorusPoint p;
    int n;
    std::uint64_t seed;
  };
  std::vector<Case> cases;
  for (int n = lo; n <= hi; ++n)
    for (auto& p : torsion_points(n, true)) cases.push_back({p, n, mix(cfg.seed, cases.size())});
  run_cases(r, cases, [&](const Case& c, std::size_t) -> Failure {
    Rng rng(c.seed);
    for (const auto& g : stabilizer_sample(c.p, per_point, 3, rng)) {
      const Rational base = eval(theta10_bruhat(g), c.p), phi = phi_classical(g, c.p);
      for (long k = c.n + 1; k <= 50; k += c.n) {
        const Rational factor(1 - k * k);
        const Rational s = smoothed_class_eval(g, k, c.p);
        if (s != factor * base || s != factor * phi / Rational(2)) {
          json f = mismatch("smoothed_class_eval = (1 - c^2) eval", s, factor * base);
          f["classical"] = (factor * phi / Rational(2)).str();
          f["gamma"] = format_matrix(g);
          f["point"] = c.p.str();
          f["c"] = k;
          return f;
        }
      }
    }
    return std::nullopt;
  }, cfg.workers);
  r.info["N_range"] = std::to_string(lo) + ".." + std::to_string(hi);
  return r;
}

SuiteResult dedekind(const SuiteConfig& cfg) {
  SuiteResult r{"dedekind"};
  std::vector<std::pair<MatQ2, Rational>> cases;
  for (int b = -10; b <= 10; ++b) cases.emplace_back(mat::T(b), Rational(b, 6));
  cases.emplace_back(mat::S(), 0);
  cases.emplace_back(MatQ2{1, 0, 1, 1}, Rational(1, 3));
  run_cases(r, cases, [](const std::pair<MatQ2, Rational>& c, std::size_t) -> Failure {
    const Rational v = dedekind_symbol(c.first);
    if (v == c.second) return std::nullopt;
    json f = mismatch("dedekind_symbol", v, c.second);
    f["gamma"] = format_matrix(c.first);
    return f;
  }, cfg.workers);
  ++r.cases;
  if (const Rational tt = euler_defect(mat::T(), mat::T()); !tt.is_zero())
    r.failures.push_back(mismatch("euler_defect(T, T) = 0", tt, 0));
  // Search for a pair on which the defect is nonzero.
  std::vector<std::pair<MatQ2, MatQ2>> candidates{{mat::S(), mat::S()}};
  Rng rng(cfg.seed);
  for (int t = 0; t < 50; ++t) candidates.emplace_back(random_sl2z(rng, 6), random_sl2z(rng, 6));
  ++r.cases;
  bool found = false;
  for (const auto& [g1, g2] : candidates) {
    const Rational v = euler_defect(g1, g2);
    if (v.is_zero()) continue;
    r.info["euler_defect_witness"] = {{"g1", format_matrix(g1)}, {"g2", format_matrix(g2)}, {"defect", v.str()}};
    found = true;
    break;
  }
  if (!found) r.failures.push_back({{"identity", "euler_defect is not identically zero"}, {"searched", candidates.size()}});
  return r;
}

UpperHalfPoint second_basepoint(const MatQ2& g) {
  if (g.c.is_zero()) return {0.3, 1.5};
  const UpperHalfPoint t = default_basepoint(g);
  return {t.re + 0.25 / std::abs(g.c.to_double()), 1.5 * t.im};
}

SuiteResult analytic(const SuiteConfig& cfg) {
  SuiteResult r{"analytic"};
  struct Case {
    MatQ2 g;
    TorusPoint p;
    bool witness;
  };
  std::vector<Case> cases{{mat::T(), {Rational(1, 2), 0}, true},
                          {mat::S(), {Rational(1, 2), Rational(1, 2)}, true},
                          {{1, 0, 2, 1}, {Rational(1, 2), Rational(1, 3)}, true}};
  Rng rng(cfg.seed);
  const int trials = pick(cfg.trials, 10);
  for (int t = 0; t < trials; ++t) {
    const int n = static_cast<int>(rng.uniform(2, pick(cfg.n_hi, 6)));
    const auto points = torsion_points(n, false);
    const TorusPoint p = points[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(points.size()) - 1))];
    MatQ2 g = mat::identity();
    while (g == mat::identity()) g = stabilizer_sample(p, 1, 3, rng, 50).front();
    cases.push_back({g, p, false});
  }
  const double tol = cfg.tolerance;
  std::vector<json> reports(cases.size());
  run_cases(r, cases, [&](const Case& c, std::size_t i) -> Failure {
    const PeriodReport rep = compare(c.g, c.p);
    const PeriodValue alt = period_integral(c.g, second_basepoint(c.g), c.p);
    json j = to_json(rep);
    j["second_basepoint"] = {alt.value.real(), alt.value.imag()};
    const double drift = std::abs(alt.value - rep.numeric);
    bool ok = rep.passes(tol) && drift <= 1e-5;
    if (c.witness) {
      const PeriodReport direct = compare(c.g, c.p, {40, 20000, SeriesMethod::Direct});
      j["direct"] = {direct.numeric.real(), direct.numeric.imag()};
      ok = ok && direct.passes(tol);
    }
    reports[i] = j;
    if (ok) return std::nullopt;
    j["identity"] = "period integral = phi_classical";
    return j;
  }, cfg.workers);
  r.info["reports"] = reports;
  r.info["tolerance"] = tol;
  return r;
}

const std::map<std::string, SuiteResult (*)(const SuiteConfig&), std::less<>>& registry() {
  static const std::map<std::string, SuiteResult (*)(const SuiteConfig&), std::less<>> suites{
      {"analytic", analytic}, {"cocycle", cocycle}, {"dedekind", dedekind}, {"distribution", distribution},
      {"three-line", three_line}, {"route", route},     {"scaling", scaling},   {"symbolic", symbolic},
      {"theorem", period_equality}};
  return suites;
}

}  // namespace

json SuiteResult::to_json() const {
  return {{"suite", suite}, {"cases", cases}, {"passed", passed()}, {"failures", failures}, {"info", info}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteResult run_suite(std::string_view name, const SuiteConfig& config) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
  return it->second(config);
}

std::pair<int, int> parse_range(std::string_view text) {
  auto to_int = [&](std::string_view s) {
    std::size_t used = 0;
    const std::string str(s);
    int v = 0;
    try {
      v = std::stoi(str, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != str.size()) throw std::invalid_argument("malformed range '" + std::string(text) + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  const int lo = to_int(text.substr(0, dots)), hi = to_int(text.substr(dots + 2));
  if (lo > hi) throw std::invalid_argument("empty range '" + std::string(text) + "'");
  return {lo, hi};
}

}  // namespace ec
