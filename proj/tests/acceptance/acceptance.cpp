// Runs the nine acceptance criteria at their stated sizes and time limits and
// prints one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "ec/suites.hpp"

using namespace ec;

namespace {

struct Criterion {
  int id;
  std::string name;
  std::string suite;
  SuiteConfig config;
  double limit_seconds;
  // Coverage requirement on the suite report; returns a complaint or "".
  std::function<std::string(const SuiteResult&)> coverage;
};

SuiteConfig config(int n_lo, int n_hi, int trials, int word_length, double tolerance = 1e-6) {
  SuiteConfig c;
  c.seed = 7;
  c.n_lo = n_lo;
  c.n_hi = n_hi;
  c.trials = trials;
  c.word_length = word_length;
  c.tolerance = tolerance;
  return c;
}

std::string expect_count(const SuiteResult& r, const char* key, std::size_t want) {
  const std::size_t got = r.info.value(key, std::size_t{0});
  return got >= want ? "" : std::string(key) + " = " + std::to_string(got) + " < " + std::to_string(want);
}

std::string expect_cases(const SuiteResult& r, std::size_t want) {
  return r.cases >= want ? "" : "cases = " + std::to_string(r.cases) + " < " + std::to_string(want);
}

}  // namespace

int main() {
  std::size_t torsion_points = 0;
  for (int n = 2; n <= 10; ++n) torsion_points += static_cast<std::size_t>(n * n - 1);

  const std::vector<Criterion> criteria{
      {1, "exact period equality N=2..10, >=50 stabilizers per point", "theorem", config(2, 10, 50, 6), 120,
       [&](const SuiteResult& r) {
         auto s = expect_count(r, "points", torsion_points);
         return s.empty() ? expect_count(r, "stabilizer_elements", 50 * torsion_points) : s;
       }},
      {2, "route equivalence, 100 words of length <= 30", "route", config(0, 0, 100, 30), 60,
       [](const SuiteResult& r) { return expect_cases(r, 100); }},
      {3, "cocycle law and homomorphism law", "cocycle", config(3, 6, 100, 10), 60,
       [](const SuiteResult& r) {
         auto s = expect_count(r, "cocycle_pairs", 100);
         return s.empty() ? expect_count(r, "homomorphism_pairs", 400) : s;
       }},
      {4, "distribution relations a=2..12", "distribution", config(0, 0, 100, 0), 10,
       [](const SuiteResult& r) { return expect_cases(r, 11 * 100); }},
      {5, "symbolic identity corpus", "symbolic", config(0, 0, 0, 0), 10,
       [](const SuiteResult& r) { return expect_cases(r, 25); }},
      {6, "three-line identity", "three-line", config(0, 0, 200, 0), 5,
       [](const SuiteResult& r) { return expect_cases(r, 201); }},
      {7, "scaling identity c = 1 mod N, c <= 50, N=2..8", "scaling", config(2, 8, 3, 0), 30,
       [](const SuiteResult& r) { return expect_cases(r, 1); }},
      {8, "Dedekind symbol and Euler defect witness", "dedekind", config(0, 0, 0, 0), 5,
       [](const SuiteResult& r) {
         return r.info.contains("euler_defect_witness") ? std::string() : std::string("no witness recorded");
       }},
      {9, "analytic closure, tolerance 1e-6", "analytic", config(0, 6, 10, 0, 1e-6), 300,
       [](const SuiteResult& r) { return expect_cases(r, 13); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string problem;
    SuiteResult result;
    try {
      result = run_suite(c.suite, c.config);
      if (!result.passed()) problem = std::to_string(result.failures.size()) + " failing case(s): " + result.failures[0].dump();
      if (problem.empty()) problem = c.coverage(result);
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (problem.empty() && seconds > c.limit_seconds) problem = "over the time limit";
    const bool ok = problem.empty();
    failed += ok ? 0 : 1;
    std::printf("%s criterion %d: %s [%zu cases, %.2fs of %.0fs]%s%s\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                result.cases, seconds, c.limit_seconds, ok ? "" : " -- ", problem.c_str());
    if (ok && c.suite == "dedekind") std::printf("     witness: %s\n", result.info["euler_defect_witness"].dump().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
