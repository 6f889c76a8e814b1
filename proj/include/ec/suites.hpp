#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ec {

/// Parameters of a check run. Every run is reproducible from (suite, config).
/// Fields left at zero take the suite's own default.
struct SuiteConfig {
  std::uint64_t seed = 7;
  int n_lo = 0, n_hi = 0;  // torsion range for the sweeps
  int trials = 0;          // per-suite sample count
  int word_length = 0;     // stabilizer factors or S/T word length
  double tolerance = 1e-6;
  unsigned workers = 0;    // 0: hardware concurrency
};

struct SuiteResult {
  std::string suite;
  std::size_t cases = 0;
  nlohmann::json failures = nlohmann::json::array();
  nlohmann::json info = nlohmann::json::object();

  bool passed() const { return failures.empty(); }
  nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(std::string_view name, const SuiteConfig& config);

/// Parses "lo..hi" or a single integer.
std::pair<int, int> parse_range(std::string_view text);

}  // namespace ec
