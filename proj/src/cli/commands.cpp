#include "ec/cli.hpp"

#include <CLI11.hpp>
#include <iomanip>
#include <sstream>

#include "ec/analytic.hpp"
#include "ec/cocycle.hpp"
#include "ec/suites.hpp"

namespace ec::cli {

using nlohmann::json;

namespace {

struct Options {
  std::string matrix, point, route = "classical", kind = "st", suite, n_range, method = "closed";
  std::uint64_t seed = 7;
  int trials = 0, word_length = 0;
  unsigned workers = 0;
  double tolerance = 1e-6;
  bool human = false;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

MatQ2 matrix_arg(const Options& o) {
  try {
    return parse_matrix(o.matrix);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad --matrix: ") + e.what());
  }
}

TorusPoint point_arg(const Options& o) {
  try {
    return TorusPoint::parse(o.point);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad --point: ") + e.what());
  }
}

void print_rows(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void emit(std::ostream& out, const json& j, bool human) {
  if (!human) {
    out << j.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& [k, v] : j.items()) {
    if (k == "failures" || k == "info") continue;
    rows.emplace_back(k, scalar_text(v));
  }
  print_rows(out, rows);
  if (j.contains("failures"))
    for (const auto& f : j["failures"]) out << "FAIL " << f.dump() << '\n';
}

int cmd_phi(const Options& o, std::ostream& out) {
  const MatQ2 g = matrix_arg(o);
  const TorusPoint p = point_arg(o);
  Rational phi;
  if (o.route == "classical") {
    phi = phi_classical(g, p);
  } else if (o.route == "bruhat") {
    phi = phi_via_theta(g, p);
  } else if (o.route == "recursive") {
    phi = phi_classical(g, p);  // validates the SL2(Z) and p != 0 preconditions
    if (apply(g, p) != p) throw PreconditionError("matrix " + format_matrix(g) + " does not fix " + p.str());
    phi = Rational(2) * eval(theta10_recursive(g), p);
  } else {
    throw UsageError("unknown route '" + o.route + "' (classical|bruhat|recursive)");
  }
  const bool fixed = is_integral(g) && apply(g, p) == p;
  emit(out, {{"phi", phi.str()}, {"route", o.route}, {"fixed_point", fixed}, {"matrix", format_matrix(g)}, {"point", p.str()}},
       o.human);
  return kPass;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  const MatQ2 g = matrix_arg(o);
  json j{{"matrix", format_matrix(g)}, {"kind", o.kind}};
  if (o.kind == "st") {
    const STWord w = st_decompose(g);
    if (w.product() != g) throw std::logic_error("S/T word does not reproduce " + format_matrix(g));
    json letters = json::array();
    for (const auto& l : w.letters) letters.push_back(l.str());
    j["factors"] = letters;
    j["word"] = w.str();
    j["minus_identity_pairs"] = w.minus_identity_pairs;
  } else if (o.kind == "bruhat") {
    if (g.det() <= Rational(0)) throw PreconditionError("bruhat factorization needs det > 0");
    const BruhatFactors f = bruhat_factor(g);
    if (product(f) != g) throw std::logic_error("Bruhat factors do not reproduce " + format_matrix(g));
    json factors = json::array();
    for (const auto& m : factor_list(f)) factors.push_back(format_matrix(m));
    j["factors"] = factors;
    if (const auto* big = std::get_if<BigCellFactors>(&f)) {
      j["cell"] = "big";
      j["refined"] = {{"u1", format_matrix(big->u1)}, {"d1", format_matrix(big->d1)},
                      {"u2", format_matrix(big->u2)}, {"d2", format_matrix(big->d2)}};
    } else {
      j["cell"] = "borel";
    }
  } else {
    throw UsageError("unknown decomposition kind '" + o.kind + "' (bruhat|st)");
  }
  j["product_verified"] = true;
  emit(out, j, o.human);
  return kPass;
}

int cmd_check(const Options& o, std::ostream& out) {
  SuiteConfig cfg;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.word_length = o.word_length;
  cfg.tolerance = o.tolerance;
  cfg.workers = o.workers;
  if (!o.n_range.empty()) {
    try {
      std::tie(cfg.n_lo, cfg.n_hi) = parse_range(o.n_range);
    } catch (const std::exception& e) {
      throw UsageError(std::string("bad --N: ") + e.what());
    }
    if (cfg.n_lo < 2) throw UsageError("--N must start at 2 or more");
  }
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), o.suite) == names.end()) throw UsageError("unknown suite '" + o.suite + "'");
  const SuiteResult r = run_suite(o.suite, cfg);
  json j = r.to_json();
  j["seed"] = o.seed;
  emit(out, j, o.human);
  return r.passed() ? kPass : kCheckFailure;
}

int cmd_analytic(const Options& o, std::ostream& out) {
  const MatQ2 g = matrix_arg(o);
  const TorusPoint p = point_arg(o);
  SeriesParams params;
  if (o.method == "direct")
    params.method = SeriesMethod::Direct;
  else if (o.method != "closed")
    throw UsageError("unknown method '" + o.method + "' (closed|direct)");
  const PeriodReport r = compare(g, p, params);
  json j = to_json(r);
  j["tolerance"] = o.tolerance;
  j["pass"] = r.passes(o.tolerance);
  emit(out, j, o.human);
  return r.passes(o.tolerance) ? kPass : kCheckFailure;
}

void error_json(std::ostream& out, const std::string& kind, const std::string& reason) {
  out << json{{"error", kind}, {"reason", reason}}.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Dedekind-Rademacher periods, cocycle lifts and checks", "drcocycle"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) { sub->add_flag("--human", o.human, "Print a table instead of JSON"); };
  auto add_mp = [&](CLI::App* sub) {
    sub->add_option("-m,--matrix", o.matrix, "Matrix \"a,b;c,d\"")->required();
    sub->add_option("-p,--point", o.point, "Torus point \"x1,x2\"")->required();
  };

  auto* phi = app.add_subcommand("phi", "Evaluate Phi_p(gamma) by one route");
  add_mp(phi);
  phi->add_option("-r,--route", o.route, "classical|bruhat|recursive");
  add_common(phi);

  auto* dec = app.add_subcommand("decompose", "Bruhat factors or S/T word");
  dec->add_option("-m,--matrix", o.matrix, "Matrix \"a,b;c,d\"")->required();
  dec->add_option("-k,--kind", o.kind, "bruhat|st");
  add_common(dec);

  auto* chk = app.add_subcommand("check", "Run a property suite");
  std::string suites;
  for (const auto& n : suite_names()) suites += (suites.empty() ? "" : "|") + n;
  chk->add_option("--suite", o.suite, suites)->required();
  chk->add_option("--seed", o.seed, "PRNG seed");
  chk->add_option("--N", o.n_range, "Torsion range lo..hi");
  chk->add_option("--trials", o.trials, "Samples per case");
  chk->add_option("--length", o.word_length, "Word length / stabilizer factors");
  chk->add_option("--tolerance", o.tolerance, "Analytic tolerance");
  chk->add_option("--workers", o.workers, "Worker threads (0: all cores)");
  add_common(chk);

  auto* ana = app.add_subcommand("analytic", "Compare the Eisenstein period with the exact value");
  add_mp(ana);
  ana->add_option("--tolerance", o.tolerance, "Absolute tolerance");
  ana->add_option("--method", o.method, "closed|direct");
  add_common(ana);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kUsageError;
  }

  try {
    if (*phi) return cmd_phi(o, out);
    if (*dec) return cmd_decompose(o, out);
    if (*chk) return cmd_check(o, out);
    return cmd_analytic(o, out);
  } catch (const UsageError& e) {
    error_json(out, "usage", e.what());
  } catch (const PreconditionError& e) {
    error_json(out, "precondition", e.what());
  } catch (const MatrixDomainError& e) {
    error_json(out, "precondition", e.what());
  } catch (const AnalyticError& e) {
    error_json(out, "precondition", e.what());
  } catch (const std::exception& e) {
    error_json(out, "internal", e.what());
  }
  return kUsageError;
}

}  // namespace ec::cli
