// linform: simulate linear forms with random coefficients, evaluate the
// functional equations their characteristic functions satisfy, and run the
// derived hypothesis tests. JSON for reports, CSV for curves.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "linform/distributions.hpp"
#include "linform/ecf.hpp"
#include "linform/fixpoint.hpp"
#include "linform/func_equations.hpp"
#include "linform/grid.hpp"
#include "linform/hypothesis_tests.hpp"
#include "linform/linear_forms.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::ordered_json;
using namespace linform;

// Subcommands share most knobs but not all defaults, and CLI11 writes a
// default_val into its bound variable at registration time, so fields whose
// default differs per subcommand get their own member.
struct Options {
  std::string family = "two-point";
  double a = 1.0;
  std::string theorem = "t1";
  int copies = 3;
  std::string method = "ks";
  std::string equation = "eq2";
  int order = 3;
  std::size_t sample_n = 1000;
  std::size_t verify_n = 100000;
  std::size_t gof_n = 100000;
  std::size_t residual_n = 0;
  std::uint64_t seed = 1;
  std::size_t replicates = 199;
  double alpha = 0.05;
  double t_max = 4.0;
  double residual_t_max = 8.0;
  std::size_t grid_points = 65;
  std::size_t verify_grid_points = 9;
  std::size_t residual_grid_points = 257;
  int depth = 20;
  int taylor_order = 4;
  double tolerance = 1e-8;
  double curvature = -1.0;
  int terms = 30;
  std::string format;
  std::string out;
  bool assert_mode = false;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

DistributionSpec parse_family(const Options& opt) {
  if (opt.family == "two-point") return two_point(opt.a);
  if (opt.family == "uniform") return uniform_sym(opt.a);
  if (opt.family == "sech2") return sech_squared(opt.a);
  if (opt.family == "gaussian") return gaussian(opt.a);
  throw std::invalid_argument("unknown family: " + opt.family);
}

TheoremId parse_theorem(const Options& opt) {
  if (opt.theorem == "t1") return TheoremId::t1();
  if (opt.theorem == "t1a") return TheoremId::t1a(opt.copies);
  if (opt.theorem == "t2") return TheoremId::t2();
  if (opt.theorem == "t3") return TheoremId::t3();
  if (opt.theorem == "t4") return TheoremId::t4();
  throw std::invalid_argument("unknown theorem: " + opt.theorem);
}

EquationId parse_equation(const Options& opt) {
  if (opt.equation == "eq2") return EquationId::eq2();
  if (opt.equation == "eqn") return EquationId::eq_n(opt.order);
  if (opt.equation == "eq21") return EquationId::eq21();
  if (opt.equation == "eq31") return EquationId::eq31();
  if (opt.equation == "eq35") return EquationId::eq35();
  if (opt.equation == "eqt4") return EquationId::eq_t4();
  throw std::invalid_argument("unknown equation: " + opt.equation);
}

Grid dyadic_grid(const Options& opt) {
  const Grid grid = Grid::make_uniform(opt.residual_t_max, opt.residual_grid_points);
  if (!grid.dyadic)
    throw std::invalid_argument("grid-points must be 2^k + 1 for equation residuals");
  return grid;
}

struct Output {
  ordered_json config;
  std::string csv;
  double statistic = 0.0;
  bool has_test = false;
  TestReport test;
};

Output run_sample(const Options& opt) {
  if (opt.sample_n < 1) throw std::invalid_argument("sample: need --n >= 1");
  const DistributionSpec spec = parse_family(opt);
  const SampleBatch batch = sample(spec, opt.sample_n, opt.seed);
  Output out;
  out.config = {{"family", opt.family}, {"a", opt.a}, {"n", opt.sample_n}};
  out.statistic = mean_square(batch.values);
  out.csv = "value\n";
  for (double v : batch.values) {
    out.csv += fmt(v);
    out.csv += '\n';
  }
  return out;
}

Output run_verify(const Options& opt) {
  if (opt.verify_n < 2) throw std::invalid_argument("verify: need --n >= 2");
  const DistributionSpec spec = parse_family(opt);
  const TheoremId theorem = parse_theorem(opt);
  Output out;
  if (theorem.kind == TheoremId::Kind::T2) {
    const PairBatch pairs = sample_independence_pair(spec, opt.verify_n, opt.seed);
    const Grid grid = Grid::make_uniform(opt.t_max, opt.verify_grid_points);
    out.test = independence_test(pairs, grid, opt.replicates, opt.seed, opt.alpha);
  } else {
    const auto [lhs, rhs] = sample_identity_pair(theorem, spec, opt.verify_n, opt.seed);
    if (opt.method == "ks") {
      out.test = ks_two_sample(lhs, rhs, opt.alpha);
    } else if (opt.method == "cf") {
      const Grid grid = Grid::make_uniform(opt.t_max, opt.verify_grid_points);
      out.test = cf_equality_test(lhs, rhs, grid, opt.replicates, opt.seed, opt.alpha);
    } else {
      throw std::invalid_argument("unknown method: " + opt.method);
    }
  }
  out.has_test = true;
  out.statistic = out.test.statistic;
  out.config = {{"theorem", opt.theorem}, {"copies", opt.copies},   {"family", opt.family},
                {"a", opt.a},             {"n", opt.verify_n},      {"method", out.test.method},
                {"t_max", opt.t_max},     {"grid_points", opt.verify_grid_points},
                {"replicates", opt.replicates}, {"alpha", opt.alpha}};
  return out;
}

Output run_gof(const Options& opt) {
  if (opt.gof_n < 2) throw std::invalid_argument("gof: need --n >= 2");
  const DistributionSpec spec = parse_family(opt);
  const TheoremId theorem = parse_theorem(opt);
  const SampleBatch batch = sample(spec, opt.gof_n, opt.seed);
  Output out;
  out.test = characterization_gof(batch, characterized_family(theorem), theorem, opt.replicates,
                                  opt.seed, opt.alpha);
  out.has_test = true;
  out.statistic = out.test.statistic;
  out.config = {{"theorem", opt.theorem},       {"copies", opt.copies}, {"family", opt.family},
                {"a", opt.a},                   {"n", opt.gof_n},
                {"replicates", opt.replicates}, {"alpha", opt.alpha}};
  return out;
}

Output run_residual(const Options& opt) {
  const DistributionSpec spec = parse_family(opt);
  const EquationId eq = parse_equation(opt);
  const Grid grid = dyadic_grid(opt);
  Output out;
  out.config = {{"equation", opt.equation}, {"order", opt.order},
                {"family", opt.family},     {"a", opt.a},
                {"n", opt.residual_n},      {"t_max", opt.residual_t_max},
                {"grid_points", opt.residual_grid_points}};
  ResidualCurve curve;
  if (opt.residual_n == 0) {
    GridFunction f = tabulate(grid, [&](double t) { return cf_exact(spec, t); });
    if (eq.kind == EquationId::Kind::Eq35) f = k_ratio(f, 0.1);
    curve = residual(eq, f);
  } else {
    if (eq.kind == EquationId::Kind::Eq35)
      throw std::invalid_argument("eq35 operates on the CF ratio; omit --n for the exact CF");
    const SampleBatch batch = sample(spec, opt.residual_n, opt.seed);
    curve = residual_with_se(eq, ecf(batch, grid));
  }
  const bool with_se = !curve.se.empty();
  out.csv = with_se ? "t,residual,se\n" : "t,residual\n";
  for (std::size_t i = 0; i < curve.curve.values.size(); ++i) {
    out.csv += fmt(curve.curve.grid.points[i]);
    out.csv += ',';
    out.csv += fmt(curve.curve.values[i]);
    if (with_se) {
      out.csv += ',';
      out.csv += fmt(curve.se[i]);
    }
    out.csv += '\n';
    out.statistic = std::max(out.statistic, std::fabs(curve.curve.values[i]));
  }
  return out;
}

Output run_solve(const Options& opt) {
  FixpointConfig config;
  config.t_max = opt.t_max;
  config.depth = opt.depth;
  config.taylor_order = opt.taylor_order;
  config.tolerance = opt.tolerance;
  const GridFunction k = solve_by_doubling(config, opt.curvature);
  const double a = std::sqrt(-opt.curvature);
  Output out;
  out.config = {{"t_max", opt.t_max},           {"depth", opt.depth},
                {"taylor_order", opt.taylor_order}, {"tolerance", opt.tolerance},
                {"curvature", opt.curvature},   {"grid_points", opt.grid_points}};
  const std::size_t m = k.values.size();
  if (opt.grid_points < 2 || ((opt.grid_points - 1) & (opt.grid_points - 2)) != 0 ||
      opt.grid_points > m)
    throw std::invalid_argument("solve: grid-points must be 2^k + 1 and at most 2^depth + 1");
  const std::size_t stride = (m - 1) / (opt.grid_points - 1);
  for (std::size_t i = 0; i < m; ++i)
    out.statistic =
        std::max(out.statistic, std::fabs(k.values[i] - std::cos(a * k.grid.points[i])));
  out.csv = "t,k,reference,abs_error\n";
  for (std::size_t r = 0; r < opt.grid_points; ++r) {
    const std::size_t i = r * stride;
    const double ref = std::cos(a * k.grid.points[i]);
    out.csv += fmt(k.grid.points[i]);
    out.csv += ',';
    out.csv += fmt(k.values[i]);
    out.csv += ',';
    out.csv += fmt(ref);
    out.csv += ',';
    out.csv += fmt(std::fabs(k.values[i] - ref));
    out.csv += '\n';
  }
  out.csv += "# max_abs_error=" + fmt(out.statistic) + "\n";
  return out;
}

Output run_product(const Options& opt) {
  if (opt.terms < 1) throw std::invalid_argument("product: need --terms >= 1");
  const Grid grid = Grid::make_uniform(opt.t_max, opt.grid_points);
  Output out;
  out.config = {{"a", opt.a}, {"terms", opt.terms}, {"t_max", opt.t_max},
                {"grid_points", opt.grid_points}};
  out.csv = "t,partial,closed_form,abs_error\n";
  for (double t : grid.points) {
    const double partial = viete_product(opt.a, t, opt.terms);
    const double closed = viete_closed_form(opt.a, t);
    const double err = std::fabs(partial - closed);
    out.statistic = std::max(out.statistic, err);
    out.csv += fmt(t);
    out.csv += ',';
    out.csv += fmt(partial);
    out.csv += ',';
    out.csv += fmt(closed);
    out.csv += ',';
    out.csv += fmt(err);
    out.csv += '\n';
  }
  return out;
}

void emit(const std::string& text, const Options& opt) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file: " + opt.out);
  file << text;
}

std::string test_csv(const std::string& command, const TestReport& t, double runtime_ms) {
  std::string csv =
      "command,method,statistic,p_value,reject,n,n2,replicates,seed,alpha,runtime_ms,version\n";
  csv += command + ',' + t.method + ',' + fmt(t.statistic) + ',' + fmt(t.p_value) + ',' +
         (t.reject ? "true" : "false") + ',' + std::to_string(t.n) + ',' + std::to_string(t.n2) +
         ',' + std::to_string(t.replicates) + ',' + std::to_string(t.seed) + ',' + fmt(t.alpha) +
         ',' + fmt(runtime_ms) + ',' + kVersion + '\n';
  return csv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear forms with random coefficients: simulation, functional equations, tests"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Options opt;
  const std::vector<std::string> families{"two-point", "uniform", "sech2", "gaussian"};
  const std::vector<std::string> theorems{"t1", "t1a", "t2", "t3", "t4"};
  const std::vector<std::string> equations{"eq2", "eqn", "eq21", "eq31", "eq35", "eqt4"};

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", opt.seed, "RNG seed (default 1)");
    cmd->add_option("--format", opt.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", opt.out, "write output to a file instead of stdout");
  };
  auto add_family = [&](CLI::App* cmd) {
    cmd->add_option("--family", opt.family, "two-point|uniform|sech2|gaussian")
        ->check(CLI::IsMember(families));
    cmd->add_option("--a", opt.a, "scale parameter of the family (default 1)");
  };

  CLI::App* c_sample = app.add_subcommand("sample", "draw i.i.d. values from a family");
  add_common(c_sample);
  add_family(c_sample);
  c_sample->add_option("--n", opt.sample_n, "number of draws (default 1000)");

  CLI::App* c_verify =
      app.add_subcommand("verify", "two-sample / independence test of a theorem's identity");
  add_common(c_verify);
  add_family(c_verify);
  c_verify->add_option("--theorem", opt.theorem, "t1|t1a|t2|t3|t4")->check(CLI::IsMember(theorems));
  c_verify->add_option("--copies", opt.copies, "right-hand-side copies for t1a (default 3)")
      ->check(CLI::Range(2, 50));
  c_verify->add_option("--method", opt.method, "equality test: ks|cf (default ks)")
      ->check(CLI::IsMember({"ks", "cf"}));
  c_verify->add_option("--n", opt.verify_n, "sample size per side (default 100000)");
  c_verify->add_option("--replicates", opt.replicates,
                       "permutation replicates (cf / t2, default 199)");
  c_verify->add_option("--alpha", opt.alpha, "test level (default 0.05)");
  c_verify->add_option("--t-max", opt.t_max, "CF grid upper end (cf / t2, default 4)");
  c_verify->add_option("--grid-points", opt.verify_grid_points,
                       "CF grid size (cf / t2, default 9)");
  c_verify->add_flag("--assert", opt.assert_mode,
                     "exit 3 unless the decision matches the theorem's prediction");

  CLI::App* c_gof = app.add_subcommand("gof", "characterization goodness-of-fit by bootstrap");
  add_common(c_gof);
  add_family(c_gof);
  c_gof->add_option("--theorem", opt.theorem, "t1|t1a|t2|t3|t4")->check(CLI::IsMember(theorems));
  c_gof->add_option("--copies", opt.copies, "right-hand-side copies for t1a (default 3)")
      ->check(CLI::Range(2, 50));
  c_gof->add_option("--n", opt.gof_n, "sample size (default 100000)");
  c_gof->add_option("--replicates", opt.replicates, "bootstrap replicates (default 199)");
  c_gof->add_option("--alpha", opt.alpha, "test level (default 0.05)");
  c_gof->add_flag("--assert", opt.assert_mode,
                  "exit 3 unless the decision matches the theorem's prediction");

  CLI::App* c_residual =
      app.add_subcommand("residual", "functional-equation residual curve of a CF or ECF");
  add_common(c_residual);
  add_family(c_residual);
  c_residual->add_option("--equation", opt.equation, "eq2|eqn|eq21|eq31|eq35|eqt4")
      ->check(CLI::IsMember(equations));
  c_residual->add_option("--order", opt.order, "n for --equation eqn")->check(CLI::Range(2, 50));
  c_residual->add_option("--n", opt.residual_n, "sample size; 0 = exact CF (default)");
  c_residual->add_option("--t-max", opt.residual_t_max, "grid upper end (default 8)");
  c_residual->add_option("--grid-points", opt.residual_grid_points,
                         "grid size, 2^k + 1 (default 257)");

  CLI::App* c_solve = app.add_subcommand("solve", "fixed point of the doubling operator");
  add_common(c_solve);
  c_solve->add_option("--t-max", opt.t_max, "solve interval upper end (default 4)");
  c_solve->add_option("--depth", opt.depth, "doubling depth J, base scale t_max/2^J (default 20)");
  c_solve->add_option("--taylor-order", opt.taylor_order, "seed Taylor order, 2 or 4 (default 4)");
  c_solve->add_option("--tolerance", opt.tolerance, "target sup-norm accuracy (default 1e-8)");
  c_solve->add_option("--curvature", opt.curvature, "K''(0), negative (default -1)");
  c_solve->add_option("--grid-points", opt.grid_points,
                      "rows in the emitted curve, 2^k + 1 (default 65)");

  CLI::App* c_product =
      app.add_subcommand("product", "cosine half-angle partial products vs closed form");
  add_common(c_product);
  c_product->add_option("--a", opt.a, "frequency (default 1)");
  c_product->add_option("--terms", opt.terms, "number of factors (default 30)");
  c_product->add_option("--t-max", opt.t_max, "grid upper end (default 4)");
  c_product->add_option("--grid-points", opt.grid_points, "grid size (default 65)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto started = std::chrono::steady_clock::now();
  Output result;
  std::string command;
  try {
    if (app.got_subcommand(c_sample)) command = "sample", result = run_sample(opt);
    if (app.got_subcommand(c_verify)) command = "verify", result = run_verify(opt);
    if (app.got_subcommand(c_gof)) command = "gof", result = run_gof(opt);
    if (app.got_subcommand(c_residual)) command = "residual", result = run_residual(opt);
    if (app.got_subcommand(c_solve)) command = "solve", result = run_solve(opt);
    if (app.got_subcommand(c_product)) command = "product", result = run_product(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const double runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();

  const bool json = opt.format.empty() ? (command == "verify" || command == "gof")
                                       : opt.format == "json";
  try {
    if (json) {
      ordered_json report;
      report["command"] = command;
      report["config"] = result.config;
      report["statistic"] = result.statistic;
      report["p_value"] = result.has_test ? ordered_json(result.test.p_value) : ordered_json();
      report["reject"] = result.has_test ? ordered_json(result.test.reject) : ordered_json();
      report["seed"] = opt.seed;
      report["runtime_ms"] = runtime_ms;
      report["version"] = kVersion;
      emit(report.dump(2) + "\n", opt);
    } else if (result.has_test) {
      emit(test_csv(command, result.test, runtime_ms), opt);
    } else {
      emit(result.csv, opt);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (opt.assert_mode && result.has_test) {
    const DistributionSpec spec = parse_family(opt);
    const bool predicted_reject = spec.family != characterized_family(parse_theorem(opt));
    if (result.test.reject != predicted_reject) {
      std::cerr << "assertion failed: decision " << (result.test.reject ? "reject" : "accept")
                << ", predicted " << (predicted_reject ? "reject" : "accept") << "\n";
      return 3;
    }
  }
  return 0;
}
