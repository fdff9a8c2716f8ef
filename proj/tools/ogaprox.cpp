// Batch front end: configure a run, execute it, and emit a machine-readable
// trace (CSV) plus a summary (JSON); `verify` runs the invariant suites and
// `rates` fits convergence rates on a stored trace.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ogaprox/diagnostics.hpp"
#include "ogaprox/problems.hpp"
#include "ogaprox/trace_io.hpp"
#include "ogaprox/verify.hpp"

namespace {

using nlohmann::json;
using namespace ogaprox;

Vec parse_vector(const std::string& text) {
  Vec v;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) v.push_back(std::strtod(cell.c_str(), nullptr));
  if (v.empty()) throw ConstraintViolated("empty vector literal");
  return v;
}

double min_coordinate_floor(const std::vector<Vec>& points) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < points.size(); ++k) {
    m = std::min(m, points[k].size() == 1 ? points[k][0] : norm(points[k]));
  }
  return m;
}

struct RunFlags {
  std::string problem;
  std::string regime;  // empty = problem default
  long iters = 1000;
  std::optional<double> tau, sigma, tau0, sigma0, c_alpha, theta, alpha, epsilon, nu, mu;
  std::string x0_text, y0_text;
  std::uint64_t seed = 1;
  std::string trace_path, summary_path;
};

struct ResolvedRun {
  SaddleProblem problem;
  RegimeSpec regime{ConstantUnit{1.0, 1.0, 1.0}};
  Vec x0, y0;
  std::string problem_label;
};

ResolvedRun resolve(const RunFlags& flags) {
  ResolvedRun r;
  r.problem_label = flags.problem;
  double eps = flags.epsilon.value_or(0.1);

  if (flags.problem == "bilinear") {
    r.problem = bilinear_scalar();
  } else if (flags.problem == "csc") {
    r.problem = convex_strongly_concave(flags.nu.value_or(1.0));
  } else if (flags.problem == "scsc") {
    r.problem = strongly_convex_strongly_concave(flags.mu.value_or(1.0), flags.nu.value_or(1.0));
  } else if (flags.problem == "counterexample") {
    r.problem = counterexample_setup(eps).problem;
  } else {
    throw ConstraintViolated("unknown problem: " + flags.problem +
                             " (expected bilinear, csc, scsc, counterexample)");
  }

  const auto& entry = catalog_entry(flags.problem);
  std::string regime = flags.regime.empty() ? regime_name(entry.default_regime) : flags.regime;
  double c_alpha = flags.c_alpha.value_or(default_c_alpha(r.problem.L_yx));
  if (regime == "constant") {
    double step = default_constant_step(c_alpha, r.problem.L_yx, r.problem.L_yy);
    r.regime = ConstantUnit{flags.tau.value_or(step), flags.sigma.value_or(step), c_alpha};
  } else if (regime == "accelerated") {
    r.regime = Accelerated{flags.tau0.value_or(0.5), flags.sigma0.value_or(0.5), c_alpha};
  } else if (regime == "linear") {
    r.regime = LinearRate{flags.theta.value_or(0.6), flags.alpha.value_or(1.0)};
  } else if (regime == "adversarial") {
    r.regime = Adversarial{eps};
  } else {
    throw ConstraintViolated("unknown regime: " + regime);
  }

  r.x0 = flags.x0_text.empty() ? entry.default_x0 : parse_vector(flags.x0_text);
  r.y0 = flags.y0_text.empty() ? entry.default_y0 : parse_vector(flags.y0_text);
  return r;
}

json summarize(const ResolvedRun& cfg, const Trace& trace, long iters) {
  json floors;
  floors["min_x"] = min_coordinate_floor(trace.xs);
  floors["min_y"] = min_coordinate_floor(trace.ys);
  double min_f = std::numeric_limits<double>::infinity();
  double max_gap = 0.0;
  long violations = 0;
  for (const auto& row : trace.rows) {
    min_f = std::min(min_f, row.f_ergodic);
    if (!std::isnan(row.gap_ergodic)) {
      max_gap = std::max(max_gap, std::abs(row.gap_ergodic));
      if (row.gap_ergodic < -1e-10 * (1.0 + std::abs(row.f_ergodic))) ++violations;
    }
    if (!std::isnan(row.lower_bound)) {
      double tol = 1e-8 * (1.0 + std::abs(row.value_error) +
                           std::max(std::abs(row.lower_bound), std::abs(row.upper_bound)));
      if (row.value_error > row.upper_bound + tol || row.value_error < row.lower_bound - tol) {
        ++violations;
      }
    }
  }
  floors["min_f_ergodic"] = min_f;

  json fitted;
  RateModel model = std::holds_alternative<LinearRate>(trace.regime) ? RateModel::Geometric
                                                                     : RateModel::Power;
  fitted["model"] = model == RateModel::Geometric ? "geometric" : "power";
  try {
    auto fit = fit_rate_trace(trace, model, [](const TraceRow& r) { return r.value_error; });
    fitted["value"] = fit.value;
    fitted["residual"] = fit.residual;
  } catch (const InsufficientData&) {
    fitted["value"] = nullptr;
    fitted["residual"] = nullptr;
  }

  json summary;
  summary["run"] = cfg.problem_label;
  summary["regime"] = regime_name(trace.regime);
  summary["iters"] = iters;
  summary["final_value_error"] =
      trace.rows.empty() ? json(nullptr) : json(trace.rows.back().value_error);
  summary["fitted_rate"] = fitted;
  summary["floors"] = floors;
  summary["max_abs_gap"] = max_gap;
  summary["violations"] = violations;
  return summary;
}

int cmd_run(const RunFlags& flags) {
  ResolvedRun cfg;
  Trace trace;
  try {
    cfg = resolve(flags);
    if (flags.iters < 1) throw ConstraintViolated("--iters must be >= 1");
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  try {
    trace = run_with_diagnostics(cfg.problem, cfg.regime, cfg.x0, cfg.y0, flags.iters);
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  if (!trace.error.empty()) {
    std::cerr << "numeric failure at k=" << trace.rows.size() << ": " << trace.error << "\n";
    return 3;
  }
  trace.problem_label = cfg.problem_label;
  if (!flags.trace_path.empty()) write_trace_csv(trace, flags.trace_path);
  json summary = summarize(cfg, trace, flags.iters);
  if (!flags.summary_path.empty()) {
    std::ofstream out(flags.summary_path, std::ios::binary);
    out << summary.dump(2) << "\n";
  } else {
    std::cout << summary.dump(2) << "\n";
  }
  return 0;
}

int cmd_verify(const std::vector<std::string>& suites) {
  std::vector<std::string> names;
  for (const auto& suite : suites) {
    if (suite == "all") {
      names = suite_names();
      break;
    }
    names.push_back(suite);
  }
  if (names.empty()) names = suite_names();
  bool all_pass = true;
  for (const auto& name : names) {
    std::vector<CheckResult> results;
    try {
      results = run_suite(name);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }
    for (const auto& r : results) {
      std::printf("%s  [%s] %s  (worst %.6g)%s\n", r.pass ? "PASS" : "FAIL", name.c_str(),
                  r.name.c_str(), r.worst, r.detail.empty() ? "" : ("  " + r.detail).c_str());
      all_pass = all_pass && r.pass;
    }
  }
  return all_pass ? 0 : 1;
}

int cmd_rates(const std::string& trace_path, const std::string& model_name,
              const std::string& column, long k_lo, long k_hi) {
  TraceTable table;
  try {
    table = read_trace_csv(trace_path);
  } catch (const std::exception& e) {
    std::cerr << "trace error: " << e.what() << "\n";
    return 2;
  }
  RateModel model = model_name == "geometric" ? RateModel::Geometric : RateModel::Power;
  try {
    const auto& kcol = table.column("k");
    const auto& ecol = table.column(column);
    std::vector<long> ks(kcol.size());
    for (std::size_t i = 0; i < kcol.size(); ++i) ks[i] = static_cast<long>(kcol[i]);
    long hi = k_hi > 0 ? k_hi : (ks.empty() ? 0 : ks.back());
    long lo = k_lo > 0 ? k_lo : std::max(1L, hi / 10);
    auto fit = fit_rate(ks, ecol, lo, hi, model);
    std::printf("model=%s column=%s window=[%ld,%ld] points=%ld value=%.6g residual=%.6g\n",
                model == RateModel::Geometric ? "geometric" : "power", column.c_str(), lo, hi,
                fit.points, fit.value, fit.residual);
  } catch (const std::exception& e) {
    std::cerr << "trace error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saddle-point solver and diagnostics for the OGAProx method"};
  app.require_subcommand(1);

  RunFlags flags;
  auto* run_cmd = app.add_subcommand("run", "run the solver and write trace + summary");
  run_cmd->add_option("--problem", flags.problem,
                      "problem label: bilinear, csc, scsc, counterexample")
      ->required();
  run_cmd->add_option("--regime", flags.regime,
                      "constant, accelerated, linear, adversarial (default: per problem)");
  run_cmd->add_option("--iters", flags.iters, "number of iterations");
  run_cmd->add_option("--tau", flags.tau, "constant regime primal step");
  run_cmd->add_option("--sigma", flags.sigma, "constant regime dual step");
  run_cmd->add_option("--tau0", flags.tau0, "accelerated regime initial primal step");
  run_cmd->add_option("--sigma0", flags.sigma0, "accelerated regime initial dual step");
  run_cmd->add_option("--c-alpha", flags.c_alpha, "coupling constant c_alpha (> L_yx)");
  run_cmd->add_option("--theta", flags.theta, "linear regime contraction factor");
  run_cmd->add_option("--alpha", flags.alpha, "linear regime alpha");
  run_cmd->add_option("--epsilon", flags.epsilon, "adversarial epsilon in (0, 3/pi^2)");
  run_cmd->add_option("--nu", flags.nu, "dual strong-convexity modulus (csc, scsc)");
  run_cmd->add_option("--mu", flags.mu, "primal strong-convexity modulus (scsc)");
  run_cmd->add_option("--x0", flags.x0_text, "start point x, comma-separated");
  run_cmd->add_option("--y0", flags.y0_text, "start point y, comma-separated");
  run_cmd->add_option("--seed", flags.seed, "probe-sampling seed");
  run_cmd->add_option("--trace", flags.trace_path, "trace CSV output path");
  run_cmd->add_option("--summary", flags.summary_path, "summary JSON output path");

  std::vector<std::string> suites;
  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suites");
  verify_cmd->add_option("--suite", suites,
                         "suite name (problems, schedules, counterexample, identities, "
                         "sandwich, certificates, ergodic, roundtrip) or 'all'; repeatable");

  std::string trace_path, model_name = "power", column = "value_error";
  long k_lo = 0, k_hi = 0;
  auto* rates_cmd = app.add_subcommand("rates", "fit a convergence rate on a stored trace");
  rates_cmd->add_option("--trace", trace_path, "trace CSV path")->required();
  rates_cmd->add_option("--model", model_name, "power or geometric");
  rates_cmd->add_option("--column", column, "trace column to fit");
  rates_cmd->add_option("--k-lo", k_lo, "window lower end (default: 10% of run)");
  rates_cmd->add_option("--k-hi", k_hi, "window upper end (default: last row)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (run_cmd->parsed()) return cmd_run(flags);
  if (verify_cmd->parsed()) return cmd_verify(suites);
  return cmd_rates(trace_path, model_name, column, k_lo, k_hi);
}
