#include "syncsim/cli/commands.hpp"

#include <algorithm>
#include <cmath>

#include "syncsim/analytic.hpp"
#include "syncsim/cli/report.hpp"
#include "syncsim/experiments.hpp"
#include "syncsim/oracle.hpp"
#include "syncsim/sync_maps.hpp"

namespace syncsim::cli {

namespace {

std::vector<int> oracle_sizes(const RunConfig& config) {
  if (!config.run.n_list.empty()) return config.run.n_list;
  return {config.model.n()};
}

}  // namespace

int cmd_oracle_check(const RunConfig& config, std::ostream& out, std::ostream& log) {
  Table table{{"config", "N", "V", "LsV", "LsV_expected", "LsV_residual", "LsV_tolerance", "LsM", "LsM_tolerance",
               "L0V", "L0V_expected", "pass"},
              {}};
  Rng rng(config.run.seed);
  bool all_pass = true;
  std::int64_t index = 0;

  for (int n : oracle_sizes(config)) {
    const auto spec = config.model.with_n(n);
    for (const auto& term : spec.sync_terms()) {
      if (falling_factorial(n, term.signature.k()) > kEnumerationLimit) {
        throw Error(ErrorKind::EnumerationTooLarge,
                    "N^[k] for N = " + std::to_string(n) + ", k = " + std::to_string(term.signature.k()) +
                        " exceeds " + std::to_string(kEnumerationLimit));
      }
    }
    const double nd = n;
    const double ab2 = spec.alpha() * spec.jump().b2();
    for (int i = 0; i < config.run.oracle_configs; ++i, ++index) {
      Configuration x(static_cast<std::size_t>(n));
      for (auto& v : x) v = -10.0 + 20.0 * rng.uniform01();
      const double v = sample_variance(x);
      const double sup = std::abs(*std::max_element(x.begin(), x.end(), [](double a, double b) {
        return std::abs(a) < std::abs(b);
      }));

      const double lsv = brute_force_LsV(spec, x);
      const double lsv_expected = -spec.delta_kappa() / (nd * (nd - 1.0)) * v;
      const double lsv_residual = std::abs(lsv - lsv_expected);
      const double lsv_tol = kVarianceIdentityTol * std::max(1.0, v);
      const double lsm = brute_force_LsM(spec, x);
      const double lsm_tol = kMeanIdentityTol * std::max(1.0, sup);
      bool pass = lsv_residual <= lsv_tol && std::abs(lsm) <= lsm_tol;

      Cell l0v = std::string("n/a");
      if (spec.jump().is_discrete()) {
        const double value = brute_force_L0V(spec, x);
        pass = pass && std::abs(value - ab2) <= kFreeDynamicsTol * ab2;
        l0v = value;
      }
      all_pass = all_pass && pass;
      table.rows.push_back({index, static_cast<std::int64_t>(n), v, lsv, lsv_expected, lsv_residual, lsv_tol, lsm,
                            lsm_tol, l0v, ab2, std::string(pass ? "yes" : "no")});
      if (config.output.verbosity > 0) {
        log << "N=" << n << " config " << i << ": LsV residual " << format_number(lsv_residual) << ", LsM "
            << format_number(lsm) << (pass ? "" : "  FAIL") << '\n';
      }
    }
  }
  emit(config, "oracle-check", table, out);
  if (!all_pass) log << "oracle-check: identity residual outside tolerance\n";
  return all_pass ? kSuccess : kCheckFailed;
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& log) {
  if (config.run.checkpoints.empty()) {
    throw ConfigError(ConfigErrorKind::MissingKey, "run.checkpoints", "simulate needs at least one checkpoint");
  }
  ExperimentSpec exp{config.model, config.init, config.run.checkpoints, config.run.replicas, config.run.seed};
  exp.threads = config.run.threads;
  const auto rows = run_experiment(exp);
  emit(config, "simulate", estimate_table(rows), out);

  bool ok = true;
  for (const auto& row : rows) {
    if (!(std::abs(row.z_score) <= kZThreshold)) {
      ok = false;
      log << "simulate: t = " << format_number(row.t) << " has z = " << format_number(row.z_score) << '\n';
    }
  }
  return ok ? kSuccess : kCheckFailed;
}

int cmd_analytic(const RunConfig& config, std::ostream& out, std::ostream& /*log*/) {
  const auto& run = config.run;
  if (run.checkpoints.empty() && run.steps.empty() && !run.regime) {
    throw ConfigError(ConfigErrorKind::MissingKey, "run", "analytic needs run.checkpoints, run.steps or run.regime");
  }
  Table table{{"kind", "N", "t", "n", "mean", "variance", "theorem_value", "plateau", "plateau_theorem"}, {}};

  auto add_rows = [&](const ModelSpec& model) {
    const auto m0 = expected_initial_moments(config.init, model.n());
    const MomentCurve curve(model, m0.s0, m0.d0);
    const double late = phase_asymptote(model, PhaseRegime::late(), 0.0);
    const auto n = static_cast<std::int64_t>(model.n());
    for (double t : run.checkpoints) {
      table.rows.push_back({std::string("time"), n, t, std::string(""), curve.mean_at(t), curve.variance_at(t),
                            uniform_asymptote(model, t), curve.plateau(), late});
    }
    for (std::uint64_t step : run.steps) {
      const double t = static_cast<double>(step) * curve.gamma();
      table.rows.push_back({std::string("step"), n, t, static_cast<std::int64_t>(step), curve.embedded_mean(step),
                            curve.embedded_variance(step), uniform_asymptote(model, t), curve.plateau(), late});
    }
  };

  add_rows(config.model);
  for (const auto& regime : config.regimes()) {
    const auto sizes = run.n_list.empty() ? std::vector<int>{config.model.n()} : run.n_list;
    for (int n : sizes) {
      const auto model = config.model.with_n(n);
      const auto m0 = expected_initial_moments(config.init, n);
      const MomentCurve curve(model, m0.s0, m0.d0);
      const double t = regime_time(model, regime);
      table.rows.push_back({std::string("regime"), static_cast<std::int64_t>(n), t, std::string(""), curve.mean_at(t),
                            curve.variance_at(t), phase_asymptote(model, regime, t), curve.plateau(),
                            phase_asymptote(model, PhaseRegime::late(), 0.0)});
    }
  }
  emit(config, "analytic", table, out);
  return kSuccess;
}

int cmd_phase_sweep(const RunConfig& config, std::ostream& out, std::ostream& log) {
  if (!config.run.regime) throw ConfigError(ConfigErrorKind::MissingKey, "run.regime", "phase-sweep needs a regime");
  if (config.run.n_list.empty()) {
    throw ConfigError(ConfigErrorKind::MissingKey, "run.N_list", "phase-sweep needs a list of N");
  }
  std::vector<EstimateRow> rows;
  const auto regimes = config.regimes();
  for (std::size_t i = 0; i < regimes.size(); ++i) {
    // Each critical scale gets its own seed family.
    auto part = phase_sweep(config.model, regimes[i], config.run.n_list, config.run.replicas, config.run.seed + i,
                            config.init, config.run.threads);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  emit(config, "phase-sweep", estimate_table(rows), out);

  bool ok = true;
  for (const auto& row : rows) {
    if (!(std::abs(row.z_score) <= kZThreshold) || !leading_order_consistent(row)) {
      ok = false;
      log << "phase-sweep: N = " << row.n << ", t = " << format_number(row.t) << " z = " << format_number(row.z_score)
          << ", ratio to leading order " << format_number(row.ratio()) << '\n';
    }
  }
  return ok ? kSuccess : kCheckFailed;
}

}  // namespace syncsim::cli
