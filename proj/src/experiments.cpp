#include "syncsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>
#include <type_traits>

#include "syncsim/oracle.hpp"

namespace syncsim {

namespace {

double spread_width(const InitSpec::Spread& s, int n) { return s.width * std::pow(static_cast<double>(n), s.exponent); }

void check_n(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidConfiguration, "initial configuration needs N >= 2");
}

}  // namespace

Configuration init_configuration(const InitSpec& init, int n, Rng& rng) {
  check_n(n);
  const auto size = static_cast<std::size_t>(n);
  return std::visit(
      [&](const auto& kind) -> Configuration {
        using K = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<K, InitSpec::Point>) {
          return Configuration(size, kind.value);
        } else if constexpr (std::is_same_v<K, InitSpec::Iid>) {
          Configuration x(size);
          for (auto& v : x) v = kind.rho.sample(rng);
          return x;
        } else if constexpr (std::is_same_v<K, InitSpec::Spread>) {
          const double width = spread_width(kind, n);
          if (!(width > 0.0)) throw Error(ErrorKind::InvalidConfiguration, "spread width must be positive");
          Configuration x(size);
          for (std::size_t m = 0; m < size; ++m) x[m] = width * static_cast<double>(m) / static_cast<double>(n - 1);
          return x;
        } else {
          if (kind.coords.size() != size) {
            throw Error(ErrorKind::InvalidConfiguration, "explicit configuration has " +
                                                             std::to_string(kind.coords.size()) + " coordinates, N = " +
                                                             std::to_string(n));
          }
          return kind.coords;
        }
      },
      init.kind);
}

InitialMoments expected_initial_moments(const InitSpec& init, int n) {
  check_n(n);
  return std::visit(
      [&](const auto& kind) -> InitialMoments {
        using K = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<K, InitSpec::Point>) {
          return {kind.value, 0.0};
        } else if constexpr (std::is_same_v<K, InitSpec::Iid>) {
          const double a = kind.rho.a();
          return {a, kind.rho.b2() - a * a};
        } else if constexpr (std::is_same_v<K, InitSpec::Spread>) {
          // Sample variance of {0, .., N-1} is N(N+1)/12, rescaled by (L/(N-1))^2.
          const double width = spread_width(kind, n);
          const double nd = n;
          return {0.5 * width, width * width * nd * (nd + 1.0) / (12.0 * (nd - 1.0) * (nd - 1.0))};
        } else {
          Rng unused(0);
          const auto x = init_configuration(init, n, unused);
          return {sample_mean(x), sample_variance(x)};
        }
      },
      init.kind);
}

ReplicaSamples run_replicas(const ExperimentSpec& exp) {
  if (exp.replicas < 2) throw Error(ErrorKind::ContractViolation, "at least 2 replicas are needed for a standard error");

  ReplicaSamples out;
  out.replicas = exp.replicas;
  out.checkpoints = exp.checkpoints.size();
  out.mean.resize(out.replicas * out.checkpoints);
  out.variance.resize(out.replicas * out.checkpoints);
  out.events.resize(out.replicas * out.checkpoints);

  std::vector<std::exception_ptr> failures(exp.replicas);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < exp.replicas; r = next++) {
      try {
        const std::uint64_t seed = derive_seed(exp.base_seed, exp.replica_offset + r);
        Rng init_rng(derive_seed(seed, 0));
        const auto init = init_configuration(exp.init, exp.model.n(), init_rng);
        const auto traj = simulate(exp.model, init, exp.checkpoints, seed, exp.options);
        for (std::size_t c = 0; c < out.checkpoints; ++c) {
          out.mean[r * out.checkpoints + c] = traj.checkpoints[c].mean;
          out.variance[r * out.checkpoints + c] = traj.checkpoints[c].variance;
          out.events[r * out.checkpoints + c] = traj.checkpoints[c].events;
        }
      } catch (...) {
        failures[r] = std::current_exception();
      }
    }
  };

  unsigned threads = exp.threads != 0 ? exp.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, exp.replicas));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  for (std::size_t r = 0; r < failures.size(); ++r) {
    if (!failures[r]) continue;
    const std::string where = "replica " + std::to_string(exp.replica_offset + r) + ": ";
    try {
      std::rethrow_exception(failures[r]);
    } catch (const Error& e) {
      throw Error(e.kind(), where + e.what());
    }
  }
  return out;
}

SampleStats sample_stats(std::span<const double> values) {
  if (values.size() < 2) throw Error(ErrorKind::ContractViolation, "standard error needs at least 2 samples");
  // Shifted by the first sample: identical inputs give that value and a
  // zero standard error exactly, instead of a few ulps of noise.
  const double count = static_cast<double>(values.size());
  const double shift = values.front();
  double sum = 0.0;
  for (double v : values) sum += v - shift;
  const double offset = sum / count;
  double ss = 0.0;
  for (double v : values) ss += (v - shift - offset) * (v - shift - offset);
  return {shift + offset, std::sqrt(ss / (count - 1.0) / count)};
}

double z_score(double estimate, double reference, double std_error) noexcept {
  const double diff = estimate - reference;
  if (std_error > 0.0) return diff / std_error;
  if (diff == 0.0) return 0.0;
  return diff > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

namespace {

std::vector<EstimateRow> summarize(const ExperimentSpec& exp, const ReplicaSamples& samples) {
  const auto moments = expected_initial_moments(exp.init, exp.model.n());
  const MomentCurve curve(exp.model, moments.s0, moments.d0);

  std::vector<EstimateRow> rows;
  std::vector<double> column(samples.replicas);
  for (std::size_t c = 0; c < samples.checkpoints; ++c) {
    EstimateRow row;
    row.n = exp.model.n();
    row.t = exp.checkpoints[c];
    row.replicas = samples.replicas;

    for (std::size_t r = 0; r < samples.replicas; ++r) column[r] = samples.mean_at(r, c);
    const auto m = sample_stats(column);
    for (std::size_t r = 0; r < samples.replicas; ++r) column[r] = samples.variance_at(r, c);
    const auto v = sample_stats(column);

    row.m_mean = m.mean;
    row.m_stderr = m.std_error;
    row.v_mean = v.mean;
    row.v_stderr = v.std_error;
    row.v_analytic = curve.variance_at(row.t);
    row.theorem_value = uniform_asymptote(exp.model, row.t);
    row.z_score = z_score(row.v_mean, row.v_analytic, row.v_stderr);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<EstimateRow> run_experiment(const ExperimentSpec& exp) { return summarize(exp, run_replicas(exp)); }

std::vector<EstimateRow> phase_sweep(const ModelSpec& family, const PhaseRegime& regime, std::span<const int> ns,
                                     std::size_t replicas, std::uint64_t base_seed, const InitSpec& init,
                                     unsigned threads) {
  std::vector<EstimateRow> rows;
  for (int n : ns) {
    ExperimentSpec exp{family.with_n(n), init, {}, replicas, derive_seed(base_seed, static_cast<std::uint64_t>(n))};
    exp.threads = threads;
    const double t = regime_time(exp.model, regime);
    exp.checkpoints = {t};
    auto row = run_experiment(exp).front();
    row.theorem_value = phase_asymptote(exp.model, regime, t);
    rows.push_back(row);
  }
  return rows;
}

bool leading_order_consistent(const EstimateRow& row) noexcept {
  return std::abs(row.v_mean - row.theorem_value) <=
         4.0 * row.v_stderr + std::abs(row.v_analytic - row.theorem_value);
}

DriftEstimate drift_check(const ExperimentSpec& exp) {
  const auto& times = exp.checkpoints;
  if (times.size() < 2) throw Error(ErrorKind::ContractViolation, "drift fit needs at least 2 checkpoints");
  double t_bar = 0.0;
  for (double t : times) t_bar += t;
  t_bar /= static_cast<double>(times.size());
  double sxx = 0.0;
  for (double t : times) sxx += (t - t_bar) * (t - t_bar);
  if (!(sxx > 0.0)) throw Error(ErrorKind::ContractViolation, "drift fit needs at least 2 distinct checkpoint times");

  const auto samples = run_replicas(exp);
  std::vector<double> slopes(samples.replicas);
  for (std::size_t r = 0; r < samples.replicas; ++r) {
    double sxy = 0.0;
    for (std::size_t c = 0; c < times.size(); ++c) sxy += (times[c] - t_bar) * samples.mean_at(r, c);
    slopes[r] = sxy / sxx;
  }
  const auto stats = sample_stats(slopes);
  return {stats.mean, stats.std_error, analytic_LM(exp.model)};
}

}  // namespace syncsim
