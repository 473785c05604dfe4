#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "syncsim/analytic.hpp"
#include "syncsim/dynamics.hpp"
#include "syncsim/model.hpp"

namespace syncsim {

/// Initial configuration family.
struct InitSpec {
  /// All particles at `value`.
  struct Point {
    double value = 0.0;
  };
  /// Independent draws from `rho`.
  struct Iid {
    JumpDistribution rho;
  };
  /// Equally spaced over [0, width * N^exponent]. exponent = 0.5 gives a
  /// width growing like sqrt(N), so E V(0) grows linearly in N.
  struct Spread {
    double width = 1.0;
    double exponent = 0.0;
  };
  struct Explicit {
    std::vector<double> coords;
  };

  std::variant<Point, Iid, Spread, Explicit> kind = Point{};
};

Configuration init_configuration(const InitSpec& init, int n, Rng& rng);

/// Expected (M, V) of the initial configuration: the starting point of the
/// analytic reference curves.
struct InitialMoments {
  double s0;
  double d0;
};
InitialMoments expected_initial_moments(const InitSpec& init, int n);

struct ExperimentSpec {
  ModelSpec model;
  InitSpec init;
  std::vector<double> checkpoints;
  std::size_t replicas = 2;
  std::uint64_t base_seed = 0;
  /// Replica indices run are [replica_offset, replica_offset + replicas).
  std::uint64_t replica_offset = 0;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
  SimulationOptions options{};
};

struct EstimateRow {
  int n = 0;
  double t = 0.0;
  std::size_t replicas = 0;
  double m_mean = 0.0;
  double m_stderr = 0.0;
  double v_mean = 0.0;
  double v_stderr = 0.0;
  double v_analytic = 0.0;
  double theorem_value = 0.0;
  double z_score = 0.0;

  double ratio() const noexcept { return v_mean / theorem_value; }

  friend bool operator==(const EstimateRow&, const EstimateRow&) = default;
};

/// Per-replica observables, row-major [replica][checkpoint].
struct ReplicaSamples {
  std::size_t replicas = 0;
  std::size_t checkpoints = 0;
  std::vector<double> mean;
  std::vector<double> variance;
  std::vector<std::uint64_t> events;

  double mean_at(std::size_t r, std::size_t c) const noexcept { return mean[r * checkpoints + c]; }
  double variance_at(std::size_t r, std::size_t c) const noexcept { return variance[r * checkpoints + c]; }
};

/// Runs every replica; replica r simulates with seed derive_seed(base_seed, r).
ReplicaSamples run_replicas(const ExperimentSpec& exp);

struct SampleStats {
  double mean;
  double std_error;
};

/// Mean and standard error (sample sd / sqrt(count)) summed in index order.
SampleStats sample_stats(std::span<const double> values);

/// (estimate - reference) / stderr, with 0 for an exact zero-spread match.
double z_score(double estimate, double reference, double std_error) noexcept;

/// Per-checkpoint estimates of E M and E V with the exact R(t) attached
/// as V_analytic and the leading-order value uniform_asymptote(t).
std::vector<EstimateRow> run_experiment(const ExperimentSpec& exp);

/// One row per N at the regime's time t(N). theorem_value is the regime's
/// leading-order value; V_analytic is the exact finite-N R(t(N)).
std::vector<EstimateRow> phase_sweep(const ModelSpec& family, const PhaseRegime& regime, std::span<const int> ns,
                                     std::size_t replicas, std::uint64_t base_seed,
                                     const InitSpec& init = InitSpec{}, unsigned threads = 0);

/// Leading-order check for a sweep row: |V_mean - theorem| within four
/// standard errors plus the exact finite-N gap |V_analytic - theorem|.
bool leading_order_consistent(const EstimateRow& row) noexcept;

struct DriftEstimate {
  double slope;
  double std_error;
  double target;  ///< alpha * a
};

/// Least-squares slope of M over the checkpoint times. The slope is fitted
/// per replica so that the standard error reflects replica-to-replica spread.
DriftEstimate drift_check(const ExperimentSpec& exp);

}  // namespace syncsim
