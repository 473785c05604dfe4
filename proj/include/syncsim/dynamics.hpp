#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "syncsim/model.hpp"
#include "syncsim/rng.hpp"
#include "syncsim/sync_maps.hpp"

namespace syncsim {

struct FreeJump {
  std::size_t particle;  ///< 1-based
  double z;
};

struct SyncEvent {
  std::size_t term;  ///< index into ModelSpec::sync_terms()
  IndexTuple tuple;
};

struct SimEvent {
  std::variant<FreeJump, SyncEvent> kind;
  double holding_time;
};

/// Observables at one checkpoint. `t` is continuous time for `simulate` and
/// the step index (as a double) for `simulate_embedded`.
struct Checkpoint {
  double t = 0.0;
  std::uint64_t step = 0;
  double mean = 0.0;
  double variance = 0.0;
  std::uint64_t events = 0;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct ConfigDigest {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double variance = 0.0;

  friend bool operator==(const ConfigDigest&, const ConfigDigest&) = default;
};

struct TrajectoryResult {
  std::vector<Checkpoint> checkpoints;
  std::uint64_t seed = 0;
  ConfigDigest final_config;

  friend bool operator==(const TrajectoryResult&, const TrajectoryResult&) = default;
};

struct SimulationOptions {
  /// Test hook: drop synchronization from event selection, leaving pure
  /// free dynamics at total rate alpha*N.
  bool sync_enabled = true;
};

/// Draws the next holding time and event (direct Gillespie step).
SimEvent next_event(const ModelSpec& spec, Rng& rng);

void apply_event(Configuration& x, const SimEvent& ev, const ModelSpec& spec);

ConfigDigest digest(std::span<const double> x);

/// Continuous-time trajectory. Each checkpoint records the state after all
/// events with epoch <= t. Deterministic in `seed`.
TrajectoryResult simulate(const ModelSpec& spec, const Configuration& init, std::span<const double> times,
                          std::uint64_t seed, SimulationOptions options = {});

/// Embedded chain indexed by event count; holding times are not drawn.
TrajectoryResult simulate_embedded(const ModelSpec& spec, const Configuration& init,
                                   std::span<const std::uint64_t> steps, std::uint64_t seed,
                                   SimulationOptions options = {});

}  // namespace syncsim
