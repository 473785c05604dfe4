#include "syncsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace syncsim {

namespace {

/// One replica's event machinery. Chooses and applies embedded-chain steps
/// without allocating.
class Engine {
 public:
  Engine(const ModelSpec& spec, Rng& rng, SimulationOptions options)
      : spec_(spec),
        rng_(rng),
        sampler_(spec.n()),
        tuple_(static_cast<std::size_t>(spec.max_k())),
        free_rate_(spec.alpha() * spec.n()),
        rate_(options.sync_enabled ? spec.total_rate() : free_rate_) {}

  double rate() const noexcept { return rate_; }

  void step(std::span<double> x) noexcept {
    const double u = rng_.uniform01() * rate_;
    if (u < free_rate_) {
      const auto i = rng_.below(static_cast<std::uint64_t>(spec_.n()));
      x[i] += spec_.jump().sample(rng_);
      return;
    }
    const auto& term = spec_.sync_terms()[pick_term(u)];
    const auto k = static_cast<std::size_t>(term.signature.k());
    sampler_.sample(k, rng_, tuple_);
    sync_in_place(term.signature.parts(), std::span<const std::uint32_t>(tuple_.data(), k), x);
  }

  /// Term whose rate slice contains u, with u in [free_rate, rate).
  std::size_t pick_term(double u) const noexcept {
    const auto terms = spec_.sync_terms();
    double upper = free_rate_;
    for (std::size_t r = 0; r + 1 < terms.size(); ++r) {
      upper += terms[r].delta;
      if (u < upper) return r;
    }
    return terms.size() - 1;
  }

 private:
  const ModelSpec& spec_;
  Rng& rng_;
  TupleSampler sampler_;
  std::vector<std::uint32_t> tuple_;
  double free_rate_;
  double rate_;
};

void check_init(const ModelSpec& spec, const Configuration& init) {
  if (init.size() != static_cast<std::size_t>(spec.n())) {
    throw Error(ErrorKind::InvalidConfiguration, "initial configuration has " + std::to_string(init.size()) +
                                                     " coordinates, model has N = " + std::to_string(spec.n()));
  }
  for (double v : init) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidConfiguration, "initial coordinates must be finite");
  }
}

Checkpoint observe(std::span<const double> x, double t, std::uint64_t events) {
  const double mean = sample_mean(x);
  const double variance = sample_variance(x);
  if (!std::isfinite(mean) || !std::isfinite(variance)) {
    throw Error(ErrorKind::NumericFailure, "non-finite coordinate after " + std::to_string(events) + " events");
  }
  return {t, events, mean, variance, events};
}

}  // namespace

SimEvent next_event(const ModelSpec& spec, Rng& rng) {
  const double rate = spec.total_rate();
  const double holding = rng.exponential(rate);
  const double u = rng.uniform01() * rate;
  const double free_rate = spec.alpha() * spec.n();
  if (u < free_rate) {
    const auto i = rng.below(static_cast<std::uint64_t>(spec.n()));
    return {FreeJump{static_cast<std::size_t>(i) + 1, spec.jump().sample(rng)}, holding};
  }
  std::size_t r = 0;
  double upper = free_rate;
  for (; r + 1 < spec.sync_terms().size(); ++r) {
    upper += spec.sync_terms()[r].delta;
    if (u < upper) break;
  }
  return {SyncEvent{r, sample_uniform_tuple(spec.sync_terms()[r].signature.k(), spec.n(), rng)}, holding};
}

void apply_event(Configuration& x, const SimEvent& ev, const ModelSpec& spec) {
  if (x.size() != static_cast<std::size_t>(spec.n())) {
    throw Error(ErrorKind::ContractViolation, "configuration length differs from N");
  }
  if (const auto* jump = std::get_if<FreeJump>(&ev.kind)) {
    if (jump->particle < 1 || jump->particle > x.size()) {
      throw Error(ErrorKind::ContractViolation, "free jump names particle outside 1..N");
    }
    x[jump->particle - 1] += jump->z;
    return;
  }
  const auto& sync = std::get<SyncEvent>(ev.kind);
  if (sync.term >= spec.sync_terms().size()) {
    throw Error(ErrorKind::ContractViolation, "sync event names a term the model does not have");
  }
  apply_sync_in_place(spec.sync_terms()[sync.term].signature, sync.tuple, x);
}

ConfigDigest digest(std::span<const double> x) {
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return {*lo, *hi, sample_mean(x), sample_variance(x)};
}

TrajectoryResult simulate(const ModelSpec& spec, const Configuration& init, std::span<const double> times,
                          std::uint64_t seed, SimulationOptions options) {
  check_init(spec, init);
  double prev = 0.0;
  for (double t : times) {
    if (!(t >= prev) || !std::isfinite(t)) {
      throw Error(ErrorKind::ContractViolation, "checkpoint times must be finite, nonnegative and nondecreasing");
    }
    prev = t;
  }

  Rng rng(seed);
  Engine engine(spec, rng, options);
  Configuration x = init;
  TrajectoryResult result;
  result.seed = seed;
  result.checkpoints.reserve(times.size());

  std::uint64_t events = 0;
  double next = rng.exponential(engine.rate());
  for (double t : times) {
    while (next <= t) {
      engine.step(x);
      ++events;
      next += rng.exponential(engine.rate());
    }
    result.checkpoints.push_back(observe(x, t, events));
  }
  result.final_config = digest(x);
  return result;
}

TrajectoryResult simulate_embedded(const ModelSpec& spec, const Configuration& init,
                                   std::span<const std::uint64_t> steps, std::uint64_t seed,
                                   SimulationOptions options) {
  check_init(spec, init);
  if (!std::is_sorted(steps.begin(), steps.end())) {
    throw Error(ErrorKind::ContractViolation, "step checkpoints must be nondecreasing");
  }

  Rng rng(seed);
  Engine engine(spec, rng, options);
  Configuration x = init;
  TrajectoryResult result;
  result.seed = seed;
  result.checkpoints.reserve(steps.size());

  std::uint64_t events = 0;
  for (std::uint64_t n : steps) {
    for (; events < n; ++events) engine.step(x);
    result.checkpoints.push_back(observe(x, static_cast<double>(n), events));
  }
  result.final_config = digest(x);
  return result;
}

}  // namespace syncsim
