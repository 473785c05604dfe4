#include "syncsim/oracle.hpp"

#include <cmath>

#include "syncsim/sync_maps.hpp"

namespace syncsim {

namespace {

template <typename Observable>
double brute_force_sync(const ModelSpec& spec, std::span<const double> x, Observable observe) {
  if (x.size() != static_cast<std::size_t>(spec.n())) {
    throw Error(ErrorKind::InvalidConfiguration, "configuration length differs from N");
  }
  const double base = observe(x);
  Configuration y(x.begin(), x.end());
  double total = 0.0;
  for (const auto& term : spec.sync_terms()) {
    CompensatedSum sum;
    const auto& sig = term.signature;
    for_each_tuple(sig.k(), spec.n(), [&](const IndexTuple& tuple) {
      apply_sync_in_place(sig, tuple, y);
      sum.add(observe(y) - base);
      // Restore only the touched coordinates.
      for (std::size_t i : tuple.indices()) y[i - 1] = x[i - 1];
    });
    total += term.delta * sum.value() / static_cast<double>(falling_factorial(spec.n(), sig.k()));
  }
  return total;
}

}  // namespace

double brute_force_LsV(const ModelSpec& spec, std::span<const double> x) {
  return brute_force_sync(spec, x, [](std::span<const double> y) { return sample_variance(y); });
}

double brute_force_LsM(const ModelSpec& spec, std::span<const double> x) {
  return brute_force_sync(spec, x, [](std::span<const double> y) { return sample_mean(y); });
}

double brute_force_L0V(const ModelSpec& spec, std::span<const double> x) {
  const auto* law = std::get_if<JumpDistribution::Discrete>(&spec.jump().law());
  if (law == nullptr) {
    throw Error(ErrorKind::Unsupported, "free-dynamics enumeration needs a discrete jump law");
  }
  if (x.size() != static_cast<std::size_t>(spec.n())) {
    throw Error(ErrorKind::InvalidConfiguration, "configuration length differs from N");
  }
  const double base = sample_variance(x);
  Configuration y(x.begin(), x.end());
  CompensatedSum sum;
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (const auto& atom : law->atoms) {
      y[i] = x[i] + atom.z;
      sum.add(atom.p * (sample_variance(y) - base));
    }
    y[i] = x[i];
  }
  return spec.alpha() * sum.value();
}

double analytic_LV(const ModelSpec& spec, double v) noexcept {
  const double n = spec.n();
  return spec.alpha() * spec.jump().b2() - spec.delta_kappa() / (n * (n - 1.0)) * v;
}

double analytic_LM(const ModelSpec& spec) noexcept { return spec.alpha() * spec.jump().a(); }

}  // namespace syncsim
