#include "syncsim/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace syncsim {

MomentCurve::MomentCurve(ModelSpec model, double s0, double d0)
    : model_(std::move(model)), s0_(s0), d0_(d0) {
  if (!std::isfinite(s0) || !std::isfinite(d0) || d0 < 0.0) {
    throw Error(ErrorKind::ContractViolation, "initial moments must be finite with d0 >= 0");
  }
  const double n = model_.n();
  lambda_ = model_.delta_kappa() / (n * (n - 1.0));
  plateau_ = model_.alpha() * model_.jump().b2() / lambda_;
  gamma_ = 1.0 / model_.total_rate();
  log_contraction_ = std::log1p(-gamma_ * lambda_);
}

double MomentCurve::embedded_mean(std::uint64_t n) const noexcept {
  return s0_ + static_cast<double>(n) * gamma_ * model_.alpha() * model_.jump().a();
}

double MomentCurve::embedded_variance(std::uint64_t n) const noexcept {
  // expm1/log1p keep 1 - q^n accurate when n (1 - q) is tiny.
  const double exponent = static_cast<double>(n) * log_contraction_;
  return d0_ * std::exp(exponent) + plateau_ * -std::expm1(exponent);
}

double MomentCurve::mean_at(double t) const noexcept { return s0_ + model_.alpha() * model_.jump().a() * t; }

double MomentCurve::variance_at(double t) const noexcept {
  return d0_ * std::exp(-lambda_ * t) + plateau_ * -std::expm1(-lambda_ * t);
}

PhaseRegime PhaseRegime::critical(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorKind::ContractViolation, "critical scale c must be > 0");
  return {Kind::Critical, c};
}

double phase_asymptote(const ModelSpec& spec, const PhaseRegime& regime, double t) {
  const double ab2 = spec.alpha() * spec.jump().b2();
  const double dk = spec.delta_kappa();
  const double n2 = static_cast<double>(spec.n()) * spec.n();
  switch (regime.kind) {
    case PhaseRegime::Kind::Early:
      return ab2 * t;
    case PhaseRegime::Kind::Critical:
      if (std::abs(t - regime.c * n2) > 1e-9 * regime.c * n2) {
        throw Error(ErrorKind::ContractViolation,
                    "critical regime needs t = c N^2, got t = " + std::to_string(t));
      }
      return ab2 / dk * -std::expm1(-dk * regime.c) * n2;
    case PhaseRegime::Kind::Late:
      return ab2 / dk * n2;
  }
  return 0.0;
}

double regime_time(const ModelSpec& spec, const PhaseRegime& regime) noexcept {
  const double n = spec.n();
  switch (regime.kind) {
    case PhaseRegime::Kind::Early:
      return n;
    case PhaseRegime::Kind::Critical:
      return regime.c * n * n;
    case PhaseRegime::Kind::Late:
      return 10.0 * n * n / spec.delta_kappa() * std::max(1.0, std::log(n));
  }
  return 0.0;
}

double uniform_asymptote(const ModelSpec& spec, double t) noexcept {
  const double dk = spec.delta_kappa();
  const double n2 = static_cast<double>(spec.n()) * spec.n();
  return spec.alpha() * spec.jump().b2() / dk * -std::expm1(-dk * t / n2) * n2;
}

GrowthCheck check_growing_initial(const ModelSpec& spec, const std::function<double(int)>& r0_of_n,
                                  const std::function<double(int)>& t_of_n, std::span<const int> ns) {
  if (ns.size() < 2 || !std::is_sorted(ns.begin(), ns.end()) ||
      std::adjacent_find(ns.begin(), ns.end()) != ns.end()) {
    throw Error(ErrorKind::ContractViolation, "growth check needs at least two strictly ascending N values");
  }

  GrowthCheck out;
  std::vector<double> scales;
  for (int n : ns) {
    const double t = t_of_n(n);
    out.ratios.push_back(r0_of_n(n) / t);
    scales.push_back(t / (static_cast<double>(n) * n));
  }

  out.condition_holds = true;
  for (std::size_t i = 1; i < out.ratios.size(); ++i) {
    if (!(out.ratios[i] < out.ratios[i - 1])) out.condition_holds = false;
  }

  const auto [lo, hi] = std::minmax_element(scales.begin(), scales.end());
  if (*hi - *lo <= 1e-9 * *hi) {
    out.regime = PhaseRegime::critical(scales.front());
  } else if (scales.back() < scales.front()) {
    out.regime = PhaseRegime::early();
  } else {
    out.regime = PhaseRegime::late();
  }

  for (std::size_t i = 0; i < ns.size(); ++i) {
    out.asymptotes.push_back(phase_asymptote(spec.with_n(ns[i]), out.regime, t_of_n(ns[i])));
  }
  return out;
}

}  // namespace syncsim
