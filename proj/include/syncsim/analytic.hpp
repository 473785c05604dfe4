#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "syncsim/model.hpp"

namespace syncsim {

/// Exact first-moment curves of M and V for one model, starting from
/// E M = s0 and E V = d0.
///
/// With lambda = sum(delta_r kappa_r) / (N(N-1)) the variance obeys
/// dR/dt = alpha b2 - lambda R in continuous time, and
/// d(n+1) = d(n) (1 - gamma lambda) + gamma alpha b2 along the embedded
/// chain, gamma = 1 / (alpha N + sum delta_r) being the mean holding time.
class MomentCurve {
 public:
  MomentCurve(ModelSpec model, double s0, double d0);

  const ModelSpec& model() const noexcept { return model_; }
  double s0() const noexcept { return s0_; }
  double d0() const noexcept { return d0_; }

  double lambda() const noexcept { return lambda_; }
  /// Stationary E V = alpha b2 / lambda.
  double plateau() const noexcept { return plateau_; }
  double gamma() const noexcept { return gamma_; }

  /// s(n) = s0 + n gamma alpha a.
  double embedded_mean(std::uint64_t n) const noexcept;
  /// d(n), closed form of the embedded recurrence (geometric sum from j = 0).
  double embedded_variance(std::uint64_t n) const noexcept;
  /// mu(t) = s0 + alpha a t.
  double mean_at(double t) const noexcept;
  /// R(t) = (d0 - plateau) exp(-lambda t) + plateau.
  double variance_at(double t) const noexcept;

 private:
  ModelSpec model_;
  double s0_;
  double d0_;
  double lambda_;
  double plateau_;
  double gamma_;
  double log_contraction_;  // log(1 - gamma lambda)
};

struct PhaseRegime {
  enum class Kind { Early, Critical, Late };

  Kind kind = Kind::Early;
  double c = 0.0;  ///< t = c N^2; Critical only

  static PhaseRegime early() noexcept { return {Kind::Early, 0.0}; }
  static PhaseRegime critical(double c);
  static PhaseRegime late() noexcept { return {Kind::Late, 0.0}; }

  friend bool operator==(const PhaseRegime&, const PhaseRegime&) = default;
};

/// Leading-order long-time value of E V for the regime:
/// Early alpha b2 t; Critical alpha b2 (1 - exp(-dk c)) N^2 / dk; Late
/// alpha b2 N^2 / dk, with dk = sum(delta_r kappa_r) and N = spec.n().
/// Critical requires t == c N^2 (relative 1e-9).
double phase_asymptote(const ModelSpec& spec, const PhaseRegime& regime, double t);

/// Default sweep time t(N): Early N; Critical c N^2;
/// Late 10 N^2 / dk * max(1, ln N).
double regime_time(const ModelSpec& spec, const PhaseRegime& regime) noexcept;

/// Critical-form leading-order value with c = t / N^2. Reduces to alpha b2 t
/// for t << N^2 and to the late plateau for t >> N^2.
double uniform_asymptote(const ModelSpec& spec, double t) noexcept;

struct GrowthCheck {
  bool condition_holds = false;  ///< R0(N)/t(N) strictly decreasing over the sweep
  PhaseRegime regime;            ///< detected from t(N)/N^2
  std::vector<double> ratios;    ///< R0(N)/t(N) per N
  std::vector<double> asymptotes;
};

/// Numeric proxy for the growing-initial-spread condition R0(N)/t(N) -> 0
/// over an ascending sweep of at least two N values.
GrowthCheck check_growing_initial(const ModelSpec& spec, const std::function<double(int)>& r0_of_n,
                                  const std::function<double(int)>& t_of_n, std::span<const int> ns);

}  // namespace syncsim
