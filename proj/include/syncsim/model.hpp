#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "syncsim/error.hpp"
#include "syncsim/rng.hpp"

namespace syncsim {

/// Ordered group sizes (k1, ..., kl) of one synchronization event.
/// Every part is at least 2.
class Signature {
 public:
  explicit Signature(std::vector<int> parts);

  std::span<const int> parts() const noexcept { return parts_; }
  /// Number of particles taking part, k = sum of parts.
  int k() const noexcept { return k_; }
  /// Number of groups.
  int l() const noexcept { return static_cast<int>(parts_.size()); }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<int> parts_;
  int k_ = 0;
};

/// Contraction constant sum(kj^2) - k. Always positive.
double kappa(const Signature& sig) noexcept;

struct Atom {
  double z;
  double p;
};

struct Moments {
  double a;   ///< first moment
  double b2;  ///< raw second moment
};

/// Free-jump law. Either a finite-atom discrete law or a uniform interval;
/// both have compact support and closed-form moments.
class JumpDistribution {
 public:
  struct Discrete {
    std::vector<Atom> atoms;
  };
  struct Uniform {
    double lo;
    double hi;
  };

  static JumpDistribution discrete(std::vector<Atom> atoms);
  static JumpDistribution uniform(double lo, double hi);

  bool is_discrete() const noexcept { return std::holds_alternative<Discrete>(law_); }
  const std::variant<Discrete, Uniform>& law() const noexcept { return law_; }
  const Moments& moments() const noexcept { return moments_; }
  double a() const noexcept { return moments_.a; }
  double b2() const noexcept { return moments_.b2; }

  double sample(Rng& rng) const noexcept {
    const double u = rng.uniform01();
    if (const auto* uni = std::get_if<Uniform>(&law_)) return uni->lo + (uni->hi - uni->lo) * u;
    // cumulative_ ends at exactly 1.0, so the scan always terminates.
    std::size_t i = 0;
    while (u >= cumulative_[i]) ++i;
    return std::get<Discrete>(law_).atoms[i].z;
  }

 private:
  explicit JumpDistribution(std::variant<Discrete, Uniform> law);

  std::variant<Discrete, Uniform> law_;
  std::vector<double> cumulative_;
  Moments moments_{};
};

/// (a, b2) of the law.
Moments distribution_moments(const JumpDistribution& rho) noexcept;

/// Draws one displacement z ~ rho.
inline double sample_jump(const JumpDistribution& rho, Rng& rng) noexcept { return rho.sample(rng); }

struct SyncTerm {
  Signature signature;
  double delta;
};

/// Full generator: N particles, free-jump rate alpha with law `jump`, and a
/// rate-weighted mixture of synchronization signatures. A one-term mixture
/// is the plain single-signature model.
class ModelSpec {
 public:
  ModelSpec(int n, double alpha, std::vector<SyncTerm> sync_terms, JumpDistribution jump);

  int n() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }
  std::span<const SyncTerm> sync_terms() const noexcept { return sync_terms_; }
  const JumpDistribution& jump() const noexcept { return jump_; }

  int max_k() const noexcept;
  /// Sum over terms of delta * kappa.
  double delta_kappa() const noexcept;
  /// Sum over terms of delta.
  double total_delta() const noexcept;
  /// Total event rate alpha*N + sum(delta).
  double total_rate() const noexcept { return alpha_ * n_ + total_delta(); }

  /// Same rates and law with a different particle count.
  ModelSpec with_n(int n) const { return {n, alpha_, sync_terms_, jump_}; }

 private:
  int n_;
  double alpha_;
  std::vector<SyncTerm> sync_terms_;
  JumpDistribution jump_;
};

/// Particle coordinates x1..xN (stored 0-based).
using Configuration = std::vector<double>;

double sample_mean(std::span<const double> x);

/// Sample variance via the centered two-pass form. Requires N >= 2.
double sample_variance(std::span<const double> x);

}  // namespace syncsim
