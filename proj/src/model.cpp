#include "syncsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace syncsim {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidSignature: return "invalid signature";
    case ErrorKind::InvalidDistribution: return "invalid jump distribution";
    case ErrorKind::InvalidModel: return "invalid model";
    case ErrorKind::InvalidConfiguration: return "invalid configuration";
    case ErrorKind::ContractViolation: return "contract violation";
    case ErrorKind::InfeasibleTuple: return "infeasible tuple";
    case ErrorKind::EnumerationTooLarge: return "enumeration too large";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::NumericFailure: return "numeric failure";
  }
  return "error";
}

Signature::Signature(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw Error(ErrorKind::InvalidSignature, "signature needs at least one part");
  for (std::size_t j = 0; j < parts_.size(); ++j) {
    if (parts_[j] < 2) {
      throw Error(ErrorKind::InvalidSignature,
                  "part " + std::to_string(j + 1) + " is " + std::to_string(parts_[j]) +
                      "; every part must be >= 2");
    }
  }
  k_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

double kappa(const Signature& sig) noexcept {
  long long squares = 0;
  for (int kj : sig.parts()) squares += static_cast<long long>(kj) * kj;
  return static_cast<double>(squares - sig.k());
}

JumpDistribution::JumpDistribution(std::variant<Discrete, Uniform> law) : law_(std::move(law)) {
  if (auto* d = std::get_if<Discrete>(&law_)) {
    if (d->atoms.empty()) throw Error(ErrorKind::InvalidDistribution, "discrete law has no atoms");
    double total = 0.0;
    double a = 0.0;
    double b2 = 0.0;
    for (const auto& atom : d->atoms) {
      if (!std::isfinite(atom.z)) throw Error(ErrorKind::InvalidDistribution, "atom position must be finite");
      if (!(atom.p > 0.0)) throw Error(ErrorKind::InvalidDistribution, "atom probabilities must be positive");
      total += atom.p;
      a += atom.p * atom.z;
      b2 += atom.p * atom.z * atom.z;
      cumulative_.push_back(total);
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw Error(ErrorKind::InvalidDistribution, "atom probabilities must sum to 1");
    }
    cumulative_.back() = 1.0;
    moments_ = {a, b2};
  } else {
    const auto& u = std::get<Uniform>(law_);
    if (!std::isfinite(u.lo) || !std::isfinite(u.hi) || !(u.lo < u.hi)) {
      throw Error(ErrorKind::InvalidDistribution, "uniform law needs finite lo < hi");
    }
    const double a = 0.5 * (u.lo + u.hi);
    // (hi^3 - lo^3) / (3 (hi - lo)) without the cancellation.
    const double b2 = (u.hi * u.hi + u.hi * u.lo + u.lo * u.lo) / 3.0;
    moments_ = {a, b2};
  }
  if (!(moments_.b2 > 0.0)) {
    throw Error(ErrorKind::InvalidDistribution, "second moment b2 must be positive (law is trivial)");
  }
}

JumpDistribution JumpDistribution::discrete(std::vector<Atom> atoms) {
  return JumpDistribution(Discrete{std::move(atoms)});
}

JumpDistribution JumpDistribution::uniform(double lo, double hi) {
  return JumpDistribution(Uniform{lo, hi});
}

Moments distribution_moments(const JumpDistribution& rho) noexcept { return rho.moments(); }

ModelSpec::ModelSpec(int n, double alpha, std::vector<SyncTerm> sync_terms, JumpDistribution jump)
    : n_(n), alpha_(alpha), sync_terms_(std::move(sync_terms)), jump_(std::move(jump)) {
  if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) {
    throw Error(ErrorKind::InvalidModel, "alpha must be a positive finite rate");
  }
  if (sync_terms_.empty()) throw Error(ErrorKind::InvalidModel, "at least one synchronization term is required");
  for (const auto& term : sync_terms_) {
    if (!(term.delta > 0.0) || !std::isfinite(term.delta)) {
      throw Error(ErrorKind::InvalidModel, "every delta must be a positive finite rate");
    }
  }
  if (n_ < max_k()) {
    throw Error(ErrorKind::InvalidModel, "N = " + std::to_string(n_) + " is smaller than signature size k = " +
                                             std::to_string(max_k()));
  }
}

int ModelSpec::max_k() const noexcept {
  int k = 0;
  for (const auto& term : sync_terms_) k = std::max(k, term.signature.k());
  return k;
}

double ModelSpec::delta_kappa() const noexcept {
  double sum = 0.0;
  for (const auto& term : sync_terms_) sum += term.delta * kappa(term.signature);
  return sum;
}

double ModelSpec::total_delta() const noexcept {
  double sum = 0.0;
  for (const auto& term : sync_terms_) sum += term.delta;
  return sum;
}

double sample_mean(std::span<const double> x) {
  if (x.empty()) throw Error(ErrorKind::InvalidConfiguration, "empty configuration");
  double sum = 0.0;
  for (double v : x) sum += v;
  return sum / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
  if (x.size() < 2) throw Error(ErrorKind::InvalidConfiguration, "sample variance needs N >= 2");
  // Centered about x[0] first so an all-equal configuration yields exactly 0.
  const double origin = x[0];
  double shifted_sum = 0.0;
  for (double v : x) shifted_sum += v - origin;
  const double mean = shifted_sum / static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) {
    const double d = (v - origin) - mean;
    ss += d * d;
  }
  return ss / static_cast<double>(x.size() - 1);
}

}  // namespace syncsim
