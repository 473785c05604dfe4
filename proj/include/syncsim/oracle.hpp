#pragma once

#include <cmath>
#include <span>

#include "syncsim/model.hpp"

namespace syncsim {

/// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Exhaustive evaluation of the generator on the observables V and M. Each
// sync term r contributes (delta_r / N^[k_r]) * sum over all ordered tuples
// of f(J x) - f(x). Terms are summed in enumeration order.

double brute_force_LsV(const ModelSpec& spec, std::span<const double> x);
double brute_force_LsM(const ModelSpec& spec, std::span<const double> x);

/// alpha * sum_i sum_atoms p [V(x + z e_i) - V(x)]. Discrete laws only.
double brute_force_L0V(const ModelSpec& spec, std::span<const double> x);

/// alpha*b2 - (sum_r delta_r kappa_r) / (N(N-1)) * v. Exact at finite N.
double analytic_LV(const ModelSpec& spec, double v) noexcept;

/// alpha*a, independent of the state.
double analytic_LM(const ModelSpec& spec) noexcept;

}  // namespace syncsim
