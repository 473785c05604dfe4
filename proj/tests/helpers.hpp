#pragma once

#include <optional>

#include "syncsim/error.hpp"
#include "syncsim/model.hpp"

namespace testing {

/// Kind of the syncsim::Error thrown by `fn`, or nullopt if it returns.
template <typename Fn>
std::optional<syncsim::ErrorKind> error_kind(Fn&& fn) {
  try {
    fn();
  } catch (const syncsim::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline syncsim::JumpDistribution coin() { return syncsim::JumpDistribution::discrete({{-1.0, 0.5}, {1.0, 0.5}}); }

/// alpha, one signature with rate delta, and the +-1 law unless given.
inline syncsim::ModelSpec model(int n, std::vector<int> sig, double alpha = 1.0, double delta = 1.0,
                                syncsim::JumpDistribution rho = coin()) {
  return {n, alpha, {{syncsim::Signature(std::move(sig)), delta}}, std::move(rho)};
}

}  // namespace testing
