#pragma once

// Reference computations for the tests. Each one is written from the model's
// definitions directly and shares no code with the library under test.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace oracle {

/// Sample variance from the pairwise form sum_{i<j} (xi - xj)^2 / (N(N-1)).
inline double pairwise_variance(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  long double sum = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const long double d = static_cast<long double>(x[i]) - x[j];
      sum += d * d;
    }
  }
  return static_cast<double>(sum / (n * (n - 1.0)));
}

inline double kappa(const std::vector<int>& parts) {
  int k = 0;
  int squares = 0;
  for (int p : parts) {
    k += p;
    squares += p * p;
  }
  return squares - k;
}

/// Embedded-chain variance after n steps by literal iteration of
/// d <- d (1 - gamma lambda) + gamma alpha b2.
inline double iterate_variance(double d0, double alpha, double b2, double delta_kappa, double total_delta, int n_particles,
                               std::uint64_t steps) {
  const double n = n_particles;
  const double gamma = 1.0 / (alpha * n + total_delta);
  const double lambda = delta_kappa / (n * (n - 1.0));
  double d = d0;
  for (std::uint64_t i = 0; i < steps; ++i) d = d * (1.0 - gamma * lambda) + gamma * alpha * b2;
  return d;
}

/// Ordered k-tuples of distinct 0-based labels below n, by nested recursion.
inline void all_tuples(int k, int n, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == k) {
    out.push_back(prefix);
    return;
  }
  for (int i = 0; i < n; ++i) {
    bool used = false;
    for (int p : prefix) used = used || p == i;
    if (used) continue;
    prefix.push_back(i);
    all_tuples(k, n, prefix, out);
    prefix.pop_back();
  }
}

inline std::vector<std::vector<int>> all_tuples(int k, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  all_tuples(k, n, prefix, out);
  return out;
}

/// Synchronization read off the definition: block j of the tuple copies the
/// coordinate of its first member onto the rest.
inline std::vector<double> synchronize(const std::vector<int>& parts, const std::vector<int>& tuple,
                                       std::vector<double> x) {
  std::size_t start = 0;
  for (int kj : parts) {
    const double leader = x[static_cast<std::size_t>(tuple[start])];
    for (std::size_t h = start; h < start + static_cast<std::size_t>(kj); ++h) x[static_cast<std::size_t>(tuple[h])] = leader;
    start += static_cast<std::size_t>(kj);
  }
  return x;
}

/// Exact E V after one embedded step from x, by enumerating every outcome:
/// particle i jumps by z with probability (alpha/Lambda) p(z); signature r
/// hits each ordered tuple with probability (delta_r/Lambda)/N^[k_r].
struct Term {
  std::vector<int> parts;
  double delta;
};
struct Atom {
  double z;
  double p;
};

inline double one_step_expected_variance(const std::vector<double>& x, double alpha, const std::vector<Atom>& atoms,
                                         const std::vector<Term>& terms) {
  const int n = static_cast<int>(x.size());
  double total = alpha * n;
  for (const auto& t : terms) total += t.delta;
  double expected = 0.0;
  for (int i = 0; i < n; ++i) {
    for (const auto& atom : atoms) {
      auto y = x;
      y[static_cast<std::size_t>(i)] += atom.z;
      expected += alpha / total * atom.p * pairwise_variance(y);
    }
  }
  for (const auto& t : terms) {
    int k = 0;
    for (int p : t.parts) k += p;
    const auto tuples = all_tuples(k, n);
    for (const auto& tuple : tuples) {
      expected += t.delta / total / static_cast<double>(tuples.size()) * pairwise_variance(synchronize(t.parts, tuple, x));
    }
  }
  return expected;
}

}  // namespace oracle
