#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "syncsim/model.hpp"
#include "syncsim/rng.hpp"

namespace syncsim {

/// Ordered collection of k distinct 1-based particle labels.
class IndexTuple {
 public:
  IndexTuple() = default;
  /// Validates distinctness and that every label lies in 1..n.
  IndexTuple(std::vector<std::size_t> indices, int n);

  std::span<const std::size_t> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  std::size_t operator[](std::size_t pos) const noexcept { return indices_[pos]; }

  friend bool operator==(const IndexTuple&, const IndexTuple&) = default;
  friend auto operator<=>(const IndexTuple&, const IndexTuple&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// One block of a partitioned tuple: the leader and the followers that
/// adopt its coordinate. The leader is never listed among the followers.
struct Group {
  std::size_t leader;
  std::vector<std::size_t> followers;

  friend bool operator==(const Group&, const Group&) = default;
};

using GroupPartition = std::vector<Group>;

/// Splits `tuple` into consecutive blocks of sizes k1..kl and calls
/// `visit(leader, followers)` per block. `tuple` must hold sum(parts)
/// entries; labels are passed through untouched. This is the single
/// block-splitting routine shared by the value API and the simulator.
template <typename Index, typename Visit>
void for_each_group(std::span<const int> parts, std::span<const Index> tuple, Visit&& visit) {
  std::size_t pos = 0;
  for (int kj : parts) {
    const auto block = tuple.subspan(pos, static_cast<std::size_t>(kj));
    visit(block.front(), block.subspan(1));
    pos += static_cast<std::size_t>(kj);
  }
}

/// Synchronizes x in place given 0-based tuple entries. No validation.
template <typename Index>
inline void sync_in_place(std::span<const int> parts, std::span<const Index> tuple, std::span<double> x) noexcept {
  for_each_group(parts, tuple, [&](Index leader, std::span<const Index> followers) {
    const double v = x[leader];
    for (Index h : followers) x[h] = v;
  });
}

GroupPartition partition_tuple(const Signature& sig, const IndexTuple& tuple);

/// y = J x: every member of group j takes the leader's coordinate.
Configuration apply_sync(const Signature& sig, const IndexTuple& tuple, const Configuration& x);
void apply_sync_in_place(const Signature& sig, const IndexTuple& tuple, std::span<double> x);

/// Closed-form M(Jx) - M(x) = (1/N) sum_j sum_{h in followers_j} (x_leader - x_h).
double mean_shift(const Signature& sig, const IndexTuple& tuple, std::span<const double> x);

/// Draws ordered k-tuples of distinct particles uniformly by a partial
/// Fisher-Yates shuffle over a persistent permutation. Any starting
/// permutation gives the uniform law, so the array is never reset.
class TupleSampler {
 public:
  explicit TupleSampler(int n);

  /// Writes k distinct 0-based indices to out[0..k). Requires k <= n.
  void sample(std::size_t k, Rng& rng, std::span<std::uint32_t> out) noexcept {
    const std::size_t n = perm_.size();
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
      std::swap(perm_[i], perm_[j]);
      out[i] = perm_[i];
    }
  }

 private:
  std::vector<std::uint32_t> perm_;
};

IndexTuple sample_uniform_tuple(int k, int n, Rng& rng);

/// N(N-1)...(N-k+1), saturating at UINT64_MAX.
std::uint64_t falling_factorial(int n, int k) noexcept;

inline constexpr std::uint64_t kEnumerationLimit = 10'000'000;

/// Visits every ordered k-tuple of distinct labels in 1..n exactly once,
/// in lexicographic order. Throws EnumerationTooLarge past the limit.
void for_each_tuple(int k, int n, const std::function<void(const IndexTuple&)>& visit);

/// All tuples materialized. Same guard as for_each_tuple.
std::vector<IndexTuple> enumerate_tuples(int k, int n);

}  // namespace syncsim
