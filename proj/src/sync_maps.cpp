#include "syncsim/sync_maps.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace syncsim {

namespace {

void check_fits(const Signature& sig, const IndexTuple& tuple, std::size_t n) {
  if (tuple.size() != static_cast<std::size_t>(sig.k())) {
    throw Error(ErrorKind::ContractViolation, "tuple has " + std::to_string(tuple.size()) +
                                                  " entries but signature needs k = " + std::to_string(sig.k()));
  }
  for (std::size_t i : tuple.indices()) {
    if (i > n) {
      throw Error(ErrorKind::ContractViolation,
                  "label " + std::to_string(i) + " exceeds N = " + std::to_string(n));
    }
  }
}

std::vector<std::size_t> zero_based(const IndexTuple& tuple) {
  std::vector<std::size_t> out(tuple.indices().begin(), tuple.indices().end());
  for (auto& i : out) --i;
  return out;
}

}  // namespace

IndexTuple::IndexTuple(std::vector<std::size_t> indices, int n) : indices_(std::move(indices)) {
  for (std::size_t pos = 0; pos < indices_.size(); ++pos) {
    const std::size_t i = indices_[pos];
    if (i < 1 || i > static_cast<std::size_t>(n)) {
      throw Error(ErrorKind::ContractViolation,
                  "label " + std::to_string(i) + " outside 1.." + std::to_string(n));
    }
    for (std::size_t prev = 0; prev < pos; ++prev) {
      if (indices_[prev] == i) {
        throw Error(ErrorKind::ContractViolation, "label " + std::to_string(i) + " repeated in tuple");
      }
    }
  }
}

GroupPartition partition_tuple(const Signature& sig, const IndexTuple& tuple) {
  check_fits(sig, tuple, std::numeric_limits<std::size_t>::max());
  GroupPartition groups;
  groups.reserve(static_cast<std::size_t>(sig.l()));
  for_each_group(sig.parts(), tuple.indices(), [&](std::size_t leader, std::span<const std::size_t> followers) {
    groups.push_back({leader, {followers.begin(), followers.end()}});
  });
  return groups;
}

void apply_sync_in_place(const Signature& sig, const IndexTuple& tuple, std::span<double> x) {
  check_fits(sig, tuple, x.size());
  const auto idx = zero_based(tuple);
  sync_in_place(sig.parts(), std::span<const std::size_t>(idx), x);
}

Configuration apply_sync(const Signature& sig, const IndexTuple& tuple, const Configuration& x) {
  Configuration y = x;
  apply_sync_in_place(sig, tuple, y);
  return y;
}

double mean_shift(const Signature& sig, const IndexTuple& tuple, std::span<const double> x) {
  check_fits(sig, tuple, x.size());
  double shift = 0.0;
  for_each_group(sig.parts(), tuple.indices(), [&](std::size_t leader, std::span<const std::size_t> followers) {
    for (std::size_t h : followers) shift += x[leader - 1] - x[h - 1];
  });
  return shift / static_cast<double>(x.size());
}

TupleSampler::TupleSampler(int n) : perm_(static_cast<std::size_t>(n)) {
  std::iota(perm_.begin(), perm_.end(), 0U);
}

IndexTuple sample_uniform_tuple(int k, int n, Rng& rng) {
  if (k < 1 || k > n) {
    throw Error(ErrorKind::InfeasibleTuple,
                "cannot draw " + std::to_string(k) + " distinct particles out of " + std::to_string(n));
  }
  TupleSampler sampler(n);
  std::vector<std::uint32_t> buf(static_cast<std::size_t>(k));
  sampler.sample(buf.size(), rng, buf);
  std::vector<std::size_t> labels(buf.begin(), buf.end());
  for (auto& i : labels) ++i;
  return IndexTuple(std::move(labels), n);
}

std::uint64_t falling_factorial(int n, int k) noexcept {
  std::uint64_t result = 1;
  for (int i = 0; i < k; ++i) {
    const auto factor = static_cast<std::uint64_t>(n - i);
    if (factor == 0) return 0;
    if (result > std::numeric_limits<std::uint64_t>::max() / factor) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result *= factor;
  }
  return result;
}

void for_each_tuple(int k, int n, const std::function<void(const IndexTuple&)>& visit) {
  if (k < 1 || k > n) {
    throw Error(ErrorKind::InfeasibleTuple,
                "no ordered " + std::to_string(k) + "-tuples of distinct labels out of " + std::to_string(n));
  }
  const std::uint64_t count = falling_factorial(n, k);
  if (count > kEnumerationLimit) {
    throw Error(ErrorKind::EnumerationTooLarge, "N^[k] = " + std::to_string(count) + " exceeds the limit of " +
                                                    std::to_string(kEnumerationLimit));
  }

  const auto len = static_cast<std::size_t>(k);
  std::vector<std::size_t> current(len);
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  // Iterative depth-first walk; current[depth] holds the label being tried.
  std::size_t depth = 0;
  current[0] = 0;
  while (true) {
    std::size_t& slot = current[depth];
    if (slot != 0) used[slot] = false;
    do {
      ++slot;
    } while (slot <= static_cast<std::size_t>(n) && used[slot]);

    if (slot > static_cast<std::size_t>(n)) {
      slot = 0;
      if (depth == 0) break;
      --depth;
      continue;
    }
    used[slot] = true;
    if (depth + 1 == len) {
      visit(IndexTuple(current, n));
    } else {
      ++depth;
      current[depth] = 0;
    }
  }
}

std::vector<IndexTuple> enumerate_tuples(int k, int n) {
  std::vector<IndexTuple> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(falling_factorial(n, k), kEnumerationLimit)));
  for_each_tuple(k, n, [&](const IndexTuple& t) { out.push_back(t); });
  return out;
}

}  // namespace syncsim
