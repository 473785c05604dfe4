#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "syncsim/oracle.hpp"
#include "syncsim/rng.hpp"

using namespace syncsim;
using testing::error_kind;
using testing::model;

namespace {

Configuration random_config(Rng& rng, int n, double half_width = 10.0) {
  Configuration x(static_cast<std::size_t>(n));
  for (auto& v : x) v = -half_width + 2.0 * half_width * rng.uniform01();
  return x;
}

/// Generator on V written as a plain average over the reference tuple list.
double reference_LsV(const std::vector<int>& parts, double delta, const Configuration& x) {
  int k = 0;
  for (int p : parts) k += p;
  const auto tuples = oracle::all_tuples(k, static_cast<int>(x.size()));
  const double v = oracle::pairwise_variance(x);
  double sum = 0.0;
  for (const auto& t : tuples) sum += oracle::pairwise_variance(oracle::synchronize(parts, t, x)) - v;
  return delta * sum / static_cast<double>(tuples.size());
}

}  // namespace

TEST_CASE("sync generator on a small example") {
  const auto spec = model(4, {2});
  const Configuration x{0, 1, 2, 3};
  CHECK(brute_force_LsV(spec, x) == doctest::Approx(-5.0 / 18.0).epsilon(1e-13));
  CHECK(reference_LsV({2}, 1.0, x) == doctest::Approx(-5.0 / 18.0).epsilon(1e-13));
  CHECK(analytic_LV(spec, 5.0 / 3.0) == doctest::Approx(13.0 / 18.0).epsilon(1e-15));
  CHECK(analytic_LV(spec, 5.0 / 3.0) ==
        doctest::Approx(spec.alpha() * spec.jump().b2() + brute_force_LsV(spec, x)).epsilon(1e-13));
}

TEST_CASE("sync generator vanishes without spread") {
  const auto spec = model(6, {2, 3});
  const Configuration flat(6, 3.25);
  CHECK(brute_force_LsV(spec, flat) == 0.0);
  CHECK(brute_force_LsM(spec, flat) == 0.0);
}

TEST_CASE("generator identities hold exactly at finite N") {
  Rng rng(41);
  const std::vector<std::vector<int>> signatures = {{2}, {3}, {2, 2}, {4}, {2, 3}};
  for (int n = 4; n <= 8; ++n) {
    for (const auto& parts : signatures) {
      const Signature sig(parts);
      if (sig.k() > n) continue;
      const auto spec = model(n, parts, 1.0, 1.5);
      for (int trial = 0; trial < 5; ++trial) {
        const auto x = random_config(rng, n);
        const double v = sample_variance(x);
        const double lsv = brute_force_LsV(spec, x);
        CHECK(std::abs(lsv + 1.5 * kappa(sig) / (n * (n - 1.0)) * v) <= 1e-9 * std::max(1.0, v));
        CHECK(lsv < 0.0);
        CHECK(std::abs(brute_force_LsM(spec, x)) <= 1e-12 * 10.0);
        if (n <= 6) CHECK(lsv == doctest::Approx(reference_LsV(parts, 1.5, x)).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("mean generator on a three-particle signature") {
  const auto spec = model(5, {3});
  CHECK(std::abs(brute_force_LsM(spec, Configuration{1, -1, 2, -2, 0})) <= 1e-12);
}

TEST_CASE("pair-pair signature against the closed form") {
  Rng rng(42);
  const auto spec = model(5, {2, 2});
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_config(rng, 5);
    CHECK(brute_force_LsV(spec, x) == doctest::Approx(-4.0 / 20.0 * sample_variance(x)).epsilon(1e-12));
  }
}

TEST_CASE("mixtures act linearly") {
  Rng rng(43);
  const ModelSpec mix(6, 1.0, {{Signature({2}), 1.0}, {Signature({3}), 2.0}}, testing::coin());
  const auto first = model(6, {2}, 1.0, 1.0);
  const auto second = model(6, {3}, 1.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_config(rng, 6);
    const double sum = brute_force_LsV(first, x) + brute_force_LsV(second, x);
    CHECK(std::abs(brute_force_LsV(mix, x) - sum) <= 1e-12 * std::abs(sum));
    CHECK(brute_force_LsV(mix, x) ==
          doctest::Approx(-14.0 / 30.0 * sample_variance(x)).epsilon(1e-12));
  }
}

TEST_CASE("free generator is constant") {
  Rng rng(44);
  CHECK(brute_force_L0V(model(5, {2}), random_config(rng, 5)) == doctest::Approx(1.0).epsilon(1e-12));
  const auto point = JumpDistribution::discrete({{5.0, 1.0}});
  CHECK(brute_force_L0V(model(4, {2}, 1.0, 1.0, point), random_config(rng, 4)) == doctest::Approx(25.0).epsilon(1e-12));
  const auto lazy = JumpDistribution::discrete({{0.0, 0.5}, {2.0, 0.5}});
  CHECK(brute_force_L0V(model(3, {2}, 3.0, 1.0, lazy), Configuration{0, 1, 2}) == doctest::Approx(6.0).epsilon(1e-12));

  const auto spec = model(7, {2}, 2.5, 1.0, lazy);
  const double target = 2.5 * 2.0;
  for (int trial = 0; trial < 20; ++trial) {
    CHECK(std::abs(brute_force_L0V(spec, random_config(rng, 7)) - target) <= 1e-10 * target);
  }
  CHECK(error_kind([&] {
          brute_force_L0V(model(4, {2}, 1.0, 1.0, JumpDistribution::uniform(-1, 1)), Configuration(4, 0.0));
        }) == ErrorKind::Unsupported);
}

TEST_CASE("closed-form generators") {
  const auto spec = model(4, {2});
  CHECK(analytic_LV(spec, 0.0) == 1.0);
  CHECK(analytic_LV(spec, 1.0 * 4 * 3 / 2.0) == doctest::Approx(0.0));
  CHECK(analytic_LM(spec) == 0.0);
  CHECK(analytic_LM(model(4, {2}, 2.0, 1.0, JumpDistribution::discrete({{0, 0.5}, {2, 0.5}}))) == 2.0);
  CHECK(analytic_LM(model(4, {2}, 1.0, 1.0, JumpDistribution::uniform(-1, 1))) == 0.0);
}

TEST_CASE("oracle rejects mismatched configurations") {
  CHECK(error_kind([] { brute_force_LsV(model(4, {2}), Configuration{1, 2, 3}); }) ==
        ErrorKind::InvalidConfiguration);
}
