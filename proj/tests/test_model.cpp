#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "syncsim/model.hpp"
#include "syncsim/rng.hpp"

using namespace syncsim;
using testing::error_kind;

TEST_CASE("kappa of common signatures") {
  CHECK(kappa(Signature({2})) == 2.0);
  CHECK(kappa(Signature({3})) == 6.0);
  CHECK(kappa(Signature({2, 2})) == 4.0);
  CHECK(kappa(Signature({2, 3})) == 8.0);
  CHECK(kappa(Signature({4})) == 12.0);
}

TEST_CASE("kappa ignores the order of parts") {
  std::vector<int> parts{2, 5, 3, 2};
  const double reference = kappa(Signature(parts));
  std::sort(parts.begin(), parts.end());
  do {
    CHECK(kappa(Signature(parts)) == reference);
    CHECK(kappa(Signature(parts)) == oracle::kappa(parts));
  } while (std::next_permutation(parts.begin(), parts.end()));
}

TEST_CASE("signature rejects parts below 2 and empty lists") {
  CHECK(error_kind([] { Signature({1, 2}); }) == ErrorKind::InvalidSignature);
  CHECK(error_kind([] { Signature({}); }) == ErrorKind::InvalidSignature);
  CHECK(error_kind([] { Signature({2, 0}); }) == ErrorKind::InvalidSignature);
  const Signature s({2, 3});
  CHECK(s.k() == 5);
  CHECK(s.l() == 2);
}

TEST_CASE("sample mean") {
  CHECK(sample_mean(std::vector<double>{0, 0, 0}) == 0.0);
  CHECK(sample_mean(std::vector<double>{1, 2, 3}) == 2.0);
  CHECK(sample_mean(std::vector<double>{10, 20, 30, 40, 50}) == 30.0);
}

TEST_CASE("sample variance examples") {
  CHECK(sample_variance(std::vector<double>{4.25, 4.25, 4.25, 4.25}) == 0.0);
  CHECK(sample_variance(std::vector<double>{1, 2, 3}) == doctest::Approx(1.0).epsilon(1e-15));
  const std::vector<double> x{0, 1, 2, 3};
  CHECK(sample_variance(x) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(oracle::pairwise_variance(x) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(error_kind([] { sample_variance(std::vector<double>{1.0}); }) == ErrorKind::InvalidConfiguration);
}

TEST_CASE("centered and pairwise variance agree") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = 2 + rng.below(49);
    std::vector<double> x(n);
    for (auto& v : x) v = -100.0 + 200.0 * rng.uniform01();
    const double v = sample_variance(x);
    CHECK(v >= 0.0);
    CHECK(std::abs(v - oracle::pairwise_variance(x)) <= 1e-9 * oracle::pairwise_variance(x));
  }
}

TEST_CASE("variance is zero only for equal coordinates") {
  CHECK(sample_variance(std::vector<double>{3.0, 3.0}) == 0.0);
  CHECK(sample_variance(std::vector<double>{3.0, std::nextafter(3.0, 4.0)}) > 0.0);
}

TEST_CASE("variance is translation invariant") {
  Rng rng(12);
  for (double c : {-1e6, -3.5, 0.25, 1e3, 1e6}) {
    std::vector<double> x(17);
    for (auto& v : x) v = rng.uniform01() * 10.0;
    auto shifted = x;
    for (auto& v : shifted) v += c;
    CHECK(std::abs(sample_variance(shifted) - sample_variance(x)) <= 1e-9 * sample_variance(x));
  }
}

TEST_CASE("jump law moments") {
  auto m = distribution_moments(JumpDistribution::discrete({{-1, 0.5}, {1, 0.5}}));
  CHECK(m.a == 0.0);
  CHECK(m.b2 == 1.0);
  m = distribution_moments(JumpDistribution::discrete({{0, 0.5}, {2, 0.5}}));
  CHECK(m.a == 1.0);
  CHECK(m.b2 == 2.0);
  m = distribution_moments(JumpDistribution::uniform(-1, 1));
  CHECK(m.a == 0.0);
  CHECK(m.b2 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  m = distribution_moments(JumpDistribution::uniform(2, 5));
  CHECK(m.a == 3.5);
  CHECK(m.b2 == doctest::Approx((125.0 - 8.0) / 9.0).epsilon(1e-15));
  m = distribution_moments(JumpDistribution::discrete({{-2.5, 1.0}}));
  CHECK(m.a == -2.5);
  CHECK(m.b2 == 6.25);
}

TEST_CASE("jump law validation") {
  CHECK(error_kind([] { JumpDistribution::discrete({{0.0, 1.0}}); }) == ErrorKind::InvalidDistribution);
  CHECK(error_kind([] { JumpDistribution::discrete({}); }) == ErrorKind::InvalidDistribution);
  CHECK(error_kind([] { JumpDistribution::discrete({{1, 0.5}, {2, 0.4}}); }) == ErrorKind::InvalidDistribution);
  CHECK(error_kind([] { JumpDistribution::discrete({{1, 1.5}, {2, -0.5}}); }) == ErrorKind::InvalidDistribution);
  CHECK(error_kind([] { JumpDistribution::uniform(1, 1); }) == ErrorKind::InvalidDistribution);
  CHECK(error_kind([] { JumpDistribution::uniform(2, 1); }) == ErrorKind::InvalidDistribution);
}

TEST_CASE("sampling a point mass") {
  const auto rho = JumpDistribution::discrete({{5.0, 1.0}});
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) CHECK(sample_jump(rho, rng) == 5.0);
}

TEST_CASE("sample means obey the central limit bound") {
  constexpr int draws = 1'000'000;
  Rng rng(4);
  const auto coin = testing::coin();
  double sum = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double z = sample_jump(coin, rng);
    REQUIRE((z == -1.0 || z == 1.0));
    sum += z;
  }
  CHECK(std::abs(sum / draws) <= 4.0 / std::sqrt(draws));

  const auto uni = JumpDistribution::uniform(0, 1);
  sum = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double z = sample_jump(uni, rng);
    REQUIRE((z >= 0.0 && z < 1.0));
    sum += z;
  }
  CHECK(std::abs(sum / draws - 0.5) <= 4.0 / std::sqrt(12.0) / std::sqrt(draws));
}

TEST_CASE("model spec derived rates and validation") {
  const ModelSpec spec(10, 2.0,
                       {{Signature({2}), 1.0}, {Signature({3}), 0.5}},
                       testing::coin());
  CHECK(spec.max_k() == 3);
  CHECK(spec.delta_kappa() == 1.0 * 2 + 0.5 * 6);
  CHECK(spec.total_delta() == 1.5);
  CHECK(spec.total_rate() == 21.5);
  CHECK(spec.with_n(40).n() == 40);
  CHECK(spec.with_n(40).delta_kappa() == spec.delta_kappa());

  CHECK(error_kind([] { testing::model(2, {3}); }) == ErrorKind::InvalidModel);
  CHECK(error_kind([] { testing::model(5, {2}, 0.0); }) == ErrorKind::InvalidModel);
  CHECK(error_kind([] { testing::model(5, {2}, 1.0, -1.0); }) == ErrorKind::InvalidModel);
  CHECK(error_kind([] { ModelSpec(5, 1.0, {}, testing::coin()); }) == ErrorKind::InvalidModel);
  CHECK_FALSE(error_kind([] { testing::model(3, {3}); }));
}

TEST_CASE("derived seeds differ across streams") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  Rng a(derive_seed(5, 3));
  Rng b(derive_seed(5, 3));
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
}

TEST_CASE("bounded integers are uniform") {
  Rng rng(8);
  std::vector<int> counts(7, 0);
  constexpr int draws = 70000;
  for (int i = 0; i < draws; ++i) ++counts[rng.below(7)];
  const double p = 1.0 / 7.0;
  for (int c : counts) CHECK(std::abs(c / double(draws) - p) <= 4.0 * std::sqrt(p * (1 - p) / draws));
}
