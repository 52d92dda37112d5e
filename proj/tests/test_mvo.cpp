#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "mvoreg/mvo.hpp"

using namespace mvoreg;

namespace {

double shifted_square(std::span<const double> x) { return (x[0] - 3.0) * (x[0] - 3.0); }

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += (v - 1.0) * (v - 1.0);
  return s;
}

mvo::UniverseState random_state(std::size_t n, const Bounds& bounds, Rng& rng) {
  mvo::UniverseState s;
  s.positions = init_population(n, bounds, rng);
  mvo::evaluate_and_sort(s, sphere);
  return s;
}

}  // namespace

TEST_CASE("travelling distance rate schedule") {
  CHECK(mvo::travelling_distance_rate(0, 100, 6.0) == 1.0);
  CHECK(mvo::travelling_distance_rate(100, 100, 6.0) == 0.0);
  CHECK(mvo::travelling_distance_rate(50, 100, 6.0) == doctest::Approx(1.0 - std::pow(0.5, 1.0 / 6.0)));
  CHECK(mvo::travelling_distance_rate(50, 100, 6.0) == doctest::Approx(0.10910).epsilon(1e-4));
  for (std::size_t l = 0; l < 100; ++l) {
    const double now = mvo::travelling_distance_rate(l, 100, 6.0);
    const double next = mvo::travelling_distance_rate(l + 1, 100, 6.0);
    CHECK(next <= now);
    CHECK(now >= 0.0);
    CHECK(now <= 1.0);
  }
}

TEST_CASE("wormhole existence probability schedule") {
  CHECK(mvo::wormhole_existence_probability(0, 100, 0.2, 1.0) == 0.2);
  CHECK(mvo::wormhole_existence_probability(100, 100, 0.2, 1.0) == 1.0);
  CHECK(mvo::wormhole_existence_probability(50, 100, 0.2, 1.0) == doctest::Approx(0.6));
  for (std::size_t l = 0; l < 100; ++l) {
    CHECK(mvo::wormhole_existence_probability(l + 1, 100, 0.2, 1.0) >=
          mvo::wormhole_existence_probability(l, 100, 0.2, 1.0));
  }
}

TEST_CASE("roulette selection") {
  Rng rng(1);
  const std::vector<double> single{0.7};
  for (int i = 0; i < 100; ++i) CHECK(mvo::roulette_select(single, rng) == 0);
  const std::vector<double> one_zero{1.0, 0.0};
  for (int i = 0; i < 1000; ++i) CHECK(mvo::roulette_select(one_zero, rng) == 0);

  const std::size_t n = 5;
  const int draws = 100000;
  std::vector<double> count(n, 0.0);
  const std::vector<double> equal(n, 2.0);
  for (int i = 0; i < draws; ++i) count[mvo::roulette_select(equal, rng)] += 1.0;
  const double p = 1.0 / n;
  const double sigma = std::sqrt(draws * p * (1 - p));
  for (double c : count) CHECK(std::abs(c - draws * p) < 3 * sigma);

  std::vector<double> zeros_count(3, 0.0);
  const std::vector<double> zeros(3, 0.0);
  for (int i = 0; i < 30000; ++i) zeros_count[mvo::roulette_select(zeros, rng)] += 1.0;
  for (double c : zeros_count) CHECK(std::abs(c - 10000.0) < 3 * std::sqrt(30000.0 * (2.0 / 9.0)));

  const std::vector<double> skewed{3.0, 1.0};
  double first = 0.0;
  for (int i = 0; i < draws; ++i) first += mvo::roulette_select(skewed, rng) == 0 ? 1.0 : 0.0;
  CHECK(first / draws == doctest::Approx(0.75).epsilon(0.01));
}

TEST_CASE("normalised inflation and donor weights") {
  const std::vector<double> rates{3.0, 4.0};
  const auto ni = mvo::normalized_inflation(rates);
  CHECK(ni[0] == doctest::Approx(0.6));
  CHECK(ni[1] == doctest::Approx(0.8));
  const auto w = mvo::donor_weights(rates);
  CHECK(w[0] > w[1]);
  CHECK(w[1] > 0.0);

  const std::vector<double> with_inf{1.0, INFINITY};
  CHECK(mvo::normalized_inflation(with_inf)[1] == 1.0);
  CHECK(mvo::normalized_inflation(with_inf)[0] == 1.0);
  CHECK(mvo::donor_weights(with_inf)[1] == 0.0);
  CHECK(mvo::normalized_inflation(std::vector<double>{0.0, 0.0})[1] == 0.0);

  // Huge rates do not overflow the norm.
  const auto big = mvo::normalized_inflation(std::vector<double>{1e300, 1e300});
  CHECK(big[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("evaluate_and_sort orders universes and tracks the best") {
  mvo::UniverseState s;
  s.positions = {{5.0}, {2.0}, {3.5}, {3.0}};
  mvo::evaluate_and_sort(s, shifted_square);
  CHECK(s.positions == Population{{3.0}, {3.5}, {2.0}, {5.0}});
  CHECK(s.inflation_rates == std::vector<double>{0.0, 0.25, 1.0, 4.0});
  CHECK(s.best_universe == std::vector<double>{3.0});
  CHECK(s.best_inflation == 0.0);

  // Non-finite fitness sorts last; ties keep index order.
  mvo::UniverseState t;
  t.positions = {{1.0}, {2.0}, {3.0}};
  mvo::evaluate_and_sort(t, [](std::span<const double> x) { return x[0] == 1.0 ? NAN : 7.0; });
  CHECK(t.positions == Population{{2.0}, {3.0}, {1.0}});
  CHECK(std::isinf(t.inflation_rates[2]));
}

TEST_CASE("exchange phase edge cases") {
  Rng rng(4);
  mvo::UniverseState lone;
  lone.positions = {{1.0, 2.0}};
  mvo::evaluate_and_sort(lone, sphere);
  const auto before_lone = lone.positions;
  mvo::exchange_phase(lone, rng);
  CHECK(lone.positions == before_lone);

  // All-zero rates give NI = 0, so r1 >= NI on every draw.
  mvo::UniverseState flat;
  flat.positions = {{1.0, 1.0}, {2.0, 3.0}, {4.0, 5.0}};
  mvo::evaluate_and_sort(flat, [](std::span<const double>) { return 0.0; });
  const auto before_flat = flat.positions;
  for (int i = 0; i < 50; ++i) mvo::exchange_phase(flat, rng);
  CHECK(flat.positions == before_flat);

  mvo::UniverseState same;
  same.positions = Population(6, std::vector<double>{0.25, -3.0, 9.0});
  same.inflation_rates = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  const auto before_same = same.positions;
  for (int i = 0; i < 50; ++i) mvo::exchange_phase(same, rng);
  CHECK(same.positions == before_same);
}

TEST_CASE("exchange phase only moves existing column values and spares the best") {
  const Bounds bounds(4, Interval{-10.0, 10.0});
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = random_state(12, bounds, rng);
    const auto before = s.positions;
    mvo::exchange_phase(s, rng);
    CHECK(s.positions[0] == before[0]);
    for (std::size_t j = 0; j < 4; ++j) {
      std::set<double> column;
      for (const auto& u : before) column.insert(u[j]);
      for (const auto& u : s.positions) REQUIRE(column.count(u[j]) == 1);
    }
  }
}

TEST_CASE("wormhole coordinate formula") {
  const Interval iv{2.0, 12.0};
  CHECK(mvo::wormhole_coordinate(5.0, 0.5, iv, 0.2, 0.0) == 5.0 + 0.5 * 2.0);
  CHECK(mvo::wormhole_coordinate(5.0, 0.5, iv, 0.7, 0.0) == 5.0 - 0.5 * 2.0);
  CHECK(mvo::wormhole_coordinate(5.0, 0.5, iv, 0.2, 1.0) == 5.0 + 0.5 * 12.0);
  CHECK(mvo::wormhole_coordinate(5.0, 0.0, iv, 0.2, 0.3) == 5.0);
}

TEST_CASE("wormhole phase") {
  const Bounds bounds(3, Interval{-5.0, 5.0});
  Rng rng(77);

  auto s = random_state(10, bounds, rng);
  const auto before = s.positions;
  mvo::wormhole_phase(s, 0.0, 0.7, bounds, rng);
  CHECK(s.positions == before);

  // tdr = 0 and wep = 1: every non-best universe collapses onto the best.
  s.best_universe = {1.0, 7.0, -2.0};
  mvo::wormhole_phase(s, 1.0, 0.0, bounds, rng);
  CHECK(s.positions[0] == before[0]);
  for (std::size_t i = 1; i < s.positions.size(); ++i) CHECK(s.positions[i] == std::vector<double>{1.0, 5.0, -2.0});

  for (int trial = 0; trial < 200; ++trial) {
    auto t = random_state(10, bounds, rng);
    mvo::wormhole_phase(t, rng.uniform(), rng.uniform(), bounds, rng);
    for (const auto& u : t.positions) {
      for (std::size_t j = 0; j < 3; ++j) REQUIRE(bounds[j].contains(u[j]));
    }
  }
}

TEST_CASE("mvo solves a 1-D convex problem") {
  OptimizerConfig config;
  config.seed = 5;
  const auto r = mvo::minimize(shifted_square, {{-10.0, 10.0}}, config);
  CHECK(std::abs(r.best_beta[0] - 3.0) < 0.01);
  CHECK(r.trace.size() == 100);
  CHECK(r.train_mse == r.trace.back());
  CHECK(r.seed == 5);
}

TEST_CASE("mvo on a constant objective") {
  OptimizerConfig config;
  config.seed = 2;
  const auto r = mvo::minimize([](std::span<const double>) { return 0.0; }, {{-1.0, 1.0}, {0.0, 2.0}}, config);
  for (double v : r.trace) CHECK(v == 0.0);
}

TEST_CASE("mvo trace is monotone, feasible and replayable") {
  const Bounds bounds(5, Interval{-4.0, 6.0});
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    OptimizerConfig config;
    config.seed = seed;
    config.max_iterations = 60;
    const auto r = mvo::minimize(sphere, bounds, config);
    for (std::size_t l = 1; l < r.trace.size(); ++l) REQUIRE(r.trace[l] <= r.trace[l - 1]);
    for (std::size_t j = 0; j < bounds.size(); ++j) CHECK(bounds[j].contains(r.best_beta[j]));
    CHECK(sphere(r.best_beta) == r.train_mse);
    const auto again = mvo::minimize(sphere, bounds, config);
    CHECK(again.trace == r.trace);
    CHECK(again.best_beta == r.best_beta);
  }
}

TEST_CASE("mvo survives objectives that are mostly non-finite") {
  OptimizerConfig config;
  config.seed = 3;
  const auto r = mvo::minimize([](std::span<const double> x) { return x[0] < 0.0 ? NAN : x[0]; }, {{-10.0, 10.0}},
                               config);
  CHECK(std::isfinite(r.train_mse));
  CHECK(r.best_beta[0] >= 0.0);
}
