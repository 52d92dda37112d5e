#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mvoreg/rng.hpp"
#include "mvoreg/stats.hpp"
#include "oracles.hpp"

using namespace mvoreg;

namespace {

std::vector<double> draw(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(lo, hi);
  return v;
}

}  // namespace

TEST_CASE("summary statistics") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto s = stats::summarize(v);
  CHECK(s.mean == 2.5);
  CHECK(s.std == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(s.n == 4);
  const std::vector<double> one{7.0};
  CHECK(stats::summarize(one).std == 0.0);
  CHECK_THROWS_AS(stats::summarize(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("wilcoxon on identical samples") {
  const std::vector<double> a{1.0, 2.0, 3.0, 4.0, 5.0};
  const auto d = stats::wilcoxon_signed_rank(a, a);
  CHECK(d.p_value == 1.0);
  CHECK(d.h == 0);
  CHECK(d.n_used == 0);
}

TEST_CASE("wilcoxon small exact example") {
  const std::vector<double> a{2.0, 3.0, 4.0, 5.0, 6.0};
  const std::vector<double> b{1.0, 1.0, 1.0, 1.0, 1.0};
  const auto d = stats::wilcoxon_signed_rank(a, b);
  CHECK(d.p_value == doctest::Approx(0.0625).epsilon(1e-12));
  CHECK(d.h == 0);
  CHECK(d.exact);
  CHECK(d.w_plus == 15.0);
  CHECK(d.w_minus == 0.0);
}

TEST_CASE("wilcoxon rejects unequal lengths") {
  const std::vector<double> a{1.0, 2.0};
  const std::vector<double> b{1.0};
  CHECK_THROWS_AS(stats::wilcoxon_signed_rank(a, b), std::invalid_argument);
}

TEST_CASE("wilcoxon symmetry and scale invariance") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 5 + rng.index(40);
    const auto a = draw(rng, n, 0.0, 1.0);
    const auto b = draw(rng, n, 0.2, 1.2);
    const auto ab = stats::wilcoxon_signed_rank(a, b);
    const auto ba = stats::wilcoxon_signed_rank(b, a);
    CHECK(ab.p_value == ba.p_value);
    CHECK(ab.h == -ba.h);
    std::vector<double> a2 = a, b2 = b;
    for (auto& x : a2) x *= 8.0;
    for (auto& x : b2) x *= 8.0;
    CHECK(stats::wilcoxon_signed_rank(a2, b2).p_value == ab.p_value);
    CHECK(ab.p_value >= 0.0);
    CHECK(ab.p_value <= 1.0);
  }
}

TEST_CASE("direction of h") {
  std::vector<double> a, b;
  for (int i = 0; i < 31; ++i) {
    a.push_back(10.0 + i);
    b.push_back(1.0 + 0.1 * i);
  }
  CHECK(stats::wilcoxon_signed_rank(a, b).h == 1);
  CHECK(stats::wilcoxon_signed_rank(b, a).h == -1);
}

TEST_CASE("31 one-sided pairs") {
  std::vector<double> a, b;
  for (int i = 0; i < 31; ++i) {
    a.push_back(5.0 + 0.01 * i);
    b.push_back(0.001 * (i + 1));
  }
  const auto d = stats::wilcoxon_signed_rank(a, b);
  CHECK_FALSE(d.exact);
  CHECK(d.p_value == doctest::Approx(1.17e-6).epsilon(0.01));
  CHECK(d.h == 1);
}

TEST_CASE("average ranks match the pairwise-count oracle") {
  Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.index(30);
    std::vector<double> diffs(n);
    for (auto& d : diffs) d = static_cast<double>(static_cast<int>(rng.index(11)) - 5);
    std::vector<double> kept;
    const auto ranks = stats::signed_rank_magnitudes(diffs, &kept);
    std::vector<double> magnitudes;
    for (double d : diffs) {
      if (d != 0.0) magnitudes.push_back(std::abs(d));
    }
    REQUIRE(kept.size() == magnitudes.size());
    CHECK(ranks == oracle::average_ranks(magnitudes));
  }
}

TEST_CASE("exact path equals brute-force enumeration bitwise") {
  Rng rng(21);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng.index(12);
    std::vector<double> a(n), b(n);
    const bool ties = trial % 2 == 0;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = ties ? static_cast<double>(rng.index(5)) : rng.uniform();
      b[i] = ties ? static_cast<double>(rng.index(5)) : rng.uniform();
    }
    const auto d = stats::wilcoxon_signed_rank(a, b);
    const auto ref = oracle::signed_rank_enumeration(a, b);
    REQUIRE(d.n_used == ref.n);
    CHECK(d.w_plus == ref.w_plus);
    CHECK(d.p_value == ref.p_value);
  }
}

TEST_CASE("normal approximation tracks the exact distribution") {
  Rng rng(99);
  double worst = 0.0;
  for (std::size_t n = 10; n <= 25; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = draw(rng, n, 0.0, 1.0);
      const auto b = draw(rng, n, 0.1, 1.1);
      std::vector<double> diffs(n);
      for (std::size_t i = 0; i < n; ++i) diffs[i] = a[i] - b[i];
      const auto ranks = stats::signed_rank_magnitudes(diffs);
      double w_plus = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (diffs[i] > 0) w_plus += ranks[i];
      }
      worst = std::max(worst, std::abs(stats::normal_p_value(ranks, w_plus) - stats::exact_p_value(ranks, w_plus)));
    }
  }
  CHECK(worst < 0.02);
}

TEST_CASE("ties and infinite samples") {
  const std::vector<double> a{1.0, 2.0, 2.0, 3.0, INFINITY, 4.0};
  const std::vector<double> b{0.0, 1.0, 1.0, 3.0, INFINITY, 3.0};
  const auto d = stats::wilcoxon_signed_rank(a, b);
  CHECK(d.n_used == 4);
  CHECK(d.w_plus == 10.0);
  CHECK(d.p_value == doctest::Approx(0.125));
}
