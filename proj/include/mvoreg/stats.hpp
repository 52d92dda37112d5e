#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mvoreg::stats {

struct SummaryStats {
  double mean = 0.0;
  double std = 0.0;  ///< sample standard deviation (n - 1); 0 when n == 1
  std::size_t n = 0;
};

/// Throws std::invalid_argument on empty input.
SummaryStats summarize(std::span<const double> values);

struct TestDecision {
  double p_value = 1.0;
  /// +1: second sample significantly smaller, -1: first sample significantly
  /// smaller, 0: no significant difference.
  int h = 0;
  double alpha = 0.05;
  double w_plus = 0.0;   ///< rank sum of positive differences a - b
  double w_minus = 0.0;  ///< rank sum of negative differences
  std::size_t n_used = 0;  ///< pairs left after dropping zero differences
  bool exact = true;
};

/// Largest reduced sample size for which the exact null distribution is used.
inline constexpr std::size_t kExactLimit = 25;

/// Average ranks (1-based) of |d| for the non-zero differences, in input order.
/// Zero differences are dropped.
std::vector<double> signed_rank_magnitudes(std::span<const double> differences, std::vector<double>* kept = nullptr);

/// Two-sided exact p-value: 2 * min(P(W+ <= w), P(W+ >= w)) under the
/// conditional sign-flip null, capped at 1. `ranks` are average ranks; `w_plus`
/// their sum over positive differences.
double exact_p_value(std::span<const double> ranks, double w_plus);

/// Two-sided normal approximation with tie and continuity corrections.
double normal_p_value(std::span<const double> ranks, double w_plus);

/// Paired two-sided Wilcoxon signed-rank test on a_i - b_i. Exact for
/// n_used <= kExactLimit, normal approximation otherwise. Throws
/// std::invalid_argument if the lengths differ.
TestDecision wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b, double alpha = 0.05);

}  // namespace mvoreg::stats
