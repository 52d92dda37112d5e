#include "mvoreg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace mvoreg::stats {

SummaryStats summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summarize: empty sample");
  SummaryStats s;
  s.n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  return s;
}

std::vector<double> signed_rank_magnitudes(std::span<const double> differences, std::vector<double>* kept) {
  std::vector<double> nonzero;
  for (double d : differences) {
    // inf - inf carries no ordering information; it counts as a zero difference.
    if (d != 0.0 && !std::isnan(d)) nonzero.push_back(d);
  }
  const std::size_t n = nonzero.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(nonzero[a]) < std::abs(nonzero[b]); });

  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::abs(nonzero[order[j + 1]]) == std::abs(nonzero[order[i]])) ++j;
    // Positions i..j (0-based) share the mean of ranks i+1..j+1.
    const double avg = 0.5 * static_cast<double>(i + j + 2);
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  if (kept != nullptr) *kept = std::move(nonzero);
  return ranks;
}

double exact_p_value(std::span<const double> ranks, double w_plus) {
  // Average ranks are multiples of 1/2, so doubled ranks are integers and the
  // null distribution of 2 * W+ is a subset-sum count.
  std::vector<std::size_t> doubled(ranks.size());
  std::size_t total = 0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    doubled[i] = static_cast<std::size_t>(std::llround(2.0 * ranks[i]));
    total += doubled[i];
  }
  std::vector<std::uint64_t> counts(total + 1, 0);
  counts[0] = 1;
  std::size_t reach = 0;
  for (std::size_t r : doubled) {
    for (std::size_t s = reach + 1; s-- > 0;) {
      if (counts[s] != 0) counts[s + r] += counts[s];
    }
    reach += r;
  }

  const auto target = static_cast<std::size_t>(std::llround(2.0 * w_plus));
  std::uint64_t le = 0;
  std::uint64_t ge = 0;
  for (std::size_t s = 0; s <= total; ++s) {
    if (s <= target) le += counts[s];
    if (s >= target) ge += counts[s];
  }
  const double outcomes = std::ldexp(1.0, static_cast<int>(ranks.size()));
  return std::min(1.0, 2.0 * static_cast<double>(std::min(le, ge)) / outcomes);
}

double normal_p_value(std::span<const double> ranks, double w_plus) {
  const auto n = static_cast<double>(ranks.size());
  if (ranks.empty()) return 1.0;
  const double mean = n * (n + 1.0) / 4.0;

  // Tie correction: sum over tie groups of (t^3 - t) / 48.
  std::vector<double> sorted(ranks.begin(), ranks.end());
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const auto t = static_cast<double>(j - i);
    tie_term += (t * t * t - t) / 48.0;
    i = j;
  }
  const double variance = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term;
  if (!(variance > 0.0)) return 1.0;

  const double deviation = std::abs(w_plus - mean) - 0.5;
  if (deviation <= 0.0) return 1.0;
  const double z = deviation / std::sqrt(variance);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

TestDecision wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.size() != b.size()) throw std::invalid_argument("wilcoxon_signed_rank: samples differ in length");
  std::vector<double> diffs(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diffs[i] = a[i] - b[i];

  std::vector<double> kept;
  const auto ranks = signed_rank_magnitudes(diffs, &kept);

  TestDecision d;
  d.alpha = alpha;
  d.n_used = ranks.size();
  for (std::size_t i = 0; i < ranks.size(); ++i) (kept[i] > 0.0 ? d.w_plus : d.w_minus) += ranks[i];

  if (ranks.empty()) {
    d.p_value = 1.0;
    d.h = 0;
    return d;
  }
  d.exact = ranks.size() <= kExactLimit;
  d.p_value = d.exact ? exact_p_value(ranks, d.w_plus) : normal_p_value(ranks, d.w_plus);
  if (d.p_value < alpha && d.w_plus != d.w_minus) d.h = d.w_plus > d.w_minus ? 1 : -1;
  return d;
}

}  // namespace mvoreg::stats
