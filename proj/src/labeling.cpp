// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "botlens/botsense.hpp"

namespace botlens {
namespace {

constexpr std::string_view kModule = "botsense";

struct Peak {
  std::size_t index;
  double value;
};

// Local maxima of a sampled curve. A run of equal values counts once, at its
// first index, when both neighbours of the run (where they exist) are lower.
std::vector<Peak> local_maxima(std::span<const double> v) {
  std::vector<Peak> peaks;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
    bool left_lower = i == 0 || v[i - 1] < v[i];
    bool right_lower = j + 1 == v.size() || v[j + 1] < v[i];
    if (left_lower && right_lower) peaks.push_back({i, v[i]});
    i = j + 1;
  }
  return peaks;
}

}  // namespace

std::string_view to_string(ThresholdSource source) noexcept {
  switch (source) {
    case ThresholdSource::Fixed: return "fixed";
    case ThresholdSource::Valley: return "valley";
    case ThresholdSource::Imported: return "imported";
  }
  return "fixed";
}

std::string_view to_string(LabelPolicy policy) noexcept {
  return policy == LabelPolicy::Composite ? "composite" : "all-three";
}

std::optional<LabelPolicy> parse_policy(std::string_view text) noexcept {
  if (text == "composite") return LabelPolicy::Composite;
  if (text == "all-three" || text == "all_three") return LabelPolicy::AllThree;
  return std::nullopt;
}

Threshold valley_threshold(std::span<const double> scores, unsigned threads) {
  if (scores.size() < 2) {
    throw Error(ErrorKind::Domain, kModule,
                fmt::format("valley threshold needs at least 2 scores, got {}", scores.size()));
  }
  PointSet points(1, std::vector<double>(scores.begin(), scores.end()));
  auto grid = kde(points, kGrid1d, scott_bandwidth(points), threads);

  auto peaks = local_maxima(grid.values);
  if (peaks.size() < 2) return {0.5, ThresholdSource::Fixed};

  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& a, const Peak& b) { return a.value > b.value; });
  auto [lo, hi] = std::minmax(peaks[0].index, peaks[1].index);
  std::size_t best = lo + 1;
  for (std::size_t i = lo + 1; i < hi; ++i) {
    if (grid.values[i] < grid.values[best]) best = i;
  }
  return {grid.axis(best), ThresholdSource::Valley};
}

LabelReport label_accounts(const ScoreMap& scores, const AccountMap& accounts,
                           const Threshold& threshold, LabelPolicy policy) {
  if (!(threshold.tau >= 0.0 && threshold.tau <= 1.0)) {
    throw Error(ErrorKind::Domain, kModule,
                fmt::format("threshold must lie in [0,1], got {}", threshold.tau));
  }
  LabelReport report;
  report.threshold = threshold;
  report.policy = policy;
  auto assign = [&](AccountId id) {
    auto it = scores.find(id);
    Label label = Label::Unknown;
    if (it != scores.end()) {
      double stat = policy == LabelPolicy::Composite ? it->second.composite() : it->second.min_part();
      label = stat >= threshold.tau ? Label::Bot : Label::Human;
    }
    report.labels.emplace(id, label);
  };
  for (const auto& [id, profile] : accounts) assign(id);
  for (const auto& [id, score] : scores) {
    if (!report.labels.contains(id)) assign(id);
  }
  for (const auto& [id, label] : report.labels) {
    switch (label) {
      case Label::Bot: ++report.bots; break;
      case Label::Human: ++report.humans; break;
      case Label::Unknown: ++report.unknown; break;
    }
  }
  return report;
}

}  // namespace botlens
