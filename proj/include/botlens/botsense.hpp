// SPDX-License-Identifier: Apache-2.0
#pragma once

// Language-independent bot scoring: score import, proxy sub-scores, Gaussian
// kernel density estimates in 1-3 dimensions, and threshold labeling.
//
// The proxy sub-scores are this library's own definitions computed from the
// corpus. They approximate the role of an external classifier's friend,
// network and temporal categories and do not reproduce its internals.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "botlens/corpus.hpp"
#include "botlens/error.hpp"
#include "botlens/types.hpp"

namespace botlens {

using ScoreMap = std::map<AccountId, BotScore>;

// ---------------------------------------------------------------------------
// Score import

struct ScoreImport {
  ScoreMap scores;
  std::vector<Diagnostic> diagnostics;
  std::size_t clamped = 0;        // entries with at least one part clamped to [0,1]
  std::size_t unknown_accounts = 0;  // valid entries naming accounts outside the corpus
};

/// Reads JSON lines `{"account_id":..,"friend":..,"network":..,"temporal":..}`.
/// Out-of-range parts are clamped with a diagnostic, malformed lines skipped.
/// Entries for accounts absent from `accounts` are ignored (counted only).
/// Zero valid entries is a domain error.
ScoreImport import_scores(std::istream& input, const AccountMap& accounts);
ScoreImport import_scores_file(const std::filesystem::path& path, const AccountMap& accounts);

/// One JSON line in the import format.
std::string serialize_score(AccountId account, const BotScore& score);

// ---------------------------------------------------------------------------
// Proxy sub-scores

/// Regularity of posting: 1 - H/4 where H is the entropy (bits) of the
/// base-2 log inter-tweet gaps (gaps floored at 1 s) over 16 equal-width bins
/// spanning the observed range. Fewer than 3 tweets gives 0.5.
/// `times` must be ascending; entries outside `window` are ignored.
double temporal_score(std::span<const Timestamp> times, const CollectionWindow& window);
double temporal_score(const Timeline& timeline, const CollectionWindow& window);

struct RetweetEvent {
  AccountId retweeter = 0;
  AccountId author = 0;
};

std::vector<RetweetEvent> retweet_events(std::span<const TweetRecord> records);

/// 1 - u/k for k interactions with u distinct counterparts; 0.5 when k = 0.
double network_score(AccountId account, std::span<const RetweetEvent> events);
/// network_score for every account at once (single pass over the events).
std::map<AccountId, double> network_scores(std::span<const RetweetEvent> events);

/// Corpus-wide z-score parameters for the friend proxy (population moments).
struct FriendStats {
  double rate_mean = 0.0;
  double rate_sd = 0.0;
  double ratio_mean = 0.0;
  double ratio_sd = 0.0;
  Timestamp reference_time = 0;  // account age is measured up to this instant

  static FriendStats compute(const AccountMap& accounts, Timestamp reference_time);
};

double tweet_rate(const AccountProfile& profile, Timestamp reference_time);
double follower_ratio(const AccountProfile& profile);

/// logistic(z(tweet rate) - z(follower ratio)); zero variance forces z = 0.
double friend_score(const AccountProfile& profile, const FriendStats& stats);

/// All three proxies for every account in `accounts`.
ScoreMap compute_proxy_scores(std::span<const TweetRecord> records, const AccountMap& accounts,
                              const CollectionWindow& window);

// ---------------------------------------------------------------------------
// Kernel density estimation

/// Row-major n x d matrix of points.
class PointSet {
 public:
  explicit PointSet(std::size_t dims) : dims_(dims) {}
  PointSet(std::size_t dims, std::vector<double> values);

  std::size_t dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return dims_ == 0 ? 0 : values_.size() / dims_; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * dims_, dims_}; }
  void push_back(std::span<const double> point);
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::size_t dims_;
  std::vector<double> values_;
};

/// Density evaluated on G equally spaced nodes per axis over [0,1]^d.
/// Node (i_0, ..., i_{d-1}) is stored at flat index ((i_0 * G + i_1) * G + ...).
struct DensityGrid {
  std::size_t dims = 1;
  std::size_t grid_size = 0;
  std::vector<double> bandwidths;
  std::vector<double> values;

  double axis(std::size_t i) const noexcept {
    return static_cast<double>(i) / static_cast<double>(grid_size - 1);
  }
  std::size_t node_count() const noexcept { return values.size(); }
  /// Per-axis indices of a flat node index.
  std::vector<std::size_t> unflatten(std::size_t flat) const;
  /// Trapezoidal integral over [0,1]^d. Mass placed near the boundary leaks
  /// outside the unit cube, so this is below 1 for such point sets.
  double integral() const;
  /// CSV: one row per node, coordinates then density, row-major order.
  std::string to_csv(std::span<const std::string> axis_names) const;
};

/// h_i = sigma_i * n^(-1/(d+4)) with sample standard deviation; 0.01 when
/// sigma_i = 0. Requires n >= 2.
std::vector<double> scott_bandwidth(const PointSet& points);

/// Product Gaussian kernel density. For every node the sum runs over points in
/// input order and the product over dimensions in index order, so results do
/// not depend on `threads`.
DensityGrid kde(const PointSet& points, std::size_t grid_size, std::span<const double> bandwidths,
                unsigned threads = 1);

inline constexpr std::size_t kGrid1d = 256;
inline constexpr std::size_t kGrid2d = 64;
inline constexpr std::size_t kGrid3d = 32;

// ---------------------------------------------------------------------------
// Thresholding and labeling

enum class ThresholdSource { Fixed, Valley, Imported };
std::string_view to_string(ThresholdSource source) noexcept;

struct Threshold {
  double tau = 0.5;
  ThresholdSource source = ThresholdSource::Fixed;
};

/// Position of the lowest density strictly between the two highest local
/// maxima of the 1D KDE (256 nodes) of `scores`; 0.5/Fixed with fewer than two
/// maxima. Requires at least two scores.
Threshold valley_threshold(std::span<const double> scores, unsigned threads = 1);

enum class LabelPolicy { Composite, AllThree };
std::string_view to_string(LabelPolicy policy) noexcept;
std::optional<LabelPolicy> parse_policy(std::string_view text) noexcept;

struct LabelReport {
  LabelMap labels;
  Threshold threshold;
  LabelPolicy policy = LabelPolicy::Composite;
  std::size_t bots = 0;
  std::size_t humans = 0;
  std::size_t unknown = 0;
};

/// Labels every account in `accounts`: Bot iff the policy statistic is >= tau,
/// Unknown when the account has no score.
LabelReport label_accounts(const ScoreMap& scores, const AccountMap& accounts,
                           const Threshold& threshold, LabelPolicy policy);

}  // namespace botlens
