// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>

namespace botlens {

using TweetId = std::uint64_t;
using AccountId = std::uint64_t;
/// UTC seconds since the Unix epoch.
using Timestamp = std::int64_t;

enum class Label : std::uint8_t { Human, Bot, Unknown };

std::string_view to_string(Label label) noexcept;
std::optional<Label> parse_label(std::string_view text) noexcept;

/// Per-account label assignment. Accounts missing from the map are Unknown.
using LabelMap = std::map<AccountId, Label>;

inline Label label_of(const LabelMap& labels, AccountId id) {
  auto it = labels.find(id);
  return it == labels.end() ? Label::Unknown : it->second;
}

/// Time span of the streamed collection. Always start < end.
struct CollectionWindow {
  Timestamp start = 0;
  Timestamp end = 1;

  double hours() const noexcept { return static_cast<double>(end - start) / 3600.0; }
  friend bool operator==(const CollectionWindow&, const CollectionWindow&) = default;
};

/// Language-independent bot-likelihood sub-scores of one account.
/// The composite is always the arithmetic mean of the three parts.
class BotScore {
 public:
  /// Throws Error(Domain) unless every part is finite and within [0,1].
  BotScore(double friend_part, double network_part, double temporal_part);

  double friend_score() const noexcept { return friend_; }
  double network_score() const noexcept { return network_; }
  double temporal_score() const noexcept { return temporal_; }
  double composite() const noexcept { return composite_; }
  double min_part() const noexcept;

  friend bool operator==(const BotScore&, const BotScore&) = default;

 private:
  double friend_;
  double network_;
  double temporal_;
  double composite_;
};

}  // namespace botlens
