// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "botlens/botsense.hpp"

namespace botlens {
namespace {

using json = nlohmann::json;
constexpr std::string_view kModule = "botsense";

bool in_unit(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

// Variance below this is treated as zero so identical inputs give z = 0
// despite rounding in the mean.
bool negligible_spread(double sd, double mean) {
  return sd <= 1e-12 * std::max(1.0, std::abs(mean));
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(Label label) noexcept {
  switch (label) {
    case Label::Human: return "H";
    case Label::Bot: return "B";
    case Label::Unknown: return "U";
  }
  return "U";
}

std::optional<Label> parse_label(std::string_view text) noexcept {
  if (text == "H" || text == "human" || text == "Human") return Label::Human;
  if (text == "B" || text == "bot" || text == "Bot") return Label::Bot;
  if (text == "U" || text == "unknown" || text == "Unknown") return Label::Unknown;
  return std::nullopt;
}

BotScore::BotScore(double friend_part, double network_part, double temporal_part)
    : friend_(friend_part),
      network_(network_part),
      temporal_(temporal_part),
      composite_((friend_part + network_part + temporal_part) / 3.0) {
  if (!in_unit(friend_) || !in_unit(network_) || !in_unit(temporal_)) {
    throw Error(ErrorKind::Domain, kModule,
                fmt::format("sub-scores must be finite and within [0,1], got ({}, {}, {})",
                            friend_, network_, temporal_));
  }
}

double BotScore::min_part() const noexcept { return std::min({friend_, network_, temporal_}); }

// ---------------------------------------------------------------------------
// Import

ScoreImport import_scores(std::istream& input, const AccountMap& accounts) {
  if (!input.good()) throw Error(ErrorKind::Io, kModule, "score stream is not readable");
  ScoreImport out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json doc = json::parse(line, nullptr, false);
    auto bad = [&](std::string msg) { out.diagnostics.push_back({line_no, std::move(msg)}); };
    if (doc.is_discarded() || !doc.is_object()) {
      bad("invalid JSON score entry");
      continue;
    }
    std::optional<AccountId> id;
    if (auto it = doc.find("account_id"); it != doc.end()) {
      if (it->is_number_unsigned()) {
        id = it->get<AccountId>();
      } else if (it->is_string()) {
        const auto& s = it->get_ref<const std::string&>();
        AccountId v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc{} && p == s.data() + s.size() && !s.empty()) id = v;
      }
    }
    if (!id) {
      bad("missing or invalid `account_id`");
      continue;
    }
    std::array<double, 3> parts{};
    constexpr std::array<const char*, 3> names = {"friend", "network", "temporal"};
    bool ok = true;
    bool clamped = false;
    for (std::size_t k = 0; k < 3 && ok; ++k) {
      auto it = doc.find(names[k]);
      if (it == doc.end() || !it->is_number() || !std::isfinite(it->get<double>())) {
        bad(fmt::format("missing or non-finite `{}`", names[k]));
        ok = false;
        break;
      }
      double v = it->get<double>();
      double c = std::clamp(v, 0.0, 1.0);
      if (c != v) {
        out.diagnostics.push_back(
            {line_no, fmt::format("account {}: `{}` = {} clamped to {}", *id, names[k], v, c)});
        clamped = true;
      }
      parts[k] = c;
    }
    if (!ok) continue;
    if (!accounts.contains(*id)) {
      ++out.unknown_accounts;
      continue;
    }
    if (out.scores.contains(*id)) {
      bad(fmt::format("duplicate entry for account {} ignored", *id));
      continue;
    }
    out.scores.emplace(*id, BotScore(parts[0], parts[1], parts[2]));
    if (clamped) ++out.clamped;
  }
  if (input.bad()) throw Error(ErrorKind::Io, kModule, "read failure on score stream");
  if (out.unknown_accounts > 0) {
    out.diagnostics.push_back(
        {0, fmt::format("{} entries name accounts not present in the corpus", out.unknown_accounts)});
  }
  if (out.scores.empty()) {
    throw Error(ErrorKind::Domain, kModule, "score file contains no valid entries");
  }
  return out;
}

ScoreImport import_scores_file(const std::filesystem::path& path, const AccountMap& accounts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, kModule, fmt::format("cannot open `{}`", path.string()));
  return import_scores(in, accounts);
}

std::string serialize_score(AccountId account, const BotScore& score) {
  nlohmann::ordered_json doc;
  doc["account_id"] = account;
  doc["friend"] = score.friend_score();
  doc["network"] = score.network_score();
  doc["temporal"] = score.temporal_score();
  return doc.dump();
}

// ---------------------------------------------------------------------------
// Temporal proxy

double temporal_score(std::span<const Timestamp> times, const CollectionWindow& window) {
  std::vector<Timestamp> inside;
  inside.reserve(times.size());
  for (Timestamp t : times) {
    if (t >= window.start && t <= window.end) inside.push_back(t);
  }
  if (inside.size() < 3) return 0.5;

  constexpr std::size_t kBins = 16;
  std::vector<double> log_gaps;
  log_gaps.reserve(inside.size() - 1);
  for (std::size_t i = 1; i < inside.size(); ++i) {
    auto gap = std::max<Timestamp>(inside[i] - inside[i - 1], 1);
    log_gaps.push_back(std::log2(static_cast<double>(gap)));
  }
  auto [lo_it, hi_it] = std::minmax_element(log_gaps.begin(), log_gaps.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  if (range <= 0.0) return 1.0;

  std::array<std::size_t, kBins> hist{};
  for (double x : log_gaps) {
    auto bin = static_cast<std::size_t>((x - lo) / range * static_cast<double>(kBins));
    ++hist[std::min(bin, kBins - 1)];
  }
  double entropy = 0.0;
  const double n = static_cast<double>(log_gaps.size());
  for (std::size_t c : hist) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / n;
    entropy -= p * std::log2(p);
  }
  return std::clamp(1.0 - entropy / std::log2(static_cast<double>(kBins)), 0.0, 1.0);
}

double temporal_score(const Timeline& timeline, const CollectionWindow& window) {
  std::vector<Timestamp> times;
  times.reserve(timeline.size());
  for (const auto& r : timeline) times.push_back(r.created_at);
  return temporal_score(times, window);
}

// ---------------------------------------------------------------------------
// Network proxy

std::vector<RetweetEvent> retweet_events(std::span<const TweetRecord> records) {
  std::vector<RetweetEvent> out;
  for (const auto& r : records) {
    if (r.retweet_of) out.push_back({r.author_id, r.retweet_of->author_id});
  }
  return out;
}

double network_score(AccountId account, std::span<const RetweetEvent> events) {
  std::size_t k = 0;
  std::set<AccountId> partners;
  for (const auto& e : events) {
    if (e.retweeter == account) {
      ++k;
      partners.insert(e.author);
    } else if (e.author == account) {
      ++k;
      partners.insert(e.retweeter);
    }
  }
  if (k == 0) return 0.5;
  return 1.0 - static_cast<double>(partners.size()) / static_cast<double>(k);
}

std::map<AccountId, double> network_scores(std::span<const RetweetEvent> events) {
  struct Tally {
    std::size_t interactions = 0;
    std::set<AccountId> partners;
  };
  std::map<AccountId, Tally> tallies;
  for (const auto& e : events) {
    auto& a = tallies[e.retweeter];
    ++a.interactions;
    a.partners.insert(e.author);
    if (e.author != e.retweeter) {
      auto& b = tallies[e.author];
      ++b.interactions;
      b.partners.insert(e.retweeter);
    }
  }
  std::map<AccountId, double> out;
  for (const auto& [id, t] : tallies) {
    out.emplace(id, 1.0 - static_cast<double>(t.partners.size()) /
                              static_cast<double>(t.interactions));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Friend proxy

double tweet_rate(const AccountProfile& profile, Timestamp reference_time) {
  double age_days = static_cast<double>(reference_time - profile.account_created_at) / 86400.0;
  return static_cast<double>(profile.statuses_count) / std::max(1.0, age_days);
}

double follower_ratio(const AccountProfile& profile) {
  return std::log((static_cast<double>(profile.followers_count) + 1.0) /
                  (static_cast<double>(profile.friends_count) + 1.0));
}

FriendStats FriendStats::compute(const AccountMap& accounts, Timestamp reference_time) {
  FriendStats s;
  s.reference_time = reference_time;
  if (accounts.empty()) return s;
  const double n = static_cast<double>(accounts.size());
  for (const auto& [id, p] : accounts) {
    s.rate_mean += tweet_rate(p, reference_time);
    s.ratio_mean += follower_ratio(p);
  }
  s.rate_mean /= n;
  s.ratio_mean /= n;
  for (const auto& [id, p] : accounts) {
    double dr = tweet_rate(p, reference_time) - s.rate_mean;
    double dq = follower_ratio(p) - s.ratio_mean;
    s.rate_sd += dr * dr;
    s.ratio_sd += dq * dq;
  }
  s.rate_sd = std::sqrt(s.rate_sd / n);
  s.ratio_sd = std::sqrt(s.ratio_sd / n);
  return s;
}

double friend_score(const AccountProfile& profile, const FriendStats& stats) {
  auto z = [](double x, double mean, double sd) {
    return negligible_spread(sd, mean) ? 0.0 : (x - mean) / sd;
  };
  double zr = z(tweet_rate(profile, stats.reference_time), stats.rate_mean, stats.rate_sd);
  double zq = z(follower_ratio(profile), stats.ratio_mean, stats.ratio_sd);
  return 1.0 / (1.0 + std::exp(-(zr - zq)));
}

ScoreMap compute_proxy_scores(std::span<const TweetRecord> records, const AccountMap& accounts,
                              const CollectionWindow& window) {
  auto timelines = group_by_account(records);
  auto events = retweet_events(records);
  auto net = network_scores(events);
  auto stats = FriendStats::compute(accounts, window.end);

  ScoreMap out;
  for (const auto& [id, profile] : accounts) {
    auto tl = timelines.find(id);
    double temporal = tl == timelines.end() ? 0.5 : temporal_score(tl->second, window);
    auto ns = net.find(id);
    double network = ns == net.end() ? 0.5 : ns->second;
    out.emplace(id, BotScore(friend_score(profile, stats), network, temporal));
  }
  return out;
}

}  // namespace botlens
