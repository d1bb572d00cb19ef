// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "botlens/lexsent.hpp"
#include "csv_util.hpp"

namespace botlens {
namespace {

constexpr std::string_view kModule = "lexsent";

// Grid values such as 0.3 are not exact in binary; the band test is widened by
// this much so a word sitting exactly on the boundary survives as intended.
constexpr double kBandSlack = 1e-9;

void add_tokens(WordCounts& counts, std::size_t& total, std::string_view text) {
  for (auto& t : normalize_text(text)) {
    ++counts[std::move(t)];
    ++total;
  }
}

}  // namespace

std::optional<double> labmt_sentiment(const WordCounts& counts, const SentimentLexicon& lexicon,
                                      double delta_h) {
  if (!(delta_h >= 0.0)) {
    throw Error(ErrorKind::Domain, kModule, fmt::format("delta_h must be >= 0, got {}", delta_h));
  }
  double weighted = 0.0;
  double total = 0.0;
  for (const auto& [word, count] : counts) {
    auto h = lexicon.score(word);
    if (!h || std::abs(*h - kNeutralScore) < delta_h - kBandSlack) continue;
    weighted += *h * static_cast<double>(count);
    total += static_cast<double>(count);
  }
  if (total == 0.0) return std::nullopt;
  return weighted / total;
}

CohortWordCounts cohort_word_counts(std::span<const TweetRecord> records, const LabelMap& labels,
                                    const CohortCountOptions& options) {
  CohortWordCounts c;
  for (const auto& r : records) {
    Label cohort = label_of(labels, r.author_id);
    if (cohort == Label::Unknown) continue;
    if (r.is_retweet() && !options.include_retweets) continue;
    auto& counts = cohort == Label::Human ? c.human : c.bot;
    auto& total = cohort == Label::Human ? c.human_total : c.bot_total;
    add_tokens(counts, total, r.text);
    if (options.include_embedded_text && r.retweet_of && r.retweet_of->text) {
      add_tokens(counts, total, *r.retweet_of->text);
    }
  }
  return c;
}

std::vector<double> delta_grid(double max, double step) {
  if (!(step > 0.0) || !(max >= 0.0) || !std::isfinite(max)) {
    throw Error(ErrorKind::Config, kModule,
                fmt::format("invalid delta_h grid (max {}, step {})", max, step));
  }
  std::vector<double> grid;
  const auto steps = static_cast<std::size_t>(std::floor(max / step + 1e-9));
  for (std::size_t i = 0; i <= steps; ++i) {
    grid.push_back(std::round(static_cast<double>(i) * step * 1e12) / 1e12);
  }
  return grid;
}

std::vector<SweepRow> sentiment_sweep(const CohortWordCounts& counts,
                                      const SentimentLexicon& lexicon,
                                      std::span<const double> deltas) {
  std::vector<SweepRow> rows;
  rows.reserve(deltas.size());
  for (double d : deltas) {
    rows.push_back({d, labmt_sentiment(counts.human, lexicon, d),
                    labmt_sentiment(counts.bot, lexicon, d)});
  }
  return rows;
}

std::vector<SweepRow> sentiment_sweep(std::span<const TweetRecord> records, const LabelMap& labels,
                                      const SentimentLexicon& lexicon,
                                      std::span<const double> deltas, bool include_retweets) {
  CohortCountOptions opts;
  opts.include_retweets = include_retweets;
  return sentiment_sweep(cohort_word_counts(records, labels, opts), lexicon, deltas);
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "delta_h,h_human,h_bot\n";
  auto cell = [](const std::optional<double>& v) { return v ? fmt::format("{}", *v) : std::string(); };
  for (const auto& r : rows) {
    fmt::format_to(std::back_inserter(out), "{},{},{}\n", r.delta_h, cell(r.human), cell(r.bot));
  }
  return out;
}

std::vector<LogOddsRow> log_odds(const CohortWordCounts& counts) {
  if (counts.bot_total == 0 || counts.human_total == 0) {
    throw Error(ErrorKind::Domain, kModule, "log-odds needs at least one token in each cohort");
  }
  std::set<std::string_view> vocab;
  for (const auto& [w, c] : counts.bot) vocab.insert(w);
  for (const auto& [w, c] : counts.human) vocab.insert(w);
  const double v = static_cast<double>(vocab.size());
  const double nb = static_cast<double>(counts.bot_total) + v;
  const double nh = static_cast<double>(counts.human_total) + v;

  std::vector<LogOddsRow> rows;
  rows.reserve(vocab.size());
  for (auto w : vocab) {
    auto find = [&](const WordCounts& m) {
      auto it = m.find(std::string(w));
      return it == m.end() ? std::size_t{0} : it->second;
    };
    LogOddsRow row{std::string(w), 0.0, find(counts.bot), find(counts.human)};
    // Difference of logs rather than log of a ratio: swapping cohorts then
    // negates the score exactly.
    row.score = std::log((static_cast<double>(row.count_bot) + 1.0) / nb) -
                std::log((static_cast<double>(row.count_human) + 1.0) / nh);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const LogOddsRow& a, const LogOddsRow& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.word < b.word;
  });
  return rows;
}

std::string log_odds_csv(std::span<const LogOddsRow> rows) {
  std::string out = "word,score,count_bot,count_human\n";
  for (const auto& r : rows) {
    fmt::format_to(std::back_inserter(out), "{},{},{},{}\n", detail::csv_field(r.word), r.score, r.count_bot,
                   r.count_human);
  }
  return out;
}

}  // namespace botlens
