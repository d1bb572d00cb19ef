// SPDX-License-Identifier: Apache-2.0
#pragma once

// Spanish tweet text: normalization, negative-stem matching, lexicon
// sentiment (h_avg with neutral-band filtering) and log-odds word scores.

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "botlens/corpus.hpp"
#include "botlens/error.hpp"
#include "botlens/types.hpp"

namespace botlens {

/// Lowercase ASCII tokens; none contains whitespace or starts with `http`.
using TokenList = std::vector<std::string>;

/// 1. drop whitespace-delimited tokens starting with `http` (any case)
/// 2. fold Spanish accents, ñ, ü, ¿ and ¡ to ASCII; drop other non-ASCII
/// 3. lowercase  4. split on whitespace
/// 5. drop tokens that do not start with a letter a-z
TokenList normalize_text(std::string_view text);

// ---------------------------------------------------------------------------
// Negative-stem lexicon

struct NegativeStem {
  std::string stem;
  bool prefix_open = false;  // written with a trailing `*`
  friend bool operator==(const NegativeStem&, const NegativeStem&) = default;
};

enum class StemMatch {
  Prefix,         // every entry matches as a prefix
  ExactUnlessOpen // entries without `*` must equal the token
};

class NegativeLexicon {
 public:
  explicit NegativeLexicon(std::vector<NegativeStem> entries, StemMatch mode = StemMatch::Prefix);

  /// The 41 negative stems shipped with the library.
  static NegativeLexicon builtin(StemMatch mode = StemMatch::Prefix);
  /// One stem per line, optional trailing `*`; blank lines and `#` comments skipped.
  static NegativeLexicon parse(std::istream& input, StemMatch mode = StemMatch::Prefix);
  static NegativeLexicon load(const std::filesystem::path& path, StemMatch mode = StemMatch::Prefix);

  /// Single-pass test against the stems sharing the token's first letter.
  bool matches(std::string_view token) const;
  const std::vector<NegativeStem>& entries() const noexcept { return entries_; }
  StemMatch mode() const noexcept { return mode_; }

 private:
  std::vector<NegativeStem> entries_;
  StemMatch mode_;
  std::array<std::vector<std::size_t>, 26> by_letter_;
};

/// Number of tokens that match directly or after dropping their first
/// character (tokens of length >= 2). Each token counts at most once.
std::size_t match_negative(std::span<const std::string> tokens, const NegativeLexicon& lexicon);

struct NegativityCounts {
  std::size_t negative = 0;
  std::size_t non_negative = 0;
  std::size_t total() const noexcept { return negative + non_negative; }
};

/// Tweets split by author cohort and by original/retweet. A tweet is Negative
/// when its score (1 per matching token) is non-zero.
struct NegativityPartition {
  NegativityCounts human_original, human_retweet, bot_original, bot_retweet;

  NegativityCounts human() const noexcept;
  NegativityCounts bot() const noexcept;
  NegativityCounts all() const noexcept;
};

NegativityPartition negativity_partition(std::span<const TweetRecord> records,
                                         const LabelMap& labels, const NegativeLexicon& lexicon);

// ---------------------------------------------------------------------------
// Lexicon sentiment

/// Word -> happiness score in [1,9]. Words are stored in normalized form.
class SentimentLexicon {
 public:
  SentimentLexicon() = default;
  explicit SentimentLexicon(std::map<std::string, double> scores);

  /// TSV `word<TAB>h_score`; a header line whose score column is not numeric
  /// is skipped. Words are normalized; the first entry wins on collisions.
  static SentimentLexicon parse(std::istream& input, std::vector<Diagnostic>* diagnostics = nullptr);
  static SentimentLexicon load(const std::filesystem::path& path,
                               std::vector<Diagnostic>* diagnostics = nullptr);

  std::optional<double> score(std::string_view word) const;
  std::size_t size() const noexcept { return scores_.size(); }
  const std::map<std::string, double, std::less<>>& scores() const noexcept { return scores_; }

 private:
  std::map<std::string, double, std::less<>> scores_;
};

using WordCounts = std::map<std::string, std::size_t>;

inline constexpr double kNeutralScore = 5.0;

/// Frequency-weighted mean score of lexicon words with |h - 5| >= delta_h;
/// nullopt when no word survives. Negative delta_h is a domain error.
std::optional<double> labmt_sentiment(const WordCounts& counts, const SentimentLexicon& lexicon,
                                      double delta_h);

struct CohortWordCounts {
  WordCounts human;
  WordCounts bot;
  std::size_t human_total = 0;
  std::size_t bot_total = 0;
};

struct CohortCountOptions {
  bool include_retweets = true;
  bool include_embedded_text = false;  // also count retweets' embedded original text
};

/// Normalized-token counts per author cohort (Unknown authors skipped).
CohortWordCounts cohort_word_counts(std::span<const TweetRecord> records, const LabelMap& labels,
                                    const CohortCountOptions& options = {});

/// 0, step, 2 step, ... up to max (inclusive), rounded to 12 decimals.
std::vector<double> delta_grid(double max = 3.0, double step = 0.1);

struct SweepRow {
  double delta_h = 0.0;
  std::optional<double> human;
  std::optional<double> bot;
};

std::vector<SweepRow> sentiment_sweep(const CohortWordCounts& counts,
                                      const SentimentLexicon& lexicon,
                                      std::span<const double> deltas);
std::vector<SweepRow> sentiment_sweep(std::span<const TweetRecord> records, const LabelMap& labels,
                                      const SentimentLexicon& lexicon,
                                      std::span<const double> deltas, bool include_retweets);

/// `delta_h,h_human,h_bot`; undefined cells are empty.
std::string sweep_csv(std::span<const SweepRow> rows);

// ---------------------------------------------------------------------------
// Log-odds

struct LogOddsRow {
  std::string word;
  double score = 0.0;  // positive: bot-leaning
  std::size_t count_bot = 0;
  std::size_t count_human = 0;
};

/// score(w) = ln((c_bot+1)/(N_bot+V)) - ln((c_human+1)/(N_human+V)), sorted
/// by score descending then word. Either cohort empty is a domain error.
std::vector<LogOddsRow> log_odds(const CohortWordCounts& counts);

/// `word,score,count_bot,count_human`
std::string log_odds_csv(std::span<const LogOddsRow> rows);

}  // namespace botlens
