// SPDX-License-Identifier: Apache-2.0
#pragma once

// Corpus ingestion: line-delimited JSON tweet records, account profiles,
// collection window and per-account timelines.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "botlens/error.hpp"
#include "botlens/types.hpp"

namespace botlens {

/// Original tweet information stored inside a retweet.
struct OriginalRef {
  TweetId tweet_id = 0;
  AccountId author_id = 0;
  Timestamp created_at = 0;
  std::optional<std::string> text;

  friend bool operator==(const OriginalRef&, const OriginalRef&) = default;
};

struct TweetRecord {
  TweetId tweet_id = 0;
  AccountId author_id = 0;
  Timestamp created_at = 0;
  std::string text;
  std::optional<OriginalRef> retweet_of;  // present iff the record is a retweet

  bool is_retweet() const noexcept { return retweet_of.has_value(); }
  friend bool operator==(const TweetRecord&, const TweetRecord&) = default;
};

struct AccountProfile {
  AccountId account_id = 0;
  std::uint64_t followers_count = 0;
  std::uint64_t friends_count = 0;
  std::uint64_t statuses_count = 0;
  Timestamp account_created_at = 0;
  Label label = Label::Unknown;
  std::optional<BotScore> sub_scores;

  friend bool operator==(const AccountProfile&, const AccountProfile&) = default;
};

using AccountMap = std::map<AccountId, AccountProfile>;

struct CorpusStats {
  std::size_t tweets = 0;
  std::size_t retweets = 0;
  std::size_t accounts = 0;
  std::size_t rejected = 0;  // malformed, oversized, duplicate or out-of-window lines
  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

struct ParseOptions {
  std::size_t max_line_bytes = 1 << 20;
  /// Records created after this instant are rejected.
  std::optional<Timestamp> window_end;
  unsigned threads = 1;
};

struct ParsedCorpus {
  std::vector<TweetRecord> records;  // input order
  AccountMap accounts;
  CorpusStats stats;
  std::vector<Diagnostic> diagnostics;
};

/// Reads one record per non-empty line. Bad lines are skipped and reported in
/// `diagnostics`; a stream that cannot be read throws Error(Io).
ParsedCorpus parse_corpus(std::istream& input, const ParseOptions& options = {});
ParsedCorpus parse_corpus_file(const std::filesystem::path& path,
                               const ParseOptions& options = {});

/// One JSON line in the input format; parse_corpus reads it back unchanged.
std::string serialize_record(const TweetRecord& record, const AccountProfile& author);

/// [min created_at, max created_at] over the records (embedded originals are
/// ignored). A single-instant window is widened to [t, t+1].
CollectionWindow collection_window(std::span<const TweetRecord> records);

using Timeline = std::vector<TweetRecord>;

/// Per-account tweets sorted by (created_at, tweet_id).
std::map<AccountId, Timeline> group_by_account(std::span<const TweetRecord> records);

/// Number of tweets authored by accounts with the given label.
std::size_t count_authored(std::span<const TweetRecord> records, const LabelMap& labels,
                           Label label);

}  // namespace botlens
