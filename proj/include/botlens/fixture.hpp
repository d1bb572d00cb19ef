// SPDX-License-Identifier: Apache-2.0
#pragma once

// Synthetic corpora whose aggregate tallies are fixed in advance, for
// end-to-end checks of the pipeline against published counts.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "botlens/botsense.hpp"
#include "botlens/corpus.hpp"

namespace botlens {

struct HubSpec {
  AccountId id = 0;
  Label label = Label::Human;
  std::size_t degree = 0;  // times retweeted
};

/// Shape of the retweet network. Missing retweets are split by the labels of
/// their endpoints because they still appear as edges.
struct NetworkTargets {
  std::size_t nodes = 0;  // accounts incident to at least one retweet edge
  std::size_t edges = 0;  // distinct (retweeter, author) pairs
  std::size_t hrb_nodes = 0, hrb_edges = 0;  // humans retweeting bots
  std::size_t brb_nodes = 0, brb_edges = 0;  // bots retweeting bots
  std::size_t missing_hh = 0, missing_hb = 0, missing_bh = 0, missing_bb = 0;

  // Layout: how many accounts of each cohort are retweeted, and how many bots
  // retweet humans.
  std::size_t human_authors = 0;
  std::size_t bot_authors = 0;
  std::size_t bot_retweeters = 0;

  std::vector<HubSpec> hubs;
  std::size_t degree_cap = 0;  // in-degree bound for non-hub authors
};

struct FixtureTargets {
  std::size_t tweets = 0;
  std::size_t accounts = 0;
  std::size_t bots = 0;
  std::size_t retweets = 0;
  std::size_t hh = 0, hb = 0, bh = 0, bb = 0, missing = 0;
  std::size_t missing_by_bots = 0;  // missing retweets whose retweeter is a bot
  std::size_t bot_authored = 0;
  std::size_t url_human = 0;  // record + embedded-text matches
  std::size_t url_bot = 0;
  std::optional<NetworkTargets> network;

  // Text pools; empty means the built-in Spanish pools. Phrases must not
  // contain links, or the URL counts would drift.
  std::vector<std::string> human_phrases;
  std::vector<std::string> bot_phrases;

  /// The counts reported for the #Tanhuato collection, network shape included.
  static FixtureTargets reference();
};

/// Throws Error(Domain) naming every violated identity.
void validate_targets(const FixtureTargets& targets);

struct Fixture {
  std::vector<TweetRecord> records;  // sorted by created_at
  AccountMap accounts;
  ScoreMap scores;
  LabelMap labels;  // the labels the scores are built to produce
};

/// Deterministic for a given (targets, seed).
Fixture generate_fixture(const FixtureTargets& targets, std::uint64_t seed);

/// Lexicon and stop words matching the fixture's phrase pools.
std::string fixture_sentiment_tsv();
std::string fixture_stopwords();

/// Writes corpus.jsonl, scores.jsonl, labmt.tsv and stopwords.txt; returns the
/// paths in that order.
std::vector<std::filesystem::path> write_fixture(const Fixture& fixture,
                                                 const std::filesystem::path& directory);

}  // namespace botlens
