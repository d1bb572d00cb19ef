// SPDX-License-Identifier: Apache-2.0
#pragma once

// Retweet network: graph construction, betweenness and degree tables,
// cohort-pair retweet tallies and URL counts.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "botlens/corpus.hpp"
#include "botlens/types.hpp"

namespace botlens {

struct RetweetEdge {
  AccountId retweeter = 0;
  AccountId author = 0;
  TweetId tweet_id = 0;  // the retweet record
  Timestamp created_at = 0;
};

/// Directed multigraph retweeter -> original author.
class RetweetGraph {
 public:
  using Pair = std::pair<AccountId, AccountId>;  // (retweeter, author)

  void add_node(AccountId id, Label label);
  void add_edge(const RetweetEdge& edge);  // endpoints must already be nodes

  /// Edges whose (retweeter label, author label) match; nodes are the
  /// endpoints of the kept edges.
  RetweetGraph filtered(Label retweeter, Label author) const;

  const std::map<AccountId, Label>& nodes() const noexcept { return nodes_; }
  const std::vector<RetweetEdge>& edges() const noexcept { return edges_; }
  /// Deduplicated edges with their multiplicities, ordered by (retweeter, author).
  const std::map<Pair, std::size_t>& simple_view() const noexcept { return simple_; }

  std::size_t node_count() const noexcept { return nodes_.size(); }
  /// Nodes incident to at least one edge.
  std::size_t active_node_count() const;
  std::size_t multi_edge_count() const noexcept { return edges_.size(); }
  std::size_t simple_edge_count() const noexcept { return simple_.size(); }
  Label label(AccountId id) const;

  /// `retweeter_id,author_id,multiplicity`
  std::string edges_csv() const;
  /// `account_id,label`
  std::string nodes_csv() const;

 private:
  std::map<AccountId, Label> nodes_;
  std::vector<RetweetEdge> edges_;
  std::map<Pair, std::size_t> simple_;
};

/// One multi-edge per retweet record. Every record author is a node; original
/// authors that never tweet in the corpus are added as nodes too.
RetweetGraph build_retweet_network(std::span<const TweetRecord> records, const LabelMap& labels);

struct CentralityRow {
  AccountId account = 0;
  double value = 0.0;
  Label label = Label::Unknown;
};

/// Rows sorted by value descending, then account id ascending.
struct CentralityTable {
  std::vector<CentralityRow> rows;

  void sort();
  /// `account_id,value,label`
  std::string to_csv() const;
};

struct BetweennessOptions {
  bool normalized = true;  // divide by (n-1)(n-2)
  bool directed = true;    // false: symmetrised simple view, unordered pairs
  unsigned threads = 1;
};

/// Exact betweenness over the simple view with unit weights (Brandes
/// accumulation from every source). Normalized output needs n >= 3.
CentralityTable betweenness(const RetweetGraph& graph, const BetweennessOptions& options = {});

/// Per node: number of multi-edges that point at it (times retweeted).
CentralityTable degree_table(const RetweetGraph& graph);

struct RetweetTally {
  std::size_t hh = 0;  // human original, human retweeter
  std::size_t hb = 0;  // human original, bot retweeter
  std::size_t bh = 0;  // bot original, human retweeter
  std::size_t bb = 0;  // bot original, bot retweeter
  std::size_t missing = 0;

  std::size_t humans_retweeted() const noexcept { return hh + hb; }
  std::size_t bots_retweeted() const noexcept { return bh + bb; }
  std::size_t total() const noexcept { return hh + hb + bh + bb + missing; }
  friend bool operator==(const RetweetTally&, const RetweetTally&) = default;
};

enum class RetweetClass { HH, HB, BH, BB, Missing };
std::string_view to_string(RetweetClass c) noexcept;

/// Class of one retweet record: Missing when the original predates the window
/// or either endpoint is unlabelled, otherwise (author label, retweeter label).
RetweetClass classify_retweet(const TweetRecord& record, const LabelMap& labels,
                              const CollectionWindow& window);

RetweetTally classify_retweets(std::span<const TweetRecord> records, const LabelMap& labels,
                               const CollectionWindow& window);

/// Case-sensitive `http` substring test.
bool contains_url(std::string_view text) noexcept;

struct UrlCounts {
  std::size_t human_records = 0;
  std::size_t bot_records = 0;
  std::size_t human_embedded = 0;  // embedded original texts of retweets, by retweeter cohort
  std::size_t bot_embedded = 0;

  std::size_t human_total() const noexcept { return human_records + human_embedded; }
  std::size_t bot_total() const noexcept { return bot_records + bot_embedded; }
};

/// Cohort is the record author's label; Unknown authors are not counted.
UrlCounts url_counts(std::span<const TweetRecord> records, const LabelMap& labels,
                     bool scan_embedded);

}  // namespace botlens
