// SPDX-License-Identifier: Apache-2.0
#include "botlens/rtnet.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

namespace botlens {
namespace {
constexpr std::string_view kModule = "rtnet";
}

void RetweetGraph::add_node(AccountId id, Label label) {
  auto [it, inserted] = nodes_.try_emplace(id, label);
  if (!inserted && it->second == Label::Unknown) it->second = label;
}

void RetweetGraph::add_edge(const RetweetEdge& edge) {
  if (!nodes_.contains(edge.retweeter) || !nodes_.contains(edge.author)) {
    throw Error(ErrorKind::Internal, kModule,
                fmt::format("edge {} -> {} references a missing node", edge.retweeter, edge.author));
  }
  edges_.push_back(edge);
  ++simple_[{edge.retweeter, edge.author}];
}

Label RetweetGraph::label(AccountId id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? Label::Unknown : it->second;
}

std::size_t RetweetGraph::active_node_count() const {
  std::set<AccountId> active;
  for (const auto& [pair, m] : simple_) {
    active.insert(pair.first);
    active.insert(pair.second);
  }
  return active.size();
}

RetweetGraph RetweetGraph::filtered(Label retweeter, Label author) const {
  RetweetGraph out;
  for (const auto& e : edges_) {
    Label lr = label(e.retweeter);
    Label la = label(e.author);
    if (lr != retweeter || la != author) continue;
    out.add_node(e.retweeter, lr);
    out.add_node(e.author, la);
    out.add_edge(e);
  }
  return out;
}

std::string RetweetGraph::edges_csv() const {
  std::string out = "retweeter_id,author_id,multiplicity\n";
  for (const auto& [pair, m] : simple_) {
    fmt::format_to(std::back_inserter(out), "{},{},{}\n", pair.first, pair.second, m);
  }
  return out;
}

std::string RetweetGraph::nodes_csv() const {
  std::string out = "account_id,label\n";
  for (const auto& [id, label] : nodes_) {
    fmt::format_to(std::back_inserter(out), "{},{}\n", id, to_string(label));
  }
  return out;
}

RetweetGraph build_retweet_network(std::span<const TweetRecord> records, const LabelMap& labels) {
  RetweetGraph g;
  for (const auto& r : records) {
    g.add_node(r.author_id, label_of(labels, r.author_id));
    if (r.retweet_of) g.add_node(r.retweet_of->author_id, label_of(labels, r.retweet_of->author_id));
  }
  for (const auto& r : records) {
    if (r.retweet_of) g.add_edge({r.author_id, r.retweet_of->author_id, r.tweet_id, r.created_at});
  }
  return g;
}

void CentralityTable::sort() {
  std::sort(rows.begin(), rows.end(), [](const CentralityRow& a, const CentralityRow& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.account < b.account;
  });
}

std::string CentralityTable::to_csv() const {
  std::string out = "account_id,value,label\n";
  for (const auto& r : rows) {
    fmt::format_to(std::back_inserter(out), "{},{},{}\n", r.account, r.value, to_string(r.label));
  }
  return out;
}

CentralityTable degree_table(const RetweetGraph& graph) {
  std::map<AccountId, std::size_t> received;
  for (const auto& [id, label] : graph.nodes()) received[id] = 0;
  for (const auto& e : graph.edges()) ++received[e.author];
  CentralityTable t;
  t.rows.reserve(received.size());
  for (const auto& [id, count] : received) {
    t.rows.push_back({id, static_cast<double>(count), graph.label(id)});
  }
  t.sort();
  return t;
}

std::string_view to_string(RetweetClass c) noexcept {
  switch (c) {
    case RetweetClass::HH: return "H-H";
    case RetweetClass::HB: return "H-B";
    case RetweetClass::BH: return "B-H";
    case RetweetClass::BB: return "B-B";
    case RetweetClass::Missing: return "missing";
  }
  return "missing";
}

RetweetClass classify_retweet(const TweetRecord& record, const LabelMap& labels,
                              const CollectionWindow& window) {
  const auto& orig = *record.retweet_of;
  Label author = label_of(labels, orig.author_id);
  Label retweeter = label_of(labels, record.author_id);
  if (orig.created_at < window.start || author == Label::Unknown || retweeter == Label::Unknown) {
    return RetweetClass::Missing;
  }
  if (author == Label::Human) return retweeter == Label::Human ? RetweetClass::HH : RetweetClass::HB;
  return retweeter == Label::Human ? RetweetClass::BH : RetweetClass::BB;
}

RetweetTally classify_retweets(std::span<const TweetRecord> records, const LabelMap& labels,
                               const CollectionWindow& window) {
  RetweetTally t;
  for (const auto& r : records) {
    if (!r.retweet_of) continue;
    switch (classify_retweet(r, labels, window)) {
      case RetweetClass::HH: ++t.hh; break;
      case RetweetClass::HB: ++t.hb; break;
      case RetweetClass::BH: ++t.bh; break;
      case RetweetClass::BB: ++t.bb; break;
      case RetweetClass::Missing: ++t.missing; break;
    }
  }
  return t;
}

bool contains_url(std::string_view text) noexcept {
  return text.find("http") != std::string_view::npos;
}

UrlCounts url_counts(std::span<const TweetRecord> records, const LabelMap& labels,
                     bool scan_embedded) {
  UrlCounts c;
  for (const auto& r : records) {
    Label cohort = label_of(labels, r.author_id);
    if (cohort == Label::Unknown) continue;
    const bool human = cohort == Label::Human;
    if (contains_url(r.text)) ++(human ? c.human_records : c.bot_records);
    if (scan_embedded && r.retweet_of && r.retweet_of->text && contains_url(*r.retweet_of->text)) {
      ++(human ? c.human_embedded : c.bot_embedded);
    }
  }
  return c;
}

}  // namespace botlens
