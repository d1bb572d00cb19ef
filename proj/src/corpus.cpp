// SPDX-License-Identifier: Apache-2.0
#include "botlens/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <tuple>
#include <unordered_set>
#include <variant>

#include <fmt/format.h>
#include <json.hpp>

#include "botlens/parallel.hpp"
#include "botlens/timeutil.hpp"

namespace botlens {
namespace {

using json = nlohmann::json;

constexpr std::string_view kModule = "corpus";
constexpr std::size_t kLinesPerBlock = 4096;

struct LineError {
  std::string message;
};

struct ParsedLine {
  TweetRecord record;
  AccountProfile author;
};

using LineResult = std::variant<ParsedLine, LineError>;

// Twitter ids arrive as JSON numbers or decimal strings.
std::optional<std::uint64_t> as_u64(const json& value) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer()) {
    auto v = value.get<std::int64_t>();
    if (v >= 0) return static_cast<std::uint64_t>(v);
    return std::nullopt;
  }
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc{} && ptr == s.data() + s.size() && !s.empty()) return out;
  }
  return std::nullopt;
}

const json* member(const json& object, std::string_view key) {
  if (!object.is_object()) return nullptr;
  auto it = object.find(key);
  return it == object.end() ? nullptr : &*it;
}

template <typename T>
bool require(const json& object, std::string_view key, T& out, std::string& why);

template <>
bool require<std::uint64_t>(const json& object, std::string_view key, std::uint64_t& out,
                            std::string& why) {
  const json* v = member(object, key);
  auto parsed = v ? as_u64(*v) : std::nullopt;
  if (!parsed) {
    why = fmt::format("missing or invalid `{}`", key);
    return false;
  }
  out = *parsed;
  return true;
}

bool require_time(const json& object, std::string_view key, Timestamp& out, std::string& why) {
  const json* v = member(object, key);
  std::optional<Timestamp> parsed;
  if (v && v->is_string()) parsed = parse_timestamp(v->get_ref<const std::string&>());
  if (!parsed) {
    why = fmt::format("missing or unparseable timestamp `{}`", key);
    return false;
  }
  out = *parsed;
  return true;
}

LineResult parse_line(std::string_view line) {
  json doc = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) return LineError{"invalid JSON"};
  if (!doc.is_object()) return LineError{"record is not a JSON object"};

  ParsedLine out;
  std::string why;
  auto& rec = out.record;
  auto& author = out.author;

  if (!require(doc, "id", rec.tweet_id, why) || !require_time(doc, "created_at", rec.created_at, why)) {
    return LineError{why};
  }
  const json* text = member(doc, "text");
  if (!text || !text->is_string()) return LineError{"missing or invalid `text`"};
  rec.text = text->get<std::string>();

  const json* user = member(doc, "user");
  if (!user || !user->is_object()) return LineError{"missing `user` object"};
  if (!require(*user, "id", author.account_id, why) ||
      !require(*user, "followers_count", author.followers_count, why) ||
      !require(*user, "friends_count", author.friends_count, why) ||
      !require(*user, "statuses_count", author.statuses_count, why) ||
      !require_time(*user, "created_at", author.account_created_at, why)) {
    return LineError{"user: " + why};
  }
  rec.author_id = author.account_id;

  if (const json* rt = member(doc, "retweeted_status"); rt && !rt->is_null()) {
    if (!rt->is_object()) return LineError{"`retweeted_status` is not an object"};
    OriginalRef orig;
    const json* rt_user = member(*rt, "user");
    if (!require(*rt, "id", orig.tweet_id, why) ||
        !require_time(*rt, "created_at", orig.created_at, why)) {
      return LineError{"retweeted_status: " + why};
    }
    if (!rt_user || !require(*rt_user, "id", orig.author_id, why)) {
      return LineError{"retweeted_status: missing user.id"};
    }
    if (const json* t = member(*rt, "text"); t && t->is_string()) orig.text = t->get<std::string>();
    if (orig.created_at > rec.created_at) {
      return LineError{"retweeted original is newer than the retweet"};
    }
    rec.retweet_of = std::move(orig);
  }
  return out;
}

// The profile snapshot kept per account comes from its latest record, which
// makes the account map independent of input order.
bool newer(const TweetRecord& a, const TweetRecord& b) {
  return std::tie(a.created_at, a.tweet_id) > std::tie(b.created_at, b.tweet_id);
}

}  // namespace

ParsedCorpus parse_corpus(std::istream& input, const ParseOptions& options) {
  if (!input.good()) throw Error(ErrorKind::Io, kModule, "input stream is not readable");

  ParsedCorpus out;
  std::vector<std::string> lines;
  std::vector<std::size_t> line_numbers;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line.size() > options.max_line_bytes) {
      out.diagnostics.push_back(
          {line_no, fmt::format("line exceeds maximum length ({} > {} bytes)", line.size(),
                                options.max_line_bytes)});
      ++out.stats.rejected;
      continue;
    }
    lines.push_back(std::move(line));
    line_numbers.push_back(line_no);
  }
  if (input.bad()) throw Error(ErrorKind::Io, kModule, "read failure on input stream");

  std::vector<LineResult> parsed(lines.size());
  const std::size_t blocks = (lines.size() + kLinesPerBlock - 1) / kLinesPerBlock;
  parallel_for(blocks, options.threads, [&](std::size_t b) {
    const std::size_t end = std::min(lines.size(), (b + 1) * kLinesPerBlock);
    for (std::size_t i = b * kLinesPerBlock; i < end; ++i) parsed[i] = parse_line(lines[i]);
  });

  std::unordered_set<TweetId> seen;
  std::map<AccountId, std::size_t> latest;  // account -> index into out.records
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    if (auto* err = std::get_if<LineError>(&parsed[i])) {
      out.diagnostics.push_back({line_numbers[i], err->message});
      ++out.stats.rejected;
      continue;
    }
    auto& p = std::get<ParsedLine>(parsed[i]);
    if (options.window_end && p.record.created_at > *options.window_end) {
      out.diagnostics.push_back({line_numbers[i], "record created after the collection window"});
      ++out.stats.rejected;
      continue;
    }
    if (!seen.insert(p.record.tweet_id).second) {
      out.diagnostics.push_back(
          {line_numbers[i], fmt::format("duplicate tweet id {}", p.record.tweet_id)});
      ++out.stats.rejected;
      continue;
    }
    const std::size_t index = out.records.size();
    auto [it, inserted] = latest.try_emplace(p.author.account_id, index);
    if (inserted || newer(p.record, out.records[it->second])) {
      it->second = index;
      out.accounts.insert_or_assign(p.author.account_id, p.author);
    }
    if (p.record.is_retweet()) ++out.stats.retweets;
    out.records.push_back(std::move(p.record));
  }
  out.stats.tweets = out.records.size();
  out.stats.accounts = out.accounts.size();
  return out;
}

ParsedCorpus parse_corpus_file(const std::filesystem::path& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, kModule, fmt::format("cannot open `{}`", path.string()));
  return parse_corpus(in, options);
}

std::string serialize_record(const TweetRecord& record, const AccountProfile& author) {
  nlohmann::ordered_json doc;
  doc["id"] = record.tweet_id;
  doc["created_at"] = format_timestamp(record.created_at);
  doc["text"] = record.text;
  doc["user"] = {{"id", author.account_id},
                 {"followers_count", author.followers_count},
                 {"friends_count", author.friends_count},
                 {"statuses_count", author.statuses_count},
                 {"created_at", format_timestamp(author.account_created_at)}};
  if (record.retweet_of) {
    const auto& o = *record.retweet_of;
    nlohmann::ordered_json rt;
    rt["id"] = o.tweet_id;
    rt["created_at"] = format_timestamp(o.created_at);
    rt["user"] = {{"id", o.author_id}};
    if (o.text) rt["text"] = *o.text;
    doc["retweeted_status"] = std::move(rt);
  }
  return doc.dump();
}

CollectionWindow collection_window(std::span<const TweetRecord> records) {
  if (records.empty()) {
    throw Error(ErrorKind::Domain, kModule, "collection window of an empty record sequence");
  }
  auto [lo, hi] = std::minmax_element(
      records.begin(), records.end(),
      [](const TweetRecord& a, const TweetRecord& b) { return a.created_at < b.created_at; });
  CollectionWindow w{lo->created_at, hi->created_at};
  if (w.end == w.start) w.end = w.start + 1;
  return w;
}

std::map<AccountId, Timeline> group_by_account(std::span<const TweetRecord> records) {
  std::map<AccountId, Timeline> out;
  for (const auto& r : records) out[r.author_id].push_back(r);
  for (auto& [id, timeline] : out) {
    std::sort(timeline.begin(), timeline.end(), [](const TweetRecord& a, const TweetRecord& b) {
      return std::tie(a.created_at, a.tweet_id) < std::tie(b.created_at, b.tweet_id);
    });
  }
  return out;
}

std::size_t count_authored(std::span<const TweetRecord> records, const LabelMap& labels,
                           Label label) {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [&](const auto& r) {
    return label_of(labels, r.author_id) == label;
  }));
}

}  // namespace botlens
