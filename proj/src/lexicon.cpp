// SPDX-License-Identifier: Apache-2.0
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include <fmt/format.h>

#include "botlens/lexsent.hpp"

namespace botlens {
namespace {

constexpr std::string_view kModule = "lexsent";

constexpr std::string_view kBuiltinStems[] = {
    "arma",      "culpable",   "jodid*",    "sanguinari*", "asesin*",    "delincuen*",
    "levanton",  "secuestro",  "asesinat*", "dispara",     "maltrat*",   "tortura",
    "bala",      "disparos",   "masacre",   "violacion",   "balazo",     "ejecucion",
    "matanza",   "violenta",   "brutal",    "ejecut*",     "matar",      "cartel",
    "exterminio", "mentir",    "castigo",   "fals*",       "muerte",     "corrupcion",
    "genocidio", "pistola",    "corrupt",   "guerra",      "represion",  "crimen",
    "incendia",  "represiv*",  "criminal",  "jode*",       "sangriento",
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

NegativeStem parse_stem(std::string_view text, std::size_t line) {
  NegativeStem s;
  if (text.ends_with('*')) {
    s.prefix_open = true;
    text.remove_suffix(1);
  }
  if (text.empty()) {
    throw Error(ErrorKind::Domain, kModule, fmt::format("line {}: empty stem", line));
  }
  for (char c : text) {
    if (c < 'a' || c > 'z') {
      throw Error(ErrorKind::Domain, kModule,
                  fmt::format("line {}: stem '{}' is not lowercase a-z", line, text));
    }
  }
  s.stem = std::string(text);
  return s;
}

}  // namespace

NegativeLexicon::NegativeLexicon(std::vector<NegativeStem> entries, StemMatch mode)
    : entries_(std::move(entries)), mode_(mode) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& s = entries_[i].stem;
    if (s.empty() || s[0] < 'a' || s[0] > 'z') {
      throw Error(ErrorKind::Domain, kModule, fmt::format("invalid stem '{}'", s));
    }
    by_letter_[static_cast<std::size_t>(s[0] - 'a')].push_back(i);
  }
}

NegativeLexicon NegativeLexicon::builtin(StemMatch mode) {
  std::vector<NegativeStem> entries;
  std::size_t line = 0;
  for (auto s : kBuiltinStems) entries.push_back(parse_stem(s, ++line));
  return NegativeLexicon(std::move(entries), mode);
}

NegativeLexicon NegativeLexicon::parse(std::istream& input, StemMatch mode) {
  std::vector<NegativeStem> entries;
  std::string line;
  std::size_t n = 0;
  while (std::getline(input, line)) {
    ++n;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    entries.push_back(parse_stem(t, n));
  }
  if (input.bad()) throw Error(ErrorKind::Io, kModule, "failed reading negative lexicon");
  return NegativeLexicon(std::move(entries), mode);
}

NegativeLexicon NegativeLexicon::load(const std::filesystem::path& path, StemMatch mode) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, kModule, fmt::format("cannot open {}", path.string()));
  return parse(in, mode);
}

bool NegativeLexicon::matches(std::string_view token) const {
  if (token.empty() || token[0] < 'a' || token[0] > 'z') return false;
  for (std::size_t i : by_letter_[static_cast<std::size_t>(token[0] - 'a')]) {
    const auto& e = entries_[i];
    if (mode_ == StemMatch::ExactUnlessOpen && !e.prefix_open) {
      if (token == e.stem) return true;
    } else if (token.starts_with(e.stem)) {
      return true;
    }
  }
  return false;
}

std::size_t match_negative(std::span<const std::string> tokens, const NegativeLexicon& lexicon) {
  std::size_t count = 0;
  for (const auto& t : tokens) {
    std::string_view v(t);
    if (lexicon.matches(v) || (v.size() >= 2 && lexicon.matches(v.substr(1)))) ++count;
  }
  return count;
}

namespace {
NegativityCounts operator+(NegativityCounts a, const NegativityCounts& b) {
  a.negative += b.negative;
  a.non_negative += b.non_negative;
  return a;
}
}  // namespace

NegativityCounts NegativityPartition::human() const noexcept { return human_original + human_retweet; }
NegativityCounts NegativityPartition::bot() const noexcept { return bot_original + bot_retweet; }
NegativityCounts NegativityPartition::all() const noexcept { return human() + bot(); }

NegativityPartition negativity_partition(std::span<const TweetRecord> records,
                                         const LabelMap& labels, const NegativeLexicon& lexicon) {
  NegativityPartition p;
  for (const auto& r : records) {
    Label cohort = label_of(labels, r.author_id);
    if (cohort == Label::Unknown) continue;
    NegativityCounts& cell = cohort == Label::Human
                                 ? (r.is_retweet() ? p.human_retweet : p.human_original)
                                 : (r.is_retweet() ? p.bot_retweet : p.bot_original);
    auto tokens = normalize_text(r.text);
    ++(match_negative(tokens, lexicon) > 0 ? cell.negative : cell.non_negative);
  }
  return p;
}

// ---------------------------------------------------------------------------

SentimentLexicon::SentimentLexicon(std::map<std::string, double> scores) {
  for (auto& [word, h] : scores) {
    if (!std::isfinite(h) || h < 1.0 || h > 9.0) {
      throw Error(ErrorKind::Domain, kModule,
                  fmt::format("score {} for '{}' outside [1,9]", h, word));
    }
    scores_.emplace(word, h);
  }
}

SentimentLexicon SentimentLexicon::parse(std::istream& input, std::vector<Diagnostic>* diagnostics) {
  SentimentLexicon lex;
  std::string line;
  std::size_t n = 0;
  auto note = [&](std::string msg) {
    if (diagnostics) diagnostics->push_back({n, std::move(msg)});
  };
  while (std::getline(input, line)) {
    ++n;
    std::string_view t = line;
    if (!t.empty() && t.back() == '\r') t.remove_suffix(1);
    if (trim(t).empty() || trim(t).front() == '#') continue;
    auto tab = t.find('\t');
    if (tab == std::string_view::npos) {
      note("missing tab separator");
      continue;
    }
    auto word_text = t.substr(0, tab);
    auto score_text = trim(t.substr(tab + 1));
    if (auto next = score_text.find('\t'); next != std::string_view::npos) {
      score_text = trim(score_text.substr(0, next));
    }
    double h = 0.0;
    auto [ptr, ec] = std::from_chars(score_text.data(), score_text.data() + score_text.size(), h);
    if (ec != std::errc() || ptr != score_text.data() + score_text.size()) {
      if (lex.scores_.empty() && n == 1) continue;  // header
      note(fmt::format("unparseable score '{}'", score_text));
      continue;
    }
    if (!std::isfinite(h) || h < 1.0 || h > 9.0) {
      throw Error(ErrorKind::Domain, kModule,
                  fmt::format("line {}: score {} outside [1,9]", n, h));
    }
    auto tokens = normalize_text(word_text);
    if (tokens.size() != 1) {
      note(fmt::format("'{}' does not normalize to a single token", word_text));
      continue;
    }
    if (!lex.scores_.emplace(tokens[0], h).second) {
      note(fmt::format("'{}' duplicates an earlier entry after normalization", word_text));
    }
  }
  if (input.bad()) throw Error(ErrorKind::Io, kModule, "failed reading sentiment lexicon");
  return lex;
}

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& path,
                                        std::vector<Diagnostic>* diagnostics) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, kModule, fmt::format("cannot open {}", path.string()));
  return parse(in, diagnostics);
}

std::optional<double> SentimentLexicon::score(std::string_view word) const {
  auto it = scores_.find(word);
  if (it == scores_.end()) return std::nullopt;
  return it->second;
}

}  // namespace botlens
