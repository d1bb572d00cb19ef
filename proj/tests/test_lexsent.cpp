// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "botlens/lexsent.hpp"
#include "support.hpp"

using namespace botlens;
using testing::tweet;

namespace {

using Tokens = std::vector<std::string>;

std::string join(const TokenList& t) {
  std::string s;
  for (const auto& w : t) s += (s.empty() ? "" : " ") + w;
  return s;
}

// Stem table as printed, `*` kept.
const char* kTableStems[] = {
    "arma",      "culpable",   "jodid*",    "sanguinari*", "asesin*",    "delincuen*",
    "levanton",  "secuestro",  "asesinat*", "dispara",     "maltrat*",   "tortura",
    "bala",      "disparos",   "masacre",   "violacion",   "balazo",     "ejecucion",
    "matanza",   "violenta",   "brutal",    "ejecut*",     "matar",      "cartel",
    "exterminio", "mentir",    "castigo",   "fals*",       "muerte",     "corrupcion",
    "genocidio", "pistola",    "corrupt",   "guerra",      "represion",  "crimen",
    "incendia",  "represiv*",  "criminal",  "jode*",       "sangriento",
};

std::string bare(std::string s) {
  if (!s.empty() && s.back() == '*') s.pop_back();
  return s;
}

SentimentLexicon lexicon_of(std::initializer_list<std::pair<const char*, double>> words) {
  std::map<std::string, double> m;
  for (auto [w, h] : words) m[w] = h;
  return SentimentLexicon(m);
}

// Brute-force h_avg straight from the definition.
std::optional<double> h_avg(const WordCounts& counts, const SentimentLexicon& lex, double dh) {
  double num = 0, den = 0;
  for (const auto& [w, c] : counts) {
    auto h = lex.score(w);
    if (!h || std::abs(*h - 5.0) < dh - 1e-9) continue;
    num += *h * static_cast<double>(c);
    den += static_cast<double>(c);
  }
  if (den == 0) return std::nullopt;
  return num / den;
}

}  // namespace

TEST_CASE("normalize_text examples") {
  CHECK(normalize_text("Ejecución en Tanhuato https://t.co/abc") == Tokens{"ejecucion", "en", "tanhuato"});
  CHECK(normalize_text("¿VIOLACIÓN?").empty());
  CHECK(normalize_text("").empty());
  CHECK(normalize_text("Niño PEÑA Güero ÁÉÍÓÚ") == Tokens{"nino", "pena", "guero", "aeiou"});
  CHECK(normalize_text("HTTPS://X.Y hola 2016 #tag @user") == Tokens{"hola"});
  CHECK(normalize_text("dijo:http://x fin") == Tokens{"dijo:http://x", "fin"});
  CHECK(normalize_text("café☕ ok") == Tokens{"cafe", "ok"});
}

TEST_CASE("normalize_text is idempotent and yields plain ASCII tokens") {
  const std::vector<std::string> pieces = {"á", "É", "ñ", "¿", "¡", "ü", "Ω", "\xff", "a", "Z",
                                           "3", "#", " ", "\t", "http", "HTTP", "s://", "x", "."};
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  for (int rep = 0; rep < 500; ++rep) {
    std::string text;
    const int len = static_cast<int>(rng() % 30);
    for (int i = 0; i < len; ++i) text += pieces[pick(rng)];
    auto once = normalize_text(text);
    CHECK(normalize_text(join(once)) == once);
    for (const auto& t : once) {
      CHECK_FALSE(t.empty());
      CHECK(t.rfind("http", 0) != 0);
      CHECK((t[0] >= 'a' && t[0] <= 'z'));
      for (unsigned char c : t) {
        CHECK(c < 0x80);
        CHECK_FALSE(std::isspace(c));
      }
    }
  }
}

TEST_CASE("builtin lexicon is the table, verbatim") {
  auto lex = NegativeLexicon::builtin();
  REQUIRE(lex.entries().size() == std::size(kTableStems));
  for (std::size_t i = 0; i < std::size(kTableStems); ++i) {
    const std::string s = kTableStems[i];
    CHECK(lex.entries()[i].stem == bare(s));
    CHECK(lex.entries()[i].prefix_open == (s.back() == '*'));
  }
  auto file = NegativeLexicon::load(std::string(BOTLENS_DATA_DIR) + "/negative_stems.txt");
  CHECK(file.entries() == lex.entries());
}

TEST_CASE("every stem matches its own expansions") {
  for (auto mode : {StemMatch::Prefix, StemMatch::ExactUnlessOpen}) {
    auto lex = NegativeLexicon::builtin(mode);
    for (const char* raw : kTableStems) {
      const std::string s = raw;
      const std::string stem = bare(s);
      CAPTURE(stem);
      CHECK(lex.matches(stem));
      if (mode == StemMatch::Prefix || s.back() == '*') {
        for (const char* tail : {"a", "o", "os", "as", "ado", "ando"}) CHECK(lex.matches(stem + tail));
      }
    }
  }
}

TEST_CASE("match_negative examples") {
  auto lex = NegativeLexicon::builtin();
  CHECK(match_negative(Tokens{"asesinato"}, lex) == 1);
  CHECK(match_negative(Tokens{"xmatar"}, lex) == 1);
  CHECK(match_negative(Tokens{"amable", "feliz"}, lex) == 0);
  CHECK(match_negative(Tokens{"masacre", "amable", "matanza"}, lex) == 2);

  auto exact = NegativeLexicon::builtin(StemMatch::ExactUnlessOpen);
  CHECK(match_negative(Tokens{"armas"}, lex) == 1);
  CHECK(match_negative(Tokens{"armas"}, exact) == 0);
  CHECK(match_negative(Tokens{"arma"}, exact) == 1);
  CHECK(match_negative(Tokens{"asesinos"}, exact) == 1);
}

TEST_CASE("second pass recovers one leading corrupt character") {
  auto lex = NegativeLexicon::builtin();
  std::mt19937_64 rng(41);
  for (const char* raw : kTableStems) {
    const std::string word = bare(raw) + "es";
    for (int k = 0; k < 5; ++k) {
      const char c = static_cast<char>('a' + rng() % 26);
      CHECK(match_negative(Tokens{std::string(1, c) + word}, lex) == 1);
    }
  }
  // length-1 tokens get no second pass
  NegativeLexicon tiny({{"x", false}});
  CHECK(match_negative(Tokens{"ax"}, tiny) == 1);
  CHECK(match_negative(Tokens{"b"}, tiny) == 0);
}

TEST_CASE("match count is bounded and monotone in lexicon size") {
  auto full = NegativeLexicon::builtin().entries();
  std::mt19937_64 rng(100);
  const std::vector<std::string> words = {"masacre", "xmatar", "hola", "tortura", "brutales", "gente",
                                          "falsos", "bala", "pistolas", "nada", "zz", "a", "crimenes"};
  for (int rep = 0; rep < 100; ++rep) {
    Tokens tokens;
    const int n = static_cast<int>(rng() % 25);
    for (int i = 0; i < n; ++i) tokens.push_back(words[rng() % words.size()]);

    auto order = full;
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t prev = 0;
    for (std::size_t k = 0; k <= order.size(); k += 4) {
      NegativeLexicon part(std::vector<NegativeStem>(order.begin(), order.begin() + static_cast<long>(k)));
      const std::size_t c = match_negative(tokens, part);
      CHECK(c >= prev);
      CHECK(c <= tokens.size());
      prev = c;
    }
  }
}

TEST_CASE("lexicon parsing") {
  std::istringstream in("# comment\n\narma\nfals*\n");
  auto lex = NegativeLexicon::parse(in);
  CHECK(lex.entries().size() == 2);
  CHECK(lex.entries()[1] == NegativeStem{"fals", true});
  std::istringstream bad("Arma\n");
  CHECK_THROWS_AS(NegativeLexicon::parse(bad), Error);
}

TEST_CASE("negativity partition over 10 hand-built tweets") {
  LabelMap labels = {{1, Label::Human}, {2, Label::Bot}};
  std::vector<TweetRecord> recs = {
      tweet(1, 1, 0, "Masacre en Tanhuato"),     tweet(2, 1, 0, "tortura y muerte"),
      tweet(3, 2, 0, "Informe sobre el caso"),    tweet(4, 2, 0, "hubo balazos"),
      tweet(5, 1, 0, "hola a todos"),             tweet(6, 1, 0, "asesinos sueltos"),
      tweet(7, 2, 0, "nota completa"),            testing::retweet(8, 1, 0, 2, 0),
      testing::retweet(9, 2, 0, 1, 0),            tweet(10, 1, 0, "la matanza de ayer"),
  };
  recs[7].text = "RT @b: ejecución";
  recs[8].text = "RT @a: corrupción";
  auto p = negativity_partition(recs, labels, NegativeLexicon::builtin());
  CHECK(p.all().negative == 7);
  CHECK(p.all().non_negative == 3);
  CHECK(p.human_original.negative == 4);
  CHECK(p.human_original.non_negative == 1);
  CHECK(p.human_retweet.negative == 1);
  CHECK(p.bot_original.negative == 1);
  CHECK(p.bot_original.non_negative == 2);
  CHECK(p.bot_retweet.negative == 1);
  CHECK(p.human().total() + p.bot().total() == 10);
}

TEST_CASE("labmt sentiment examples") {
  auto lex = lexicon_of({{"w", 8.0}, {"v", 4.0}, {"n", 5.2}});
  CHECK(labmt_sentiment({{"w", 1}}, lex, 0.0) == 8.0);
  // |4 - 5| < 1.5, so v is filtered out and only w survives
  const WordCounts wv = {{"w", 3}, {"v", 1}};
  CHECK(labmt_sentiment(wv, lex, 1.5) == 8.0);
  CHECK(h_avg(wv, lex, 1.5) == 8.0);
  CHECK(labmt_sentiment(wv, lex, 0.0) == doctest::Approx(7.0));
  CHECK_FALSE(labmt_sentiment({{"n", 4}}, lex, 3.0));
  CHECK_FALSE(labmt_sentiment({{"unknown", 4}}, lex, 0.0));
  CHECK_THROWS_AS(labmt_sentiment(wv, lex, -0.1), Error);
}

TEST_CASE("labmt sentiment properties") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> score(1.0, 9.0);
  std::map<std::string, double> m;
  for (int i = 0; i < 40; ++i) m["w" + std::to_string(i)] = std::round(score(rng) * 100) / 100;
  SentimentLexicon lex(m);
  for (int rep = 0; rep < 50; ++rep) {
    WordCounts counts;
    for (int i = 0; i < 15; ++i) counts["w" + std::to_string(rng() % 50)] += 1 + rng() % 5;
    std::size_t prev_words = SIZE_MAX;
    for (double dh : delta_grid()) {
      auto got = labmt_sentiment(counts, lex, dh);
      auto want = h_avg(counts, lex, dh);
      REQUIRE(got.has_value() == want.has_value());
      std::size_t words = 0;
      double lo = 10, hi = 0;
      for (const auto& [w, c] : counts) {
        auto h = lex.score(w);
        if (!h || std::abs(*h - 5.0) < dh - 1e-9) continue;
        ++words;
        lo = std::min(lo, *h);
        hi = std::max(hi, *h);
      }
      CHECK(words <= prev_words);
      prev_words = words;
      if (got) {
        CHECK(*got == doctest::Approx(*want).epsilon(1e-12));
        CHECK(*got >= lo - 1e-12);
        CHECK(*got <= hi + 1e-12);
      }
    }
  }
}

TEST_CASE("sentiment lexicon parsing") {
  std::istringstream in("word\thappiness\nFeliz\t8.2\nmuerte\t1.5\nniño\t7.1\nfeliz\t3.0\nbad\tx\n");
  std::vector<Diagnostic> diag;
  auto lex = SentimentLexicon::parse(in, &diag);
  CHECK(lex.size() == 3);
  CHECK(lex.score("feliz") == 8.2);
  CHECK(lex.score("nino") == 7.1);
  CHECK(diag.size() == 2);  // duplicate + unparseable score
  std::istringstream out_of_range("a\t9.5\n");
  CHECK_THROWS_AS(SentimentLexicon::parse(out_of_range), Error);
  CHECK_THROWS_AS(SentimentLexicon(std::map<std::string, double>{{"x", 0.5}}), Error);
}

TEST_CASE("delta grid") {
  auto g = delta_grid();
  REQUIRE(g.size() == 31);
  CHECK(g.front() == 0.0);
  CHECK(g[1] == 0.1);
  CHECK(g[7] == 0.7);
  CHECK(g.back() == 3.0);
}

TEST_CASE("sweep: identical cohorts, Delta h = 0 row, and the violent/neutral fixture") {
  LabelMap labels = {{1, Label::Human}, {2, Label::Bot}};
  auto lex = lexicon_of({{"muerte", 1.5}, {"masacre", 1.3}, {"tortura", 1.6},
                         {"informe", 5.2}, {"nota", 4.9}, {"hoy", 5.4}, {"feliz", 8.0}});
  auto grid = delta_grid();

  std::vector<TweetRecord> same = {tweet(1, 1, 0, "muerte feliz nota"), tweet(2, 2, 0, "muerte feliz nota")};
  for (const auto& row : sentiment_sweep(same, labels, lex, grid, true)) CHECK(row.human == row.bot);

  std::vector<TweetRecord> recs = {
      tweet(1, 1, 0, "muerte masacre tortura"), tweet(2, 1, 0, "Masacre y muerte"),
      tweet(3, 2, 0, "informe nota hoy"),       tweet(4, 2, 0, "Nota del informe de hoy"),
      testing::retweet(5, 1, 0, 2, 0)};
  recs[4].text = "RT @b: informe";
  auto rows = sentiment_sweep(recs, labels, lex, grid, true);
  REQUIRE(rows.size() == 31);
  auto counts = cohort_word_counts(recs, labels);
  CHECK(rows[0].human == h_avg(counts.human, lex, 0.0));
  CHECK(rows[0].bot == h_avg(counts.bot, lex, 0.0));
  bool some_defined = false;
  for (const auto& r : rows) {
    CHECK(r.human.has_value() == h_avg(counts.human, lex, r.delta_h).has_value());
    CHECK(r.bot.has_value() == h_avg(counts.bot, lex, r.delta_h).has_value());
    if (r.human && r.bot) {
      some_defined = true;
      CHECK(*r.bot >= *r.human);
    }
  }
  CHECK(some_defined);
  CHECK_FALSE(rows.back().bot);  // every bot word lies within 0.6 of neutral

  auto no_rt = sentiment_sweep(recs, labels, lex, grid, false);
  auto c2 = cohort_word_counts(recs, labels, {.include_retweets = false});
  CHECK(c2.human_total + 2 == counts.human_total);  // "rt" and "informe" dropped
  CHECK(no_rt[0].human == h_avg(c2.human, lex, 0.0));

  auto csv = sweep_csv(rows);
  CHECK(csv.rfind("delta_h,h_human,h_bot\n0,", 0) == 0);
  CHECK(csv.find("\n3,") != std::string::npos);
}

TEST_CASE("cohort word counts") {
  LabelMap labels = {{1, Label::Human}, {2, Label::Bot}};
  std::vector<TweetRecord> recs = {tweet(1, 1, 0, "a b a"), tweet(2, 2, 0, "b c"),
                                   tweet(3, 3, 0, "ignored author"),
                                   testing::retweet(4, 2, 0, 1, 0, std::string("d e"))};
  recs[3].text = "RT";
  auto c = cohort_word_counts(recs, labels);
  CHECK(c.human == WordCounts{{"a", 2}, {"b", 1}});
  CHECK(c.bot == WordCounts{{"b", 1}, {"c", 1}, {"rt", 1}});
  auto e = cohort_word_counts(recs, labels, {.include_retweets = true, .include_embedded_text = true});
  CHECK(e.bot.at("d") == 1);
  for (const auto* cc : {&c, &e}) {
    std::size_t h = 0, b = 0;
    for (const auto& [w, n] : cc->human) h += n;
    for (const auto& [w, n] : cc->bot) b += n;
    CHECK(h == cc->human_total);
    CHECK(b == cc->bot_total);
  }
}

TEST_CASE("log-odds") {
  CohortWordCounts c;
  c.bot = {{"x", 9}};
  c.human = {{"y", 9}};
  c.bot_total = c.human_total = 9;
  auto rows = log_odds(c);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].word == "x");
  CHECK(std::abs(rows[0].score - std::log(10.0)) <= 1e-12);
  CHECK(std::abs(rows[1].score + std::log(10.0)) <= 1e-12);

  CohortWordCounts eq;
  eq.bot = {{"a", 2}, {"b", 4}};
  eq.human = {{"a", 2}, {"b", 4}};
  eq.bot_total = eq.human_total = 6;
  for (const auto& r : log_odds(eq)) CHECK(std::abs(r.score) <= 1e-12);

  CohortWordCounts empty;
  empty.bot = {{"a", 1}};
  empty.bot_total = 1;
  CHECK_THROWS_AS(log_odds(empty), Error);

  CohortWordCounts q;
  q.bot = {{"a,b", 1}};
  q.human = {{"say\"hi", 1}};
  q.bot_total = q.human_total = 1;
  auto csv = log_odds_csv(log_odds(q));
  CHECK(csv.find("\"a,b\"") != std::string::npos);
  CHECK(csv.find("\"say\"\"hi\"") != std::string::npos);
}

TEST_CASE("log-odds antisymmetry under cohort swap") {
  std::mt19937_64 rng(66);
  for (int rep = 0; rep < 50; ++rep) {
    CohortWordCounts c;
    for (int i = 0; i < 30; ++i) {
      const std::string w = "w" + std::to_string(rng() % 40);
      const std::size_t n = 1 + rng() % 7;
      if (rng() % 2) {
        c.bot[w] += n;
        c.bot_total += n;
      } else {
        c.human[w] += n;
        c.human_total += n;
      }
    }
    if (c.bot.empty() || c.human.empty()) continue;
    CohortWordCounts s;
    s.bot = c.human;
    s.human = c.bot;
    s.bot_total = c.human_total;
    s.human_total = c.bot_total;
    std::map<std::string, double> a, b;
    for (const auto& r : log_odds(c)) a[r.word] = r.score;
    for (const auto& r : log_odds(s)) b[r.word] = r.score;
    REQUIRE(a.size() == b.size());
    for (const auto& [w, v] : a) CHECK(b.at(w) == -v);

    auto rows = log_odds(c);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i - 1].score >= rows[i].score);
  }
}
