// SPDX-License-Identifier: Apache-2.0
#include "botlens/fixture.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include <fmt/format.h>

#include "botlens/rtnet.hpp"
#include "botlens/timeutil.hpp"

namespace botlens {
namespace {

constexpr std::string_view kModule = "fixture";

// Retweet classes by (original author cohort, retweeter cohort).
enum Cls : int { HH = 0, HB = 1, BH = 2, BB = 3 };
constexpr int kHuman = 0;
constexpr int kBot = 1;
constexpr int author_cohort(int c) { return c == HH || c == HB ? kHuman : kBot; }
constexpr int retweeter_cohort(int c) { return c == HH || c == BH ? kHuman : kBot; }
constexpr std::array<std::string_view, 4> kClassName = {"H-H", "H-B", "B-H", "B-B"};

constexpr std::int64_t kSnowflakeEpochMs = 1288834974657;

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

struct Derived {
  std::size_t humans, bots;
  std::size_t human_tweets, bot_tweets;
  std::size_t human_rt, bot_rt;
  std::size_t human_orig, bot_orig;
};

Derived derive(const FixtureTargets& t) {
  Derived d{};
  d.bots = t.bots;
  d.humans = t.accounts - t.bots;
  d.bot_tweets = t.bot_authored;
  d.human_tweets = t.tweets - t.bot_authored;
  d.bot_rt = t.hb + t.bb + t.missing_by_bots;
  d.human_rt = t.retweets - d.bot_rt;
  d.bot_orig = d.bot_tweets - d.bot_rt;
  d.human_orig = d.human_tweets - d.human_rt;
  return d;
}

[[noreturn]] void fail(const std::vector<std::string>& violated) {
  std::string msg = "inconsistent fixture targets:";
  for (const auto& v : violated) msg += "\n  " + v;
  throw Error(ErrorKind::Domain, kModule, msg);
}

// total split over caps.size() slots, each in [1, cap_i], with heavy-tailed
// weights so the result looks like a degree distribution.
std::vector<std::size_t> spread(std::size_t total, const std::vector<std::size_t>& caps, Rng& rng) {
  const std::size_t n = caps.size();
  std::vector<std::size_t> v(n, 1);
  if (n == 0) return v;
  std::vector<double> w(n);
  for (auto& x : w) x = std::pow(1.0 - uniform(rng, 0.0, 0.999), -1.0 / 1.2);
  std::size_t rem = total - n;
  while (rem > 0) {
    double weight = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] < caps[i]) weight += w[i];
    }
    std::size_t given = 0;
    for (std::size_t i = 0; i < n && given < rem; ++i) {
      if (v[i] >= caps[i]) continue;
      auto add = static_cast<std::size_t>(std::floor(static_cast<double>(rem) * w[i] / weight));
      add = std::min({add, caps[i] - v[i], rem - given});
      v[i] += add;
      given += add;
    }
    if (given == 0) {
      for (std::size_t i = 0; i < n && given < rem; ++i) {
        if (v[i] < caps[i]) {
          ++v[i];
          ++given;
        }
      }
    }
    rem -= given;
  }
  return v;
}

std::vector<std::size_t> even_split(std::size_t total, std::size_t n) {
  std::vector<std::size_t> v(n, 0);
  for (std::size_t i = 0; i < n; ++i) v[i] = total / n + (i < total % n ? 1 : 0);
  return v;
}

struct ClassPlan {
  std::vector<std::size_t> authors;  // cohort-local indices
  std::vector<std::size_t> degrees;  // multi-edges per author, all >= 1
  std::vector<std::size_t> pool;     // cohort-local retweeter indices
  std::size_t simple = 0;
  std::size_t missing = 0;
  bool must_cover_pool = false;
};

ClassPlan make_class(std::vector<std::size_t> authors, const std::vector<std::size_t>& degrees,
                     std::vector<std::size_t> pool) {
  ClassPlan p;
  for (std::size_t i = 0; i < authors.size(); ++i) {
    if (degrees[i] == 0) continue;
    p.authors.push_back(authors[i]);
    p.degrees.push_back(degrees[i]);
  }
  p.pool = std::move(pool);
  return p;
}

std::size_t simple_capacity(const ClassPlan& p) {
  std::size_t cap = 0;
  for (auto d : p.degrees) cap += std::min(d, p.pool.size());
  return cap;
}

void check_class(const ClassPlan& p, int cls, std::vector<std::string>& violated) {
  const auto name = kClassName[static_cast<std::size_t>(cls)];
  if (p.simple < p.authors.size()) {
    violated.push_back(fmt::format("{}: {} distinct edges cannot reach {} authors", name,
                                   p.simple, p.authors.size()));
  }
  if (p.simple > simple_capacity(p)) {
    violated.push_back(fmt::format("{}: {} distinct edges exceed the {} possible", name, p.simple,
                                   simple_capacity(p)));
  }
  if (p.must_cover_pool && p.simple < p.pool.size()) {
    violated.push_back(fmt::format("{}: {} distinct edges cannot reach {} retweeters", name,
                                   p.simple, p.pool.size()));
  }
}

// Each author gets s_i distinct retweeters taken consecutively from the pool
// (cyclic, shared pointer), then its remaining edges repeat those pairs.
std::vector<std::pair<std::size_t, std::size_t>> build_class(const ClassPlan& p,
                                                             std::size_t& pointer) {
  const std::size_t k = p.pool.size();
  std::vector<std::size_t> s(p.authors.size(), 1);
  std::size_t extra = p.simple - p.authors.size();
  for (std::size_t i = 0; i < s.size() && extra > 0; ++i) {
    std::size_t add = std::min(extra, std::min(p.degrees[i], k) - 1);
    s[i] += add;
    extra -= add;
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < p.authors.size(); ++i) {
    const std::size_t base = pointer;
    pointer += s[i];
    for (std::size_t j = 0; j < p.degrees[i]; ++j) {
      edges.emplace_back(p.authors[i], p.pool[(base + j % s[i]) % k]);
    }
  }
  return edges;
}

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> v(hi - lo);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

struct Plan {
  std::array<ClassPlan, 4> classes;
  std::array<std::vector<AccountId>, 2> hub_ids;  // per cohort, occupying local indices 0..
};

Plan generic_plan(const FixtureTargets& t, const Derived& d) {
  Plan plan;
  std::array<std::size_t, 4> missing{};
  missing[d.humans > 0 ? HB : BB] = t.missing_by_bots;
  missing[d.humans > 0 ? HH : BH] = t.missing - t.missing_by_bots;
  const std::array<std::size_t, 4> tally = {t.hh, t.hb, t.bh, t.bb};
  const std::array<std::size_t, 2> size = {d.humans, d.bots};
  const std::array<std::size_t, 2> pool = {std::min(d.humans, d.human_rt), std::min(d.bots, d.bot_rt)};
  std::vector<std::string> violated;
  for (int c = 0; c < 4; ++c) {
    const std::size_t m = tally[c] + missing[c];
    const std::size_t n = size[author_cohort(c)];
    if (m > 0 && n == 0) {
      violated.push_back(fmt::format("{}: {} retweets but no {} accounts", kClassName[c], m,
                                     author_cohort(c) == kHuman ? "human" : "bot"));
      continue;
    }
    auto degrees = n == 0 ? std::vector<std::size_t>{} : even_split(m, n);
    auto& p = plan.classes[c] = make_class(range(0, n), degrees, range(0, pool[retweeter_cohort(c)]));
    p.simple = simple_capacity(p);
    p.missing = missing[c];
  }
  if (!violated.empty()) fail(violated);
  return plan;
}

Plan network_plan(const FixtureTargets& t, const Derived& d, Rng& rng) {
  const NetworkTargets& nt = *t.network;
  std::vector<std::string> violated;
  auto require = [&](bool ok, std::string what) {
    if (!ok) violated.push_back(std::move(what));
  };
  require(nt.missing_hh + nt.missing_hb + nt.missing_bh + nt.missing_bb == t.missing,
          "missing split must sum to missing");
  require(nt.missing_hb + nt.missing_bb == t.missing_by_bots,
          "missing_hb + missing_bb = missing_by_bots");
  if (!violated.empty()) fail(violated);

  const std::array<std::size_t, 4> multi = {t.hh + nt.missing_hh, t.hb + nt.missing_hb,
                                            t.bh + nt.missing_bh, t.bb + nt.missing_bb};

  // Bot local indices: [0, a_b) retweeted bots, of which [0, a_bb) are also
  // retweeted by bots; [a_b, a_b + r_hb) bots that retweet.
  const std::size_t a_b = nt.bot_authors;
  const std::size_t r_hb = nt.bot_retweeters;
  std::size_t r_bb = 0, a_bb = 0;
  if (nt.brb_edges > 0) {
    require(nt.brb_nodes >= 2, "brb_nodes >= 2 when brb_edges > 0");
    r_bb = std::min(nt.brb_edges, nt.brb_nodes - std::min<std::size_t>(nt.brb_nodes, 1));
    a_bb = nt.brb_nodes - r_bb;
  } else {
    require(nt.brb_nodes == 0, "brb_nodes = 0 when brb_edges = 0");
  }
  require(a_bb <= a_b, "bot authors retweeted by bots <= bot_authors");
  require(multi[BB] >= a_bb, "bb + missing_bb >= brb_nodes - bots retweeting bots");
  require(r_bb <= r_hb, "bots retweeting bots <= bot_retweeters");
  require(a_b + r_hb <= d.bots, "bot_authors + bot_retweeters <= bots");
  require(nt.hrb_nodes >= a_b, "hrb_nodes >= bot_authors");
  const std::size_t bot_nodes = a_b + r_hb;
  require(nt.nodes >= bot_nodes, "nodes >= bot_authors + bot_retweeters");
  if (!violated.empty()) fail(violated);

  // Human local indices: [0, human_nodes) all retweet; [0, a_h) are retweeted;
  // the last r_bh of them retweet bots.
  const std::size_t human_nodes = nt.nodes - bot_nodes;
  const std::size_t a_h = nt.human_authors;
  const std::size_t r_bh = nt.hrb_nodes - a_b;
  require(human_nodes <= d.humans, "nodes - bot nodes <= humans");
  require(a_h <= human_nodes, "human_authors <= human nodes");
  require(r_bh <= human_nodes, "hrb_nodes - bot_authors <= human nodes");
  require(d.humans - std::min(d.humans, human_nodes) <= d.human_orig,
          "humans outside the network <= human originals");
  require(d.bots - std::min(d.bots, r_hb) <= d.bot_orig, "non-retweeting bots <= bot originals");
  require(human_nodes <= d.human_rt, "human nodes <= human retweets");

  Plan plan;
  std::array<std::vector<HubSpec>, 2> hubs;
  for (const auto& h : nt.hubs) {
    hubs[h.label == Label::Bot ? kBot : kHuman].push_back(h);
    plan.hub_ids[h.label == Label::Bot ? kBot : kHuman].push_back(h.id);
  }
  require(hubs[kBot].size() <= a_b, "bot hubs <= bot_authors");
  require(hubs[kHuman].size() <= a_h, "human hubs <= human_authors");
  if (!violated.empty()) fail(violated);

  // Bot in-degrees: B-B spread evenly over [0, a_bb); hubs take the rest of
  // their degree from B-H; other bot authors share what is left of B-H.
  std::vector<std::size_t> deg_bb = a_bb > 0 ? even_split(multi[BB], a_bb) : std::vector<std::size_t>{};
  deg_bb.resize(a_b, 0);
  std::vector<std::size_t> deg_bh(a_b, 0);
  std::size_t bh_left = multi[BH];
  for (std::size_t i = 0; i < hubs[kBot].size(); ++i) {
    const std::size_t want = hubs[kBot][i].degree;
    require(want > deg_bb[i] && want - deg_bb[i] <= bh_left,
            fmt::format("bot hub {} degree {} does not fit", hubs[kBot][i].id, want));
    if (want > deg_bb[i] && want - deg_bb[i] <= bh_left) {
      deg_bh[i] = want - deg_bb[i];
      bh_left -= deg_bh[i];
    }
  }
  {
    const std::size_t first = hubs[kBot].size();
    std::vector<std::size_t> caps;
    for (std::size_t i = first; i < a_b; ++i) {
      caps.push_back(nt.degree_cap > deg_bb[i] ? nt.degree_cap - deg_bb[i] : 0);
    }
    const std::size_t cap_sum = std::accumulate(caps.begin(), caps.end(), std::size_t{0});
    const bool ok = bh_left >= caps.size() && bh_left <= cap_sum &&
                    std::all_of(caps.begin(), caps.end(), [](std::size_t c) { return c >= 1; });
    require(ok, fmt::format("B-H: {} retweets cannot be spread over {} non-hub bot authors", bh_left,
                            caps.size()));
    if (ok) {
      auto v = spread(bh_left, caps, rng);
      std::copy(v.begin(), v.end(), deg_bh.begin() + static_cast<std::ptrdiff_t>(first));
    }
  }

  // Human in-degrees over [0, a_h), then split between H-H and H-B in
  // proportion (largest remainder).
  const std::size_t human_in = multi[HH] + multi[HB];
  std::vector<std::size_t> deg_h(a_h, 0);
  std::size_t h_left = human_in;
  for (std::size_t i = 0; i < hubs[kHuman].size(); ++i) {
    const std::size_t want = hubs[kHuman][i].degree;
    require(want >= 1 && want <= h_left,
            fmt::format("human hub {} degree {} does not fit", hubs[kHuman][i].id, want));
    if (want <= h_left) {
      deg_h[i] = want;
      h_left -= want;
    }
  }
  {
    const std::size_t first = hubs[kHuman].size();
    std::vector<std::size_t> caps(a_h - first, nt.degree_cap);
    const bool ok = h_left >= caps.size() && h_left <= caps.size() * nt.degree_cap;
    require(ok, fmt::format("{} human in-degree cannot be spread over {} non-hub authors", h_left,
                            caps.size()));
    if (ok) {
      auto v = spread(h_left, caps, rng);
      std::copy(v.begin(), v.end(), deg_h.begin() + static_cast<std::ptrdiff_t>(first));
    }
  }
  if (!violated.empty()) fail(violated);

  std::vector<std::size_t> deg_hb(a_h, 0), deg_hh(a_h, 0);
  if (human_in > 0) {
    std::vector<std::pair<double, std::size_t>> frac;
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < a_h; ++i) {
      const double exact = static_cast<double>(multi[HB]) * static_cast<double>(deg_h[i]) /
                           static_cast<double>(human_in);
      deg_hb[i] = static_cast<std::size_t>(std::floor(exact));
      assigned += deg_hb[i];
      frac.emplace_back(exact - std::floor(exact), i);
    }
    std::stable_sort(frac.begin(), frac.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t j = 0; assigned < multi[HB] && j < frac.size(); ++j) {
      const std::size_t i = frac[j].second;
      if (deg_hb[i] < deg_h[i]) {
        ++deg_hb[i];
        ++assigned;
      }
    }
    for (std::size_t i = 0; i < a_h; ++i) deg_hh[i] = deg_h[i] - deg_hb[i];
  }

  auto& cbb = plan.classes[BB] = make_class(range(0, a_b), deg_bb, range(a_b, a_b + r_bb));
  cbb.simple = nt.brb_edges;
  auto& cbh = plan.classes[BH] =
      make_class(range(0, a_b), deg_bh, range(human_nodes - r_bh, human_nodes));
  cbh.simple = nt.hrb_edges;
  auto& chb = plan.classes[HB] = make_class(range(0, a_h), deg_hb, range(a_b, a_b + r_hb));
  chb.simple = std::min(simple_capacity(chb), std::max(chb.authors.size(), chb.pool.size()));
  auto& chh = plan.classes[HH] = make_class(range(0, a_h), deg_hh, range(0, human_nodes));
  const std::size_t others = cbb.simple + cbh.simple + chb.simple;
  require(nt.edges >= others, "edges >= distinct edges of the other classes");
  chh.simple = nt.edges >= others ? nt.edges - others : 0;

  const std::array<std::size_t, 4> missing = {nt.missing_hh, nt.missing_hb, nt.missing_bh,
                                              nt.missing_bb};
  for (int c = 0; c < 4; ++c) {
    auto& p = plan.classes[c];
    p.missing = missing[c];
    p.must_cover_pool = true;
    check_class(p, c, violated);
  }
  if (!violated.empty()) fail(violated);
  return plan;
}

struct Draft {
  int cohort = kHuman;
  std::size_t account = 0;  // cohort-local
  bool retweet = false;
  int original_cohort = kHuman;
  std::size_t original_account = 0;
  bool missing = false;
  bool url = false;
  bool embedded_url = false;
  Timestamp time = 0;
};

// Phrase pools. Humans lean on violent and grieving vocabulary, bots on
// neutral news wording, so text analyses have a signal to find.
constexpr std::string_view kHumanPhrases[] = {
    "Masacre en Tanhuato exigimos justicia para las víctimas",
    "Fue una ejecución no un enfrentamiento #Tanhuato",
    "La CNDH confirma ejecuciones arbitrarias en Tanhuato",
    "Tortura y muerte en el rancho El Sol",
    "¿Quién responde por los asesinados de Tanhuato?",
    "El gobierno mintió sobre Tanhuato",
    "Violencia de Estado otra vez en Michoacán",
    "Indignación por la matanza en Michoacán",
    "No olvidamos a los caídos en Tanhuato",
    "Corrupción e impunidad en la Policía Federal",
    "Qué tristeza lo que pasó en Tanhuato",
    "Exigimos la verdad sobre el operativo",
    "Brutal represión y castigo sin juicio",
    "Los mataron a sangre fría en Tanhuato",
};

constexpr std::string_view kBotPhrases[] = {
    "Informe de la CNDH sobre el caso Tanhuato",
    "Comisión presenta recomendación por operativo en Michoacán",
    "Lo que sabemos del caso Tanhuato",
    "Conferencia de prensa de la Policía Federal hoy",
    "Nota completa en nuestro sitio",
    "Te explicamos el informe en cinco puntos",
    "Última hora actualización del caso Tanhuato",
    "Reporte especial sobre el rancho El Sol",
    "Entrevista con el comisionado sobre Tanhuato",
    "Resumen informativo de la semana",
};

constexpr std::string_view kSentiment[][2] = {
    {"masacre", "1.50"},      {"justicia", "6.80"},      {"victimas", "2.40"},
    {"ejecucion", "2.00"},    {"enfrentamiento", "2.90"}, {"confirma", "5.60"},
    {"ejecuciones", "2.00"},  {"arbitrarias", "3.10"},   {"tortura", "1.60"},
    {"muerte", "1.50"},       {"rancho", "5.40"},        {"responde", "5.50"},
    {"asesinados", "1.60"},   {"gobierno", "4.40"},      {"mintio", "2.50"},
    {"violencia", "1.80"},    {"estado", "5.00"},        {"indignacion", "2.60"},
    {"matanza", "1.40"},      {"olvidamos", "3.60"},     {"caidos", "3.00"},
    {"corrupcion", "2.10"},   {"impunidad", "2.30"},     {"policia", "4.50"},
    {"tristeza", "2.00"},     {"paso", "5.10"},          {"exigimos", "4.20"},
    {"verdad", "7.00"},       {"operativo", "4.60"},     {"brutal", "1.90"},
    {"represion", "2.20"},    {"castigo", "2.70"},       {"juicio", "4.80"},
    {"mataron", "1.30"},      {"sangre", "2.30"},        {"fria", "4.10"},
    {"informe", "5.20"},      {"caso", "4.90"},          {"comision", "5.10"},
    {"presenta", "5.50"},     {"recomendacion", "5.40"}, {"sabemos", "5.60"},
    {"conferencia", "5.30"},  {"prensa", "5.20"},        {"hoy", "5.60"},
    {"nota", "5.00"},         {"completa", "5.70"},      {"nuestro", "5.60"},
    {"sitio", "5.10"},        {"explicamos", "5.50"},    {"cinco", "5.20"},
    {"puntos", "5.10"},       {"ultima", "4.70"},        {"hora", "5.00"},
    {"actualizacion", "5.40"}, {"reporte", "5.00"},      {"especial", "6.20"},
    {"entrevista", "5.60"},   {"comisionado", "5.00"},   {"resumen", "5.20"},
    {"informativo", "5.50"},  {"semana", "5.60"},        {"federal", "4.90"},
};

constexpr std::string_view kStopwords[] = {
    "a", "al", "con", "de", "del", "el", "en", "es", "la", "las", "lo", "los", "no",
    "otra", "para", "por", "que", "se", "sin", "sobre", "te", "un", "una", "vez", "y",
};

std::string short_link(Rng& rng) {
  static constexpr std::string_view kAlphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
  std::string s = "https://t.co/";
  for (int i = 0; i < 10; ++i) s.push_back(kAlphabet[pick(rng, kAlphabet.size())]);
  return s;
}

std::string phrase(const FixtureTargets& t, int cohort, Rng& rng) {
  const auto& pool = cohort == kHuman ? t.human_phrases : t.bot_phrases;
  if (!pool.empty()) return pool[pick(rng, pool.size())];
  if (cohort == kHuman) return std::string(kHumanPhrases[pick(rng, std::size(kHumanPhrases))]);
  return std::string(kBotPhrases[pick(rng, std::size(kBotPhrases))]);
}

TweetId snowflake(Timestamp t, std::uint64_t sequence) {
  const auto ms = static_cast<std::uint64_t>(t * 1000 - kSnowflakeEpochMs);
  return (ms << 22) | (sequence & 0x3FFFFF);
}

// Marks exactly k of the n entries selected by `eligible`, chosen at random.
template <class Eligible, class Mark>
void choose(std::vector<Draft>& drafts, std::size_t k, Eligible eligible, Mark mark, Rng& rng) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < drafts.size(); ++i) {
    if (eligible(drafts[i])) idx.push_back(i);
  }
  std::shuffle(idx.begin(), idx.end(), rng);
  for (std::size_t j = 0; j < k; ++j) mark(drafts[idx[j]]);
}

double bell(Rng& rng, double lo, double hi) {
  const double u = (uniform(rng, 0, 1) + uniform(rng, 0, 1) + uniform(rng, 0, 1)) / 3.0;
  return lo + (hi - lo) * u;
}

}  // namespace

FixtureTargets FixtureTargets::reference() {
  FixtureTargets t;
  t.tweets = 20854;
  t.accounts = 9730;
  t.bots = 1803;
  t.retweets = 12905;
  t.hh = 9896;
  t.hb = 848;
  t.bh = 1450;
  t.bb = 76;
  t.missing = 635;
  t.missing_by_bots = 86;
  t.bot_authored = 4153;
  t.url_human = 17474;
  t.url_bot = 4736;

  NetworkTargets n;
  n.nodes = 6528;
  n.edges = 10011;
  n.hrb_nodes = 1550;
  n.hrb_edges = 1596;
  n.brb_nodes = 92;
  n.brb_edges = 80;
  // The filtered networks have more distinct edges than their in-window
  // tallies (1596 > 1450, 80 > 76), so missing retweets fill the difference.
  n.missing_bh = 146;
  n.missing_bb = 4;
  n.missing_hb = 82;
  n.missing_hh = 403;
  n.human_authors = 1000;
  n.bot_authors = 200;
  n.bot_retweeters = 150;
  n.hubs = {
      {3243658266, Label::Bot, 787},  {54649261, Label::Human, 754},
      {163552910, Label::Human, 594}, {84613584, Label::Bot, 471},
      {520653311, Label::Human, 438}, {435299501, Label::Human, 368},
      {35977487, Label::Human, 328},  {318799346, Label::Human, 212},
      {252160277, Label::Human, 211}, {1911952410, Label::Human, 196},
      {44554692, Label::Human, 191},  {132346487, Label::Human, 156},
      {244218738, Label::Human, 154}, {832309426182901760, Label::Human, 141},
      {825966216, Label::Human, 140}, {200932969, Label::Human, 131},
      {18430394, Label::Human, 121},  {296592711, Label::Human, 119},
      {43115590, Label::Human, 119},  {190143362, Label::Human, 114},
  };
  n.degree_cap = 113;
  t.network = std::move(n);
  return t;
}

void validate_targets(const FixtureTargets& t) {
  std::vector<std::string> v;
  auto require = [&](bool ok, std::string_view what) {
    if (!ok) v.emplace_back(what);
  };
  require(t.hh + t.hb + t.bh + t.bb + t.missing == t.retweets,
          "hh + hb + bh + bb + missing = retweets");
  require(t.retweets <= t.tweets, "retweets <= tweets");
  require(t.bots <= t.accounts, "bots <= accounts");
  require(t.bot_authored <= t.tweets, "bot_authored <= tweets");
  require(t.missing_by_bots <= t.missing, "missing_by_bots <= missing");
  if (!v.empty()) fail(v);

  const Derived d = derive(t);
  require(d.bot_rt <= t.bot_authored, "hb + bb + missing_by_bots <= bot_authored");
  require(d.human_rt <= d.human_tweets,
          "retweets - (hb + bb + missing_by_bots) <= tweets - bot_authored");
  require(t.bots <= t.bot_authored, "bots <= bot_authored (every account tweets)");
  require(d.humans <= d.human_tweets, "accounts - bots <= tweets - bot_authored");
  require(t.bot_authored == 0 || t.bots > 0, "bot_authored > 0 requires bots > 0");
  require(d.human_tweets == 0 || d.humans > 0, "human-authored tweets require a human account");
  require(t.hh + t.hb == 0 || d.humans > 0, "hh + hb > 0 requires a human account");
  require(t.bh + t.bb == 0 || t.bots > 0, "bh + bb > 0 requires a bot account");
  require(t.url_human <= d.human_tweets + d.human_rt,
          "url_human <= human tweets + human retweets");
  require(t.url_bot <= t.bot_authored + d.bot_rt, "url_bot <= bot_authored + bot retweets");
  if (!v.empty()) fail(v);
}

Fixture generate_fixture(const FixtureTargets& targets, std::uint64_t seed) {
  validate_targets(targets);
  const Derived d = derive(targets);
  Rng rng(seed);
  Plan plan = targets.network ? network_plan(targets, d, rng) : generic_plan(targets, d);

  // Retweet drafts, class by class.
  std::vector<Draft> drafts;
  drafts.reserve(targets.tweets);
  std::array<std::size_t, 2> pointer{};
  for (int c = 0; c < 4; ++c) {
    const auto& p = plan.classes[c];
    auto edges = build_class(p, pointer[retweeter_cohort(c)]);
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<bool> missing(edges.size(), false);
    for (std::size_t j = 0; j < p.missing; ++j) missing[order[j]] = true;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      Draft dr;
      dr.cohort = retweeter_cohort(c);
      dr.account = edges[e].second;
      dr.retweet = true;
      dr.original_cohort = author_cohort(c);
      dr.original_account = edges[e].first;
      dr.missing = missing[e];
      drafts.push_back(dr);
    }
  }

  // Originals: one for every account without a retweet, the rest at random.
  const std::array<std::size_t, 2> size = {d.humans, d.bots};
  const std::array<std::size_t, 2> originals = {d.human_orig, d.bot_orig};
  for (int cohort : {kHuman, kBot}) {
    std::vector<bool> has(size[cohort], false);
    for (const auto& dr : drafts) {
      if (dr.cohort == cohort) has[dr.account] = true;
    }
    std::size_t left = originals[cohort];
    for (std::size_t a = 0; a < size[cohort]; ++a) {
      if (has[a]) continue;
      if (left == 0) {
        throw Error(ErrorKind::Domain, kModule,
                    "inconsistent fixture targets: too few originals to give every account a tweet");
      }
      drafts.push_back({cohort, a});
      --left;
    }
    for (; left > 0; --left) drafts.push_back({cohort, pick(rng, size[cohort])});
  }

  // URL flags: split each cohort's target between record text and embedded
  // original text in proportion to how many of each exist.
  const std::array<std::size_t, 2> tweets = {d.human_tweets, d.bot_tweets};
  const std::array<std::size_t, 2> rts = {d.human_rt, d.bot_rt};
  const std::array<std::size_t, 2> url = {targets.url_human, targets.url_bot};
  for (int cohort : {kHuman, kBot}) {
    const std::size_t all = tweets[cohort] + rts[cohort];
    std::size_t rec = all == 0 ? 0
                               : static_cast<std::size_t>(std::llround(
                                     static_cast<double>(url[cohort]) *
                                     static_cast<double>(tweets[cohort]) / static_cast<double>(all)));
    rec = std::min(rec, tweets[cohort]);
    std::size_t emb = url[cohort] - rec;
    if (emb > rts[cohort]) {
      emb = rts[cohort];
      rec = url[cohort] - emb;
    }
    choose(drafts, rec, [&](const Draft& x) { return x.cohort == cohort; },
           [](Draft& x) { x.url = true; }, rng);
    choose(drafts, emb, [&](const Draft& x) { return x.cohort == cohort && x.retweet; },
           [](Draft& x) { x.embedded_url = true; }, rng);
  }

  Fixture fx;
  if (drafts.empty()) return fx;

  // Times: uniform over the collection window with both ends pinned.
  const Timestamp start = *parse_timestamp("2016-08-19 15:06:17");
  const Timestamp end = *parse_timestamp("2016-08-22 02:13:35");
  std::shuffle(drafts.begin(), drafts.end(), rng);
  std::uniform_int_distribution<Timestamp> when(start, end);
  for (auto& dr : drafts) dr.time = when(rng);
  drafts.front().time = start;
  if (drafts.size() > 1) drafts.back().time = end;
  std::stable_sort(drafts.begin(), drafts.end(),
                   [](const Draft& a, const Draft& b) { return a.time < b.time; });

  // Account ids: hubs keep theirs, everybody else gets a fresh unique id.
  std::set<AccountId> used;
  for (const auto& ids : plan.hub_ids) used.insert(ids.begin(), ids.end());
  std::array<std::vector<AccountId>, 2> ids;
  std::uniform_int_distribution<AccountId> short_id(10'000'000, 4'294'967'295ULL);
  std::uniform_int_distribution<AccountId> long_id(700'000'000'000'000'000ULL,
                                                   799'999'999'999'999'999ULL);
  for (int cohort : {kHuman, kBot}) {
    ids[cohort] = plan.hub_ids[cohort];
    while (ids[cohort].size() < size[cohort]) {
      AccountId id = uniform(rng, 0, 1) < 0.85 ? short_id(rng) : long_id(rng);
      if (used.insert(id).second) ids[cohort].push_back(id);
    }
  }

  for (int cohort : {kHuman, kBot}) {
    const bool bot = cohort == kBot;
    for (AccountId id : ids[cohort]) {
      AccountProfile p;
      p.account_id = id;
      auto lognormal = [&](double mu, double sigma) {
        return static_cast<std::uint64_t>(std::llround(std::exp(std::normal_distribution<double>(mu, sigma)(rng))));
      };
      p.followers_count = bot ? lognormal(3.0, 1.5) : lognormal(5.0, 1.5);
      p.friends_count = bot ? lognormal(7.0, 1.0) : lognormal(5.5, 1.0);
      p.statuses_count = bot ? lognormal(9.5, 1.0) : lognormal(7.0, 1.5);
      const double days = bot ? uniform(rng, 5, 400) : uniform(rng, 30, 3000);
      p.account_created_at = start - static_cast<Timestamp>(days * 86400.0);
      fx.accounts.emplace(id, p);
      const double lo = bot ? 0.65 : 0.05;
      fx.scores.emplace(id, BotScore(bell(rng, lo, lo + 0.3), bell(rng, lo, lo + 0.3),
                                     bell(rng, lo, lo + 0.3)));
      fx.labels.emplace(id, bot ? Label::Bot : Label::Human);
    }
  }

  fx.records.reserve(drafts.size());
  std::uint64_t sequence = 0;
  for (const auto& dr : drafts) {
    TweetRecord r;
    r.tweet_id = snowflake(dr.time, sequence++);
    r.author_id = ids[dr.cohort][dr.account];
    r.created_at = dr.time;
    if (dr.retweet) {
      OriginalRef o;
      o.author_id = ids[dr.original_cohort][dr.original_account];
      o.created_at = dr.missing ? start - static_cast<Timestamp>(uniform(rng, 60, 3 * 86400))
                                : std::uniform_int_distribution<Timestamp>(start, dr.time)(rng);
      std::string body = phrase(targets, dr.original_cohort, rng);
      o.text = dr.embedded_url ? body + " " + short_link(rng) : body;
      r.text = fmt::format("RT @u{}: {}", o.author_id, body);
      r.retweet_of = std::move(o);
    } else {
      r.text = phrase(targets, dr.cohort, rng);
    }
    if (dr.url) r.text += " " + short_link(rng);
    fx.records.push_back(std::move(r));
  }
  // Original ids come after every record id so the two never collide.
  for (auto& r : fx.records) {
    if (r.retweet_of) r.retweet_of->tweet_id = snowflake(r.retweet_of->created_at, sequence++);
  }
  return fx;
}

std::string fixture_sentiment_tsv() {
  std::string out = "word\thappiness\n";
  for (const auto& [w, h] : kSentiment) fmt::format_to(std::back_inserter(out), "{}\t{}\n", w, h);
  return out;
}

std::string fixture_stopwords() {
  std::string out;
  for (auto w : kStopwords) fmt::format_to(std::back_inserter(out), "{}\n", w);
  return out;
}

std::vector<std::filesystem::path> write_fixture(const Fixture& fixture,
                                                 const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) {
    throw Error(ErrorKind::Io, kModule,
                fmt::format("cannot create {}: {}", directory.string(), ec.message()));
  }
  auto write = [&](const std::string& name, auto&& body) {
    auto path = directory / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, kModule, fmt::format("cannot write {}", path.string()));
    body(out);
    out.flush();
    if (!out) throw Error(ErrorKind::Io, kModule, fmt::format("failed writing {}", path.string()));
    return path;
  };
  std::vector<std::filesystem::path> paths;
  paths.push_back(write("corpus.jsonl", [&](std::ostream& out) {
    for (const auto& r : fixture.records) {
      out << serialize_record(r, fixture.accounts.at(r.author_id)) << '\n';
    }
  }));
  paths.push_back(write("scores.jsonl", [&](std::ostream& out) {
    for (const auto& [id, s] : fixture.scores) out << serialize_score(id, s) << '\n';
  }));
  paths.push_back(write("labmt.tsv", [&](std::ostream& out) { out << fixture_sentiment_tsv(); }));
  paths.push_back(write("stopwords.txt", [&](std::ostream& out) { out << fixture_stopwords(); }));
  return paths;
}

}  // namespace botlens
