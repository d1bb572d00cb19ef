// SPDX-License-Identifier: Apache-2.0
#include "botlens/pipeline.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <set>

#include <fmt/format.h>

#include "botlens/lexsent.hpp"
#include "botlens/lsa.hpp"
#include "botlens/rtnet.hpp"
#include "botlens/timeutil.hpp"

namespace botlens {
namespace {

using Clock = std::chrono::steady_clock;

struct Run {
  const PipelineConfig& cfg;
  ReportBundle out;
  ParsedCorpus corpus;
  CollectionWindow window;
  ScoreMap scores;
  LabelReport labels;

  template <class T>
  void put(std::string key, const T& value) {
    out.summary.emplace_back(std::move(key), fmt::format("{}", value));
  }
  void table(std::string name, std::string content) {
    out.tables.emplace_back(std::move(name), std::move(content));
  }
};

std::string pct(std::size_t part, std::size_t whole) {
  if (whole == 0) return "0.0000";
  return fmt::format("{:.4f}", 100.0 * static_cast<double>(part) / static_cast<double>(whole));
}

void ingest(Run& run, bool need_window) {
  ParseOptions opts;
  opts.max_line_bytes = run.cfg.max_line_bytes;
  opts.threads = run.cfg.threads;
  run.corpus = parse_corpus_file(run.cfg.input, opts);
  const auto& s = run.corpus.stats;
  run.put("corpus.tweets", s.tweets);
  run.put("corpus.retweets", s.retweets);
  run.put("corpus.accounts", s.accounts);
  run.put("corpus.rejected", s.rejected);
  if (!run.corpus.records.empty() || need_window) {
    run.window = collection_window(run.corpus.records);  // empty corpus: domain error
    run.put("window.start", format_timestamp(run.window.start));
    run.put("window.end", format_timestamp(run.window.end));
    run.put("window.hours", fmt::format("{:.4f}", run.window.hours()));
  }

  std::string accounts = "account_id,followers_count,friends_count,statuses_count,account_created_at\n";
  for (const auto& [id, p] : run.corpus.accounts) {
    fmt::format_to(std::back_inserter(accounts), "{},{},{},{},{}\n", id, p.followers_count,
                   p.friends_count, p.statuses_count, format_timestamp(p.account_created_at));
  }
  run.table("accounts.csv", std::move(accounts));
  std::string diag = "line,message\n";
  for (const auto& d : run.corpus.diagnostics) {
    std::string msg = d.message;
    std::replace(msg.begin(), msg.end(), '"', '\'');
    fmt::format_to(std::back_inserter(diag), "{},\"{}\"\n", d.line, msg);
  }
  run.table("diagnostics.csv", std::move(diag));
}

double policy_statistic(const BotScore& s, LabelPolicy policy) {
  return policy == LabelPolicy::AllThree ? s.min_part() : s.composite();
}

void kde_tables(Run& run) {
  if (run.scores.size() < 2) return;
  const std::array<std::string, 4> names = {"friend", "network", "temporal", "composite"};
  auto part = [](const BotScore& s, std::size_t i) {
    switch (i) {
      case 0: return s.friend_score();
      case 1: return s.network_score();
      case 2: return s.temporal_score();
      default: return s.composite();
    }
  };
  auto grid = [&](std::vector<std::size_t> axes, std::size_t g) {
    PointSet pts(axes.size());
    std::vector<double> row(axes.size());
    for (const auto& [id, s] : run.scores) {
      for (std::size_t k = 0; k < axes.size(); ++k) row[k] = part(s, axes[k]);
      pts.push_back(row);
    }
    auto h = scott_bandwidth(pts);
    auto density = kde(pts, g, h, run.cfg.threads);
    std::vector<std::string> labels;
    std::string name = "kde";
    for (auto a : axes) {
      labels.push_back(names[a]);
      name += "_" + names[a];
    }
    run.table(name + ".csv", density.to_csv(labels));
  };
  for (std::size_t i = 0; i < 4; ++i) grid({i}, kGrid1d);
  grid({0, 1}, kGrid2d);
  grid({0, 2}, kGrid2d);
  grid({1, 2}, kGrid2d);
  grid({0, 1, 2}, kGrid3d);
}

void score(Run& run) {
  const auto& cfg = run.cfg;
  std::string source;
  if (cfg.scores) {
    auto imported = import_scores_file(*cfg.scores, run.corpus.accounts);
    run.scores = std::move(imported.scores);
    run.put("scores.clamped", imported.clamped);
    run.put("scores.unknown_accounts", imported.unknown_accounts);
    run.put("scores.diagnostics", imported.diagnostics.size());
    source = "imported";
  } else if (!cfg.labels) {
    run.scores = compute_proxy_scores(run.corpus.records, run.corpus.accounts, run.window);
    source = "proxy";
  }

  if (cfg.labels) {
    LabelReport loaded = load_labels(*cfg.labels);
    LabelReport r;
    r.threshold = loaded.threshold;
    r.policy = loaded.policy;
    r.labels = loaded.labels;
    for (const auto& [id, p] : run.corpus.accounts) r.labels.try_emplace(id, Label::Unknown);
    for (const auto& [id, l] : r.labels) {
      ++(l == Label::Bot ? r.bots : l == Label::Human ? r.humans : r.unknown);
    }
    run.labels = std::move(r);
    source = source.empty() ? "labels-file" : source + "+labels-file";
  } else {
    Threshold th;
    if (cfg.tau) {
      th = {*cfg.tau, ThresholdSource::Fixed};
    } else if (run.scores.size() >= 2) {
      std::vector<double> stat;
      stat.reserve(run.scores.size());
      for (const auto& [id, s] : run.scores) stat.push_back(policy_statistic(s, cfg.policy));
      th = valley_threshold(stat, cfg.threads);
    }
    run.labels = label_accounts(run.scores, run.corpus.accounts, th, cfg.policy);
  }

  const auto& lr = run.labels;
  run.put("scores.source", source);
  run.put("scores.count", run.scores.size());
  run.put("labels.bot", lr.bots);
  run.put("labels.human", lr.humans);
  run.put("labels.unknown", lr.unknown);
  run.put("labels.threshold", lr.threshold.tau);
  run.put("labels.threshold_source", to_string(lr.threshold.source));
  run.put("labels.policy", to_string(lr.policy));

  const auto& records = run.corpus.records;
  const std::size_t bot_authored = count_authored(records, lr.labels, Label::Bot);
  run.put("tweets.bot_authored", bot_authored);
  run.put("tweets.human_authored", count_authored(records, lr.labels, Label::Human));
  run.put("tweets.unknown_authored", count_authored(records, lr.labels, Label::Unknown));
  run.put("tweets.bot_authored_pct", pct(bot_authored, records.size()));
  std::size_t by_bots = 0, by_humans = 0;
  for (const auto& r : records) {
    if (!r.is_retweet()) continue;
    Label l = label_of(lr.labels, r.author_id);
    if (l == Label::Bot) ++by_bots;
    else if (l == Label::Human) ++by_humans;
  }
  run.put("retweets.by_bots", by_bots);
  run.put("retweets.by_humans", by_humans);

  run.table("labels.csv", labels_csv(lr));
  if (!run.scores.empty()) {
    std::string csv = "account_id,friend,network,temporal,composite,label\n";
    for (const auto& [id, s] : run.scores) {
      fmt::format_to(std::back_inserter(csv), "{},{},{},{},{},{}\n", id, s.friend_score(),
                     s.network_score(), s.temporal_score(), s.composite(),
                     to_string(label_of(lr.labels, id)));
    }
    run.table("scores.csv", std::move(csv));
  }
  kde_tables(run);
}

// The figure's network: accounts incident to at least one retweet.
RetweetGraph active_network(const RetweetGraph& g) {
  RetweetGraph out;
  for (const auto& e : g.edges()) {
    out.add_node(e.retweeter, g.label(e.retweeter));
    out.add_node(e.author, g.label(e.author));
    out.add_edge(e);
  }
  return out;
}

void network(Run& run) {
  const auto& records = run.corpus.records;
  const auto& labels = run.labels.labels;
  const RetweetGraph full = active_network(build_retweet_network(records, labels));
  const RetweetGraph hrb = full.filtered(Label::Human, Label::Bot);
  const RetweetGraph brb = full.filtered(Label::Bot, Label::Bot);

  const RetweetTally t = classify_retweets(records, labels, run.window);
  run.put("tally.hh", t.hh);
  run.put("tally.hb", t.hb);
  run.put("tally.bh", t.bh);
  run.put("tally.bb", t.bb);
  run.put("tally.missing", t.missing);
  run.put("tally.humans_retweeted", t.humans_retweeted());
  run.put("tally.bots_retweeted", t.bots_retweeted());

  const UrlCounts u = url_counts(records, labels, run.cfg.scan_embedded);
  run.put("url.scan_embedded", run.cfg.scan_embedded ? "true" : "false");
  run.put("url.human_records", u.human_records);
  run.put("url.bot_records", u.bot_records);
  run.put("url.human_embedded", u.human_embedded);
  run.put("url.bot_embedded", u.bot_embedded);
  run.put("url.human", u.human_total());
  run.put("url.bot", u.bot_total());

  run.put("network.direction", "retweeter->author");
  run.put("network.nodes", full.node_count());
  run.put("network.edges", full.simple_edge_count());
  run.put("network.multi_edges", full.multi_edge_count());
  run.put("network.hrb_nodes", hrb.node_count());
  run.put("network.hrb_edges", hrb.simple_edge_count());
  run.put("network.brb_nodes", brb.node_count());
  run.put("network.brb_edges", brb.simple_edge_count());

  run.table("edges.csv", full.edges_csv());
  run.table("nodes.csv", full.nodes_csv());
  run.table("edges_humans_retweeting_bots.csv", hrb.edges_csv());
  run.table("edges_bots_retweeting_bots.csv", brb.edges_csv());
  run.table("degree.csv", degree_table(full).to_csv());

  BetweennessOptions bo;
  bo.directed = run.cfg.directed;
  bo.normalized = run.cfg.normalized;
  bo.threads = run.cfg.threads;
  if (bo.normalized && full.node_count() < 3) {
    run.put("network.betweenness", "skipped (fewer than 3 nodes)");
    run.table("betweenness.csv", "account_id,value,label\n");
  } else {
    run.put("network.betweenness", bo.directed ? "directed" : "undirected");
    run.table("betweenness.csv", betweenness(full, bo).to_csv());
  }
}

NegativeLexicon negative_lexicon(const PipelineConfig& cfg) {
  const StemMatch mode = cfg.exact_stems ? StemMatch::ExactUnlessOpen : StemMatch::Prefix;
  return cfg.negative_lexicon ? NegativeLexicon::load(*cfg.negative_lexicon, mode)
                              : NegativeLexicon::builtin(mode);
}

void text(Run& run, bool per_tweet) {
  const auto& cfg = run.cfg;
  const auto& records = run.corpus.records;
  const auto& labels = run.labels.labels;
  const NegativeLexicon lexicon = negative_lexicon(cfg);

  const NegativityPartition p = negativity_partition(records, labels, lexicon);
  auto put_counts = [&](const std::string& key, const NegativityCounts& c) {
    run.put(key + ".negative", c.negative);
    run.put(key + ".non_negative", c.non_negative);
  };
  put_counts("negativity.human", p.human());
  put_counts("negativity.bot", p.bot());
  put_counts("negativity.human_original", p.human_original);
  put_counts("negativity.human_retweet", p.human_retweet);
  put_counts("negativity.bot_original", p.bot_original);
  put_counts("negativity.bot_retweet", p.bot_retweet);

  std::vector<TokenList> documents;
  documents.reserve(records.size());
  for (const auto& r : records) documents.push_back(normalize_text(r.text));

  if (per_tweet) {
    std::string csv =
        "tweet_id,author_id,author_label,is_retweet,retweet_class,url_record,url_embedded,negative_tokens\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& r = records[i];
      const bool emb = r.retweet_of && r.retweet_of->text && contains_url(*r.retweet_of->text);
      fmt::format_to(std::back_inserter(csv), "{},{},{},{},{},{},{},{}\n", r.tweet_id, r.author_id,
                     to_string(label_of(labels, r.author_id)), r.is_retweet() ? 1 : 0,
                     r.is_retweet() ? to_string(classify_retweet(r, labels, run.window)) : "",
                     contains_url(r.text) ? 1 : 0, emb ? 1 : 0,
                     match_negative(documents[i], lexicon));
    }
    run.table("tweets.csv", std::move(csv));
  }

  CohortCountOptions co;
  co.include_retweets = cfg.include_retweets;
  co.include_embedded_text = cfg.embedded_text;
  const CohortWordCounts counts = cohort_word_counts(records, labels, co);
  run.put("text.tokens_human", counts.human_total);
  run.put("text.tokens_bot", counts.bot_total);
  if (counts.human_total > 0 && counts.bot_total > 0) {
    run.put("text.log_odds", "computed");
    run.table("log_odds.csv", log_odds_csv(log_odds(counts)));
  } else {
    run.put("text.log_odds", "skipped (empty cohort)");
    run.table("log_odds.csv", "word,score,count_bot,count_human\n");
  }

  if (cfg.sentiment_lexicon) {
    std::vector<Diagnostic> diag;
    const SentimentLexicon lex = SentimentLexicon::load(*cfg.sentiment_lexicon, &diag);
    run.put("sentiment.lexicon_words", lex.size());
    run.put("sentiment.lexicon_skipped", diag.size());
    const auto grid = delta_grid(cfg.delta_h_max, cfg.delta_h_step);
    CohortCountOptions with = co, without = co;
    with.include_retweets = true;
    without.include_retweets = false;
    const auto rows = sentiment_sweep(cohort_word_counts(records, labels, with), lex, grid);
    const auto rows_nort = sentiment_sweep(cohort_word_counts(records, labels, without), lex, grid);
    auto cell = [](const std::optional<double>& v) { return v ? fmt::format("{}", *v) : std::string(); };
    run.put("sentiment.h_human_dh0", cell(rows.front().human));
    run.put("sentiment.h_bot_dh0", cell(rows.front().bot));
    run.table("sentiment_sweep.csv", sweep_csv(rows));
    run.table("sentiment_sweep_no_retweets.csv", sweep_csv(rows_nort));
  }

  std::set<std::string> stop;
  if (cfg.stopwords) stop = load_stopwords(*cfg.stopwords);
  bool any = false;
  for (const auto& d : documents) {
    for (const auto& t : d) {
      if (!stop.contains(t)) {
        any = true;
        break;
      }
    }
    if (any) break;
  }
  if (!any) {
    run.put("text.svd", "skipped (no terms)");
    return;
  }
  const TfidfModel model = tfidf(documents, stop);
  run.put("text.documents", model.matrix.rows);
  run.put("text.vocabulary", model.vocabulary.size());
  const std::size_t k = cfg.svd_k;
  if (k > std::min(model.matrix.rows, model.matrix.cols)) {
    run.put("text.svd", fmt::format("skipped (k = {} exceeds the matrix rank bound)", k));
    return;
  }
  SvdOptions so;
  so.tol = cfg.svd_tol;
  so.max_iterations = cfg.svd_max_iter;
  so.seed = cfg.svd_seed;
  const SvdResult svd = truncated_svd(model.matrix, k, so);
  run.put("text.svd", "computed");
  run.put("svd.k", k);
  run.put("svd.iterations", svd.iterations);
  std::string values = "component,singular_value\n";
  for (std::size_t c = 0; c < k; ++c) {
    run.put(fmt::format("svd.sigma_{}", c + 1), svd.singular_values[c]);
    fmt::format_to(std::back_inserter(values), "{},{}\n", c + 1, svd.singular_values[c]);
  }
  run.table("svd_singular_values.csv", std::move(values));
  std::string proj = "tweet_id";
  for (std::size_t c = 0; c < k; ++c) proj += fmt::format(",component_{}", c + 1);
  proj += '\n';
  for (std::size_t i = 0; i < records.size(); ++i) {
    proj += fmt::format("{}", records[i].tweet_id);
    for (std::size_t c = 0; c < k; ++c) proj += fmt::format(",{}", svd.projections(i, c));
    proj += '\n';
  }
  run.table("svd_projections.csv", std::move(proj));
}

}  // namespace

std::string_view to_string(Stage stage) noexcept {
  switch (stage) {
    case Stage::Ingest: return "ingest";
    case Stage::Score: return "score";
    case Stage::Network: return "network";
    case Stage::Text: return "text";
    case Stage::Report: return "report";
  }
  return "report";
}

ReportBundle run_pipeline(const PipelineConfig& config, Stage stage) {
  validate_config(config);
  Run run{config, {}, {}, {}, {}, {}};
  auto timed = [&](std::string_view name, auto&& fn) {
    const auto t0 = Clock::now();
    fn();
    const auto ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    run.out.metadata.emplace_back(fmt::format("timing.{}_ms", name), fmt::format("{:.1f}", ms));
  };
  run.out.metadata.emplace_back("version", BOTLENS_VERSION);
  run.out.metadata.emplace_back("stage", std::string(to_string(stage)));

  timed("ingest", [&] { ingest(run, stage != Stage::Ingest); });
  if (stage != Stage::Ingest) timed("score", [&] { score(run); });
  if (stage == Stage::Network || stage == Stage::Report) timed("network", [&] { network(run); });
  if (stage == Stage::Text || stage == Stage::Report) {
    timed("text", [&] { text(run, stage == Stage::Report); });
  }
  run.out.metadata.emplace_back("config", config_echo(config));
  return std::move(run.out);
}

}  // namespace botlens
