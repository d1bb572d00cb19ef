// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "botlens/config.hpp"
#include "botlens/fixture.hpp"
#include "botlens/pipeline.hpp"
#include "support.hpp"

using namespace botlens;
namespace fs = std::filesystem;

namespace {

struct FixtureRun {
  testing::TempDir dir{"pipeline"};
  PipelineConfig cfg;
};

void prepare(FixtureRun& fr, const FixtureTargets& targets, std::uint64_t seed) {
  const auto paths = write_fixture(generate_fixture(targets, seed), fr.dir.path());
  fr.cfg.input = paths[0];
  fr.cfg.scores = paths[1];
  fr.cfg.sentiment_lexicon = paths[2];
  fr.cfg.stopwords = paths[3];
  fr.cfg.output = fr.dir / "out";
}

std::size_t num(const ReportBundle& b, std::string_view key) {
  auto v = b.value(key);
  REQUIRE_MESSAGE(v.has_value(), key);
  return std::stoul(*v);
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    rows.push_back(std::move(f));
  }
  return rows;
}

std::map<std::string, std::string> tables_of(const ReportBundle& b) {
  return {b.tables.begin(), b.tables.end()};
}

}  // namespace

TEST_CASE("config parsing, echo and validation") {
  PipelineConfig c;
  apply_config_text(c, "# comment\ninput = corpus.jsonl\n tau=0.4 \nthreads = 3\ndirected = false\n\n");
  CHECK(c.input == "corpus.jsonl");
  CHECK(c.tau == 0.4);
  CHECK(c.threads == 3);
  CHECK_FALSE(c.directed);

  PipelineConfig d;
  apply_config_text(d, config_echo(c));
  for (auto key : config_keys()) CHECK(config_value(d, key) == config_value(c, key));
  CHECK(config_echo(d) == config_echo(c));

  CHECK_THROWS_AS(apply_config_text(c, "colour = blue\n"), Error);
  CHECK_THROWS_AS(apply_config_text(c, "threads = many\n"), Error);
  CHECK_THROWS_AS(apply_config_text(c, "no equals sign\n"), Error);
  CHECK_THROWS_AS(config_value(c, "colour"), Error);

  auto invalid = [](auto mutate) {
    PipelineConfig v;
    v.input = "x";
    mutate(v);
    try {
      validate_config(v);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::Config;
    }
    return false;
  };
  CHECK(invalid([](PipelineConfig& v) { v.input.clear(); }));
  CHECK(invalid([](PipelineConfig& v) { v.delta_h_max = 3.5; }));
  CHECK(invalid([](PipelineConfig& v) { v.svd_k = 0; }));
  CHECK(invalid([](PipelineConfig& v) { v.tau = 1.5; }));
  CHECK(invalid([](PipelineConfig& v) { v.output.clear(); }));
  CHECK_FALSE(invalid([](PipelineConfig&) {}));
}

TEST_CASE("inconsistent targets name the violated identity") {
  auto t = FixtureTargets::reference();
  t.hh += 1;
  try {
    validate_targets(t);
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
    CHECK(std::string(e.what()).find("hh + hb + bh + bb + missing") != std::string::npos);
  }
}

TEST_CASE("all-zero targets: empty corpus") {
  FixtureRun fr;
  prepare(fr, FixtureTargets{}, 1);
  CHECK(fs::file_size(fr.cfg.input) == 0);
  auto b = run_pipeline(fr.cfg, Stage::Ingest);
  CHECK(num(b, "corpus.tweets") == 0);
  CHECK(num(b, "corpus.accounts") == 0);
  CHECK(num(b, "corpus.retweets") == 0);
  try {
    run_pipeline(fr.cfg);
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
    CHECK(e.module() == "corpus");
  }
}

TEST_CASE("fixture round trip over random targets") {
  std::mt19937_64 rng(50);
  for (int round = 0; round < 50; ++round) {
    CAPTURE(round);
    const auto t = testing::random_targets(rng);
    FixtureRun fr;
    prepare(fr, t, 1000 + round);
    fr.cfg.tau = 0.5;
    auto b = run_pipeline(fr.cfg);
    CHECK(num(b, "corpus.tweets") == t.tweets);
    CHECK(num(b, "corpus.accounts") == t.accounts);
    CHECK(num(b, "corpus.retweets") == t.retweets);
    CHECK(num(b, "labels.bot") == t.bots);
    CHECK(num(b, "tally.hh") == t.hh);
    CHECK(num(b, "tally.hb") == t.hb);
    CHECK(num(b, "tally.bh") == t.bh);
    CHECK(num(b, "tally.bb") == t.bb);
    CHECK(num(b, "tally.missing") == t.missing);
    CHECK(num(b, "tweets.bot_authored") == t.bot_authored);
    CHECK(num(b, "url.human") == t.url_human);
    CHECK(num(b, "url.bot") == t.url_bot);
    // conservation
    CHECK(num(b, "tally.hh") + num(b, "tally.hb") + num(b, "tally.bh") + num(b, "tally.bb") +
              num(b, "tally.missing") ==
          num(b, "corpus.retweets"));
    CHECK(num(b, "tally.humans_retweeted") + num(b, "tally.bots_retweeted") + num(b, "tally.missing") ==
          num(b, "corpus.retweets"));
  }
}

TEST_CASE("summary is recomputable from the tables") {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 5; ++round) {
    FixtureRun fr;
    prepare(fr, testing::random_targets(rng), 500 + round);
    fr.cfg.tau = 0.5;
    auto b = run_pipeline(fr.cfg);
    const auto tweets = csv_rows(*b.table("tweets.csv"));
    CHECK(tweets.size() == num(b, "corpus.tweets"));

    std::map<std::string, std::size_t> cls, authored, url, neg, non_neg;
    std::size_t retweets = 0;
    for (const auto& r : tweets) {
      REQUIRE(r.size() == 8);
      ++authored[r[2]];
      if (r[3] == "1") {
        ++retweets;
        ++cls[r[4]];
      }
      url[r[2]] += std::stoul(r[5]) + std::stoul(r[6]);
      ++(std::stoul(r[7]) > 0 ? neg : non_neg)[r[2]];
    }
    CHECK(retweets == num(b, "corpus.retweets"));
    CHECK(cls["H-H"] == num(b, "tally.hh"));
    CHECK(cls["H-B"] == num(b, "tally.hb"));
    CHECK(cls["B-H"] == num(b, "tally.bh"));
    CHECK(cls["B-B"] == num(b, "tally.bb"));
    CHECK(cls["missing"] == num(b, "tally.missing"));
    CHECK(authored["B"] == num(b, "tweets.bot_authored"));
    CHECK(authored["H"] == num(b, "tweets.human_authored"));
    CHECK(url["H"] == num(b, "url.human"));
    CHECK(url["B"] == num(b, "url.bot"));
    CHECK(neg["H"] == num(b, "negativity.human.negative"));
    CHECK(non_neg["B"] == num(b, "negativity.bot.non_negative"));

    std::map<std::string, std::size_t> labels;
    for (const auto& r : csv_rows(*b.table("labels.csv"))) ++labels[r[1]];
    CHECK(labels["B"] == num(b, "labels.bot"));
    CHECK(labels["H"] == num(b, "labels.human"));

    std::set<std::string> nodes;
    const auto edges = csv_rows(*b.table("edges.csv"));
    for (const auto& e : edges) {
      nodes.insert(e[0]);
      nodes.insert(e[1]);
    }
    CHECK(edges.size() == num(b, "network.edges"));
    CHECK(nodes.size() == num(b, "network.nodes"));
  }
}

TEST_CASE("determinism across thread counts and reruns") {
  std::mt19937_64 rng(3);
  FixtureRun fr;
  prepare(fr, testing::random_targets(rng), 9);
  auto one = run_pipeline(fr.cfg);
  fr.cfg.threads = 4;
  auto four = run_pipeline(fr.cfg);
  CHECK(tables_of(one) == tables_of(four));
  CHECK(one.summary == four.summary);

  // the echoed configuration reproduces the run
  const auto echo = one.metadata.back();
  REQUIRE(echo.first == "config");
  PipelineConfig again;
  apply_config_text(again, echo.second);
  CHECK(tables_of(run_pipeline(again)) == tables_of(one));

  // and so does the emitted metadata file, read as a config file
  emit_reports(one, fr.cfg.output);
  PipelineConfig from_file;
  apply_config_file(from_file, fr.cfg.output / "run_metadata.txt");
  CHECK(config_echo(from_file) == echo.second);
}

TEST_CASE("emit_reports writes a stable manifest") {
  std::mt19937_64 rng(11);
  FixtureRun fr;
  prepare(fr, testing::random_targets(rng), 12);
  auto b = run_pipeline(fr.cfg);
  auto first = emit_reports(b, fr.cfg.output);
  CHECK(first.size() >= 8);
  CHECK(std::is_sorted(first.begin(), first.end(),
                       [](const auto& x, const auto& y) { return x.name < y.name; }));
  for (const auto& e : first) {
    const auto text = testing::read_text(fr.cfg.output / e.name);
    CHECK(text.size() == e.bytes);
    CHECK(sha256_hex(text) == e.sha256);
  }
  CHECK(fs::exists(fr.cfg.output / "manifest.txt"));
  CHECK(fs::exists(fr.cfg.output / "run_metadata.txt"));
  CHECK_FALSE(fs::exists(fr.cfg.output / ".botlens-staging"));

  const auto manifest = testing::read_text(fr.cfg.output / "manifest.txt");
  auto second = emit_reports(run_pipeline(fr.cfg), fr.cfg.output);
  CHECK(testing::read_text(fr.cfg.output / "manifest.txt") == manifest);
  REQUIRE(second.size() == first.size());
  for (std::size_t i = 0; i < first.size(); ++i) CHECK(second[i].sha256 == first[i].sha256);
}

TEST_CASE("sha256 known digests") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("unwritable output is an I/O error") {
  testing::TempDir dir("unwritable");
  testing::write_text(dir / "plain", "x");
  ReportBundle b;
  b.summary.emplace_back("k", "v");
  try {
    emit_reports(b, dir / "plain" / "out");
    FAIL("expected an I/O error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
}

TEST_CASE("labels persist between stages") {
  std::mt19937_64 rng(21);
  FixtureRun fr;
  prepare(fr, testing::random_targets(rng), 22);
  fr.cfg.tau = 0.5;
  auto scored = run_pipeline(fr.cfg, Stage::Score);
  testing::write_text(fr.dir / "labels.csv", *scored.table("labels.csv"));

  auto loaded = load_labels(fr.dir / "labels.csv");
  CHECK(labels_csv(loaded).substr(labels_csv(loaded).find('\n')) ==
        scored.table("labels.csv")->substr(scored.table("labels.csv")->find('\n')));
  CHECK(loaded.threshold.tau == 0.5);
  CHECK(loaded.threshold.source == ThresholdSource::Imported);

  PipelineConfig reuse = fr.cfg;
  reuse.scores.reset();
  reuse.tau.reset();
  reuse.labels = fr.dir / "labels.csv";
  auto full = run_pipeline(fr.cfg, Stage::Network);
  auto again = run_pipeline(reuse, Stage::Network);
  for (auto key : {"tally.hh", "tally.hb", "tally.bh", "tally.bb", "tally.missing", "labels.bot",
                   "network.hrb_edges", "url.bot"}) {
    CHECK(again.value(key) == full.value(key));
  }

  testing::write_text(fr.dir / "bad.csv", "# threshold=2 source=x policy=composite\naccount_id,label\n");
  CHECK_THROWS_AS(load_labels(fr.dir / "bad.csv"), Error);
  testing::write_text(fr.dir / "dup.csv",
                      "# threshold=0.5 source=fixed policy=composite\naccount_id,label\n1,B\n1,H\n");
  CHECK_THROWS_AS(load_labels(fr.dir / "dup.csv"), Error);
}
