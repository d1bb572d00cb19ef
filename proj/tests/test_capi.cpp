// SPDX-License-Identifier: Apache-2.0
// Uses only the C header and the shared library.
#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

#include "botlens/botlens.h"

namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path path = fs::temp_directory_path() / ("botlens-capi-" + std::to_string(::getpid()));
  Scratch() {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  botlens_free(s);
  return out;
}

std::string value(const botlens_report* r, const char* metric) {
  const char* v = nullptr;
  REQUIRE(botlens_report_value(r, metric, &v) == BOTLENS_OK);
  return v;
}

}  // namespace

TEST_CASE("version, keys and exit codes") {
  CHECK(std::strlen(botlens_version()) > 0);
  CHECK(botlens_config_key_count() > 10);
  CHECK(std::string(botlens_config_key(0)) == "input");
  CHECK(botlens_config_key(botlens_config_key_count()) == nullptr);
  CHECK(botlens_exit_code(BOTLENS_OK) == 0);
  CHECK(botlens_exit_code(BOTLENS_E_CONFIG) == 2);
  CHECK(botlens_exit_code(BOTLENS_E_IO) == 3);
  CHECK(botlens_exit_code(BOTLENS_E_DOMAIN) == 3);
  CHECK(botlens_exit_code(BOTLENS_E_CONVERGENCE) == 4);
  CHECK(botlens_exit_code(BOTLENS_E_INTERNAL) == 4);
}

TEST_CASE("config handle") {
  botlens_config* c = nullptr;
  REQUIRE(botlens_config_new(&c) == BOTLENS_OK);
  CHECK(botlens_config_set(c, "threads", "2") == BOTLENS_OK);
  char* out = nullptr;
  REQUIRE(botlens_config_get(c, "threads", &out) == BOTLENS_OK);
  CHECK(take(out) == "2");

  CHECK(botlens_config_set(c, "colour", "blue") == BOTLENS_E_CONFIG);
  CHECK(std::string(botlens_last_error()).find("colour") != std::string::npos);
  CHECK(botlens_config_get(c, "colour", &out) == BOTLENS_E_CONFIG);
  CHECK(botlens_config_validate(c) == BOTLENS_E_CONFIG);  // no input yet
  CHECK(botlens_config_set(nullptr, "threads", "2") == BOTLENS_E_ARGUMENT);
  CHECK(botlens_config_load(c, "/nonexistent/botlens.conf") == BOTLENS_E_CONFIG);

  REQUIRE(botlens_config_echo(c, &out) == BOTLENS_OK);
  CHECK(take(out).find("threads = 2") != std::string::npos);
  botlens_config_free(c);
  botlens_config_free(nullptr);
}

TEST_CASE("fixture, run and emit through the C interface") {
  Scratch dir;
  botlens_fixture_counts counts{};
  counts.tweets = 30;
  counts.accounts = 10;
  counts.bots = 3;
  counts.retweets = 8;
  counts.hh = 4;
  counts.hb = 2;
  counts.bh = 1;
  counts.bb = 1;
  counts.bot_authored = 9;
  counts.url_human = 5;
  counts.url_bot = 2;
  REQUIRE(botlens_fixture_write(dir.path.c_str(), 7, &counts) == BOTLENS_OK);

  botlens_fixture_counts broken = counts;
  broken.hh += 1;
  CHECK(botlens_fixture_write(dir.path.c_str(), 7, &broken) == BOTLENS_E_DOMAIN);

  botlens_config* c = nullptr;
  REQUIRE(botlens_config_new(&c) == BOTLENS_OK);
  const std::string base = dir.path.string();
  REQUIRE(botlens_config_set(c, "input", (base + "/corpus.jsonl").c_str()) == BOTLENS_OK);
  REQUIRE(botlens_config_set(c, "scores", (base + "/scores.jsonl").c_str()) == BOTLENS_OK);
  REQUIRE(botlens_config_set(c, "sentiment_lexicon", (base + "/labmt.tsv").c_str()) == BOTLENS_OK);
  REQUIRE(botlens_config_set(c, "tau", "0.5") == BOTLENS_OK);
  REQUIRE(botlens_config_validate(c) == BOTLENS_OK);

  botlens_report* r = nullptr;
  REQUIRE(botlens_run(c, BOTLENS_STAGE_REPORT, &r) == BOTLENS_OK);
  CHECK(value(r, "corpus.tweets") == "30");
  CHECK(value(r, "labels.bot") == "3");
  CHECK(value(r, "tally.hh") == "4");
  CHECK(value(r, "tweets.bot_authored") == "9");
  const char* v = nullptr;
  CHECK(botlens_report_value(r, "no.such.metric", &v) == BOTLENS_E_NOT_FOUND);

  const std::size_t n = botlens_report_summary_count(r);
  CHECK(n > 10);
  const char *metric = nullptr, *val = nullptr;
  REQUIRE(botlens_report_summary_at(r, 0, &metric, &val) == BOTLENS_OK);
  CHECK(std::string(botlens_report_summary_text(r)).rfind(std::string(metric) + "=" + val + "\n", 0) == 0);
  CHECK(botlens_report_summary_at(r, n, &metric, &val) == BOTLENS_E_NOT_FOUND);

  const std::size_t tables = botlens_report_table_count(r);
  CHECK(tables >= 8);
  const char *name = nullptr, *content = nullptr;
  std::size_t length = 0;
  REQUIRE(botlens_report_table_at(r, 0, &name, &content, &length) == BOTLENS_OK);
  CHECK(std::strlen(content) == length);

  std::size_t files = 0;
  REQUIRE(botlens_report_emit(r, (base + "/out").c_str(), &files) == BOTLENS_OK);
  CHECK(files == tables + 3);  // tables, summary, metadata, manifest
  CHECK(fs::exists(dir.path / "out" / "manifest.txt"));
  botlens_report_free(r);

  REQUIRE(botlens_config_set(c, "input", (base + "/missing.jsonl").c_str()) == BOTLENS_OK);
  r = nullptr;
  CHECK(botlens_run(c, BOTLENS_STAGE_INGEST, &r) == BOTLENS_E_IO);
  CHECK(r == nullptr);
  CHECK(std::string(botlens_last_error()).rfind("corpus:", 0) == 0);
  botlens_config_free(c);
}
