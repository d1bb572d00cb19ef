// SPDX-License-Identifier: Apache-2.0
// botlens command line: one subcommand per stage plus fixture generation.

#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "botlens/botlens.h"

namespace {

struct ConfigDeleter {
  void operator()(botlens_config* c) const { botlens_config_free(c); }
};
struct ReportDeleter {
  void operator()(botlens_report* r) const { botlens_report_free(r); }
};
using ConfigPtr = std::unique_ptr<botlens_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<botlens_report, ReportDeleter>;

int report_failure(botlens_status s) {
  std::fprintf(stderr, "botlens: error: %s\n", botlens_last_error());
  return botlens_exit_code(s);
}

struct StageOptions {
  std::string config_file;
  std::map<std::string, std::optional<std::string>> keys;
  bool quiet = false;
};

CLI::App* add_stage(CLI::App& app, const char* name, const char* help, StageOptions& opts) {
  auto* sub = app.add_subcommand(name, help);
  sub->add_option("-c,--config", opts.config_file, "key = value configuration file");
  sub->add_flag("-q,--quiet", opts.quiet, "do not print the summary");
  for (std::size_t i = 0; i < botlens_config_key_count(); ++i) {
    const std::string key = botlens_config_key(i);
    std::string flag = "--" + key;
    if (key.find('_') != std::string::npos) {
      std::string dashed = key;
      for (auto& ch : dashed) ch = ch == '_' ? '-' : ch;
      flag += ",--" + dashed;
    }
    sub->add_option(flag, opts.keys[key], "overrides `" + key + "` from the config file");
  }
  return sub;
}

int run_stage(botlens_stage stage, const StageOptions& opts) {
  botlens_config* raw = nullptr;
  if (auto s = botlens_config_new(&raw); s != BOTLENS_OK) return report_failure(s);
  ConfigPtr cfg(raw);
  if (!opts.config_file.empty()) {
    if (auto s = botlens_config_load(cfg.get(), opts.config_file.c_str()); s != BOTLENS_OK) {
      return report_failure(s);
    }
  }
  // flags win over the file
  for (const auto& [key, value] : opts.keys) {
    if (!value) continue;
    if (auto s = botlens_config_set(cfg.get(), key.c_str(), value->c_str()); s != BOTLENS_OK) {
      return report_failure(s);
    }
  }
  if (auto s = botlens_config_validate(cfg.get()); s != BOTLENS_OK) return report_failure(s);

  botlens_report* rep = nullptr;
  if (auto s = botlens_run(cfg.get(), stage, &rep); s != BOTLENS_OK) return report_failure(s);
  ReportPtr report(rep);

  char* dir = nullptr;
  if (auto s = botlens_config_get(cfg.get(), "output", &dir); s != BOTLENS_OK) return report_failure(s);
  const std::string output(dir);
  botlens_free(dir);

  std::size_t files = 0;
  if (auto s = botlens_report_emit(report.get(), output.c_str(), &files); s != BOTLENS_OK) {
    return report_failure(s);
  }
  if (!opts.quiet) std::fputs(botlens_report_summary_text(report.get()), stdout);
  std::fprintf(stderr, "botlens: wrote %zu files to %s\n", files, output.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bot-cohort analysis of a line-delimited tweet corpus"};
  app.set_version_flag("--version", std::string(botlens_version()));
  app.require_subcommand(1);

  struct Stage {
    const char* name;
    const char* help;
    botlens_stage stage;
  };
  const Stage stages[] = {
      {"ingest", "parse the corpus and report its statistics", BOTLENS_STAGE_INGEST},
      {"score", "score and label accounts (writes labels.csv for later stages)",
       BOTLENS_STAGE_SCORE},
      {"network", "retweet network, tallies, URL counts and centrality", BOTLENS_STAGE_NETWORK},
      {"text", "negativity, log-odds, sentiment sweep and LSA", BOTLENS_STAGE_TEXT},
      {"report", "run every stage", BOTLENS_STAGE_REPORT},
  };
  std::vector<StageOptions> options(std::size(stages));
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(stages); ++i) {
    subs.push_back(add_stage(app, stages[i].name, stages[i].help, options[i]));
  }

  auto* fixture = app.add_subcommand("fixture", "write a synthetic corpus with known tallies");
  std::string fixture_dir = "fixture";
  std::uint64_t seed = 20160819;
  botlens_fixture_counts counts{};
  bool custom = false;
  fixture->add_option("-o,--output", fixture_dir, "output directory");
  fixture->add_option("--seed", seed, "random seed");
  struct CountFlag {
    const char* name;
    std::size_t* field;
  };
  const CountFlag count_flags[] = {
      {"--tweets", &counts.tweets},           {"--accounts", &counts.accounts},
      {"--bots", &counts.bots},               {"--retweets", &counts.retweets},
      {"--hh", &counts.hh},                   {"--hb", &counts.hb},
      {"--bh", &counts.bh},                   {"--bb", &counts.bb},
      {"--missing", &counts.missing},         {"--missing-by-bots", &counts.missing_by_bots},
      {"--bot-authored", &counts.bot_authored}, {"--url-human", &counts.url_human},
      {"--url-bot", &counts.url_bot},
  };
  std::vector<CLI::Option*> count_opts;
  for (const auto& f : count_flags) {
    count_opts.push_back(fixture->add_option(f.name, *f.field, "custom target (default: reference counts)"));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) return run_stage(stages[i].stage, options[i]);
  }
  if (fixture->parsed()) {
    for (auto* o : count_opts) custom = custom || o->count() > 0;
    auto s = botlens_fixture_write(fixture_dir.c_str(), seed, custom ? &counts : nullptr);
    if (s != BOTLENS_OK) return report_failure(s);
    std::fprintf(stderr, "botlens: fixture written to %s\n", fixture_dir.c_str());
    return 0;
  }
  return 2;
}
