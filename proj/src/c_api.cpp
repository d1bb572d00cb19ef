// SPDX-License-Identifier: Apache-2.0
#include "botlens/botlens.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "botlens/config.hpp"
#include "botlens/error.hpp"
#include "botlens/fixture.hpp"
#include "botlens/pipeline.hpp"

struct botlens_config {
  botlens::PipelineConfig cfg;
};

struct botlens_report {
  botlens::ReportBundle bundle;
  std::string summary_text;
};

namespace {

thread_local std::string g_last_error;

botlens_status status_of(botlens::ErrorKind kind) {
  using botlens::ErrorKind;
  switch (kind) {
    case ErrorKind::Config: return BOTLENS_E_CONFIG;
    case ErrorKind::Io: return BOTLENS_E_IO;
    case ErrorKind::Domain: return BOTLENS_E_DOMAIN;
    case ErrorKind::Unsupported: return BOTLENS_E_UNSUPPORTED;
    case ErrorKind::Convergence: return BOTLENS_E_CONVERGENCE;
    case ErrorKind::Internal: return BOTLENS_E_INTERNAL;
  }
  return BOTLENS_E_INTERNAL;
}

botlens_status fail(botlens_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

// Runs `f`, translating exceptions into status codes.
template <class F>
botlens_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return BOTLENS_OK;
  } catch (const botlens::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BOTLENS_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BOTLENS_E_INTERNAL, std::string("internal: ") + e.what());
  } catch (...) {
    return fail(BOTLENS_E_INTERNAL, "internal: unknown exception");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

botlens_status null_arg(const char* what) {
  return fail(BOTLENS_E_ARGUMENT, std::string("null argument: ") + what);
}

}  // namespace

extern "C" {

const char* botlens_version(void) { return BOTLENS_VERSION; }

const char* botlens_last_error(void) { return g_last_error.c_str(); }

int botlens_exit_code(botlens_status status) {
  switch (status) {
    case BOTLENS_OK: return 0;
    case BOTLENS_E_ARGUMENT:
    case BOTLENS_E_CONFIG: return 2;
    case BOTLENS_E_IO:
    case BOTLENS_E_DOMAIN:
    case BOTLENS_E_UNSUPPORTED:
    case BOTLENS_E_NOT_FOUND: return 3;
    case BOTLENS_E_CONVERGENCE:
    case BOTLENS_E_INTERNAL: return 4;
  }
  return 4;
}

void botlens_free(char* text) { std::free(text); }

size_t botlens_config_key_count(void) { return botlens::config_keys().size(); }

const char* botlens_config_key(size_t index) {
  const auto& keys = botlens::config_keys();
  // keys are string literals, so data() is NUL-terminated
  return index < keys.size() ? keys[index].data() : nullptr;
}

botlens_status botlens_config_new(botlens_config** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new botlens_config{}; });
}

void botlens_config_free(botlens_config* config) { delete config; }

botlens_status botlens_config_set(botlens_config* config, const char* key, const char* value) {
  if (!config) return null_arg("config");
  if (!key) return null_arg("key");
  if (!value) return null_arg("value");
  return guarded([&] { botlens::apply_setting(config->cfg, key, value); });
}

botlens_status botlens_config_load(botlens_config* config, const char* path) {
  if (!config) return null_arg("config");
  if (!path) return null_arg("path");
  return guarded([&] { botlens::apply_config_file(config->cfg, path); });
}

botlens_status botlens_config_validate(const botlens_config* config) {
  if (!config) return null_arg("config");
  return guarded([&] { botlens::validate_config(config->cfg); });
}

botlens_status botlens_config_get(const botlens_config* config, const char* key, char** out) {
  if (!config) return null_arg("config");
  if (!key) return null_arg("key");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = dup(botlens::config_value(config->cfg, key)); });
}

botlens_status botlens_config_echo(const botlens_config* config, char** out) {
  if (!config) return null_arg("config");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = dup(botlens::config_echo(config->cfg)); });
}

botlens_status botlens_run(const botlens_config* config, botlens_stage stage,
                           botlens_report** out) {
  if (!config) return null_arg("config");
  if (!out) return null_arg("out");
  *out = nullptr;
  if (stage < BOTLENS_STAGE_INGEST || stage > BOTLENS_STAGE_REPORT) {
    return fail(BOTLENS_E_CONFIG, "unknown stage");
  }
  return guarded([&] {
    auto* r = new botlens_report{};
    try {
      r->bundle = botlens::run_pipeline(config->cfg, static_cast<botlens::Stage>(stage));
      r->summary_text = r->bundle.summary_text();
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

void botlens_report_free(botlens_report* report) { delete report; }

botlens_status botlens_report_value(const botlens_report* report, const char* metric,
                                    const char** out) {
  if (!report) return null_arg("report");
  if (!metric) return null_arg("metric");
  if (!out) return null_arg("out");
  for (const auto& [k, v] : report->bundle.summary) {
    if (k == metric) {
      *out = v.c_str();
      return BOTLENS_OK;
    }
  }
  *out = nullptr;
  return fail(BOTLENS_E_NOT_FOUND, std::string("no metric ") + metric);
}

size_t botlens_report_summary_count(const botlens_report* report) {
  return report ? report->bundle.summary.size() : 0;
}

botlens_status botlens_report_summary_at(const botlens_report* report, size_t index,
                                         const char** metric, const char** value) {
  if (!report) return null_arg("report");
  if (index >= report->bundle.summary.size()) return fail(BOTLENS_E_NOT_FOUND, "index out of range");
  const auto& [k, v] = report->bundle.summary[index];
  if (metric) *metric = k.c_str();
  if (value) *value = v.c_str();
  return BOTLENS_OK;
}

const char* botlens_report_summary_text(const botlens_report* report) {
  return report ? report->summary_text.c_str() : "";
}

size_t botlens_report_table_count(const botlens_report* report) {
  return report ? report->bundle.tables.size() : 0;
}

botlens_status botlens_report_table_at(const botlens_report* report, size_t index,
                                       const char** name, const char** content, size_t* length) {
  if (!report) return null_arg("report");
  if (index >= report->bundle.tables.size()) return fail(BOTLENS_E_NOT_FOUND, "index out of range");
  const auto& [n, c] = report->bundle.tables[index];
  if (name) *name = n.c_str();
  if (content) *content = c.c_str();
  if (length) *length = c.size();
  return BOTLENS_OK;
}

botlens_status botlens_report_emit(const botlens_report* report, const char* directory,
                                   size_t* files) {
  if (!report) return null_arg("report");
  if (!directory) return null_arg("directory");
  return guarded([&] {
    auto manifest = botlens::emit_reports(report->bundle, directory);
    // manifest.txt and run_metadata.txt are not listed in the manifest
    if (files) *files = manifest.size() + 2;
  });
}

botlens_status botlens_fixture_write(const char* directory, uint64_t seed,
                                     const botlens_fixture_counts* counts) {
  if (!directory) return null_arg("directory");
  return guarded([&] {
    botlens::FixtureTargets t;
    if (counts) {
      t.tweets = counts->tweets;
      t.accounts = counts->accounts;
      t.bots = counts->bots;
      t.retweets = counts->retweets;
      t.hh = counts->hh;
      t.hb = counts->hb;
      t.bh = counts->bh;
      t.bb = counts->bb;
      t.missing = counts->missing;
      t.missing_by_bots = counts->missing_by_bots;
      t.bot_authored = counts->bot_authored;
      t.url_human = counts->url_human;
      t.url_bot = counts->url_bot;
    } else {
      t = botlens::FixtureTargets::reference();
    }
    botlens::write_fixture(botlens::generate_fixture(t, seed), directory);
  });
}

}  // extern "C"
