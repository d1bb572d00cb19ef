/* SPDX-License-Identifier: Apache-2.0 */
#ifndef BOTLENS_BOTLENS_H
#define BOTLENS_BOTLENS_H

#include <stddef.h>
#include <stdint.h>

#if defined(BOTLENS_BUILDING_LIBRARY)
#define BOTLENS_API __attribute__((visibility("default")))
#else
#define BOTLENS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct botlens_config botlens_config;
typedef struct botlens_report botlens_report;

typedef enum botlens_status {
  BOTLENS_OK = 0,
  BOTLENS_E_ARGUMENT = 1,    /* null handle or pointer */
  BOTLENS_E_CONFIG = 2,
  BOTLENS_E_IO = 3,
  BOTLENS_E_DOMAIN = 4,
  BOTLENS_E_UNSUPPORTED = 5,
  BOTLENS_E_CONVERGENCE = 6,
  BOTLENS_E_INTERNAL = 7,
  BOTLENS_E_NOT_FOUND = 8
} botlens_status;

typedef enum botlens_stage {
  BOTLENS_STAGE_INGEST = 0,
  BOTLENS_STAGE_SCORE = 1,
  BOTLENS_STAGE_NETWORK = 2,
  BOTLENS_STAGE_TEXT = 3,
  BOTLENS_STAGE_REPORT = 4
} botlens_stage;

/* Scalar fixture targets. The network shape is only available through the
 * built-in reference targets (pass NULL). */
typedef struct botlens_fixture_counts {
  size_t tweets, accounts, bots, retweets;
  size_t hh, hb, bh, bb, missing, missing_by_bots;
  size_t bot_authored, url_human, url_bot;
} botlens_fixture_counts;

BOTLENS_API const char* botlens_version(void);

/* Message of the last failed call on this thread ("" when none). */
BOTLENS_API const char* botlens_last_error(void);

/* Process exit status for a result: 0 ok, 2 config, 3 input/domain,
 * 4 internal/convergence. */
BOTLENS_API int botlens_exit_code(botlens_status status);

/* Strings returned through char** out-parameters are owned by the caller. */
BOTLENS_API void botlens_free(char* text);

BOTLENS_API size_t botlens_config_key_count(void);
BOTLENS_API const char* botlens_config_key(size_t index);

BOTLENS_API botlens_status botlens_config_new(botlens_config** out);
BOTLENS_API void botlens_config_free(botlens_config* config);
BOTLENS_API botlens_status botlens_config_set(botlens_config* config, const char* key,
                                              const char* value);
BOTLENS_API botlens_status botlens_config_load(botlens_config* config, const char* path);
BOTLENS_API botlens_status botlens_config_validate(const botlens_config* config);
BOTLENS_API botlens_status botlens_config_get(const botlens_config* config, const char* key,
                                              char** out);
BOTLENS_API botlens_status botlens_config_echo(const botlens_config* config, char** out);

BOTLENS_API botlens_status botlens_run(const botlens_config* config, botlens_stage stage,
                                       botlens_report** out);
BOTLENS_API void botlens_report_free(botlens_report* report);

/* Pointers stay valid until the report is freed. */
BOTLENS_API botlens_status botlens_report_value(const botlens_report* report,
                                                const char* metric, const char** out);
BOTLENS_API size_t botlens_report_summary_count(const botlens_report* report);
BOTLENS_API botlens_status botlens_report_summary_at(const botlens_report* report, size_t index,
                                                     const char** metric, const char** value);
BOTLENS_API const char* botlens_report_summary_text(const botlens_report* report);
BOTLENS_API size_t botlens_report_table_count(const botlens_report* report);
BOTLENS_API botlens_status botlens_report_table_at(const botlens_report* report, size_t index,
                                                   const char** name, const char** content,
                                                   size_t* length);

/* Writes every table plus summary, metadata and manifest into `directory`. */
BOTLENS_API botlens_status botlens_report_emit(const botlens_report* report,
                                               const char* directory, size_t* files);

/* Writes corpus.jsonl, scores.jsonl, labmt.tsv and stopwords.txt. */
BOTLENS_API botlens_status botlens_fixture_write(const char* directory, uint64_t seed,
                                                 const botlens_fixture_counts* counts);

#ifdef __cplusplus
}
#endif

#endif
