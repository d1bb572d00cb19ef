// SPDX-License-Identifier: Apache-2.0
#pragma once

// Pipeline configuration: a flat `key = value` file, every key also settable
// from the command line (command line wins).

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "botlens/botsense.hpp"

namespace botlens {

struct PipelineConfig {
  std::filesystem::path input;
  std::optional<std::filesystem::path> scores;  // JSONL sub-scores to import
  std::optional<std::filesystem::path> labels;  // labels.csv from an earlier run
  LabelPolicy policy = LabelPolicy::Composite;
  std::optional<double> tau;  // fixed threshold; otherwise the KDE valley

  std::optional<std::filesystem::path> negative_lexicon;  // default: built-in stems
  bool exact_stems = false;
  std::optional<std::filesystem::path> sentiment_lexicon;
  std::optional<std::filesystem::path> stopwords;
  double delta_h_max = 3.0;
  double delta_h_step = 0.1;
  bool include_retweets = true;  // cohort word counts for log-odds
  bool embedded_text = false;    // also count retweets' embedded original text
  bool scan_embedded = true;     // url counts include embedded original text

  bool directed = true;
  bool normalized = true;

  std::size_t svd_k = 2;
  double svd_tol = 1e-10;
  std::size_t svd_max_iter = 2000;
  std::uint64_t svd_seed = 20160819;

  unsigned threads = 1;
  std::size_t max_line_bytes = 1 << 20;
  std::filesystem::path output = "botlens-out";
};

/// Every recognised key, in echo order.
const std::vector<std::string_view>& config_keys();

/// Throws Error(Config) for an unknown key or an unparseable value.
void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value);

/// `key = value` lines; `#` starts a comment. Unknown keys are errors.
void apply_config_text(PipelineConfig& config, std::string_view text);
void apply_config_file(PipelineConfig& config, const std::filesystem::path& path);

/// Throws Error(Config) when the configuration cannot run.
void validate_config(const PipelineConfig& config, bool need_input = true);

/// Current value of `key` in the form apply_setting accepts.
std::string config_value(const PipelineConfig& config, std::string_view key);

/// Text that apply_config_text turns back into the same configuration.
std::string config_echo(const PipelineConfig& config);

}  // namespace botlens
