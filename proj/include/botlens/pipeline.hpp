// SPDX-License-Identifier: Apache-2.0
#pragma once

// Stage orchestration and report emission.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "botlens/botsense.hpp"
#include "botlens/config.hpp"
#include "botlens/corpus.hpp"

namespace botlens {

enum class Stage { Ingest, Score, Network, Text, Report };
std::string_view to_string(Stage stage) noexcept;

struct ReportBundle {
  std::vector<std::pair<std::string, std::string>> summary;   // metric, value
  std::vector<std::pair<std::string, std::string>> tables;    // file name, content
  std::vector<std::pair<std::string, std::string>> metadata;  // key, value (timings included)

  std::optional<std::string> value(std::string_view metric) const;
  const std::string* table(std::string_view name) const;
  /// `metric=value` lines.
  std::string summary_text() const;
  std::string metadata_text() const;
};

/// Runs every stage needed for `stage` (Report runs all of them). A module's
/// fatal error propagates as botlens::Error.
ReportBundle run_pipeline(const PipelineConfig& config, Stage stage = Stage::Report);

struct ManifestEntry {
  std::string name;
  std::string sha256;
  std::size_t bytes = 0;
};

/// Writes summary.txt, every table, run_metadata.txt and manifest.txt into
/// `directory`. Files are staged first and moved into place only when all of
/// them were written. The manifest covers the deterministic files only
/// (run_metadata.txt carries timings). Throws Error(Io) when unwritable.
std::vector<ManifestEntry> emit_reports(const ReportBundle& bundle,
                                        const std::filesystem::path& directory);

std::string sha256_hex(std::string_view data);

/// labels.csv: `# threshold=<tau> source=<src> policy=<policy>` then
/// `account_id,label` rows.
std::string labels_csv(const LabelReport& report);
LabelReport load_labels(const std::filesystem::path& path);

}  // namespace botlens
