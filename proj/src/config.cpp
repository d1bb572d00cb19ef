// SPDX-License-Identifier: Apache-2.0
#include "botlens/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace botlens {
namespace {

constexpr std::string_view kModule = "config";

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad(std::string_view key, std::string_view value, std::string_view expected) {
  throw Error(ErrorKind::Config, kModule,
              fmt::format("{}: '{}' is not {}", key, value, expected));
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad(key, v, "a boolean");
}

double parse_double(std::string_view key, std::string_view v) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x)) bad(key, v, "a number");
  return x;
}

template <class T>
T parse_unsigned(std::string_view key, std::string_view v) {
  T x = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad(key, v, "a non-negative integer");
  return x;
}

std::optional<std::filesystem::path> optional_path(std::string_view v) {
  if (v.empty()) return std::nullopt;
  return std::filesystem::path(std::string(v));
}

std::string show(const std::optional<std::filesystem::path>& p) { return p ? p->string() : ""; }
std::string show(bool b) { return b ? "true" : "false"; }

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = {
      "input",          "scores",          "labels",        "policy",
      "tau",            "negative_lexicon", "exact_stems",  "sentiment_lexicon",
      "stopwords",      "delta_h_max",     "delta_h_step",  "include_retweets",
      "embedded_text",  "scan_embedded",   "directed",      "normalized",
      "svd_k",          "svd_tol",         "svd_max_iter",  "svd_seed",
      "threads",        "max_line_bytes",  "output",
  };
  return keys;
}

void apply_setting(PipelineConfig& c, std::string_view key, std::string_view raw) {
  const std::string_view v = trim(raw);
  if (key == "input") c.input = std::string(v);
  else if (key == "scores") c.scores = optional_path(v);
  else if (key == "labels") c.labels = optional_path(v);
  else if (key == "policy") {
    auto p = parse_policy(v);
    if (!p) bad(key, v, "'composite' or 'all-three'");
    c.policy = *p;
  } else if (key == "tau") {
    if (v.empty() || v == "auto") c.tau.reset();
    else c.tau = parse_double(key, v);
  }
  else if (key == "negative_lexicon") c.negative_lexicon = optional_path(v);
  else if (key == "exact_stems") c.exact_stems = parse_bool(key, v);
  else if (key == "sentiment_lexicon") c.sentiment_lexicon = optional_path(v);
  else if (key == "stopwords") c.stopwords = optional_path(v);
  else if (key == "delta_h_max") c.delta_h_max = parse_double(key, v);
  else if (key == "delta_h_step") c.delta_h_step = parse_double(key, v);
  else if (key == "include_retweets") c.include_retweets = parse_bool(key, v);
  else if (key == "embedded_text") c.embedded_text = parse_bool(key, v);
  else if (key == "scan_embedded") c.scan_embedded = parse_bool(key, v);
  else if (key == "directed") c.directed = parse_bool(key, v);
  else if (key == "normalized") c.normalized = parse_bool(key, v);
  else if (key == "svd_k") c.svd_k = parse_unsigned<std::size_t>(key, v);
  else if (key == "svd_tol") c.svd_tol = parse_double(key, v);
  else if (key == "svd_max_iter") c.svd_max_iter = parse_unsigned<std::size_t>(key, v);
  else if (key == "svd_seed") c.svd_seed = parse_unsigned<std::uint64_t>(key, v);
  else if (key == "threads") c.threads = parse_unsigned<unsigned>(key, v);
  else if (key == "max_line_bytes") c.max_line_bytes = parse_unsigned<std::size_t>(key, v);
  else if (key == "output") c.output = std::string(v);
  else throw Error(ErrorKind::Config, kModule, fmt::format("unknown key '{}'", key));
}

void apply_config_text(PipelineConfig& config, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::Config, kModule, fmt::format("line {}: expected key = value", line_no));
    }
    try {
      apply_setting(config, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(ErrorKind::Config, kModule, fmt::format("line {}: {}", line_no, e.what()));
    }
  }
}

void apply_config_file(PipelineConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, kModule, fmt::format("cannot open {}", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  apply_config_text(config, text.str());
}

void validate_config(const PipelineConfig& c, bool need_input) {
  auto fail = [](std::string msg) { throw Error(ErrorKind::Config, kModule, msg); };
  if (need_input && c.input.empty()) fail("input path is required");
  if (c.output.empty()) fail("output directory must not be empty");
  for (const auto* p : {&c.scores, &c.labels, &c.negative_lexicon, &c.sentiment_lexicon, &c.stopwords}) {
    if (*p && (*p)->empty()) fail("optional paths must be non-empty when given");
  }
  if (c.tau && (*c.tau < 0.0 || *c.tau > 1.0)) fail(fmt::format("tau {} outside [0,1]", *c.tau));
  if (c.delta_h_max < 0.0 || c.delta_h_max > 3.0) {
    fail(fmt::format("delta_h_max {} outside [0, 3.0]", c.delta_h_max));
  }
  if (!(c.delta_h_step > 0.0)) fail("delta_h_step must be > 0");
  if (c.svd_k < 1) fail("svd_k must be >= 1");
  if (!(c.svd_tol > 0.0)) fail("svd_tol must be > 0");
  if (c.svd_max_iter < 1) fail("svd_max_iter must be >= 1");
  if (c.threads < 1) fail("threads must be >= 1");
  if (c.max_line_bytes < 1) fail("max_line_bytes must be >= 1");
}

std::string config_value(const PipelineConfig& c, std::string_view key) {
  auto num = [](auto v) { return fmt::format("{}", v); };
  if (key == "input") return c.input.string();
  if (key == "scores") return show(c.scores);
  if (key == "labels") return show(c.labels);
  if (key == "policy") return std::string(to_string(c.policy));
  if (key == "tau") return c.tau ? num(*c.tau) : "auto";
  if (key == "negative_lexicon") return show(c.negative_lexicon);
  if (key == "exact_stems") return show(c.exact_stems);
  if (key == "sentiment_lexicon") return show(c.sentiment_lexicon);
  if (key == "stopwords") return show(c.stopwords);
  if (key == "delta_h_max") return num(c.delta_h_max);
  if (key == "delta_h_step") return num(c.delta_h_step);
  if (key == "include_retweets") return show(c.include_retweets);
  if (key == "embedded_text") return show(c.embedded_text);
  if (key == "scan_embedded") return show(c.scan_embedded);
  if (key == "directed") return show(c.directed);
  if (key == "normalized") return show(c.normalized);
  if (key == "svd_k") return num(c.svd_k);
  if (key == "svd_tol") return num(c.svd_tol);
  if (key == "svd_max_iter") return num(c.svd_max_iter);
  if (key == "svd_seed") return num(c.svd_seed);
  if (key == "threads") return num(c.threads);
  if (key == "max_line_bytes") return num(c.max_line_bytes);
  if (key == "output") return c.output.string();
  throw Error(ErrorKind::Config, kModule, fmt::format("unknown key '{}'", key));
}

std::string config_echo(const PipelineConfig& c) {
  std::string out;
  for (auto key : config_keys()) {
    fmt::format_to(std::back_inserter(out), "{} = {}\n", key, config_value(c, key));
  }
  return out;
}

}  // namespace botlens
