// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "botlens/pipeline.hpp"

namespace botlens {
namespace {

constexpr std::string_view kModule = "report";
constexpr std::string_view kStaging = ".botlens-staging";

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, kModule, fmt::format("cannot write {}", path.string()));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw Error(ErrorKind::Io, kModule, fmt::format("failed writing {}", path.string()));
}

std::string_view header_field(std::string_view header, std::string_view key) {
  const std::string needle = std::string(key) + "=";
  auto pos = header.find(needle);
  if (pos == std::string_view::npos) return {};
  auto rest = header.substr(pos + needle.size());
  return rest.substr(0, rest.find(' '));
}

}  // namespace

std::optional<std::string> ReportBundle::value(std::string_view metric) const {
  for (const auto& [k, v] : summary) {
    if (k == metric) return v;
  }
  return std::nullopt;
}

const std::string* ReportBundle::table(std::string_view name) const {
  for (const auto& [k, v] : tables) {
    if (k == name) return &v;
  }
  return nullptr;
}

std::string ReportBundle::summary_text() const {
  std::string out;
  for (const auto& [k, v] : summary) fmt::format_to(std::back_inserter(out), "{}={}\n", k, v);
  return out;
}

std::string ReportBundle::metadata_text() const {
  std::string out;
  std::string config;
  for (const auto& [k, v] : metadata) {
    if (k == "config") config = v;
    else fmt::format_to(std::back_inserter(out), "# {}={}\n", k, v);
  }
  // the whole file stays a valid config file
  if (!config.empty()) out += "\n# config\n" + config;
  return out;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::Internal, kModule, "SHA-256 failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) fmt::format_to(std::back_inserter(hex), "{:02x}", digest[i]);
  return hex;
}

std::vector<ManifestEntry> emit_reports(const ReportBundle& bundle,
                                        const std::filesystem::path& directory) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) {
    throw Error(ErrorKind::Io, kModule,
                fmt::format("cannot create {}: {}", directory.string(), ec.message()));
  }
  const fs::path staging = directory / kStaging;
  fs::remove_all(staging, ec);
  fs::create_directory(staging, ec);
  if (ec) {
    throw Error(ErrorKind::Io, kModule,
                fmt::format("cannot write into {}: {}", directory.string(), ec.message()));
  }

  std::vector<std::pair<std::string, const std::string*>> files;
  const std::string summary = bundle.summary_text();
  const std::string metadata = bundle.metadata_text();
  files.emplace_back("summary.txt", &summary);
  for (const auto& [name, content] : bundle.tables) files.emplace_back(name, &content);

  std::vector<ManifestEntry> manifest;
  std::vector<std::string> names;
  try {
    for (const auto& [name, content] : files) {
      write_file(staging / name, *content);
      manifest.push_back({name, sha256_hex(*content), content->size()});
      names.push_back(name);
    }
    std::sort(manifest.begin(), manifest.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) { return a.name < b.name; });
    std::string text;
    for (const auto& m : manifest) {
      fmt::format_to(std::back_inserter(text), "{}  {}  {}\n", m.sha256, m.bytes, m.name);
    }
    write_file(staging / "manifest.txt", text);
    write_file(staging / "run_metadata.txt", metadata);
    names.push_back("manifest.txt");
    names.push_back("run_metadata.txt");
    for (const auto& name : names) {
      fs::rename(staging / name, directory / name, ec);
      if (ec) {
        throw Error(ErrorKind::Io, kModule,
                    fmt::format("cannot move {} into place: {}", name, ec.message()));
      }
    }
  } catch (...) {
    fs::remove_all(staging, ec);
    throw;
  }
  fs::remove_all(staging, ec);
  return manifest;
}

std::string labels_csv(const LabelReport& report) {
  std::string out = fmt::format("# threshold={} source={} policy={}\naccount_id,label\n",
                                report.threshold.tau, to_string(report.threshold.source),
                                to_string(report.policy));
  for (const auto& [id, label] : report.labels) {
    fmt::format_to(std::back_inserter(out), "{},{}\n", id, to_string(label));
  }
  return out;
}

LabelReport load_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "botsense", fmt::format("cannot open {}", path.string()));
  auto fail = [&](std::size_t line, std::string_view what) {
    throw Error(ErrorKind::Domain, "botsense",
                fmt::format("{}:{}: {}", path.string(), line, what));
  };
  LabelReport r;
  r.threshold.source = ThresholdSource::Imported;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == "account_id,label") continue;
    if (line.front() == '#') {
      if (auto tau = header_field(line, "threshold"); !tau.empty()) {
        double v = 0.0;
        auto [p, ec] = std::from_chars(tau.data(), tau.data() + tau.size(), v);
        if (ec != std::errc() || p != tau.data() + tau.size() || !(v >= 0.0 && v <= 1.0)) {
          fail(n, "bad threshold");
        }
        r.threshold.tau = v;
      }
      if (auto pol = header_field(line, "policy"); !pol.empty()) {
        auto p = parse_policy(pol);
        if (!p) fail(n, "bad policy");
        r.policy = *p;
      }
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string::npos) fail(n, "expected account_id,label");
    AccountId id = 0;
    auto [p, ec] = std::from_chars(line.data(), line.data() + comma, id);
    if (ec != std::errc() || p != line.data() + comma) fail(n, "bad account id");
    auto label = parse_label(std::string_view(line).substr(comma + 1));
    if (!label) fail(n, "bad label");
    if (!r.labels.emplace(id, *label).second) fail(n, "duplicate account");
  }
  if (in.bad()) throw Error(ErrorKind::Io, "botsense", fmt::format("failed reading {}", path.string()));
  for (const auto& [id, l] : r.labels) {
    ++(l == Label::Bot ? r.bots : l == Label::Human ? r.humans : r.unknown);
  }
  return r;
}

}  // namespace botlens
