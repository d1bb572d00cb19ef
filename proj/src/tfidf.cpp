// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <fstream>
#include <map>

#include <fmt/format.h>

#include "botlens/lsa.hpp"

namespace botlens {
namespace {
constexpr std::string_view kModule = "lexsent";
}

double CsrMatrix::row_norm(std::size_t i) const {
  double s = 0.0;
  for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += values[p] * values[p];
  return std::sqrt(s);
}

DenseMatrix CsrMatrix::to_dense() const {
  DenseMatrix d(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) d(i, col_index[p]) = values[p];
  }
  return d;
}

TfidfModel tfidf(std::span<const TokenList> documents, const std::set<std::string>& stopwords) {
  std::vector<std::map<std::string, std::size_t>> tf(documents.size());
  std::map<std::string, std::size_t> df;
  for (std::size_t d = 0; d < documents.size(); ++d) {
    for (const auto& t : documents[d]) {
      if (!stopwords.contains(t)) ++tf[d][t];
    }
    for (const auto& [t, c] : tf[d]) ++df[t];
  }
  if (df.empty()) {
    throw Error(ErrorKind::Domain, kModule, "every document is empty after normalization");
  }

  TfidfModel model;
  std::map<std::string_view, std::size_t> column;
  std::vector<double> idf;
  const double n = static_cast<double>(documents.size());
  for (const auto& [t, count] : df) {
    column.emplace(t, model.vocabulary.size());
    model.vocabulary.push_back(t);
    idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
  }

  CsrMatrix& m = model.matrix;
  m.rows = documents.size();
  m.cols = model.vocabulary.size();
  for (const auto& row : tf) {
    const std::size_t begin = m.values.size();
    double norm2 = 0.0;
    for (const auto& [t, count] : row) {  // lexicographic, so columns ascend
      std::size_t j = column.at(t);
      double w = static_cast<double>(count) * idf[j];
      m.col_index.push_back(j);
      m.values.push_back(w);
      norm2 += w * w;
    }
    if (norm2 > 0.0) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (std::size_t p = begin; p < m.values.size(); ++p) m.values[p] *= inv;
    }
    m.row_ptr.push_back(m.values.size());
  }
  return model;
}

std::set<std::string> load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, kModule, fmt::format("cannot open {}", path.string()));
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    for (auto& t : normalize_text(line)) words.insert(std::move(t));
  }
  if (in.bad()) throw Error(ErrorKind::Io, kModule, fmt::format("failed reading {}", path.string()));
  return words;
}

}  // namespace botlens
