// SPDX-License-Identifier: Apache-2.0
#pragma once

// Bag-of-words TF-IDF and truncated SVD (latent semantic projection).

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "botlens/lexsent.hpp"

namespace botlens {

/// Row-major dense matrix.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Compressed sparse rows.
struct CsrMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col_index;
  std::vector<double> values;

  double row_norm(std::size_t i) const;
  DenseMatrix to_dense() const;
};

struct TfidfModel {
  std::vector<std::string> vocabulary;  // lexicographic; column order
  CsrMatrix matrix;                     // one row per document
};

/// tf = raw count, idf = ln((1+N)/(1+df)) + 1, rows scaled to unit norm
/// (empty rows stay zero). Stop words are removed before counting.
/// All documents empty is a domain error.
TfidfModel tfidf(std::span<const TokenList> documents, const std::set<std::string>& stopwords = {});

/// Stop words, one per line, normalized like tweet text.
std::set<std::string> load_stopwords(const std::filesystem::path& path);

struct SvdOptions {
  double tol = 1e-10;
  std::size_t max_iterations = 2000;
  std::uint64_t seed = 20160819;
};

struct SvdResult {
  std::vector<double> singular_values;  // descending
  DenseMatrix right_vectors;            // cols x k, orthonormal columns
  DenseMatrix projections;              // rows x k = A * right_vectors
  std::size_t iterations = 0;
};

/// Top-k singular triplets by orthogonal (subspace) iteration on A^T A with a
/// Rayleigh-Ritz step, until successive singular values move less than tol.
/// Each right vector's largest-magnitude component is made positive.
/// Throws Error(Domain) for k outside [1, min(rows, cols)] or tol <= 0 and
/// Error(Convergence) after max_iterations.
SvdResult truncated_svd(const DenseMatrix& a, std::size_t k, const SvdOptions& options = {});
SvdResult truncated_svd(const CsrMatrix& a, std::size_t k, const SvdOptions& options = {});

}  // namespace botlens
