// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "botlens/lsa.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace botlens;

namespace {

using Tokens = std::vector<std::string>;

DenseMatrix diag(std::initializer_list<double> d, std::size_t rows, std::size_t cols) {
  DenseMatrix m(rows, cols);
  std::size_t i = 0;
  for (double v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

double column_dot(const DenseMatrix& m, std::size_t a, std::size_t b) {
  double s = 0;
  for (std::size_t i = 0; i < m.rows; ++i) s += m(i, a) * m(i, b);
  return s;
}

CsrMatrix sparse_of(const DenseMatrix& d) {
  CsrMatrix c;
  c.rows = d.rows;
  c.cols = d.cols;
  for (std::size_t i = 0; i < d.rows; ++i) {
    for (std::size_t j = 0; j < d.cols; ++j) {
      if (d(i, j) == 0.0) continue;
      c.col_index.push_back(j);
      c.values.push_back(d(i, j));
    }
    c.row_ptr.push_back(c.values.size());
  }
  return c;
}

}  // namespace

TEST_CASE("tfidf on hand examples") {
  // a single document: every df = N, so idf = ln(2/2) + 1 = 1
  std::vector<TokenList> one = {Tokens{"a", "b", "a"}};
  auto m = tfidf(one);
  REQUIRE(m.vocabulary == Tokens{"a", "b"});
  auto d = m.matrix.to_dense();
  CHECK(d(0, 0) == doctest::Approx(2 / std::sqrt(5.0)).epsilon(1e-14));
  CHECK(d(0, 1) == doctest::Approx(1 / std::sqrt(5.0)).epsilon(1e-14));

  // two documents: "x" in both (idf 1), "y" only in the first
  std::vector<TokenList> two = {Tokens{"x", "y"}, Tokens{"x"}};
  auto t = tfidf(two).matrix.to_dense();
  const double idf_y = std::log(3.0 / 2.0) + 1.0;
  const double n0 = std::sqrt(1.0 + idf_y * idf_y);
  CHECK(t(0, 0) == doctest::Approx(1 / n0).epsilon(1e-14));
  CHECK(t(0, 1) == doctest::Approx(idf_y / n0).epsilon(1e-14));
  CHECK(t(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(t(1, 1) == 0.0);

  std::vector<TokenList> stop = {Tokens{"de", "la"}, Tokens{"el"}};
  CHECK_THROWS_AS(tfidf(stop, {"de", "la", "el"}), Error);
  std::vector<TokenList> none;
  CHECK_THROWS_AS(tfidf(none), Error);

  std::vector<TokenList> partial = {Tokens{"de", "zeta"}, Tokens{"el"}};
  auto p = tfidf(partial, {"de", "el"});
  CHECK(p.vocabulary == Tokens{"zeta"});
  CHECK(p.matrix.rows == 2);
  CHECK(p.matrix.row_norm(1) == 0.0);
}

TEST_CASE("tfidf properties on random documents") {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<TokenList> docs(2 + rng() % 20);
    for (auto& doc : docs) {
      const std::size_t len = rng() % 12;
      for (std::size_t i = 0; i < len; ++i) doc.push_back(std::string(1, static_cast<char>('a' + rng() % 15)));
    }
    docs[0].push_back("q");
    auto m = tfidf(docs);
    CHECK(std::is_sorted(m.vocabulary.begin(), m.vocabulary.end()));
    CHECK(std::adjacent_find(m.vocabulary.begin(), m.vocabulary.end()) == m.vocabulary.end());
    CHECK(m.matrix.cols == m.vocabulary.size());
    REQUIRE(m.matrix.rows == docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const double n = m.matrix.row_norm(i);
      if (docs[i].empty()) {
        CHECK(n == 0.0);
      } else {
        CHECK(std::abs(n - 1.0) <= 1e-12);
      }
    }
    for (double v : m.matrix.values) CHECK(v > 0.0);
  }
}

TEST_CASE("svd of known matrices") {
  SUBCASE("rank one") {
    // u = (1,2,2)/3, v = (3,4)/5, sigma = 6
    DenseMatrix a(3, 2);
    const double u[] = {1 / 3.0, 2 / 3.0, 2 / 3.0}, v[] = {0.6, 0.8};
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 2; ++j) a(i, j) = 6 * u[i] * v[j];
    }
    auto r = truncated_svd(a, 1);
    CHECK(std::abs(r.singular_values[0] - 6.0) <= 1e-9);
    CHECK(std::abs(r.right_vectors(0, 0) - 0.6) <= 1e-9);
    CHECK(std::abs(r.right_vectors(1, 0) - 0.8) <= 1e-9);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(r.projections(i, 0) - 6 * u[i]) <= 1e-9);
  }
  SUBCASE("diagonal") {
    auto a = diag({3, 2, 1}, 4, 3);
    auto r = truncated_svd(a, 3);
    REQUIRE(r.singular_values.size() == 3);
    CHECK(std::abs(r.singular_values[0] - 3) <= 1e-9);
    CHECK(std::abs(r.singular_values[1] - 2) <= 1e-9);
    CHECK(std::abs(r.singular_values[2] - 1) <= 1e-9);
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(r.right_vectors(j, j) - 1.0) <= 1e-9);
  }
}

TEST_CASE("svd against an eigen-decomposition oracle on random matrices") {
  std::mt19937_64 rng(2016);
  for (int rep = 0; rep < 20; ++rep) {
    CAPTURE(rep);
    auto a = oracle::random_matrix(10, 8, rng);
    const std::size_t k = 1 + rep % 5;
    auto r = truncated_svd(a, k);
    auto want = oracle::singular_values(a);
    REQUIRE(r.singular_values.size() == k);
    for (std::size_t i = 0; i < k; ++i) CHECK(std::abs(r.singular_values[i] - want[i]) <= 1e-6);
    for (std::size_t i = 1; i < k; ++i) CHECK(r.singular_values[i - 1] >= r.singular_values[i]);

    // orthonormal right vectors, projections = A V, Gram eigenvalues = sigma^2
    REQUIRE(r.right_vectors.rows == 8);
    REQUIRE(r.right_vectors.cols == k);
    for (std::size_t p = 0; p < k; ++p) {
      for (std::size_t q = 0; q < k; ++q) {
        CHECK(std::abs(column_dot(r.right_vectors, p, q) - (p == q ? 1.0 : 0.0)) <= 1e-9);
      }
    }
    for (std::size_t i = 0; i < a.rows; ++i) {
      for (std::size_t c = 0; c < k; ++c) {
        double s = 0;
        for (std::size_t j = 0; j < a.cols; ++j) s += a(i, j) * r.right_vectors(j, c);
        CHECK(std::abs(r.projections(i, c) - s) <= 1e-9);
      }
    }
    auto gram = oracle::gram_eigenvalues(r.projections);
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(std::abs(gram[i] - want[i] * want[i]) <= 1e-6 * std::max(1.0, want[i] * want[i]));
    }
    // sign rule
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t arg = 0;
      for (std::size_t j = 1; j < 8; ++j) {
        if (std::abs(r.right_vectors(j, c)) > std::abs(r.right_vectors(arg, c))) arg = j;
      }
      CHECK(r.right_vectors(arg, c) > 0);
    }

    auto rs = truncated_svd(sparse_of(a), k);
    CHECK(rs.singular_values == r.singular_values);
    CHECK(rs.right_vectors.data == r.right_vectors.data);
    CHECK(rs.projections.data == r.projections.data);
  }
}

TEST_CASE("csr and dense agree on sparse tfidf input") {
  std::vector<TokenList> docs = {Tokens{"matar", "bala"}, Tokens{"bala", "hola"}, Tokens{"hola"},
                                 Tokens{"guerra", "matar", "matar"}, Tokens{"nada"}};
  auto m = tfidf(docs);
  auto sparse = truncated_svd(m.matrix, 2);
  auto dense = truncated_svd(m.matrix.to_dense(), 2);
  CHECK(sparse.singular_values == dense.singular_values);
  CHECK(sparse.projections.data == dense.projections.data);
  auto want = oracle::singular_values(m.matrix.to_dense());
  CHECK(std::abs(sparse.singular_values[0] - want[0]) <= 1e-9);
  CHECK(std::abs(sparse.singular_values[1] - want[1]) <= 1e-9);
}

TEST_CASE("svd errors") {
  auto a = diag({3, 2, 1}, 4, 3);
  CHECK_THROWS_AS(truncated_svd(a, 0), Error);
  CHECK_THROWS_AS(truncated_svd(a, 4), Error);
  SvdOptions bad_tol;
  bad_tol.tol = 0.0;
  CHECK_THROWS_AS(truncated_svd(a, 1, bad_tol), Error);

  std::mt19937_64 rng(3);
  auto r = oracle::random_matrix(12, 9, rng);
  SvdOptions short_run;
  short_run.max_iterations = 1;
  try {
    truncated_svd(r, 3, short_run);
    FAIL("expected a convergence error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Convergence);
  }
}
