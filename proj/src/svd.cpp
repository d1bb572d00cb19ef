// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "botlens/lsa.hpp"

namespace botlens {
namespace {

constexpr std::string_view kModule = "lexsent";

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

struct DenseOp {
  const DenseMatrix& a;
  std::size_t rows() const { return a.rows; }
  std::size_t cols() const { return a.cols; }
  Vec apply(const Vec& x) const {
    Vec y(a.rows, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < a.cols; ++j) s += a(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }
  Vec apply_t(const Vec& y) const {
    Vec x(a.cols, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
      for (std::size_t j = 0; j < a.cols; ++j) x[j] += a(i, j) * y[i];
    }
    return x;
  }
};

struct CsrOp {
  const CsrMatrix& a;
  std::size_t rows() const { return a.rows; }
  std::size_t cols() const { return a.cols; }
  Vec apply(const Vec& x) const {
    Vec y(a.rows, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
      double s = 0.0;
      for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) s += a.values[p] * x[a.col_index[p]];
      y[i] = s;
    }
    return y;
  }
  Vec apply_t(const Vec& y) const {
    Vec x(a.cols, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
      for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) x[a.col_index[p]] += a.values[p] * y[i];
    }
    return x;
  }
};

Vec random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(n);
  for (auto& x : v) x = normal(rng);
  return v;
}

// Removes the components along q[0..count) twice (classical Gram-Schmidt with
// reorthogonalization) and returns the remaining norm.
double orthogonalize(Vec& v, const std::vector<Vec>& q, std::size_t count) {
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < count; ++i) {
      const double c = dot(q[i], v);
      for (std::size_t t = 0; t < v.size(); ++t) v[t] -= c * q[i][t];
    }
  }
  return norm(v);
}

// Orthonormalizes the columns in place. A column that collapses onto the
// previous ones (rank deficiency) is replaced by a fresh random direction.
void orthonormalize(std::vector<Vec>& cols, std::mt19937_64& rng) {
  double scale = 0.0;
  for (const auto& c : cols) scale = std::max(scale, norm(c));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    double r = orthogonalize(cols[j], cols, j);
    if (r == 0.0 || r <= 1e-12 * scale) {
      for (int attempt = 0;; ++attempt) {
        if (attempt == 64) {
          throw Error(ErrorKind::Internal, kModule, "cannot complete an orthonormal basis");
        }
        cols[j] = random_vector(cols[j].size(), rng);
        const double before = norm(cols[j]);
        r = orthogonalize(cols[j], cols, j);
        if (r > 1e-8 * before) break;
      }
    }
    for (auto& x : cols[j]) x /= r;
  }
}

// Cyclic Jacobi on a small symmetric matrix. Returns eigenvalues in descending
// order; eigenvectors[c] is the eigenvector for eigenvalue c.
void symmetric_eigen(std::vector<Vec> h, Vec& values, std::vector<Vec>& vectors) {
  const std::size_t p = h.size();
  std::vector<Vec> u(p, Vec(p, 0.0));
  for (std::size_t i = 0; i < p; ++i) u[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, total = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        total += h[i][j] * h[i][j];
        if (i != j) off += h[i][j] * h[i][j];
      }
    }
    if (off <= 1e-30 * total || off == 0.0) break;
    for (std::size_t a = 0; a + 1 < p; ++a) {
      for (std::size_t b = a + 1; b < p; ++b) {
        if (h[a][b] == 0.0) continue;
        const double theta = (h[b][b] - h[a][a]) / (2.0 * h[a][b]);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < p; ++k) {
          const double hka = h[k][a], hkb = h[k][b];
          h[k][a] = c * hka - s * hkb;
          h[k][b] = s * hka + c * hkb;
        }
        for (std::size_t k = 0; k < p; ++k) {
          const double hak = h[a][k], hbk = h[b][k];
          h[a][k] = c * hak - s * hbk;
          h[b][k] = s * hak + c * hbk;
        }
        for (std::size_t k = 0; k < p; ++k) {
          const double uka = u[k][a], ukb = u[k][b];
          u[k][a] = c * uka - s * ukb;
          u[k][b] = s * uka + c * ukb;
        }
      }
    }
  }
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return h[x][x] > h[y][y]; });
  values.assign(p, 0.0);
  vectors.assign(p, Vec(p, 0.0));
  for (std::size_t c = 0; c < p; ++c) {
    values[c] = h[order[c]][order[c]];
    for (std::size_t k = 0; k < p; ++k) vectors[c][k] = u[k][order[c]];
  }
}

template <class Op>
SvdResult run_svd(const Op& op, std::size_t k, const SvdOptions& options) {
  const std::size_t m = op.rows();
  const std::size_t n = op.cols();
  if (k == 0 || k > std::min(m, n)) {
    throw Error(ErrorKind::Domain, kModule,
                fmt::format("k = {} outside [1, {}] for a {}x{} matrix", k, std::min(m, n), m, n));
  }
  if (!(options.tol > 0.0)) {
    throw Error(ErrorKind::Domain, kModule, fmt::format("tol must be > 0, got {}", options.tol));
  }
  if (options.max_iterations == 0) {
    throw Error(ErrorKind::Domain, kModule, "max_iterations must be >= 1");
  }

  // A few extra columns speed up convergence of the leading k values.
  const std::size_t p = std::min(n, std::max(2 * k, k + 8));
  std::mt19937_64 rng(options.seed);
  std::vector<Vec> q(p);
  for (auto& col : q) col = random_vector(n, rng);
  orthonormalize(q, rng);

  Vec sigma(p, 0.0), previous(p, 0.0);
  std::size_t it = 0;
  bool converged = false;
  while (it < options.max_iterations) {
    ++it;
    for (auto& col : q) col = op.apply_t(op.apply(col));
    orthonormalize(q, rng);

    // Rayleigh-Ritz on span(q): eigen-decompose (Aq)^T (Aq).
    std::vector<Vec> b(p);
    for (std::size_t j = 0; j < p; ++j) b[j] = op.apply(q[j]);
    std::vector<Vec> h(p, Vec(p, 0.0));
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = i; j < p; ++j) h[i][j] = h[j][i] = dot(b[i], b[j]);
    }
    Vec lambda;
    std::vector<Vec> u;
    symmetric_eigen(std::move(h), lambda, u);
    std::vector<Vec> ritz(p, Vec(n, 0.0));
    for (std::size_t c = 0; c < p; ++c) {
      for (std::size_t j = 0; j < p; ++j) {
        const double w = u[c][j];
        for (std::size_t t = 0; t < n; ++t) ritz[c][t] += w * q[j][t];
      }
    }
    q = std::move(ritz);
    for (std::size_t c = 0; c < p; ++c) sigma[c] = std::sqrt(std::max(lambda[c], 0.0));

    if (it > 1) {
      double change = 0.0;
      for (std::size_t c = 0; c < k; ++c) change = std::max(change, std::abs(sigma[c] - previous[c]));
      if (change < options.tol) {
        converged = true;
        break;
      }
    }
    previous = sigma;
  }

  if (!converged) {
    double residual = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      Vec r = op.apply_t(op.apply(q[c]));
      for (std::size_t t = 0; t < n; ++t) r[t] -= sigma[c] * sigma[c] * q[c][t];
      residual = std::max(residual, norm(r));
    }
    throw Error(ErrorKind::Convergence, kModule,
                fmt::format("no convergence after {} iterations (residual {:.3e})",
                            options.max_iterations, residual));
  }

  SvdResult out;
  out.iterations = it;
  out.singular_values.assign(sigma.begin(), sigma.begin() + static_cast<std::ptrdiff_t>(k));
  out.right_vectors = DenseMatrix(n, k);
  out.projections = DenseMatrix(m, k);
  for (std::size_t c = 0; c < k; ++c) {
    Vec& v = q[c];
    std::size_t big = 0;
    for (std::size_t t = 1; t < n; ++t) {
      if (std::abs(v[t]) > std::abs(v[big])) big = t;
    }
    if (v[big] < 0.0) {
      for (auto& x : v) x = -x;
    }
    for (std::size_t t = 0; t < n; ++t) out.right_vectors(t, c) = v[t];
    Vec proj = op.apply(v);
    for (std::size_t i = 0; i < m; ++i) out.projections(i, c) = proj[i];
  }
  return out;
}

}  // namespace

SvdResult truncated_svd(const DenseMatrix& a, std::size_t k, const SvdOptions& options) {
  return run_svd(DenseOp{a}, k, options);
}

SvdResult truncated_svd(const CsrMatrix& a, std::size_t k, const SvdOptions& options) {
  return run_svd(CsrOp{a}, k, options);
}

}  // namespace botlens
