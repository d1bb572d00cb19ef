// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "botlens/botsense.hpp"
#include "botlens/parallel.hpp"

namespace botlens {
namespace {

constexpr std::string_view kModule = "botsense";

std::vector<double> trapezoid_weights(std::size_t grid_size) {
  const double step = 1.0 / static_cast<double>(grid_size - 1);
  std::vector<double> w(grid_size, step);
  w.front() = w.back() = step / 2.0;
  return w;
}

}  // namespace

PointSet::PointSet(std::size_t dims, std::vector<double> values)
    : dims_(dims), values_(std::move(values)) {
  if (dims_ == 0 || values_.size() % dims_ != 0) {
    throw Error(ErrorKind::Domain, kModule, "point data is not a whole number of rows");
  }
}

void PointSet::push_back(std::span<const double> point) {
  if (point.size() != dims_) {
    throw Error(ErrorKind::Domain, kModule,
                fmt::format("point has {} coordinates, expected {}", point.size(), dims_));
  }
  values_.insert(values_.end(), point.begin(), point.end());
}

std::vector<std::size_t> DensityGrid::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(dims);
  for (std::size_t k = dims; k-- > 0;) {
    idx[k] = flat % grid_size;
    flat /= grid_size;
  }
  return idx;
}

double DensityGrid::integral() const {
  const auto w = trapezoid_weights(grid_size);
  double total = 0.0;
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    double weight = 1.0;
    std::size_t rest = flat;
    for (std::size_t k = 0; k < dims; ++k) {
      weight *= w[rest % grid_size];
      rest /= grid_size;
    }
    total += weight * values[flat];
  }
  return total;
}

std::string DensityGrid::to_csv(std::span<const std::string> axis_names) const {
  std::string out;
  for (std::size_t k = 0; k < dims; ++k) {
    out += k < axis_names.size() ? axis_names[k] : fmt::format("x{}", k + 1);
    out += ',';
  }
  out += "density\n";
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    for (std::size_t i : unflatten(flat)) fmt::format_to(std::back_inserter(out), "{},", axis(i));
    fmt::format_to(std::back_inserter(out), "{}\n", values[flat]);
  }
  return out;
}

std::vector<double> scott_bandwidth(const PointSet& points) {
  const std::size_t n = points.size();
  const std::size_t d = points.dims();
  if (n < 2) {
    throw Error(ErrorKind::Domain, kModule,
                fmt::format("bandwidth selection needs at least 2 points, got {}", n));
  }
  const double factor = std::pow(static_cast<double>(n), -1.0 / (static_cast<double>(d) + 4.0));
  std::vector<double> h(d);
  for (std::size_t k = 0; k < d; ++k) {
    double mean = 0.0;
    for (std::size_t j = 0; j < n; ++j) mean += points.row(j)[k];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double dev = points.row(j)[k] - mean;
      ss += dev * dev;
    }
    double sigma = std::sqrt(ss / static_cast<double>(n - 1));
    bool constant = sigma <= 1e-12 * std::max(1.0, std::abs(mean));
    h[k] = constant ? 0.01 : sigma * factor;
  }
  return h;
}

DensityGrid kde(const PointSet& points, std::size_t grid_size, std::span<const double> bandwidths,
                unsigned threads) {
  const std::size_t d = points.dims();
  const std::size_t n = points.size();
  if (d < 1 || d > 3) {
    throw Error(ErrorKind::Unsupported, kModule,
                fmt::format("density estimation supports 1-3 dimensions, got {}", d));
  }
  if (n == 0) throw Error(ErrorKind::Domain, kModule, "density estimate of an empty point set");
  if (grid_size < 2) throw Error(ErrorKind::Domain, kModule, "grid needs at least 2 nodes per axis");
  if (bandwidths.size() != d) {
    throw Error(ErrorKind::Domain, kModule,
                fmt::format("{} bandwidths given for {} dimensions", bandwidths.size(), d));
  }
  for (double h : bandwidths) {
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw Error(ErrorKind::Domain, kModule, fmt::format("bandwidth must be positive, got {}", h));
    }
  }
  for (double v : points.values()) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorKind::Domain, kModule, fmt::format("point coordinate {} outside [0,1]", v));
    }
  }

  DensityGrid grid;
  grid.dims = d;
  grid.grid_size = grid_size;
  grid.bandwidths.assign(bandwidths.begin(), bandwidths.end());

  // kernel[k][j * G + g]: 1D kernel of point j along axis k at node g.
  const std::size_t G = grid_size;
  std::vector<std::vector<double>> kernel(d, std::vector<double>(n * G));
  for (std::size_t k = 0; k < d; ++k) {
    const double h = bandwidths[k];
    const double norm = 1.0 / (h * std::sqrt(2.0 * std::numbers::pi));
    for (std::size_t j = 0; j < n; ++j) {
      const double p = points.row(j)[k];
      for (std::size_t g = 0; g < G; ++g) {
        const double u = (grid.axis(g) - p) / h;
        kernel[k][j * G + g] = norm * std::exp(-0.5 * u * u);
      }
    }
  }

  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= G;
  grid.values.assign(total, 0.0);
  const std::size_t slice = total / G;  // nodes sharing the first-axis index
  const double inv_n = 1.0 / static_cast<double>(n);

  parallel_for(G, threads, [&](std::size_t g0) {
    double* acc = grid.values.data() + g0 * slice;
    for (std::size_t j = 0; j < n; ++j) {
      const double k0 = kernel[0][j * G + g0];
      if (d == 1) {
        acc[0] += k0;
        continue;
      }
      const double* k1 = kernel[1].data() + j * G;
      if (d == 2) {
        for (std::size_t g1 = 0; g1 < G; ++g1) acc[g1] += k0 * k1[g1];
        continue;
      }
      const double* k2 = kernel[2].data() + j * G;
      for (std::size_t g1 = 0; g1 < G; ++g1) {
        const double k01 = k0 * k1[g1];
        double* row = acc + g1 * G;
        for (std::size_t g2 = 0; g2 < G; ++g2) row[g2] += k01 * k2[g2];
      }
    }
    for (std::size_t i = 0; i < slice; ++i) acc[i] *= inv_n;
  });
  return grid;
}

}  // namespace botlens
