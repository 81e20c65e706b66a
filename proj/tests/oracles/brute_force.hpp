#pragma once

// Exhaustive reference computations written against plain std::vector data,
// independent of the library's Eigen-based code paths.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

namespace chaoscope::oracle {

using Points = std::vector<std::vector<double>>;

inline Points delay_vectors(const std::vector<double>& x, std::size_t dim, std::size_t lag) {
  Points out;
  if (x.size() < (dim - 1) * lag + 1) return out;
  const std::size_t count = x.size() - (dim - 1) * lag;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> p(dim);
    for (std::size_t k = 0; k < dim; ++k) p[k] = x[i + k * lag];
    out.push_back(std::move(p));
  }
  return out;
}

inline double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

/// Index of the closest point outside the exclusion window, smaller index on
/// ties; -1 when none. Scans every candidate and compares true distances.
inline long nearest(const Points& pts, std::size_t ref, std::size_t sep, std::size_t end = 0) {
  if (end == 0) end = pts.size();
  long best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < end; ++i) {
    const std::size_t gap = i > ref ? i - ref : ref - i;
    if (gap <= sep) continue;
    const double d = euclid(pts[ref], pts[i]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<long>(i);
    }
  }
  return best;
}

inline double max_pairwise(const Points& pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) best = std::max(best, euclid(pts[i], pts[j]));
  return best;
}

/// |X_k|^2 / N straight from the DFT definition, k = 1..N/2, mean removed.
inline std::vector<double> dft_periodogram(const std::vector<double>& x) {
  const std::size_t n = x.size();
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> out;
  for (std::size_t k = 1; k <= n / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double arg = -2.0 * std::numbers::pi * static_cast<double>(k * t % n) / static_cast<double>(n);
      acc += (x[t] - mean) * std::complex<double>(std::cos(arg), std::sin(arg));
    }
    out.push_back(std::norm(acc) / static_cast<double>(n));
  }
  return out;
}

/// Mean log divergence per step, recomputed for every reference from
/// scratch: pairs from `nearest` restricted to the first n - horizon + 1
/// points, so each pair is followed for the full horizon.
inline std::vector<double> mean_log_divergence(const Points& pts, std::size_t sep,
                                               std::size_t horizon) {
  const std::size_t usable = pts.size() - horizon + 1;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < usable; ++j) {
    const long k = nearest(pts, j, sep, usable);
    if (k >= 0) pairs.emplace_back(j, static_cast<std::size_t>(k));
  }
  std::vector<double> y(horizon, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < horizon; ++i) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& [a, b] : pairs) {
      const double d = euclid(pts[a + i], pts[b + i]);
      if (d > 0.0) {
        sum += std::log(d);
        ++count;
      }
    }
    if (count > 0) y[i] = sum / static_cast<double>(count);
  }
  return y;
}

}  // namespace chaoscope::oracle
