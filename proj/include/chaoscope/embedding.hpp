#pragma once

#include "chaoscope/series.hpp"

#include <Eigen/Core>

namespace chaoscope {

struct EmbeddingConfig {
  Index dimension = 10;  // d_E
  Index lag = 1;         // tau, in samples

  void validate() const;
  /// Number of delay vectors a series of length n yields.
  Index point_count(Index n) const { return n - (dimension - 1) * lag; }
};

/// One delay vector per row.
using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Delay-coordinate reconstruction: row i is
/// (x[i], x[i + tau], ..., x[i + (d_E - 1) tau]).
class EmbeddedSeries {
 public:
  /// Wraps an explicit point cloud (rows in temporal order). Used for
  /// synthetic trajectories that do not come from a scalar series.
  EmbeddedSeries(PointMatrix points, EmbeddingConfig config, double source_dt);

  const PointMatrix& points() const noexcept { return points_; }
  auto point(Index i) const { return points_.row(i); }
  Index size() const noexcept { return points_.rows(); }
  Index dimension() const noexcept { return points_.cols(); }
  const EmbeddingConfig& config() const noexcept { return config_; }
  double dt() const noexcept { return dt_; }

  double distance(Index a, Index b) const { return (points_.row(a) - points_.row(b)).norm(); }

 private:
  PointMatrix points_;
  EmbeddingConfig config_;
  double dt_;
};

EmbeddedSeries embed(const TimeSeries& ts, const EmbeddingConfig& cfg);

struct NeighborPair {
  Index ref_index = 0;
  Index nbr_index = 0;
  double d0 = 0.0;
};

/// Closest point to `ref_index` among indices i with |i - ref_index| >
/// min_temporal_sep. Equal distances resolve to the smaller index.
/// Only candidates in [0, candidate_end) are considered; the default is all.
NeighborPair nearest_neighbor(const EmbeddedSeries& es, Index ref_index, Index min_temporal_sep,
                              Index candidate_end = -1);

struct Diameter {
  double value = 0.0;
  bool approximate = false;  // bounding-box diagonal, an upper bound
};

/// Largest pairwise distance; exact up to kExactDiameterLimit points.
inline constexpr Index kExactDiameterLimit = 2000;
Diameter attractor_diameter(const EmbeddedSeries& es);

}  // namespace chaoscope
