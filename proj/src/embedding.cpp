#include "chaoscope/embedding.hpp"

#include "chaoscope/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chaoscope {

void EmbeddingConfig::validate() const {
  if (dimension < 1) throw Error(ErrorCode::BadParams, "embedding dimension must be >= 1");
  if (lag < 1) throw Error(ErrorCode::BadParams, "embedding lag must be >= 1");
}

EmbeddedSeries::EmbeddedSeries(PointMatrix points, EmbeddingConfig config, double source_dt)
    : points_(std::move(points)), config_(config), dt_(source_dt) {
  config_.validate();
  if (points_.cols() != config_.dimension)
    throw Error(ErrorCode::BadParams, "point width does not match embedding dimension");
  if (points_.rows() < 2) throw Error(ErrorCode::TooShort, "need at least two embedded points");
  if (!(dt_ > 0.0)) throw Error(ErrorCode::BadParams, "time step must be positive");
}

EmbeddedSeries embed(const TimeSeries& ts, const EmbeddingConfig& cfg) {
  cfg.validate();
  const Index count = cfg.point_count(ts.size());
  if (count < 2)
    throw Error(ErrorCode::TooShort, "series of length " + std::to_string(ts.size()) +
                                         " yields fewer than two points for d_E=" +
                                         std::to_string(cfg.dimension) +
                                         ", tau=" + std::to_string(cfg.lag));
  PointMatrix points(count, cfg.dimension);
  const auto& x = ts.samples();
  for (Index k = 0; k < cfg.dimension; ++k) points.col(k) = x.segment(k * cfg.lag, count);
  return EmbeddedSeries(std::move(points), cfg, ts.dt());
}

NeighborPair nearest_neighbor(const EmbeddedSeries& es, Index ref_index, Index min_temporal_sep,
                              Index candidate_end) {
  const Index end = candidate_end < 0 ? es.size() : std::min(candidate_end, es.size());
  if (ref_index < 0 || ref_index >= es.size())
    throw Error(ErrorCode::BadParams, "reference index out of range");
  if (min_temporal_sep < 0) throw Error(ErrorCode::BadParams, "temporal separation must be >= 0");

  const auto ref = es.point(ref_index);
  NeighborPair best{ref_index, -1, std::numeric_limits<double>::infinity()};
  double best_sq = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < end; ++i) {
    const Index gap = i > ref_index ? i - ref_index : ref_index - i;
    if (gap <= min_temporal_sep) continue;
    const double d2 = (es.point(i) - ref).squaredNorm();
    if (d2 < best_sq) {
      best_sq = d2;
      best.nbr_index = i;
    }
  }
  if (best.nbr_index < 0)
    throw Error(ErrorCode::NoNeighbor, "no candidate outside the temporal exclusion window of " +
                                           std::to_string(min_temporal_sep));
  best.d0 = es.distance(ref_index, best.nbr_index);
  return best;
}

Diameter attractor_diameter(const EmbeddedSeries& es) {
  const Index n = es.size();
  if (n < 2) throw Error(ErrorCode::TooShort, "diameter needs at least two points");
  if (n > kExactDiameterLimit) {
    const Eigen::RowVectorXd span =
        es.points().colwise().maxCoeff() - es.points().colwise().minCoeff();
    return {span.norm(), true};
  }
  double best = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) best = std::max(best, (es.point(i) - es.point(j)).squaredNorm());
  return {std::sqrt(best), false};
}

}  // namespace chaoscope
