#pragma once

#include "chaoscope/embedding.hpp"
#include "chaoscope/estimate.hpp"
#include "chaoscope/spectral.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chaoscope {

/// Which reference points contribute to the divergence curve.
///  FullHorizon: only pairs whose trajectories stay inside the data for the
///    whole horizon, so every step averages over the same pairs.
///  DropOnExit: every point is a reference; a pair leaves the average once
///    either trajectory runs off the end of the data.
enum class PairPolicy { FullHorizon, DropOnExit };

struct DivergenceCurve {
  std::vector<double> y;            // (1/dt) mean ln d_j(i); NaN where no pair has d > 0
  std::vector<Index> pair_counts;   // pairs tracked at step i
  std::vector<Index> zero_counts;   // tracked pairs skipped at step i because d_j(i) = 0
  std::vector<NeighborPair> pairs;  // one per contributing reference
  Index horizon = 0;
  Index min_temporal_sep = 0;
  double dt = 1.0;
  PairPolicy policy = PairPolicy::FullHorizon;

  bool defined(Index i) const;
};

DivergenceCurve divergence_curve(const EmbeddedSeries& es, Index min_temporal_sep, Index horizon,
                                 PairPolicy policy = PairPolicy::FullHorizon);

struct SlopeFit {
  double slope = 0.0;      // nats per time unit
  double intercept = 0.0;
  Index lo = 0;
  Index hi = 0;
  double residual_rms = 0.0;
};

/// Default fit window: [0, min(min_temporal_sep, horizon / 2)], at least [0, 1].
std::pair<Index, Index> default_fit_range(const DivergenceCurve& curve);

/// Ordinary least squares of y[i] dt against i dt over the inclusive range,
/// skipping undefined steps.
SlopeFit fit_slope(const DivergenceCurve& curve,
                   std::optional<std::pair<Index, Index>> range = std::nullopt);

struct RosensteinDiagnostics {
  DivergenceCurve curve;
  SlopeFit fit;
  MeanPeriod mean_period;
};

struct RosensteinOptions {
  std::optional<std::pair<Index, Index>> fit_range;
  PairPolicy policy = PairPolicy::FullHorizon;
};

/// Horizon used when the caller passes 0: N / 10 samples (at least 2).
Index default_horizon(Index n);

/// Mean period from the FFT sets the temporal exclusion; the exponent is the
/// slope of the fitted divergence curve.
ExponentEstimate<RosensteinDiagnostics> rosenstein_lle(const TimeSeries& ts,
                                                       const EmbeddingConfig& cfg,
                                                       Index horizon = 0,
                                                       const RosensteinOptions& options = {});

/// CSV with header i,t_seconds,y,pair_count.
std::string divergence_curve_csv(const DivergenceCurve& curve);

}  // namespace chaoscope
