#include "chaoscope/rosenstein.hpp"

#include "chaoscope/error.hpp"
#include "chaoscope/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace chaoscope {

bool DivergenceCurve::defined(Index i) const {
  return i >= 0 && i < static_cast<Index>(y.size()) && std::isfinite(y[static_cast<std::size_t>(i)]);
}

DivergenceCurve divergence_curve(const EmbeddedSeries& es, Index min_temporal_sep, Index horizon,
                                 PairPolicy policy) {
  if (horizon < 2) throw Error(ErrorCode::BadParams, "horizon must be >= 2");
  if (min_temporal_sep < 0) throw Error(ErrorCode::BadParams, "temporal separation must be >= 0");
  const Index n = es.size();
  // References (and their neighbors) must leave room for horizon - 1 steps.
  const Index usable = policy == PairPolicy::FullHorizon ? n - horizon + 1 : n;
  if (usable < 2)
    throw Error(ErrorCode::TooShort, "horizon " + std::to_string(horizon) + " leaves fewer than two "
                                         "usable points out of " + std::to_string(n));

  std::vector<std::optional<NeighborPair>> found(static_cast<std::size_t>(usable));
  parallel_for(found.size(), [&](std::size_t j) {
    try {
      found[j] = nearest_neighbor(es, static_cast<Index>(j), min_temporal_sep, usable);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoNeighbor) throw;
    }
  });

  DivergenceCurve curve;
  curve.horizon = horizon;
  curve.min_temporal_sep = min_temporal_sep;
  curve.dt = es.dt();
  curve.policy = policy;
  for (const auto& p : found)
    if (p) curve.pairs.push_back(*p);
  if (curve.pairs.empty())
    throw Error(ErrorCode::NoNeighbor, "no reference has a neighbor outside the exclusion window");
  if (std::none_of(curve.pairs.begin(), curve.pairs.end(),
                   [](const NeighborPair& p) { return p.d0 > 0.0; }))
    throw Error(ErrorCode::DegenerateNeighbors, "every nearest-neighbor distance is zero");

  const auto steps = static_cast<std::size_t>(horizon);
  curve.y.assign(steps, std::numeric_limits<double>::quiet_NaN());
  curve.pair_counts.assign(steps, 0);
  curve.zero_counts.assign(steps, 0);
  // Each step sums its pairs in index order, independent of the schedule.
  parallel_for(steps, [&](std::size_t s) {
    const auto i = static_cast<Index>(s);
    double log_sum = 0.0;
    Index alive = 0, zeros = 0;
    for (const NeighborPair& p : curve.pairs) {
      if (std::max(p.ref_index, p.nbr_index) + i >= n) continue;
      ++alive;
      const double d = es.distance(p.ref_index + i, p.nbr_index + i);
      if (d > 0.0)
        log_sum += std::log(d);
      else
        ++zeros;
    }
    curve.pair_counts[s] = alive;
    curve.zero_counts[s] = zeros;
    if (alive > zeros) curve.y[s] = log_sum / static_cast<double>(alive - zeros) / es.dt();
  });
  return curve;
}

std::pair<Index, Index> default_fit_range(const DivergenceCurve& curve) {
  const Index hi = std::min(curve.min_temporal_sep, curve.horizon / 2);
  return {0, std::clamp<Index>(hi, 1, curve.horizon - 1)};
}

SlopeFit fit_slope(const DivergenceCurve& curve, std::optional<std::pair<Index, Index>> range) {
  const auto [lo, hi] = range.value_or(default_fit_range(curve));
  if (lo < 0 || hi < lo) throw Error(ErrorCode::BadParams, "fit range must satisfy 0 <= lo <= hi");

  std::vector<double> xs, ys;
  for (Index i = lo; i <= hi; ++i) {
    if (!curve.defined(i)) continue;
    xs.push_back(static_cast<double>(i) * curve.dt);
    ys.push_back(curve.y[static_cast<std::size_t>(i)] * curve.dt);
  }
  if (xs.size() < 2)
    throw Error(ErrorCode::TooShort, "fit range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                         "] has fewer than two defined points");

  const Eigen::Map<const Eigen::VectorXd> x(xs.data(), static_cast<Index>(xs.size()));
  const Eigen::Map<const Eigen::VectorXd> y(ys.data(), static_cast<Index>(ys.size()));
  const Eigen::VectorXd xc = x.array() - x.mean();
  const Eigen::VectorXd yc = y.array() - y.mean();

  SlopeFit fit;
  fit.lo = lo;
  fit.hi = hi;
  fit.slope = xc.dot(yc) / xc.squaredNorm();
  fit.intercept = y.mean() - fit.slope * x.mean();
  const Eigen::VectorXd resid = y.array() - (fit.intercept + fit.slope * x.array());
  fit.residual_rms = std::sqrt(resid.squaredNorm() / static_cast<double>(resid.size()));
  return fit;
}

Index default_horizon(Index n) { return std::max<Index>(2, n / 10); }

ExponentEstimate<RosensteinDiagnostics> rosenstein_lle(const TimeSeries& ts,
                                                       const EmbeddingConfig& cfg, Index horizon,
                                                       const RosensteinOptions& options) {
  const EmbeddedSeries es = embed(ts, cfg);
  const Index h = horizon > 0 ? horizon : default_horizon(ts.size());

  ExponentEstimate<RosensteinDiagnostics> est;
  est.method = Method::Rosenstein;
  auto& diag = est.diagnostics;
  diag.mean_period = mean_period_fft(ts);
  diag.curve = divergence_curve(es, diag.mean_period.samples, h, options.policy);
  diag.fit = fit_slope(diag.curve, options.fit_range);
  est.lambda = diag.fit.slope;
  est.params.numbers = {
      {"m", static_cast<double>(cfg.dimension)},
      {"tau", static_cast<double>(cfg.lag)},
      {"dt", ts.dt()},
      {"horizon", static_cast<double>(h)},
      {"min_temporal_sep", static_cast<double>(diag.mean_period.samples)},
      {"fit_lo", static_cast<double>(diag.fit.lo)},
      {"fit_hi", static_cast<double>(diag.fit.hi)},
  };
  est.params.text = {
      {"mean_period", "fft"},
      {"pair_policy", options.policy == PairPolicy::FullHorizon ? "full-horizon" : "drop-on-exit"},
  };
  return est;
}

std::string divergence_curve_csv(const DivergenceCurve& curve) {
  std::string out = "i,t_seconds,y,pair_count\n";
  char buf[160];
  for (std::size_t i = 0; i < curve.y.size(); ++i) {
    const double t = static_cast<double>(i) * curve.dt;
    if (std::isfinite(curve.y[i]))
      std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%lld\n", i, t, curve.y[i],
                    static_cast<long long>(curve.pair_counts[i]));
    else
      std::snprintf(buf, sizeof buf, "%zu,%.17g,,%lld\n", i, t,
                    static_cast<long long>(curve.pair_counts[i]));
    out += buf;
  }
  return out;
}

}  // namespace chaoscope
