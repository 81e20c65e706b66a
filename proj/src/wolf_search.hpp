#pragma once

// Neighbor queries shared by the Wolf trace and the per-reference runs of
// the modified estimator. Not part of the public API.

#include "chaoscope/embedding.hpp"
#include "chaoscope/wolf.hpp"

#include <optional>
#include <vector>

namespace chaoscope::detail {

/// Shell/cone queries over an embedded series. Candidates are pre-sorted by
/// their first coordinate so a query only visits points whose first
/// coordinate lies within eps_max of the reference; results are identical
/// to an exhaustive scan because every ranking ends with the point index.
class WolfSearch {
 public:
  WolfSearch(const EmbeddedSeries& es, const WolfParams& params, Index min_temporal_sep,
             double eps_min, double eps_max);

  const EmbeddedSeries& series() const noexcept { return es_; }
  const WolfParams& params() const noexcept { return params_; }
  double eps_min() const noexcept { return eps_min_; }
  double eps_max() const noexcept { return eps_max_; }

  bool in_shell(double d) const { return d > 0.0 && d >= eps_min_ && d <= eps_max_; }
  bool admissible(Index ref, Index k) const {
    const Index gap = k > ref ? k - ref : ref - k;
    return gap > sep_ && k + params_.evolve_steps < es_.size();
  }

  /// Closest admissible point inside the shell.
  std::optional<Index> acquire(Index ref) const;

  /// Best admissible in-shell point whose angle to `direction` is below
  /// `theta`, ranked by the replacement rule.
  std::optional<Index> replacement(Index ref, const double* direction, double theta) const;

  /// Runs the renormalized evolution from `start` while t_end <= stop - 1.
  WolfTrace trace(Index start, Index stop) const;

 private:
  template <class Visit>
  void for_each_in_window(Index ref, Visit&& visit) const;

  const EmbeddedSeries& es_;
  const WolfParams& params_;
  Index sep_;
  double eps_min_;
  double eps_max_;
  std::vector<Index> order_;  // indices sorted by first coordinate
  std::vector<double> keys_;  // first coordinate, in sorted order
};

}  // namespace chaoscope::detail
