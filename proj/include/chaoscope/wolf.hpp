#pragma once

#include "chaoscope/embedding.hpp"
#include "chaoscope/estimate.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chaoscope {

/// How a replacement neighbor is chosen among points inside the distance
/// shell and the angular cone around the evolved separation.
///  NearestInCone: shortest separation, ties to the smaller angle.
///  MinAngle: smallest angle, ties to the shorter separation.
enum class ReplacementRule { NearestInCone, MinAngle };

struct WolfParams {
  Index evolve_steps = 3;       // samples evolved between replacement attempts
  double eps_max_frac = 0.10;   // of attractor diameter
  double eps_min_frac = 0.001;  // of attractor diameter
  double theta_max_rad = 0.3;   // angular cutoff for replacement candidates
  ReplacementRule rule = ReplacementRule::NearestInCone;

  void validate() const;
};

std::string_view replacement_rule_name(ReplacementRule r) noexcept;

/// One renormalization interval: separation L at t_start grew to L' at t_end.
struct WolfEvent {
  Index t_start = 0;
  Index t_end = 0;
  double L = 0.0;
  double L_prime = 0.0;
  bool replaced = false;  // neighbor was swapped at t_end
};

struct WolfTrace {
  std::vector<WolfEvent> events;
  double eps_min = 0.0;
  double eps_max = 0.0;
  Index replacements = 0;
  Index restarts = 0;  // neighbor lost (no candidate in the shell) and re-acquired

  Index M() const noexcept { return static_cast<Index>(events.size()); }
};

/// Natural-log growth sum over events divided by the evolved time:
/// sum ln(L'/L) / (sum (t_end - t_start) * dt).
double wolf_exponent(const WolfTrace& trace, double dt);

/// Follows a reference trajectory from `start` while t_end <= stop - 1
/// (stop < 0 means the end of the data), renormalizing every
/// evolve_steps samples. Throws NoNeighbor when no initial neighbor
/// lies in [eps_min, eps_max] outside the exclusion window.
WolfTrace wolf_trace(const EmbeddedSeries& es, const WolfParams& params, Index min_temporal_sep,
                     Index start = 0, Index stop = -1);

/// Same, with the replacement-shell radii given directly.
WolfTrace wolf_trace_with_shell(const EmbeddedSeries& es, const WolfParams& params,
                                Index min_temporal_sep, double eps_min, double eps_max,
                                Index start = 0, Index stop = -1);

/// Absolute shell radii {eps_min, eps_max} for an embedded series.
std::pair<double, double> wolf_shell(const EmbeddedSeries& es, const WolfParams& params);

ExponentEstimate<WolfTrace> wolf_lle(const EmbeddedSeries& es, const WolfParams& params, Index min_temporal_sep);

/// CSV with header t_start,t_end,L,L_prime,replaced.
std::string wolf_trace_csv(const WolfTrace& trace);

}  // namespace chaoscope
