#include "chaoscope/wolf.hpp"

#include "chaoscope/error.hpp"
#include "wolf_search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <tuple>
#include <vector>

namespace chaoscope {

void WolfParams::validate() const {
  if (evolve_steps < 1) throw Error(ErrorCode::BadParams, "evolve_steps must be >= 1");
  if (!(eps_max_frac > 0.0 && eps_max_frac <= 1.0))
    throw Error(ErrorCode::BadParams, "eps_max_frac must lie in (0, 1]");
  if (!(eps_min_frac >= 0.0 && eps_min_frac < eps_max_frac))
    throw Error(ErrorCode::BadParams, "eps_min_frac must satisfy 0 <= eps_min_frac < eps_max_frac");
  if (!(theta_max_rad > 0.0)) throw Error(ErrorCode::BadParams, "theta_max_rad must be positive");
}

std::string_view replacement_rule_name(ReplacementRule r) noexcept {
  return r == ReplacementRule::NearestInCone ? "nearest-in-cone" : "min-angle";
}

double wolf_exponent(const WolfTrace& trace, double dt) {
  if (trace.events.empty())
    throw Error(ErrorCode::InsufficientEvolution, "no completed evolution interval");
  double log_sum = 0.0;
  Index span = 0;
  for (const WolfEvent& e : trace.events) {
    log_sum += std::log(e.L_prime / e.L);
    span += e.t_end - e.t_start;
  }
  return log_sum / (static_cast<double>(span) * dt);
}

namespace detail {

namespace {

double squared_distance(const double* a, const double* b, Index dim) {
  double sum = 0.0;
  for (Index k = 0; k < dim; ++k) {
    const double diff = a[k] - b[k];
    sum += diff * diff;
  }
  return sum;
}

}  // namespace

WolfSearch::WolfSearch(const EmbeddedSeries& es, const WolfParams& params, Index min_temporal_sep,
                       double eps_min, double eps_max)
    : es_(es), params_(params), sep_(min_temporal_sep), eps_min_(eps_min), eps_max_(eps_max) {
  order_.resize(static_cast<std::size_t>(es.size()));
  for (Index i = 0; i < es.size(); ++i) order_[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order_.begin(), order_.end(), [&](Index a, Index b) {
    return es.points()(a, 0) < es.points()(b, 0);
  });
  keys_.reserve(order_.size());
  for (Index i : order_) keys_.push_back(es.points()(i, 0));
}

template <class Visit>
void WolfSearch::for_each_in_window(Index ref, Visit&& visit) const {
  const double x0 = es_.points()(ref, 0);
  const double pad = eps_max_ * (1.0 + 1e-9);
  auto lo = std::lower_bound(keys_.begin(), keys_.end(), x0 - pad);
  const auto hi = std::upper_bound(lo, keys_.end(), x0 + pad);
  const double* origin = es_.points().row(ref).data();
  const Index dim = es_.dimension();
  for (auto it = lo; it != hi; ++it) {
    const Index k = order_[static_cast<std::size_t>(it - keys_.begin())];
    if (!admissible(ref, k)) continue;
    const double* p = es_.points().row(k).data();
    const double d = std::sqrt(squared_distance(p, origin, dim));
    if (in_shell(d)) visit(k, p, origin, d);
  }
}

std::optional<Index> WolfSearch::acquire(Index ref) const {
  std::optional<Index> best;
  double best_d = std::numeric_limits<double>::infinity();
  for_each_in_window(ref, [&](Index k, const double*, const double*, double d) {
    if (d < best_d || (d == best_d && k < *best)) {
      best_d = d;
      best = k;
    }
  });
  return best;
}

std::optional<Index> WolfSearch::replacement(Index ref, const double* direction,
                                             double theta) const {
  const Index dim = es_.dimension();
  double dir_sq = 0.0;
  for (Index c = 0; c < dim; ++c) dir_sq += direction[c] * direction[c];
  const double dir_norm = std::sqrt(dir_sq);
  if (!(dir_norm > 0.0)) return std::nullopt;

  std::optional<Index> best;
  double best_angle = std::numeric_limits<double>::infinity();
  double best_d = std::numeric_limits<double>::infinity();
  const bool nearest = params_.rule == ReplacementRule::NearestInCone;
  for_each_in_window(ref, [&](Index k, const double* p, const double* origin, double d) {
    double dot = 0.0;
    for (Index c = 0; c < dim; ++c) dot += (p[c] - origin[c]) * direction[c];
    const double angle = std::acos(std::clamp(dot / (d * dir_norm), -1.0, 1.0));
    if (!(angle < theta)) return;
    const auto key = nearest ? std::tuple(d, angle, k) : std::tuple(angle, d, k);
    if (!best || key < (nearest ? std::tuple(best_d, best_angle, *best)
                                : std::tuple(best_angle, best_d, *best))) {
      best_angle = angle;
      best_d = d;
      best = k;
    }
  });
  return best;
}

WolfTrace WolfSearch::trace(Index start, Index stop) const {
  const Index steps = params_.evolve_steps;
  const Index n = es_.size();
  const Index dim = es_.dimension();
  const Index last = stop < 0 ? n - 1 : std::min(stop - 1, n - 1);
  if (start < 0 || start >= n) throw Error(ErrorCode::BadParams, "start index out of range");
  if (last - start < steps)
    throw Error(ErrorCode::TooShort, "not enough points to evolve " + std::to_string(steps) +
                                         " steps");
  const auto dist = [&](Index a, Index b) {
    return std::sqrt(squared_distance(es_.points().row(a).data(), es_.points().row(b).data(), dim));
  };

  WolfTrace trace;
  trace.eps_min = eps_min_;
  trace.eps_max = eps_max_;

  Index ref = start;
  auto first = acquire(ref);
  if (!first)
    throw Error(ErrorCode::NoNeighbor, "no initial neighbor for reference " + std::to_string(start) +
                                           " within the replacement shell");
  Index nbr = *first;
  std::vector<double> direction(static_cast<std::size_t>(dim));

  while (ref + steps <= last) {
    const double L = dist(ref, nbr);
    const double L_prime = dist(ref + steps, nbr + steps);
    ref += steps;
    nbr += steps;
    bool lost = !(L_prime > 0.0);
    if (!lost) trace.events.push_back({ref - steps, ref, L, L_prime, false});
    if (ref + steps > last) break;

    if (!lost) {
      for (Index c = 0; c < dim; ++c)
        direction[static_cast<std::size_t>(c)] = es_.points()(nbr, c) - es_.points()(ref, c);
      auto cand = replacement(ref, direction.data(), params_.theta_max_rad);
      if (!cand) cand = replacement(ref, direction.data(), 2.0 * params_.theta_max_rad);
      if (cand) {
        nbr = *cand;
        trace.events.back().replaced = true;
        ++trace.replacements;
        continue;
      }
      if (in_shell(L_prime) && admissible(ref, nbr)) continue;
      lost = true;
    }

    // The pair left the shell and nothing can replace it: pick up the
    // nearest in-shell neighbor at the first reference point that has one.
    ++trace.restarts;
    std::optional<Index> again;
    while (ref + steps <= last && !(again = acquire(ref))) ++ref;
    if (!again) break;
    nbr = *again;
  }
  return trace;
}

}  // namespace detail

std::pair<double, double> wolf_shell(const EmbeddedSeries& es, const WolfParams& params) {
  const double diameter = attractor_diameter(es).value;
  return {params.eps_min_frac * diameter, params.eps_max_frac * diameter};
}

WolfTrace wolf_trace_with_shell(const EmbeddedSeries& es, const WolfParams& params,
                                Index min_temporal_sep, double eps_min, double eps_max,
                                Index start, Index stop) {
  params.validate();
  if (min_temporal_sep < 0) throw Error(ErrorCode::BadParams, "temporal separation must be >= 0");
  return detail::WolfSearch(es, params, min_temporal_sep, eps_min, eps_max).trace(start, stop);
}

WolfTrace wolf_trace(const EmbeddedSeries& es, const WolfParams& params, Index min_temporal_sep,
                     Index start, Index stop) {
  params.validate();
  const auto [eps_min, eps_max] = wolf_shell(es, params);
  return wolf_trace_with_shell(es, params, min_temporal_sep, eps_min, eps_max, start, stop);
}

ExponentEstimate<WolfTrace> wolf_lle(const EmbeddedSeries& es, const WolfParams& params,
                                     Index min_temporal_sep) {
  params.validate();
  if (es.size() < 2 * params.evolve_steps)
    throw Error(ErrorCode::TooShort, "Wolf estimate needs >= 2 * evolve_steps embedded points");

  ExponentEstimate<WolfTrace> est;
  est.method = Method::Wolf;
  est.diagnostics = wolf_trace(es, params, min_temporal_sep);
  est.lambda = wolf_exponent(est.diagnostics, es.dt());
  est.params.numbers = {
      {"m", static_cast<double>(es.config().dimension)},
      {"tau", static_cast<double>(es.config().lag)},
      {"dt", es.dt()},
      {"evolve_steps", static_cast<double>(params.evolve_steps)},
      {"eps_max_frac", params.eps_max_frac},
      {"eps_min_frac", params.eps_min_frac},
      {"theta_max_rad", params.theta_max_rad},
      {"min_temporal_sep", static_cast<double>(min_temporal_sep)},
  };
  est.params.text = {{"replacement_rule", std::string(replacement_rule_name(params.rule))}};
  return est;
}

std::string wolf_trace_csv(const WolfTrace& trace) {
  std::string out = "t_start,t_end,L,L_prime,replaced\n";
  char buf[160];
  for (const WolfEvent& e : trace.events) {
    std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g,%.17g,%d\n", static_cast<long long>(e.t_start),
                  static_cast<long long>(e.t_end), e.L, e.L_prime, e.replaced ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace chaoscope
