#include "chaoscope/mazhar_eslam.hpp"

#include "chaoscope/error.hpp"
#include "chaoscope/parallel.hpp"
#include "chaoscope/rosenstein.hpp"
#include "wolf_search.hpp"

#include <cmath>
#include <cstdio>
#include <optional>

namespace chaoscope {

double local_exponent_mean(std::span<const double> lambdas) {
  if (lambdas.empty()) throw Error(ErrorCode::EmptySet, "no local exponents to average");
  double sum = 0.0;
  for (double v : lambdas) sum += v;
  return sum / static_cast<double>(lambdas.size());
}

double local_exponent_mean(const LocalExponentSet& set) { return local_exponent_mean(std::span(set.lambdas)); }

namespace {

LocalExponentSet per_reference(const EmbeddedSeries& es, const WolfParams& params, Index sep,
                               double eps_min, double eps_max, Index stride, Index horizon) {
  std::vector<Index> starts;
  for (Index s = 0; s + params.evolve_steps < es.size(); s += stride) starts.push_back(s);

  const detail::WolfSearch search(es, params, sep, eps_min, eps_max);
  std::vector<std::optional<double>> values(starts.size());
  std::vector<char> no_neighbor(starts.size(), 0);
  parallel_for(starts.size(), [&](std::size_t k) {
    const Index s = starts[k];
    try {
      const WolfTrace trace = search.trace(s, s + horizon + 1);
      if (!trace.events.empty()) values[k] = wolf_exponent(trace, es.dt());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NoNeighbor)
        no_neighbor[k] = 1;
      else if (e.code() != ErrorCode::TooShort)
        throw;
    }
  });

  LocalExponentSet set;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    if (values[k]) {
      set.lambdas.push_back(*values[k]);
      set.start_indices.push_back(starts[k]);
    } else if (no_neighbor[k]) {
      ++set.skipped_no_neighbor;
    } else {
      ++set.skipped_no_events;
    }
  }
  return set;
}

LocalExponentSet per_step(const EmbeddedSeries& es, const WolfParams& params, Index sep,
                          double eps_min, double eps_max) {
  LocalExponentSet set;
  WolfTrace trace;
  try {
    trace = wolf_trace_with_shell(es, params, sep, eps_min, eps_max);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoNeighbor) throw;
    set.skipped_no_neighbor = 1;
    return set;
  }
  for (const WolfEvent& e : trace.events) {
    set.lambdas.push_back(std::log(e.L_prime / e.L) /
                          (static_cast<double>(e.t_end - e.t_start) * es.dt()));
    set.start_indices.push_back(e.t_start);
  }
  return set;
}

}  // namespace

ExponentEstimate<MazharEslamDiagnostics> mazhar_eslam_lle(const TimeSeries& ts,
                                                          const EmbeddingConfig& cfg,
                                                          const WolfParams& params,
                                                          const MazharEslamOptions& options) {
  params.validate();
  if (options.stride < 1) throw Error(ErrorCode::BadParams, "stride must be >= 1");
  if (options.horizon < 0) throw Error(ErrorCode::BadParams, "horizon must be >= 0");
  const Index horizon = options.horizon > 0 ? options.horizon : default_horizon(ts.size());
  if (horizon < params.evolve_steps)
    throw Error(ErrorCode::BadParams, "horizon must cover at least one evolution interval");

  ExponentEstimate<MazharEslamDiagnostics> est;
  est.method = Method::MazharEslam;
  auto& diag = est.diagnostics;
  diag.decomposition = dwt(ts, options.wavelet, dwt_levels_for(ts.size()));
  diag.mean_period = mean_period_from_energies(diag.decomposition, ts.dt());
  const Index sep = diag.mean_period.samples;

  const EmbeddedSeries es = embed(ts, cfg);
  std::tie(diag.eps_min, diag.eps_max) = wolf_shell(es, params);

  diag.local = options.mode == LocalExponentMode::PerReference
                   ? per_reference(es, params, sep, diag.eps_min, diag.eps_max, options.stride,
                                   horizon)
                   : per_step(es, params, sep, diag.eps_min, diag.eps_max);
  if (diag.local.lambdas.empty())
    throw Error(ErrorCode::NoUsableReference,
                "no reference produced a local exponent (" +
                    std::to_string(diag.local.skipped_no_neighbor) + " without neighbor, " +
                    std::to_string(diag.local.skipped_no_events) + " without events)");
  est.lambda = local_exponent_mean(diag.local);

  est.params.numbers = {
      {"m", static_cast<double>(cfg.dimension)},
      {"tau", static_cast<double>(cfg.lag)},
      {"dt", ts.dt()},
      {"evolve_steps", static_cast<double>(params.evolve_steps)},
      {"eps_max_frac", params.eps_max_frac},
      {"eps_min_frac", params.eps_min_frac},
      {"theta_max_rad", params.theta_max_rad},
      {"stride", static_cast<double>(options.stride)},
      {"horizon", static_cast<double>(horizon)},
      {"min_temporal_sep", static_cast<double>(sep)},
  };
  est.params.text = {
      {"wavelet", diag.decomposition.wavelet_name},
      {"mean_period", "dwt"},
      {"replacement_rule", std::string(replacement_rule_name(params.rule))},
      {"local_mode",
       options.mode == LocalExponentMode::PerReference ? "per-reference" : "per-step"},
  };
  return est;
}

std::string local_exponents_csv(const LocalExponentSet& set) {
  std::string out = "start_index,lambda_i\n";
  char buf[96];
  for (std::size_t k = 0; k < set.lambdas.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g\n", static_cast<long long>(set.start_indices[k]),
                  set.lambdas[k]);
    out += buf;
  }
  return out;
}

}  // namespace chaoscope
