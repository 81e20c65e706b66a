#pragma once

#include "chaoscope/embedding.hpp"
#include "chaoscope/estimate.hpp"
#include "chaoscope/spectral.hpp"
#include "chaoscope/wolf.hpp"

#include <span>
#include <string>
#include <vector>

namespace chaoscope {

/// How the local exponents that get averaged are formed.
///  PerReference: one Wolf-style run per reference start, limited to the
///    horizon; each run contributes one value.
///  PerStep: a single full-length run from index 0; each renormalization
///    interval contributes ln(L'/L) / (span dt).
enum class LocalExponentMode { PerReference, PerStep };

struct LocalExponentSet {
  std::vector<double> lambdas;
  std::vector<Index> start_indices;
  Index skipped_no_neighbor = 0;
  Index skipped_no_events = 0;

  Index j() const noexcept { return static_cast<Index>(lambdas.size()); }
};

/// Arithmetic mean of the local exponents. Throws EmptySet when empty.
double local_exponent_mean(std::span<const double> lambdas);
double local_exponent_mean(const LocalExponentSet& set);

struct MazharEslamOptions {
  Index stride = 1;
  Index horizon = 0;  // 0: N / 10
  std::string wavelet = "db4";
  LocalExponentMode mode = LocalExponentMode::PerReference;
};

struct MazharEslamDiagnostics {
  LocalExponentSet local;
  MeanPeriod mean_period;
  WaveletDecomposition decomposition;
  double eps_min = 0.0;
  double eps_max = 0.0;
};

/// DWT mean period as the temporal exclusion, Wolf renormalization for each
/// local exponent, and the plain average of all local exponents.
ExponentEstimate<MazharEslamDiagnostics> mazhar_eslam_lle(const TimeSeries& ts,
                                                          const EmbeddingConfig& cfg,
                                                          const WolfParams& params,
                                                          const MazharEslamOptions& options = {});

/// CSV with header start_index,lambda_i.
std::string local_exponents_csv(const LocalExponentSet& set);

}  // namespace chaoscope
