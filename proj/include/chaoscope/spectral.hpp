#pragma once

#include "chaoscope/series.hpp"

#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

namespace chaoscope {

/// One-sided periodogram of the mean-removed series, DC bin omitted.
/// power[k-1] = |X_k|^2 / N at freqs[k-1] = k / (N dt), k = 1..floor(N/2).
struct PowerSpectrum {
  Eigen::VectorXd freqs;
  Eigen::VectorXd power;
};

PowerSpectrum power_spectrum(const TimeSeries& ts);

struct MeanPeriod {
  double seconds = 0.0;  // in the series' time unit
  Index samples = 1;     // max(1, round(seconds / dt))
};

/// Reciprocal of the power-weighted mean frequency.
MeanPeriod mean_period_fft(const TimeSeries& ts);

enum class Wavelet { Haar, Daubechies4 };

/// Accepts "haar", "db2"/"daubechies4"/"db4" (case-insensitive).
Wavelet parse_wavelet(std::string_view name);
std::string_view wavelet_name(Wavelet w) noexcept;

/// Pseudo-frequency of the mother wavelet in cycles per sample at level 1
/// scale: Haar 0.9961, Daubechies-4 0.6667.
double center_frequency(Wavelet w) noexcept;

struct WaveletDecomposition {
  std::vector<double> detail_energies;  // level 1 (finest) .. L
  double approx_energy = 0.0;
  std::string wavelet_name;
  int levels = 0;
  Index samples_used = 0;   // largest dyadic prefix
  Index samples_input = 0;  // before truncation

  double total_energy() const;
  bool truncated() const noexcept { return samples_used != samples_input; }
};

/// Periodic-extension orthogonal DWT over the largest dyadic prefix.
WaveletDecomposition dwt(const TimeSeries& ts, std::string_view wavelet_name, int levels);

/// Levels used by mean_period_dwt for a series of n samples.
int dwt_levels_for(Index n);

/// Energy-weighted pseudo-frequency over detail levels:
/// f_l = f_c / (2^l dt), fbar = sum(E_l f_l) / sum(E_l), seconds = 1 / fbar.
MeanPeriod mean_period_dwt(const TimeSeries& ts, std::string_view wavelet_name = "db4");

/// Same estimate from a precomputed decomposition.
MeanPeriod mean_period_from_energies(const WaveletDecomposition& dec, double dt);

}  // namespace chaoscope
