#include "chaoscope/spectral.hpp"

#include "chaoscope/error.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <complex>
#include <numeric>
#include <span>

namespace chaoscope {

namespace {

// Energies below this fraction of the signal energy are rounding residue
// (e.g. mean removal or detail filters applied to a constant).
constexpr double kDegenerateFraction = 1e-20;

MeanPeriod period_from_frequency(double fbar, double dt) {
  MeanPeriod mp;
  mp.seconds = 1.0 / fbar;
  mp.samples = std::max<Index>(1, static_cast<Index>(std::llround(mp.seconds / dt)));
  return mp;
}

struct FilterPair {
  std::vector<double> low;
  std::vector<double> high;
};

FilterPair filters_for(Wavelet w) {
  std::vector<double> h;
  if (w == Wavelet::Haar) {
    h = {M_SQRT1_2, M_SQRT1_2};
  } else {
    const double s3 = std::sqrt(3.0);
    const double norm = 4.0 * std::sqrt(2.0);
    h = {(1.0 + s3) / norm, (3.0 + s3) / norm, (3.0 - s3) / norm, (1.0 - s3) / norm};
  }
  // Quadrature mirror: g[k] = (-1)^k h[L-1-k].
  std::vector<double> g(h.size());
  for (std::size_t k = 0; k < h.size(); ++k)
    g[k] = (k % 2 == 0 ? 1.0 : -1.0) * h[h.size() - 1 - k];
  return {std::move(h), std::move(g)};
}

// One analysis step with periodic extension; `signal` is replaced by its
// approximation half and the detail half is returned.
std::vector<double> analysis_step(std::vector<double>& signal, const FilterPair& f) {
  const std::size_t n = signal.size();
  const std::size_t half = n / 2;
  std::vector<double> approx(half), detail(half);
  for (std::size_t i = 0; i < half; ++i) {
    double a = 0.0, d = 0.0;
    for (std::size_t k = 0; k < f.low.size(); ++k) {
      const double v = signal[(2 * i + k) % n];
      a += f.low[k] * v;
      d += f.high[k] * v;
    }
    approx[i] = a;
    detail[i] = d;
  }
  signal = std::move(approx);
  return detail;
}

double energy(std::span<const double> v) {
  return std::transform_reduce(v.begin(), v.end(), 0.0, std::plus<>{},
                               [](double x) { return x * x; });
}

}  // namespace

PowerSpectrum power_spectrum(const TimeSeries& ts) {
  const Index n = ts.size();
  if (n < 4) throw Error(ErrorCode::TooShort, "power spectrum needs >= 4 samples");

  const Eigen::VectorXd centered = ts.samples().array() - ts.samples().mean();
  std::vector<std::complex<double>> in(static_cast<std::size_t>(n)), out;
  for (Index i = 0; i < n; ++i) in[static_cast<std::size_t>(i)] = centered[i];
  Eigen::FFT<double> fft;
  fft.fwd(out, in);

  const Index bins = n / 2;
  PowerSpectrum ps;
  ps.freqs.resize(bins);
  ps.power.resize(bins);
  const double df = 1.0 / (static_cast<double>(n) * ts.dt());
  for (Index k = 1; k <= bins; ++k) {
    ps.freqs[k - 1] = static_cast<double>(k) * df;
    ps.power[k - 1] = std::norm(out[static_cast<std::size_t>(k)]) / static_cast<double>(n);
  }
  return ps;
}

MeanPeriod mean_period_fft(const TimeSeries& ts) {
  const PowerSpectrum ps = power_spectrum(ts);
  const double total = ps.power.sum();
  const double signal = ts.samples().squaredNorm();
  if (!(total > kDegenerateFraction * signal))
    throw Error(ErrorCode::DegenerateSpectrum, "spectrum has no power outside DC");
  return period_from_frequency(ps.freqs.dot(ps.power) / total, ts.dt());
}

Wavelet parse_wavelet(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "haar" || lower == "db1") return Wavelet::Haar;
  if (lower == "db4" || lower == "daubechies4" || lower == "daubechies-4" || lower == "db2")
    return Wavelet::Daubechies4;
  throw Error(ErrorCode::UnknownWavelet, "unsupported wavelet '" + std::string(name) + "'");
}

std::string_view wavelet_name(Wavelet w) noexcept {
  return w == Wavelet::Haar ? "haar" : "db4";
}

double center_frequency(Wavelet w) noexcept { return w == Wavelet::Haar ? 0.9961 : 0.6667; }

double WaveletDecomposition::total_energy() const {
  return approx_energy + std::accumulate(detail_energies.begin(), detail_energies.end(), 0.0);
}

WaveletDecomposition dwt(const TimeSeries& ts, std::string_view name, int levels) {
  const Wavelet w = parse_wavelet(name);
  if (levels < 1) throw Error(ErrorCode::BadParams, "wavelet levels must be >= 1");
  const Index n = ts.size();
  if (levels >= 62 || n < (Index{1} << levels))
    throw Error(ErrorCode::TooShort, "series of length " + std::to_string(n) + " is shorter than 2^" +
                                         std::to_string(levels));

  Index used = 1;
  while (used * 2 <= n) used *= 2;

  std::vector<double> signal(ts.samples().data(), ts.samples().data() + used);
  const FilterPair f = filters_for(w);

  WaveletDecomposition dec;
  dec.wavelet_name = std::string(wavelet_name(w));
  dec.levels = levels;
  dec.samples_used = used;
  dec.samples_input = n;
  for (int level = 0; level < levels; ++level) {
    const std::vector<double> detail = analysis_step(signal, f);
    dec.detail_energies.push_back(energy(detail));
  }
  dec.approx_energy = energy(signal);
  return dec;
}

int dwt_levels_for(Index n) {
  int log2n = 0;
  while ((Index{2} << log2n) <= n) ++log2n;
  return std::max(1, log2n - 2);
}

MeanPeriod mean_period_from_energies(const WaveletDecomposition& dec, double dt) {
  const double fc = center_frequency(parse_wavelet(dec.wavelet_name));
  double weighted = 0.0, total = 0.0;
  for (std::size_t l = 0; l < dec.detail_energies.size(); ++l) {
    const double fl = fc / (std::ldexp(1.0, static_cast<int>(l) + 1) * dt);
    weighted += dec.detail_energies[l] * fl;
    total += dec.detail_energies[l];
  }
  if (!(total > kDegenerateFraction * dec.total_energy()))
    throw Error(ErrorCode::DegenerateSpectrum, "all wavelet detail energies are zero");
  return period_from_frequency(weighted / total, dt);
}

MeanPeriod mean_period_dwt(const TimeSeries& ts, std::string_view name) {
  const WaveletDecomposition dec = dwt(ts, name, dwt_levels_for(ts.size()));
  return mean_period_from_energies(dec, ts.dt());
}

}  // namespace chaoscope
