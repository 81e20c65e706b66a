#pragma once

#include "chaoscope/estimate.hpp"
#include "chaoscope/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chaoscope {

/// Root mean square of successive RR differences, in seconds.
double rmssd(const RRSeries& rr);

struct FrequencyBand {
  double lo;
  double hi;
};

inline constexpr FrequencyBand kVlfBand{0.0, 0.05};
inline constexpr FrequencyBand kLfBand{0.06, 0.15};
inline constexpr FrequencyBand kHfBand{0.15, 0.40};

struct BandPowerReport {
  double vlf = 0.0;
  double lf = 0.0;
  double hf = 0.0;
  std::optional<double> lf_hf_ratio;  // empty when hf == 0
};

/// Trapezoidal integral of the periodogram over each band. Requires a
/// series in seconds covering at least 40 s. The 0.05-0.06 Hz gap between
/// VLF and LF is left unassigned.
BandPowerReport band_powers(const TimeSeries& ts);

/// Integral of the piecewise-linear periodogram over [band.lo, band.hi].
double band_power(const TimeSeries& ts, FrequencyBand band);

inline constexpr double kDefaultOptimum = 0.5;

/// |optimum - case_value|
double error_r(double optimum, double case_value);

/// (1 - error) * 100
double accuracy_pct(double error);

struct CohortLabel {
  bool healthy = true;
  std::string condition;  // empty for healthy cases
};

struct CohortRecord {
  std::string case_id;
  CohortLabel label;
  std::map<Method, double> lambda_by_method;
};

/// Parses `case_id,label,lle_mazhar_eslam,lle_wolf,lle_rosenstein`.
/// Labels are `healthy` or `patient` optionally followed by `:<condition>`
/// (e.g. `patient:CHF`). Empty method cells are allowed as long as each row
/// keeps at least one value.
std::vector<CohortRecord> parse_cohort_csv(std::string_view text);

struct LabelFilter {
  enum class Kind { All, Healthy, Patient } kind = Kind::Healthy;
  std::string condition;  // Patient only; empty matches every patient

  bool matches(const CohortLabel& label) const;
};

struct CohortStats {
  Index count = 0;
  double mean = 0.0;
  double mean_error = 0.0;
  double accuracy = 0.0;
};

CohortStats cohort_stats(const std::vector<CohortRecord>& records, Method method,
                         const LabelFilter& subset, double optimum = kDefaultOptimum);

enum class HrvClass { Healthy, ReducedHRV, CHFRange, ArrRange, Serious, Indeterminate };

std::string_view hrv_class_name(HrvClass c) noexcept;

/// Lower edges of half-open bands; see classify().
struct ClassificationBands {
  // Mazhar-Eslam: Serious < serious < CHF < arr < Arr < reduced < ReducedHRV
  //               < healthy < Healthy < indeterminate <= Indeterminate
  double me_chf = 0.20;
  double me_arr = 0.29;
  double me_reduced = 0.35;
  double me_healthy = 0.45;
  double me_indeterminate = 0.60;
  // Wolf: Healthy at or above the threshold.
  double wolf_healthy = 0.45;
  // Rosenstein: Serious below serious, Healthy above healthy.
  double rosenstein_serious = 0.40;
  double rosenstein_healthy = 0.67;
};

HrvClass classify(double lambda, Method method, const ClassificationBands& bands = {});

}  // namespace chaoscope
