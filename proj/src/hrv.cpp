#include "chaoscope/hrv.hpp"

#include "chaoscope/error.hpp"
#include "chaoscope/spectral.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace chaoscope {

double rmssd(const RRSeries& rr) {
  const auto& v = rr.intervals();
  if (v.size() < 2) throw Error(ErrorCode::TooShort, "RMSSD needs >= 2 intervals");
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double d = v[i + 1] - v[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(v.size() - 1));
}

namespace {

void require_band_input(const TimeSeries& ts) {
  if (ts.unit() != TimeUnit::Seconds)
    throw Error(ErrorCode::UnitsError, "frequency bands need a series sampled in seconds");
  if (static_cast<double>(ts.size()) * ts.dt() < 40.0)
    throw Error(ErrorCode::TooShort, "band powers need at least 40 s of data");
}

double integrate(const PowerSpectrum& ps, FrequencyBand band) {
  double total = 0.0;
  for (Index k = 0; k + 1 < ps.freqs.size(); ++k) {
    const double f0 = ps.freqs[k], f1 = ps.freqs[k + 1];
    const double a = std::max(f0, band.lo), b = std::min(f1, band.hi);
    if (!(b > a)) continue;
    const auto interp = [&](double f) {
      return ps.power[k] + (ps.power[k + 1] - ps.power[k]) * (f - f0) / (f1 - f0);
    };
    total += 0.5 * (interp(a) + interp(b)) * (b - a);
  }
  return total;
}

std::string_view trim(std::string_view s) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

double band_power(const TimeSeries& ts, FrequencyBand band) {
  require_band_input(ts);
  return integrate(power_spectrum(ts), band);
}

BandPowerReport band_powers(const TimeSeries& ts) {
  require_band_input(ts);
  const PowerSpectrum ps = power_spectrum(ts);
  BandPowerReport r;
  r.vlf = integrate(ps, kVlfBand);
  r.lf = integrate(ps, kLfBand);
  r.hf = integrate(ps, kHfBand);
  if (r.hf > 0.0) r.lf_hf_ratio = r.lf / r.hf;
  return r;
}

double error_r(double optimum, double case_value) { return std::abs(optimum - case_value); }

double accuracy_pct(double error) { return (1.0 - error) * 100.0; }

std::vector<CohortRecord> parse_cohort_csv(std::string_view text) {
  static constexpr std::array<std::string_view, 5> kHeader = {
      "case_id", "label", "lle_mazhar_eslam", "lle_wolf", "lle_rosenstein"};
  static constexpr std::array<Method, 3> kColumns = {Method::MazharEslam, Method::Wolf,
                                                     Method::Rosenstein};

  std::vector<CohortRecord> records;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split_fields(line);
    const auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::ParseError, "cohort line " + std::to_string(line_no) + ": " + why,
                  line_no);
    };
    if (!header_seen) {
      if (!std::equal(fields.begin(), fields.end(), kHeader.begin(), kHeader.end()))
        fail("expected header case_id,label,lle_mazhar_eslam,lle_wolf,lle_rosenstein");
      header_seen = true;
      continue;
    }
    if (fields.size() != kHeader.size()) fail("expected 5 fields");

    CohortRecord rec;
    rec.case_id = std::string(fields[0]);
    if (rec.case_id.empty()) fail("empty case_id");
    const std::string_view label = fields[1];
    if (label == "healthy") {
      rec.label = {true, {}};
    } else if (label == "patient" || label.starts_with("patient:")) {
      rec.label = {false, std::string(label.substr(std::min<std::size_t>(label.size(), 8)))};
    } else {
      fail("label must be 'healthy' or 'patient[:condition]'");
    }
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
      const std::string_view cell = fields[c + 2];
      if (cell.empty()) continue;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v))
        fail("not a number: '" + std::string(cell) + "'");
      rec.lambda_by_method[kColumns[c]] = v;
    }
    if (rec.lambda_by_method.empty()) fail("row has no exponent values");
    records.push_back(std::move(rec));
  }
  if (!header_seen) throw Error(ErrorCode::EmptyInput, "cohort file is empty");
  if (records.empty()) throw Error(ErrorCode::EmptyInput, "cohort file has no rows");
  return records;
}

bool LabelFilter::matches(const CohortLabel& label) const {
  switch (kind) {
    case Kind::All: return true;
    case Kind::Healthy: return label.healthy;
    case Kind::Patient:
      return !label.healthy && (condition.empty() || label.condition == condition);
  }
  return false;
}

CohortStats cohort_stats(const std::vector<CohortRecord>& records, Method method,
                         const LabelFilter& subset, double optimum) {
  CohortStats s;
  double sum = 0.0, err = 0.0;
  for (const CohortRecord& r : records) {
    if (!subset.matches(r.label)) continue;
    const auto it = r.lambda_by_method.find(method);
    if (it == r.lambda_by_method.end()) continue;
    ++s.count;
    sum += it->second;
    err += error_r(optimum, it->second);
  }
  if (s.count == 0) throw Error(ErrorCode::EmptySubset, "no records match the subset");
  s.mean = sum / static_cast<double>(s.count);
  s.mean_error = err / static_cast<double>(s.count);
  s.accuracy = accuracy_pct(s.mean_error);
  return s;
}

std::string_view hrv_class_name(HrvClass c) noexcept {
  switch (c) {
    case HrvClass::Healthy: return "Healthy";
    case HrvClass::ReducedHRV: return "ReducedHRV";
    case HrvClass::CHFRange: return "CHFRange";
    case HrvClass::ArrRange: return "ArrRange";
    case HrvClass::Serious: return "Serious";
    case HrvClass::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

HrvClass classify(double lambda, Method method, const ClassificationBands& b) {
  if (!std::isfinite(lambda)) return HrvClass::Indeterminate;
  switch (method) {
    case Method::MazharEslam:
      if (lambda < b.me_chf) return HrvClass::Serious;
      if (lambda < b.me_arr) return HrvClass::CHFRange;
      if (lambda < b.me_reduced) return HrvClass::ArrRange;
      if (lambda < b.me_healthy) return HrvClass::ReducedHRV;
      if (lambda < b.me_indeterminate) return HrvClass::Healthy;
      return HrvClass::Indeterminate;
    case Method::Wolf:
      return lambda >= b.wolf_healthy ? HrvClass::Healthy : HrvClass::ReducedHRV;
    case Method::Rosenstein:
      if (lambda > b.rosenstein_healthy) return HrvClass::Healthy;
      if (lambda < b.rosenstein_serious) return HrvClass::Serious;
      return HrvClass::ReducedHRV;
  }
  return HrvClass::Indeterminate;
}

}  // namespace chaoscope
