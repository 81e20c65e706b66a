#include "chaoscope/series.hpp"

#include "chaoscope/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace chaoscope {

namespace {

void validate_samples(const Eigen::VectorXd& samples, double dt) {
  if (samples.size() == 0) throw Error(ErrorCode::EmptyInput, "time series has no samples");
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw Error(ErrorCode::BadParams, "time step must be positive and finite");
  for (Index i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i]))
      throw Error(ErrorCode::InvalidSample, "non-finite sample at index " + std::to_string(i),
                  static_cast<std::size_t>(i));
  }
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

TimeSeries::TimeSeries(Eigen::VectorXd samples, double dt, std::string label, TimeUnit unit)
    : samples_(std::move(samples)), dt_(dt), label_(std::move(label)), unit_(unit) {
  validate_samples(samples_, dt_);
}

TimeSeries::TimeSeries(const std::vector<double>& samples, double dt, std::string label,
                       TimeUnit unit)
    : TimeSeries(Eigen::Map<const Eigen::VectorXd>(samples.data(),
                                                   static_cast<Index>(samples.size())),
                 dt, std::move(label), unit) {}

TimeSeries TimeSeries::affine(double scale, double offset) const {
  Eigen::VectorXd out = (scale * samples_.array() + offset).matrix();
  return TimeSeries(std::move(out), dt_, label_, unit_);
}

RRSeries::RRSeries(std::vector<double> intervals_s, std::string source)
    : intervals_(std::move(intervals_s)), source_(std::move(source)) {
  if (intervals_.empty()) throw Error(ErrorCode::EmptyInput, "RR series has no intervals");
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const double v = intervals_[i];
    if (!(v > kMinInterval && v < kMaxInterval)) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "interval %zu = %.6g s outside (%.1f, %.1f) s", i, v,
                    kMinInterval, kMaxInterval);
      throw Error(ErrorCode::RangeError, buf, i);
    }
  }
}

double RRSeries::mean() const {
  return std::accumulate(intervals_.begin(), intervals_.end(), 0.0) /
         static_cast<double>(intervals_.size());
}

RRSeries parse_rr_file(std::string_view text, std::string source) {
  std::vector<double> values;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    double ms = 0.0;
    const char* first = line.data();
    const char* last = line.data() + line.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, ms);
    if (ec != std::errc{} || ptr != last || !std::isfinite(ms))
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": not a number: '" + std::string(line) + "'",
                  line_no);
    values.push_back(ms / 1000.0);
  }
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "no RR intervals in input");
  return RRSeries(std::move(values), std::move(source));
}

std::string serialize_rr(const RRSeries& rr) {
  std::string out;
  out.reserve(rr.size() * 14);
  char buf[64];
  for (double v : rr.intervals()) {
    const int n = std::snprintf(buf, sizeof buf, "%.6f\n", v * 1000.0);
    out.append(buf, static_cast<std::size_t>(n));
  }
  return out;
}

TimeSeries rr_to_timeseries(const RRSeries& rr, TimeBase base) {
  if (base == TimeBase::PerBeat)
    return TimeSeries(rr.intervals(), 1.0, rr.source(), TimeUnit::Beats);
  return TimeSeries(rr.intervals(), rr.mean(), rr.source(), TimeUnit::Seconds);
}

TimeSeries successive_differences(const TimeSeries& ts) {
  if (ts.size() < 2) throw Error(ErrorCode::TooShort, "successive differences need >= 2 samples");
  const Index n = ts.size();
  Eigen::VectorXd diff = ts.samples().tail(n - 1) - ts.samples().head(n - 1);
  return TimeSeries(std::move(diff), ts.dt(), ts.label(), ts.unit());
}

}  // namespace chaoscope
