#pragma once

#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

namespace chaoscope {

using Index = Eigen::Index;

/// Unit of the sampling step. Beat-indexed series carry dt = 1 and report
/// exponents per beat; frequency-domain HRV bands need Seconds.
enum class TimeUnit { Seconds, Beats };

/// Uniformly sampled scalar series. Immutable after construction.
class TimeSeries {
 public:
  TimeSeries(Eigen::VectorXd samples, double dt, std::string label = {},
             TimeUnit unit = TimeUnit::Seconds);
  TimeSeries(const std::vector<double>& samples, double dt, std::string label = {},
             TimeUnit unit = TimeUnit::Seconds);

  const Eigen::VectorXd& samples() const noexcept { return samples_; }
  double operator[](Index i) const { return samples_[i]; }
  Index size() const noexcept { return samples_.size(); }
  double dt() const noexcept { return dt_; }
  const std::string& label() const noexcept { return label_; }
  TimeUnit unit() const noexcept { return unit_; }

  /// Copy with samples mapped through x -> scale * x + offset.
  TimeSeries affine(double scale, double offset) const;

 private:
  Eigen::VectorXd samples_;
  double dt_;
  std::string label_;
  TimeUnit unit_;
};

/// Beat-to-beat intervals in seconds, gated to the physiological range.
class RRSeries {
 public:
  static constexpr double kMinInterval = 0.2;
  static constexpr double kMaxInterval = 5.0;

  explicit RRSeries(std::vector<double> intervals_s, std::string source = {});

  const std::vector<double>& intervals() const noexcept { return intervals_; }
  std::size_t size() const noexcept { return intervals_.size(); }
  const std::string& source() const noexcept { return source_; }
  double mean() const;

 private:
  std::vector<double> intervals_;
  std::string source_;
};

enum class TimeBase { PerBeat, MeanRRSeconds };

/// Parses the RR text format: one interval in milliseconds per line, '#'
/// comments and blank lines skipped, LF or CRLF line endings.
RRSeries parse_rr_file(std::string_view text, std::string source = {});

/// Writes the RR text format with six decimals of milliseconds.
std::string serialize_rr(const RRSeries& rr);

TimeSeries rr_to_timeseries(const RRSeries& rr, TimeBase base);

TimeSeries successive_differences(const TimeSeries& ts);

}  // namespace chaoscope
