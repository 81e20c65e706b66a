#include "chaoscope/error.hpp"
#include "chaoscope/series.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace chaoscope;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected chaoscope::Error";
  return ErrorCode::BadParams;
}

}  // namespace

TEST(ParseRR, ConvertsMillisecondsToSeconds) {
  const RRSeries rr = parse_rr_file("800\n810\n790");
  ASSERT_EQ(rr.size(), 3u);
  EXPECT_DOUBLE_EQ(rr.intervals()[0], 0.800);
  EXPECT_DOUBLE_EQ(rr.intervals()[1], 0.810);
  EXPECT_DOUBLE_EQ(rr.intervals()[2], 0.790);
}

TEST(ParseRR, SkipsCommentsAndBlankLines) {
  const RRSeries rr = parse_rr_file("# hdr\n\n1000");
  ASSERT_EQ(rr.size(), 1u);
  EXPECT_DOUBLE_EQ(rr.intervals()[0], 1.0);
}

TEST(ParseRR, AcceptsCrlf) {
  const RRSeries rr = parse_rr_file("# x\r\n800\r\n900\r\n");
  ASSERT_EQ(rr.size(), 2u);
  EXPECT_DOUBLE_EQ(rr.intervals()[1], 0.9);
}

TEST(ParseRR, ReportsLineOfBadNumber) {
  try {
    parse_rr_file("800\nabc");
    FAIL() << "expected ParseError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    ASSERT_TRUE(e.position());
    EXPECT_EQ(*e.position(), 2u);
  }
}

TEST(ParseRR, EmptyAfterFiltering) {
  EXPECT_EQ(code_of([] { parse_rr_file("# only a comment\n\n"); }), ErrorCode::EmptyInput);
  EXPECT_EQ(code_of([] { parse_rr_file(""); }), ErrorCode::EmptyInput);
}

TEST(ParseRR, RejectsImplausibleIntervalWithIndex) {
  try {
    parse_rr_file("800\n150\n900");
    FAIL() << "expected RangeError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RangeError);
    ASSERT_TRUE(e.position());
    EXPECT_EQ(*e.position(), 1u);
  }
  EXPECT_EQ(code_of([] { parse_rr_file("5000"); }), ErrorCode::RangeError);
  EXPECT_EQ(code_of([] { parse_rr_file("200"); }), ErrorCode::RangeError);
}

TEST(ParseRR, SerializeRoundTripIsStable) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.25, 4.9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(1 + trial * 13);
    for (double& x : v) x = dist(rng);
    const RRSeries rr(v);
    const std::string text = serialize_rr(rr);
    const RRSeries back = parse_rr_file(text);
    ASSERT_EQ(back.size(), rr.size());
    EXPECT_EQ(serialize_rr(back), text);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(back.intervals()[i], v[i], 5e-10);
  }
}

TEST(RRToTimeSeries, PerBeatKeepsSamples) {
  const RRSeries rr({0.8, 1.0, 1.2});
  const TimeSeries ts = rr_to_timeseries(rr, TimeBase::PerBeat);
  EXPECT_EQ(ts.dt(), 1.0);
  EXPECT_EQ(ts.unit(), TimeUnit::Beats);
  EXPECT_EQ(ts[0], 0.8);
  EXPECT_EQ(ts[2], 1.2);
}

TEST(RRToTimeSeries, MeanRRSecondsUsesMeanInterval) {
  EXPECT_NEAR(rr_to_timeseries(RRSeries({0.8, 1.0, 1.2}), TimeBase::MeanRRSeconds).dt(), 1.0,
              1e-15);
  const TimeSeries single = rr_to_timeseries(RRSeries({0.5}), TimeBase::MeanRRSeconds);
  EXPECT_EQ(single.dt(), 0.5);
  EXPECT_EQ(single.unit(), TimeUnit::Seconds);
}

TEST(TimeSeries, RejectsNonFiniteAndBadStep) {
  EXPECT_EQ(code_of([] { TimeSeries(std::vector<double>{1.0, NAN}, 1.0); }),
            ErrorCode::InvalidSample);
  EXPECT_EQ(code_of([] { TimeSeries(std::vector<double>{1.0, INFINITY}, 1.0); }),
            ErrorCode::InvalidSample);
  EXPECT_EQ(code_of([] { TimeSeries(std::vector<double>{1.0}, 0.0); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { TimeSeries(std::vector<double>{}, 1.0); }), ErrorCode::EmptyInput);
}

TEST(SuccessiveDifferences, Examples) {
  const TimeSeries flat = successive_differences(TimeSeries(std::vector<double>{1, 1, 1}, 1.0));
  ASSERT_EQ(flat.size(), 2);
  EXPECT_EQ(flat[0], 0.0);
  EXPECT_EQ(flat[1], 0.0);

  const TimeSeries d = successive_differences(TimeSeries(std::vector<double>{0.8, 0.81, 0.79}, 0.5));
  EXPECT_NEAR(d[0], 0.010, 1e-15);
  EXPECT_NEAR(d[1], -0.020, 1e-15);
  EXPECT_EQ(d.dt(), 0.5);

  EXPECT_EQ(code_of([] { successive_differences(TimeSeries(std::vector<double>{5}, 1.0)); }),
            ErrorCode::TooShort);
}

TEST(SuccessiveDifferences, TelescopesToEndpoints) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(2 + trial);
    for (double& x : v) x = g(rng);
    const TimeSeries d = successive_differences(TimeSeries(v, 1.0));
    EXPECT_NEAR(d.samples().sum(), v.back() - v.front(), 1e-12);
  }
}
