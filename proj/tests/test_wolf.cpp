#include "chaoscope/bench.hpp"
#include "chaoscope/error.hpp"
#include "chaoscope/spectral.hpp"
#include "chaoscope/wolf.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace chaoscope;

namespace {

ExponentEstimate<WolfTrace> run(const TimeSeries& ts, int m, const WolfParams& p = {}) {
  const EmbeddedSeries es = embed(ts, {m, 1});
  return wolf_lle(es, p, mean_period_fft(ts).samples);
}

}  // namespace

TEST(WolfExponent, SingleEventOfE) {
  WolfTrace t;
  t.events.push_back({0, 4, 0.5, 0.5 * std::numbers::e, false});
  EXPECT_NEAR(wolf_exponent(t, 0.25), 1.0, 1e-15);
}

TEST(WolfExponent, CancellingEvents) {
  WolfTrace t;
  t.events.push_back({0, 3, 1.0, std::numbers::e, true});
  t.events.push_back({3, 6, 1.0, 1.0 / std::numbers::e, false});
  EXPECT_NEAR(wolf_exponent(t, 1.0), 0.0, 1e-15);
}

TEST(WolfExponent, NoEventsIsInsufficient) {
  try {
    wolf_exponent(WolfTrace{}, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientEvolution);
  }
}

TEST(WolfParams, Validation) {
  WolfParams p;
  p.eps_min_frac = 0.2;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.evolve_steps = 0;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.theta_max_rad = 0.0;
  EXPECT_THROW(p.validate(), Error);
}

TEST(WolfLle, LogisticWithinOracleBand) {
  const TimeSeries ts = generate(SystemSpec::logistic());
  for (int m : {1, 2}) {
    const double lambda = run(ts, m).lambda;
    EXPECT_GE(lambda, 0.62) << "m=" << m;
    EXPECT_LE(lambda, 0.77) << "m=" << m;
  }
}

TEST(WolfLle, HenonNearJacobianReference) {
  const SystemSpec spec = SystemSpec::henon();
  const ReferenceExponent ref = reference_lle(spec);
  EXPECT_NEAR(run(generate(spec), 2).lambda, ref.value, ref.tolerance * ref.value);
}

TEST(WolfLle, SineIsNearZero) {
  const TimeSeries ts = generate(SystemSpec::sine(1.0 / 17.3, 1.0, 2000));
  for (int m : {2, 3, 5}) EXPECT_LE(run(ts, m).lambda, 0.05) << "m=" << m;
}

TEST(WolfLle, ScaleInvariantExactly) {
  const TimeSeries ts = generate(SystemSpec::henon(1.4, 0.3, 1500));
  const double base = run(ts, 2).lambda;
  for (double c : {2.0, 3.7, 0.01}) EXPECT_NEAR(run(ts.affine(c, 0.0), 2).lambda, base, 1e-12) << c;
}

TEST(WolfLle, EventsStartInShellAndAreOrdered) {
  const TimeSeries ts = generate(SystemSpec::logistic(4.0, 0.2, 3000));
  for (ReplacementRule rule : {ReplacementRule::NearestInCone, ReplacementRule::MinAngle}) {
    WolfParams p;
    p.rule = rule;
    const auto est = run(ts, 2, p);
    const WolfTrace& tr = est.diagnostics;
    ASSERT_GT(tr.M(), 10);
    Index prev_end = 0;
    for (const WolfEvent& e : tr.events) {
      EXPECT_GE(e.L, tr.eps_min);
      EXPECT_LE(e.L, tr.eps_max);
      EXPECT_GT(e.L_prime, 0.0);
      EXPECT_GE(e.t_start, prev_end);
      EXPECT_GT(e.t_end, e.t_start);
      prev_end = e.t_end;
    }
    EXPECT_TRUE(std::isfinite(est.lambda));
    EXPECT_EQ(est.params.text.at("replacement_rule"), replacement_rule_name(rule));
  }
}

TEST(WolfLle, StopLimitsTrace) {
  const TimeSeries ts = generate(SystemSpec::logistic(4.0, 0.2, 2000));
  const EmbeddedSeries es = embed(ts, {2, 1});
  const WolfTrace tr = wolf_trace(es, WolfParams{}, 4, 10, 200);
  ASSERT_FALSE(tr.events.empty());
  EXPECT_GE(tr.events.front().t_start, 10);
  EXPECT_LE(tr.events.back().t_end, 199);
}

TEST(WolfLle, TooFewPoints) {
  const TimeSeries ts(std::vector<double>{0.1, 0.5, 0.2, 0.9, 0.3}, 1.0);
  const EmbeddedSeries es = embed(ts, {1, 1});
  EXPECT_THROW(wolf_lle(es, WolfParams{}, 0), Error);
}

TEST(WolfLle, NoNeighborWhenExclusionCoversEverything) {
  const TimeSeries ts = generate(SystemSpec::logistic(4.0, 0.2, 100));
  const EmbeddedSeries es = embed(ts, {2, 1});
  try {
    wolf_lle(es, WolfParams{}, 200);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoNeighbor);
  }
}

TEST(WolfTraceCsv, HeaderAndRows) {
  WolfTrace t;
  t.events.push_back({0, 3, 0.5, 1.0, true});
  const std::string csv = wolf_trace_csv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t_start,t_end,L,L_prime,replaced");
  EXPECT_NE(csv.find("\n0,3,0.5,1,1\n"), std::string::npos) << csv;
}
