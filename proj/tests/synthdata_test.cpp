#include "marginrisk/synthdata.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "marginrisk/errors.hpp"

namespace marginrisk {
namespace {

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) ma += a[i] / n, mb += b[i] / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

TEST(Synth, CalmNoiseFreeFlightSitsAtHover) {
  DroneParams drone;
  drone.noise_std = 0.0;
  const auto frames = simulate_flight({0.0, 0.0, 10.0, 7, {}}, drone);
  ASSERT_EQ(frames.size(), 100u);
  for (const auto& f : frames) {
    for (double c : f.commands) ASSERT_EQ(c, 1500.0);
    ASSERT_EQ(attitude_error(*f.attitude), 0.0);
  }
  const auto pair = summarize_flight(frames, drone.limits);
  EXPECT_EQ(pair, (DataPair{0.5, 0.0, 0.0}));
}

TEST(Synth, FramesAreWellFormed) {
  DroneParams drone;
  drone.motors = 6;
  const auto frames = simulate_flight({12.0, 30.0, 20.0, 3, {{5, 8, 10}}}, drone, 25.0);
  ASSERT_EQ(frames.size(), 500u);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    ASSERT_NEAR(frames[i].t, i / 25.0, 1e-12);
    ASSERT_EQ(frames[i].commands.size(), 6u);
    ASSERT_TRUE(frames[i].attitude.has_value());
    for (double c : frames[i].commands) {
      ASSERT_GE(c, 1000.0);
      ASSERT_LE(c, 2000.0);
    }
  }
}

TEST(Synth, DeterministicPerSeed) {
  const WindScenario s{8.0, 20.0, 30.0, 99, {}};
  const auto a = simulate_flight(s, {});
  const auto b = simulate_flight(s, {});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].commands, b[i].commands);
    ASSERT_EQ(a[i].attitude->roll, b[i].attitude->roll);
  }
  auto other = s;
  other.seed = 100;
  EXPECT_NE(simulate_flight(other, {})[5].commands, a[5].commands);
}

TEST(Synth, HeavyHoverInStrongWindSaturates) {
  DroneParams drone;
  drone.hover = 0.6;
  const auto frames = simulate_flight({18.0, 0.0, 60.0, 5, {}}, drone);
  std::size_t saturated = 0;
  for (const auto& f : frames) {
    for (double c : f.commands) {
      if (c <= 1000.0 || c >= 2000.0) {
        ++saturated;
        break;
      }
    }
  }
  EXPECT_GE(saturated * 2, frames.size());
}

TEST(Synth, GustRaisesAttitudeError) {
  const WindScenario calm{4.0, 2.0, 30.0, 11, {}};
  auto gusty = calm;
  gusty.gusts = {{10.0, 20.0, 20.0}};
  const auto a = summarize_flight(simulate_flight(calm, {}), {});
  const auto b = summarize_flight(simulate_flight(gusty, {}), {});
  EXPECT_LT(b.margin_mean, a.margin_mean);
  EXPECT_GT(b.risk, a.risk);
}

TEST(Synth, DefaultGridDataset) {
  ScenarioGrid grid;
  grid.seed = 1;
  const auto pairs = gen_dataset(grid, {});
  ASSERT_EQ(pairs.size(), 209u);
  std::vector<double> means, risks;
  for (const auto& p : pairs) {
    EXPECT_NO_THROW(validate(p));
    means.push_back(p.margin_mean);
    risks.push_back(p.risk);
  }
  EXPECT_LE(correlation(means, risks), -0.5);
  EXPECT_EQ(gen_dataset(grid, {}), pairs);
}

TEST(Synth, SeedAveragedTrendsWithWind) {
  double prev_mean = 1.0;
  double prev_risk = -1.0;
  for (double wind : {0.0, 5.0, 10.0, 15.0, 20.0}) {
    double mean = 0.0, risk = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto p = summarize_flight(simulate_flight({wind, 10.0, 60.0, seed, {}}, {}), {});
      mean += p.margin_mean / 5;
      risk += p.risk / 5;
    }
    EXPECT_LT(mean, prev_mean) << wind;
    EXPECT_GE(risk, prev_risk) << wind;
    prev_mean = mean;
    prev_risk = risk;
  }
}

TEST(Synth, GridSeedsAreDistinct) {
  ScenarioGrid grid;
  const auto s = grid.scenarios();
  ASSERT_EQ(s.size(), 209u);
  EXPECT_EQ(s.front().wind_mean, 0.0);
  EXPECT_EQ(s.back().wind_mean, 20.0);
  EXPECT_EQ(s.back().wind_var, 40.0);
  EXPECT_NE(s[0].seed, s[1].seed);
  EXPECT_EQ(derive_seed(5, 3), derive_seed(5, 3));
  EXPECT_NE(derive_seed(5, 3), derive_seed(6, 3));
}

TEST(Synth, RejectsBadInput) {
  EXPECT_THROW(simulate_flight({25.0, 0.0, 10.0, 0, {}}, {}), InputError);
  EXPECT_THROW(simulate_flight({5.0, 50.0, 10.0, 0, {}}, {}), InputError);
  EXPECT_THROW(simulate_flight({5.0, 0.0, 10.0, 0, {{5, 4, 1}}}, {}), InputError);
  DroneParams drone;
  drone.hover = 1.0;
  EXPECT_THROW(simulate_flight({}, drone), ConfigError);
  EXPECT_THROW(simulate_flight({}, {}, 0.0), ConfigError);
  ScenarioGrid empty;
  empty.mean_levels = 0;
  EXPECT_THROW(gen_dataset(empty, {}), InputError);
}

}  // namespace
}  // namespace marginrisk
