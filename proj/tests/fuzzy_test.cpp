#include "marginrisk/fuzzy.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "marginrisk/errors.hpp"
#include "oracles.hpp"

namespace marginrisk {
namespace {

TEST(FuzzySet, TrapezoidPieces) {
  const FuzzySet s("S", 1.0, 2.0, 3.0, 5.0);
  EXPECT_EQ(s.membership(0.5), 0.0);
  EXPECT_EQ(s.membership(1.0), 0.0);
  EXPECT_DOUBLE_EQ(s.membership(1.5), 0.5);
  EXPECT_EQ(s.membership(2.0), 1.0);
  EXPECT_EQ(s.membership(2.7), 1.0);
  EXPECT_DOUBLE_EQ(s.membership(4.0), 0.5);
  EXPECT_EQ(s.membership(5.0), 0.0);
  EXPECT_EQ(s.membership(6.0), 0.0);
}

TEST(FuzzySet, ShouldersAreFullAtTheirEdge) {
  EXPECT_EQ(FuzzySet::triangle("L", 0.0, 0.0, 0.1).membership(0.0), 1.0);
  EXPECT_EQ(FuzzySet("R", 0.2, 0.3, 0.5, 0.5).membership(0.5), 1.0);
}

TEST(FuzzySet, PeakOfTriangleIsOne) {
  const auto t = FuzzySet::triangle("T", 25.0, 50.0, 75.0);
  EXPECT_EQ(t.membership(50.0), 1.0);
}

TEST(FuzzySet, MalformedCornersFailAtConstruction) {
  EXPECT_THROW(FuzzySet("bad", 0.0, 0.2, 0.1, 0.3), ConfigError);
  EXPECT_THROW(FuzzySet("bad", 0.0, std::nan(""), 0.1, 0.3), ConfigError);
  EXPECT_THROW(FuzzySet("", 0.0, 0.1, 0.1, 0.3), ConfigError);
}

TEST(FuzzySet, CornersAreExactlyZeroOrOne) {
  for (const auto& var : {default_variables().mean, default_variables().std, default_variables().risk}) {
    for (const auto& s : var.sets()) {
      for (double c : s.corners()) {
        const double m = s.membership(c);
        EXPECT_TRUE(m == 0.0 || m == 1.0) << s.label() << " at " << c;
      }
    }
  }
}

TEST(FuzzySet, LipschitzInverseOfShortestRamp) {
  const auto vars = default_variables();
  std::mt19937_64 rng(11);
  for (const auto* var : {&vars.mean, &vars.std, &vars.risk}) {
    std::uniform_real_distribution<double> x(var->lo(), var->hi());
    for (const auto& s : var->sets()) {
      const auto& c = s.corners();
      double ramp = var->hi() - var->lo();
      if (c[1] > c[0]) ramp = std::min(ramp, c[1] - c[0]);
      if (c[3] > c[2]) ramp = std::min(ramp, c[3] - c[2]);
      for (int i = 0; i < 500; ++i) {
        const double a = x(rng), b = x(rng);
        ASSERT_LE(std::abs(s.membership(a) - s.membership(b)), std::abs(a - b) / ramp + 1e-12);
      }
    }
  }
}

TEST(DefaultVariables, ReproduceWorkedExampleMemberships) {
  const auto v = default_variables();
  // Exact value is 1 - 0.007969 / 0.1; the published figure is rounded.
  EXPECT_NEAR(v.mean.membership(v.mean.index_of("VERY_LOW"), 0.007969), 0.92031, 1e-12);
  EXPECT_NEAR(v.mean.membership(v.mean.index_of("VERY_LOW"), 0.007969), 0.920312, 1e-5);
  EXPECT_EQ(v.std.membership(v.std.index_of("HIGH"), 0.226310), 1.0);
  EXPECT_NEAR(v.risk.membership(v.risk.index_of("HIGH"), 65.679063), 0.627163, 1e-6);
}

TEST(DefaultVariables, DerivedMemberships) {
  const auto v = default_variables();
  EXPECT_EQ(v.mean.membership(v.mean.index_of("HIGH"), 0.351094), 1.0);
  EXPECT_NEAR(v.risk.membership(v.risk.index_of("VERY_LOW"), 4.798570), 0.808057, 1e-6);
}

TEST(DefaultVariables, AgreeWithIndependentLayout) {
  const auto v = default_variables();
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double m = 0.5 * u(rng), s = 0.5 * u(rng), r = 100.0 * u(rng);
    for (std::size_t k = 0; k < 4; ++k) {
      ASSERT_DOUBLE_EQ(v.mean.membership(k, m), oracle::trapezoid(oracle::kMeanSets[k], m));
    }
    for (std::size_t k = 0; k < 3; ++k) {
      ASSERT_DOUBLE_EQ(v.std.membership(k, s), oracle::trapezoid(oracle::kStdSets[k], s));
    }
    for (std::size_t k = 0; k < 5; ++k) {
      ASSERT_DOUBLE_EQ(v.risk.membership(k, r), oracle::trapezoid(oracle::kRiskSets[k], r));
    }
  }
}

TEST(DefaultVariables, PartitionOfUnity) {
  const auto v = default_variables();
  EXPECT_LE(partition_deviation(v.mean, 10001), 1e-9);
  EXPECT_LE(partition_deviation(v.std, 10001), 1e-9);
  EXPECT_LE(partition_deviation(v.risk, 10001), 1e-9);
}

TEST(LinguisticVariable, RejectsLayoutsThatDoNotSumToOne) {
  using S = FuzzySet;
  EXPECT_THROW(LinguisticVariable("gap", 0.0, 1.0, {S::triangle("A", 0, 0, 0.4), S::triangle("B", 0.6, 1, 1)}),
               ConfigError);
  EXPECT_THROW(LinguisticVariable("overlap", 0.0, 1.0, {S("A", 0, 0, 0.6, 0.8), S("B", 0.2, 0.4, 1, 1)}),
               ConfigError);
  EXPECT_THROW(LinguisticVariable("outside", 0.0, 1.0, {S("A", -1, 0, 1, 1)}), ConfigError);
  EXPECT_THROW(LinguisticVariable("dup", 0.0, 1.0, {S::triangle("A", 0, 0, 1), S::triangle("A", 0, 1, 1)}),
               ConfigError);
  EXPECT_NO_THROW(LinguisticVariable("ok", 0.0, 1.0, {S::triangle("A", 0, 0, 1), S::triangle("B", 0, 1, 1)}));
}

TEST(Fuzzify, WorkedExampleSplitsBetweenTwoNeighbours) {
  const auto d = default_variables().mean.fuzzify(0.007969);
  ASSERT_EQ(d.size(), 4u);
  EXPECT_NEAR(d[0], 0.92031, 1e-12);
  EXPECT_NEAR(d[1], 0.07969, 1e-12);
  EXPECT_EQ(d[2], 0.0);
  EXPECT_EQ(d[3], 0.0);
}

TEST(Fuzzify, UniverseEdge) {
  const auto d = default_variables().mean.fuzzify(0.0);
  EXPECT_EQ(d, (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
}

TEST(Fuzzify, StdOfLastPublishedRow) {
  const auto d = default_variables().std.fuzzify(0.092301);
  EXPECT_NEAR(d[0], 0.076990, 1e-6);
  EXPECT_NEAR(d[1], 0.923010, 1e-6);
  EXPECT_EQ(d[2], 0.0);
}

TEST(Fuzzify, AtMostTwoNonZeroDegrees) {
  const auto v = default_variables();
  for (int i = 0; i <= 1000; ++i) {
    const auto d = v.mean.fuzzify(0.5 * i / 1000.0);
    EXPECT_LE(std::count_if(d.begin(), d.end(), [](double x) { return x > 0.0; }), 2);
  }
}

TEST(Fuzzify, ClampsIntoUniverseAndRejectsNaN) {
  const auto v = default_variables();
  EXPECT_EQ(v.mean.fuzzify(-1.0), v.mean.fuzzify(0.0));
  EXPECT_EQ(v.mean.fuzzify(3.0), v.mean.fuzzify(0.5));
  EXPECT_THROW(v.mean.fuzzify(std::nan("")), InputError);
}

TEST(BestLabel, TiesGoToLowerIndex) {
  const auto v = default_variables();
  const auto b = v.mean.best_label(0.05);  // VERY_LOW 0.5, LOW 0.5
  EXPECT_EQ(b.index, 0u);
  EXPECT_DOUBLE_EQ(b.degree, 0.5);
}

}  // namespace
}  // namespace marginrisk
