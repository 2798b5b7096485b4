#pragma once

// Mamdani inference over a RuleSet: product firing strength, product
// implication, max aggregation, discrete centroid defuzzification.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "marginrisk/rule_set.hpp"

namespace marginrisk {

/// i-th of n evenly spaced points over [lo, hi].
inline double sample_point(double lo, double hi, std::size_t n, std::size_t i) noexcept {
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

/// Membership values sampled at evenly spaced points over [lo, hi].
struct SampledCurve {
  double lo = 0.0;
  double hi = 100.0;
  std::vector<double> mu;

  double x(std::size_t i) const noexcept { return sample_point(lo, hi, mu.size(), i); }
};

/// Discrete centroid sum(x_i * mu_i) / sum(mu_i). Throws InputError for fewer
/// than two samples and UncoveredInput for an all-zero curve.
double defuzzify(const SampledCurve& curve);

/// Thread-safe for concurrent const use.
class InferenceEngine {
 public:
  static constexpr std::size_t kDefaultResolution = 201;
  static constexpr double kFiringEpsilon = 1e-9;

  /// Throws ConfigError on an empty rule set or resolution < 2.
  explicit InferenceEngine(RuleSet rules, std::size_t resolution = kDefaultResolution);

  const RuleSet& rules() const noexcept { return rules_; }
  std::size_t resolution() const noexcept { return resolution_; }

  /// Crisp risk in % or nullopt when no rule fires above kFiringEpsilon.
  std::optional<double> try_infer(double mean, double std) const;

  /// As try_infer, throwing UncoveredInput instead of returning nullopt.
  double infer(double mean, double std) const;

  /// Aggregated output curve; all zeros when the input is uncovered.
  SampledCurve aggregate(double mean, double std) const;

 private:
  RuleSet rules_;
  std::size_t resolution_;
  std::vector<std::vector<double>> consequent_curves_;  // per risk label

  /// Firing strength of every rule; returns the largest.
  double firing_strengths(double mean, double std, std::vector<double>& out) const;
};

/// Convenience wrapper around a temporary InferenceEngine.
double infer(const RuleSet& rules, double mean, double std);

}  // namespace marginrisk
