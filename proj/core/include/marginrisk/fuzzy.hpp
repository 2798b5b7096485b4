#pragma once

// Trapezoidal fuzzy sets and linguistic variables.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace marginrisk {

/// Trapezoid with corners a <= b <= c <= d. Triangles have b == c; left and
/// right shoulders have a == b or c == d.
class FuzzySet {
 public:
  /// Throws ConfigError on non-finite or unordered corners.
  FuzzySet(std::string label, double a, double b, double c, double d);

  static FuzzySet triangle(std::string label, double a, double peak, double d) {
    return FuzzySet(std::move(label), a, peak, peak, d);
  }

  const std::string& label() const noexcept { return label_; }
  const std::array<double, 4>& corners() const noexcept { return corners_; }

  /// Degree of membership of `x`; 0 outside [a, d], 1 on [b, c].
  double membership(double x) const noexcept;

  bool operator==(const FuzzySet&) const = default;

 private:
  std::string label_;
  std::array<double, 4> corners_;
};

struct LabelDegree {
  std::size_t index = 0;
  double degree = 0.0;
};

/// Ordered fuzzy sets over a bounded universe. The sets must form a partition
/// of unity: their memberships sum to one everywhere on the universe.
class LinguisticVariable {
 public:
  static constexpr double kPartitionTolerance = 1e-9;

  /// Throws ConfigError when the universe is empty, a corner lies outside it,
  /// labels repeat, or the sets do not sum to one.
  LinguisticVariable(std::string name, double lo, double hi, std::vector<FuzzySet> sets);

  const std::string& name() const noexcept { return name_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  const std::vector<FuzzySet>& sets() const noexcept { return sets_; }
  std::size_t size() const noexcept { return sets_.size(); }
  const FuzzySet& operator[](std::size_t i) const { return sets_.at(i); }

  double clamp(double x) const noexcept;

  /// Membership of `x` (clamped into the universe) in set `i`.
  double membership(std::size_t i, double x) const;

  /// Degrees for every set, in set order. Throws InputError on non-finite x.
  std::vector<double> fuzzify(double x) const;

  /// Set with the largest membership; ties go to the lower index.
  LabelDegree best_label(double x) const;

  /// Index of the set called `label`. Throws ConfigError if absent.
  std::size_t index_of(const std::string& label) const;

  bool operator==(const LinguisticVariable&) const = default;

 private:
  std::string name_;
  double lo_;
  double hi_;
  std::vector<FuzzySet> sets_;
};

/// Largest |sum of memberships - 1| over `samples` evenly spaced points.
double partition_deviation(const LinguisticVariable& var, std::size_t samples);

/// The estimator's two inputs and its output.
struct FuzzyVariables {
  LinguisticVariable mean;
  LinguisticVariable std;
  LinguisticVariable risk;

  bool operator==(const FuzzyVariables&) const = default;
};

/// Margin mean over [0, 0.5]: VERY_LOW, LOW, MEDIUM at 0.1 spacing plus a HIGH
/// shoulder from 0.3; margin std over [0, 0.5]: LOW, MEDIUM plus a HIGH
/// shoulder from 0.2; risk over [0, 100] %: five triangles 25 points apart.
FuzzyVariables default_variables();

}  // namespace marginrisk
