#pragma once

// Precomputed risk surface over the (margin mean, margin std) plane. Cells
// where no rule fires are filled by inverse-distance weighting of the nearest
// rule-covered cells.

#include <cstddef>
#include <span>
#include <vector>

#include "marginrisk/inference.hpp"

namespace marginrisk {

struct Interval {
  double lo = 0.0;
  double hi = 0.5;

  bool operator==(const Interval&) const = default;
};

/// Row-major grid: rows run along margin std, columns along margin mean.
class DecisionMap {
 public:
  /// Throws ConfigError on dims below 2x2, empty bounds, size mismatches, or
  /// values outside [0, 100].
  DecisionMap(std::size_t rows, std::size_t cols, Interval mean_bounds, Interval std_bounds,
              std::vector<double> values, std::vector<bool> covered);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Interval& mean_bounds() const noexcept { return mean_bounds_; }
  const Interval& std_bounds() const noexcept { return std_bounds_; }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<bool>& covered() const noexcept { return covered_; }

  double mean_at(std::size_t col) const noexcept;
  double std_at(std::size_t row) const noexcept;
  double value(std::size_t row, std::size_t col) const { return values_.at(row * cols_ + col); }
  bool is_covered(std::size_t row, std::size_t col) const { return covered_.at(row * cols_ + col); }
  std::size_t covered_count() const noexcept;

  /// Bilinear interpolation; inputs are clamped into the bounds.
  double lookup(double mean, double std) const noexcept;

  bool operator==(const DecisionMap&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  Interval mean_bounds_;
  Interval std_bounds_;
  std::vector<double> values_;
  std::vector<bool> covered_;
};

struct MapOptions {
  std::size_t rows = 101;
  std::size_t cols = 101;
  Interval mean_bounds{0.0, 0.5};
  Interval std_bounds{0.0, 0.5};
  std::size_t neighbors = 8;
  double power = 2.0;
};

/// Evaluates the engine at every node and fills uncovered nodes by IDW over
/// the `neighbors` nearest covered nodes. Throws ConfigError when no node is
/// covered.
DecisionMap build_decision_map(const InferenceEngine& engine, const MapOptions& options = {});
DecisionMap build_decision_map(const RuleSet& rules, const MapOptions& options = {});

struct ScatteredSample {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

/// Inverse-distance-weighted value at (x, y) from scattered samples. A sample
/// at zero distance is returned exactly. Throws InputError on no samples.
double idw(std::span<const ScatteredSample> samples, double x, double y, double power);

}  // namespace marginrisk
