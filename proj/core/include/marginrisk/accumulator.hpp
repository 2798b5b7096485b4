#pragma once

// Elevated-risk accumulator. The last W instantaneous risk values are modelled
// as a normal distribution; the probabilities of the next value landing above
// the high threshold or below the low threshold drive the accumulated index
// up or down:
//
//   dR = k_i * P(r > x_high) - k_d * P(r <= x_low),   R clamped to [0, 100].

#include <cstddef>
#include <span>
#include <vector>

namespace marginrisk {

/// Error function.
double erf(double x) noexcept;

/// P(X <= x) for X ~ Normal(mu, sigma). sigma == 0 is treated as a point mass
/// at mu with a right-continuous step (1 at x == mu). Throws InputError for
/// negative or non-finite sigma.
double normal_cdf(double x, double mu, double sigma);

struct AccumulatorParams {
  std::size_t window = 50;  // samples
  double x_high = 75.0;     // %
  double x_low = 25.0;      // %
  double k_i = 2.0;         // % per step
  double k_d = 1.0;         // % per step

  /// Throws ConfigError unless 0 <= x_low < x_high <= 100, gains >= 0 and
  /// window >= 2.
  void validate() const;
};

struct TailProbabilities {
  double p_high = 0.0;
  double p_low = 0.0;
  double mean = 0.0;
  double std = 0.0;
};

struct StepResult {
  double delta = 0.0;
  TailProbabilities tails;
  bool input_clamped = false;
};

/// Per-stream accumulator state. Single owner, strictly sequential updates;
/// no allocation after construction.
class RiskAccumulator {
 public:
  explicit RiskAccumulator(AccumulatorParams params = {});

  /// Pushes `risk_inst` (clamped into [0, 100]) into the window, evicting the
  /// oldest sample beyond W, then applies the tail-probability update. Throws
  /// InputError on non-finite input.
  StepResult step(double risk_inst);

  /// Applies one update with externally supplied probabilities and returns
  /// the unclamped increment k_i * p_high - k_d * p_low.
  double apply(double p_high, double p_low);

  /// Tail probabilities of the current window. Throws InsufficientData when
  /// the window is empty.
  TailProbabilities tail_probabilities() const;

  double value() const noexcept { return value_; }
  std::size_t history_size() const noexcept { return count_; }
  const AccumulatorParams& params() const noexcept { return params_; }

  /// Window contents, oldest first.
  std::vector<double> history() const;

  void reset() noexcept;

 private:
  AccumulatorParams params_;
  std::vector<double> ring_;
  std::size_t head_ = 0;  // next write position
  std::size_t count_ = 0;
  double value_ = 0.0;
  mutable std::vector<double> scratch_;
};

/// Tail probabilities of an arbitrary window of risk values. Throws
/// InsufficientData on an empty window.
TailProbabilities tail_probabilities(std::span<const double> window, const AccumulatorParams& params);

}  // namespace marginrisk
