#pragma once

// Motor-command normalization and windowed margin statistics.
//
// A motor's margin is its distance to the nearest saturation limit after the
// raw ESC command has been normalized to [0, 1]. The per-frame margin is the
// margin of the worst (closest to saturation) motor; its windowed mean and
// standard deviation are the inputs of the fuzzy risk estimator.

#include <deque>
#include <optional>
#include <span>
#include <vector>

namespace marginrisk {

/// Desired and actual roll/pitch, degrees.
struct Attitude {
  double roll_des = 0.0;
  double roll = 0.0;
  double pitch_des = 0.0;
  double pitch = 0.0;

  bool operator==(const Attitude&) const = default;
};

/// One timestamped sample of raw motor commands (ESC counts).
struct MotorFrame {
  double t = 0.0;
  std::vector<double> commands;
  std::optional<Attitude> attitude;

  bool operator==(const MotorFrame&) const = default;
};

enum class NormalizationMode {
  /// (c - low) / (high - low); spans [0, 1].
  kLinear,
  /// (c - low) / sqrt(high^2 - low^2). Kept for comparison; it
  /// never reaches 1 and so never yields zero margin at the upper limit.
  kRootSquareSpan,
};

class SaturationLimits {
 public:
  /// Throws ConfigError unless 0 < low < high.
  SaturationLimits(double low = 1000.0, double high = 2000.0,
                   NormalizationMode mode = NormalizationMode::kLinear);

  double low() const noexcept { return low_; }
  double high() const noexcept { return high_; }
  NormalizationMode mode() const noexcept { return mode_; }

 private:
  double low_;
  double high_;
  NormalizationMode mode_;
};

/// Clamps `command` into [low, high] and normalizes it. Throws InputError on
/// non-finite input.
double normalize_command(double command, const SaturationLimits& limits);

/// min(c, 1 - c).
double motor_margin(double normalized) noexcept;

/// Margin of the worst motor in the frame. Throws InputError when the frame
/// has no commands.
double frame_margin(const MotorFrame& frame, const SaturationLimits& limits);

struct TimedMargin {
  double t = 0.0;
  double margin = 0.0;
};

struct MarginStats {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
  double window_start = 0.0;
  double window_end = 0.0;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

/// Population mean and std of the values in `samples`. Exactly zero std when
/// all values are equal. Throws InsufficientData on an empty span.
MeanStd population_mean_std(std::span<const double> samples);

/// Statistics of the margins with t in [t_now - window, t_now]. `margins`
/// must be ordered by time. Throws InsufficientData when the window is empty.
MarginStats window_stats(std::span<const TimedMargin> margins, double window, double t_now);

/// Streaming counterpart of window_stats: keeps only the samples that can
/// still fall inside the window, so memory is bounded by the window length.
class MarginWindow {
 public:
  /// Throws ConfigError unless window > 0.
  explicit MarginWindow(double window_seconds = 2.0);

  /// Appends a sample and evicts samples older than t - window. Throws
  /// InputError if `t` goes backwards.
  void push(double t, double margin);

  /// Statistics over the current window ending at the most recent sample.
  MarginStats stats() const;

  bool empty() const noexcept { return samples_.empty(); }
  std::size_t size() const noexcept { return samples_.size(); }
  double window() const noexcept { return window_; }
  void clear() noexcept { samples_.clear(); }

 private:
  double window_;
  std::deque<TimedMargin> samples_;
  mutable std::vector<double> scratch_;
};

/// Root-mean-square of the combined roll/pitch tracking error over the
/// frames' attitude channels:
///   sqrt(mean_i[(roll_des - roll)^2 + (pitch_des - pitch)^2]).
/// Throws AttitudeUnavailable if any frame lacks attitude data and
/// InsufficientData on an empty span.
double attitude_rmse(std::span<const MotorFrame> frames);

/// Same aggregation with a minus between the squared roll and pitch errors,
/// matching the formula as literally printed. Returns nullopt as soon as a
/// frame's radicand is negative.
std::optional<double> attitude_rmse_strict(std::span<const MotorFrame> frames);

/// Combined tracking error of one attitude sample (sum form).
double attitude_error(const Attitude& attitude) noexcept;

}  // namespace marginrisk
