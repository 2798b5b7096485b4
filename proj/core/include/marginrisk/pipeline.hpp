#pragma once

// Streaming risk estimation: per frame, worst-motor margin -> windowed
// mean/std -> fuzzy inference (decision-map fallback) -> accumulator.

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "marginrisk/accumulator.hpp"
#include "marginrisk/decision_map.hpp"
#include "marginrisk/inference.hpp"
#include "marginrisk/margin.hpp"

namespace marginrisk {

struct PipelineConfig {
  SaturationLimits limits{};
  double window_seconds = 2.0;
  AccumulatorParams accumulator{};
  /// Records per second; 0 emits one record per input frame.
  double emit_rate_hz = 0.0;

  /// Throws ConfigError on a non-positive window or negative emit rate.
  void validate() const;
};

/// Where an instantaneous risk value came from.
enum class RiskSource {
  kRules,  // Mamdani inference
  kMap,    // decision-map lookup
  kHeld,   // no rule fired and no map: previous value held
};

struct RiskRecord {
  double t = 0.0;
  double margin_mean = 0.0;
  double margin_std = 0.0;
  double risk_inst = 0.0;
  double p_high = 0.0;
  double p_low = 0.0;
  double risk_acc = 0.0;
  RiskSource source = RiskSource::kRules;

  bool uncovered() const noexcept { return source == RiskSource::kHeld; }
  bool operator==(const RiskRecord&) const = default;
};

/// Risk models consulted by the estimator. At least one must be set; with
/// both, rules are tried first and the map covers inputs no rule fires for.
struct RiskModel {
  std::shared_ptr<const InferenceEngine> engine;
  std::shared_ptr<const DecisionMap> map;
};

/// Incremental estimator. Memory is bounded by the margin and risk windows,
/// independent of how many frames have been pushed.
class RiskEstimator {
 public:
  /// Throws ConfigError on invalid config or an empty model.
  RiskEstimator(PipelineConfig config, RiskModel model);

  /// Consumes one frame; returns a record when one is due. Throws InputError
  /// when time runs backwards or the motor count changes.
  std::optional<RiskRecord> push(const MotorFrame& frame);

  const PipelineConfig& config() const noexcept { return config_; }
  double accumulated() const noexcept { return accumulator_.value(); }

 private:
  PipelineConfig config_;
  RiskModel model_;
  MarginWindow margins_;
  RiskAccumulator accumulator_;
  std::optional<double> last_frame_t_;
  std::optional<double> next_emit_t_;
  std::optional<double> last_risk_;
  std::size_t motors_ = 0;

  bool emission_due(double t);
  std::pair<double, RiskSource> instantaneous_risk(double mean, double std) const;
};

/// Runs a whole log through a fresh estimator. Throws InputError on an empty
/// log.
std::vector<RiskRecord> run_pipeline(const PipelineConfig& config, const RiskModel& model,
                                     std::span<const MotorFrame> frames);

}  // namespace marginrisk
