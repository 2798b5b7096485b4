#pragma once

// Statistical stand-in for a simulated wind campaign. Not a physics model:
// it only reproduces the coupling between shrinking motor margins and growing
// attitude error so the learning pipeline can be exercised end to end.
//
// Per step of length dt:
//   w      = max(0, wind_mean + sqrt(wind_var) * xi) + active gusts
//            (xi is a unit AR(1) process with correlation time wind_tau)
//   u_n    = hover + drag_gain * w + s_n * disturbance_gain * w + noise,
//            s_n = +1, -1, +1, ... across motors
//   deficit = sum_n of how far u_n lies outside [0, 1]
//   e      relaxes towards tracking_gain * w + attitude_gain * deficit with
//            time constant attitude_tau
// and commands are mapped to ESC counts and clamped to the saturation limits.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "marginrisk/learning.hpp"
#include "marginrisk/margin.hpp"

namespace marginrisk {

struct Gust {
  double t_start = 0.0;
  double t_end = 0.0;
  double extra = 0.0;  // m/s added to the wind while active

  bool operator==(const Gust&) const = default;
};

struct WindScenario {
  double wind_mean = 0.0;  // m/s, [0, 20]
  double wind_var = 0.0;   // m^2/s^2, [0, 40]
  double duration = 60.0;  // s
  std::uint64_t seed = 0;
  std::vector<Gust> gusts;

  /// Throws InputError when a field is out of range.
  void validate() const;
};

struct DroneParams {
  std::size_t motors = 4;
  double hover = 0.5;               // normalized hover command, (0, 1)
  double disturbance_gain = 0.025;  // differential command per m/s
  double drag_gain = 0.00625;       // collective command per m/s
  double noise_std = 0.005;         // normalized command noise
  double tracking_gain = 0.1;       // deg of attitude error per m/s of wind
  double attitude_gain = 250.0;     // deg per unit of saturation deficit
  double attitude_tau = 0.5;        // s
  double wind_tau = 1.0;            // s, turbulence correlation time
  SaturationLimits limits{};

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

/// Deterministic for a given (scenario, drone, rate). Frames carry attitude
/// channels with zero desired roll and pitch. Throws ConfigError for
/// rate <= 0.
std::vector<MotorFrame> simulate_flight(const WindScenario& scenario, const DroneParams& drone,
                                        double rate_hz = 10.0);

/// Even grid over wind mean x wind variance.
struct ScenarioGrid {
  std::size_t mean_levels = 19;
  std::size_t var_levels = 11;
  double mean_max = 20.0;
  double var_max = 40.0;
  double duration = 60.0;
  std::uint64_t seed = 0;

  /// One scenario per grid point, row-major over (mean, var), each with its
  /// own seed derived from `seed` and its index.
  std::vector<WindScenario> scenarios() const;
};

/// Whole-flight margin statistics and risk label of one simulated flight.
DataPair summarize_flight(std::span<const MotorFrame> frames, const SaturationLimits& limits);

/// One DataPair per scenario. Throws InputError on an empty grid.
std::vector<DataPair> gen_dataset(const ScenarioGrid& grid, const DroneParams& drone,
                                  double rate_hz = 10.0);

/// Seed for the i-th child stream of `base` (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

}  // namespace marginrisk
