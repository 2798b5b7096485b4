#include "marginrisk/synthdata.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "marginrisk/errors.hpp"

namespace marginrisk {

void WindScenario::validate() const {
  if (!(wind_mean >= 0.0 && wind_mean <= 20.0)) throw InputError("wind mean must lie in [0, 20] m/s");
  if (!(wind_var >= 0.0 && wind_var <= 40.0)) throw InputError("wind variance must lie in [0, 40]");
  if (!(duration > 0.0) || !std::isfinite(duration)) throw InputError("duration must be positive");
  for (const auto& g : gusts) {
    if (!std::isfinite(g.t_start) || !std::isfinite(g.t_end) || g.t_end < g.t_start ||
        !(g.extra >= 0.0) || !std::isfinite(g.extra)) {
      throw InputError("gusts need t_start <= t_end and a finite non-negative strength");
    }
  }
}

void DroneParams::validate() const {
  if (motors == 0) throw ConfigError("drone needs at least one motor");
  if (!(hover > 0.0 && hover < 1.0)) throw ConfigError("hover command must lie in (0, 1)");
  for (double g : {disturbance_gain, drag_gain, noise_std, tracking_gain, attitude_gain}) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw ConfigError("drone gains must be non-negative");
  }
  if (!(attitude_tau > 0.0) || !(wind_tau > 0.0)) throw ConfigError("time constants must be positive");
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<MotorFrame> simulate_flight(const WindScenario& scenario, const DroneParams& drone,
                                        double rate_hz) {
  if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) throw ConfigError("sample rate must be positive");
  scenario.validate();
  drone.validate();

  std::mt19937_64 rng(scenario.seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> heading_dist(0.0, 2.0 * std::numbers::pi);

  const double dt = 1.0 / rate_hz;
  const auto steps = static_cast<std::size_t>(std::llround(scenario.duration * rate_hz));
  const double sigma = std::sqrt(scenario.wind_var);
  const double rho = std::exp(-dt / drone.wind_tau);
  const double innovation = std::sqrt(1.0 - rho * rho);
  const double relax = 1.0 - std::exp(-dt / drone.attitude_tau);
  const double heading = heading_dist(rng);
  const double span = drone.limits.high() - drone.limits.low();

  double xi = unit(rng);
  double error = 0.0;
  std::vector<MotorFrame> frames;
  frames.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (k > 0) xi = rho * xi + innovation * unit(rng);

    double wind = std::max(0.0, scenario.wind_mean + sigma * xi);
    for (const auto& g : scenario.gusts) {
      if (t >= g.t_start && t < g.t_end) wind += g.extra;
    }

    MotorFrame frame;
    frame.t = t;
    frame.commands.reserve(drone.motors);
    double deficit = 0.0;
    for (std::size_t n = 0; n < drone.motors; ++n) {
      const double direction = n % 2 == 0 ? 1.0 : -1.0;
      double u = drone.hover + drone.drag_gain * wind + direction * drone.disturbance_gain * wind;
      if (drone.noise_std > 0.0) u += drone.noise_std * unit(rng);
      deficit += std::max(0.0, u - 1.0) + std::max(0.0, -u);
      const double counts = drone.limits.low() + std::clamp(u, 0.0, 1.0) * span;
      frame.commands.push_back(std::clamp(counts, drone.limits.low(), drone.limits.high()));
    }

    const double target = drone.tracking_gain * wind + drone.attitude_gain * deficit;
    error += (target - error) * relax;
    frame.attitude = Attitude{0.0, -error * std::cos(heading), 0.0, -error * std::sin(heading)};
    frames.push_back(std::move(frame));
  }
  return frames;
}

std::vector<WindScenario> ScenarioGrid::scenarios() const {
  std::vector<WindScenario> out;
  out.reserve(mean_levels * var_levels);
  auto level = [](double max, std::size_t n, std::size_t i) {
    return n == 1 ? 0.0 : max * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  for (std::size_t i = 0; i < mean_levels; ++i) {
    for (std::size_t j = 0; j < var_levels; ++j) {
      WindScenario s;
      s.wind_mean = level(mean_max, mean_levels, i);
      s.wind_var = level(var_max, var_levels, j);
      s.duration = duration;
      s.seed = derive_seed(seed, out.size());
      out.push_back(std::move(s));
    }
  }
  return out;
}

DataPair summarize_flight(std::span<const MotorFrame> frames, const SaturationLimits& limits) {
  if (frames.empty()) throw InputError("flight has no frames");
  std::vector<double> margins;
  margins.reserve(frames.size());
  for (const auto& f : frames) margins.push_back(frame_margin(f, limits));
  const auto ms = population_mean_std(margins);
  return {ms.mean, ms.std, risk_from_rmse(attitude_rmse(frames))};
}

std::vector<DataPair> gen_dataset(const ScenarioGrid& grid, const DroneParams& drone, double rate_hz) {
  const auto scenarios = grid.scenarios();
  if (scenarios.empty()) throw InputError("scenario grid is empty");
  std::vector<DataPair> pairs;
  pairs.reserve(scenarios.size());
  for (const auto& s : scenarios) {
    pairs.push_back(summarize_flight(simulate_flight(s, drone, rate_hz), drone.limits));
  }
  return pairs;
}

}  // namespace marginrisk
