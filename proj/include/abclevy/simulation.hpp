#pragma once

#include <vector>

#include "abclevy/constraints.hpp"
#include "abclevy/env.hpp"
#include "abclevy/metrics.hpp"
#include "abclevy/optimizers.hpp"
#include "abclevy/random.hpp"

namespace abclevy {

/**
 * A single run: owns the swarm, the hotspot set, one random stream per UAV
 * and the metrics. Stepping is deterministic given the configuration.
 *
 * Each step: optimizer proposals, scout transits, constraint pipeline,
 * coverage marking, fitness/stagnation/best bookkeeping, metrics.
 */
class Simulation
{
public:
  /// Validates `config`; throws ValidationError before any state is built.
  explicit Simulation(ScenarioConfig config);

  const ScenarioConfig& config() const { return config_; }
  const SwarmState& swarm() const { return swarm_; }
  const std::vector<Hotspot>& hotspots() const { return hotspots_; }
  const RunMetrics& metrics() const { return metrics_; }

  bool all_covered() const { return swarm_.covered_count == static_cast<int>(hotspots_.size()); }
  bool finished() const { return all_covered() || swarm_.step >= config_.max_steps; }

  /// Advances one step; no-op once finished().
  void step();
  /// Steps until finished() and returns the final metrics.
  RunMetrics run();

private:
  double evaluate(const Vec2& p) const;
  void refresh_fitness(bool initial);
  void record(std::span<const std::size_t> newly, bool field_fired, std::span<const Vec2> previous);

  ScenarioConfig config_;
  std::vector<Hotspot> hotspots_;
  SwarmState swarm_;
  std::vector<RandomSource> streams_;
  RunMetrics metrics_;
  bool escape_enabled_ = false;
};

/// Runs `config` to completion.
RunMetrics run_scenario(const ScenarioConfig& config);

}  // namespace abclevy
