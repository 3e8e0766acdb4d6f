#include "abclevy/simulation.hpp"

#include <algorithm>

namespace abclevy {

namespace {

ScenarioConfig validated(ScenarioConfig config)
{
  validate(config);
  return config;
}

}  // namespace

Simulation::Simulation(ScenarioConfig config)
  : config_(validated(std::move(config))),
    hotspots_(config_.hotspots),
    swarm_(initial_swarm(config_)),
    metrics_(make_run_metrics(config_.grid, hotspots_.size(), config_.dt)),
    escape_enabled_(zone_escape_enabled(config_.constraints, config_.algorithm))
{
  streams_.reserve(swarm_.uavs.size());
  for (std::size_t i = 0; i < swarm_.uavs.size(); ++i)
    streams_.emplace_back(config_.seed, i + 1);

  const auto newly = mark_coverage(swarm_, hotspots_, config_.constraints.coverage_radius);
  refresh_fitness(true);
  std::vector<Vec2> positions;
  for (const UavState& uav : swarm_.uavs)
    positions.push_back(uav.position);
  record(newly, false, positions);
}

double Simulation::evaluate(const Vec2& p) const
{
  return fitness(p, hotspots_, config_.constraints.coverage_radius, config_.params.fitness_shaping,
                 config_.params.shaping_epsilon);
}

void Simulation::refresh_fitness(bool initial)
{
  if (config_.params.rescore_memory && !initial) {
    swarm_.global_best.fitness = evaluate(swarm_.global_best.position);
    for (UavState& uav : swarm_.uavs)
      uav.personal_best.fitness = evaluate(uav.personal_best.position);
  }
  for (UavState& uav : swarm_.uavs) {
    const double f = evaluate(uav.position);
    if (initial) {
      uav.stagnation = 0;
    } else if (f > uav.fitness) {
      uav.stagnation = 0;
    } else if (!uav.transit_target) {
      ++uav.stagnation;
    }
    uav.fitness = f;
    if (f > uav.personal_best.fitness)
      uav.personal_best = {uav.position, f};
    if (f > swarm_.global_best.fitness)
      swarm_.global_best = {uav.position, f};
  }
}

void Simulation::record(std::span<const std::size_t> newly, bool field_fired, std::span<const Vec2> previous)
{
  std::vector<Vec2> positions;
  positions.reserve(swarm_.uavs.size());
  for (std::size_t i = 0; i < swarm_.uavs.size(); ++i) {
    positions.push_back(swarm_.uavs[i].position);
    const double moved = distance(positions.back(), previous[i]);
    metrics_.max_displacement = std::max(metrics_.max_displacement, moved);
    if (!field_fired)
      metrics_.max_displacement_field_idle = std::max(metrics_.max_displacement_field_idle, moved);
  }
  metrics_.min_pairwise_distance = std::min(metrics_.min_pairwise_distance, min_pairwise_distance(positions));
  record_step(metrics_, swarm_, newly);
  if (config_.record_trajectories)
    metrics_.trajectories.push_back({swarm_.step, std::move(positions), field_fired});
}

void Simulation::step()
{
  if (finished())
    return;

  const StepContext ctx{swarm_, hotspots_, config_.params, config_.constraints, config_.grid};
  const std::vector<ProposedMove> moves = optimizer_step(config_.algorithm, ctx, streams_);

  const std::size_t n = swarm_.uavs.size();
  std::vector<Vec2> previous(n);
  std::vector<Vec2> displacements(n);
  std::vector<std::optional<Vec2>> velocities(n);
  for (std::size_t i = 0; i < n; ++i)
    previous[i] = swarm_.uavs[i].position;
  for (const ProposedMove& move : moves) {
    UavState& uav = swarm_.uavs[move.uav_index];
    displacements[move.uav_index] = move.displacement;
    velocities[move.uav_index] = move.velocity;
    if (move.phase == MovePhase::Scout) {
      uav.transit_target = move.target;
      uav.stagnation = 0;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (const auto& target = swarm_.uavs[i].transit_target)
      displacements[i] = *target - previous[i];
  }

  PipelineResult piped = apply_constraints(previous, displacements, hotspots_, config_.grid,
                                           config_.constraints, escape_enabled_);
  metrics_.constraint_report += piped.report;

  for (std::size_t i = 0; i < n; ++i) {
    UavState& uav = swarm_.uavs[i];
    uav.position = piped.positions[i];
    if (uav.transit_target &&
        (piped.escaped[i] || distance(uav.position, *uav.transit_target) < config_.constraints.collision_radius))
      uav.transit_target.reset();
    if (velocities[i])
      uav.velocity = uav.position - previous[i];
  }

  ++swarm_.step;
  const auto newly = mark_coverage(swarm_, hotspots_, config_.constraints.coverage_radius);
  refresh_fitness(false);
  record(newly, piped.collision_field_fired, previous);
  metrics_.biodiversity_b = biodiversity_metric(hotspots_);
}

RunMetrics Simulation::run()
{
  while (!finished())
    step();
  metrics_.biodiversity_b = biodiversity_metric(hotspots_);
  metrics_.final_positions.clear();
  for (const UavState& uav : swarm_.uavs)
    metrics_.final_positions.push_back(uav.position);
  return metrics_;
}

RunMetrics run_scenario(const ScenarioConfig& config)
{
  Simulation sim(config);
  return sim.run();
}

}  // namespace abclevy
