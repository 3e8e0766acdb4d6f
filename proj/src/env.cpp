#include "abclevy/env.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "abclevy/random.hpp"

namespace abclevy {

namespace {

constexpr std::uint64_t kScenarioStream = 0;

Vec2 uniform_interior(RandomSource& src, const GridConfig& grid)
{
  const double x = src.uniform_open01() * grid.width;
  const double y = src.uniform_open01() * grid.height;
  return {x, y};
}

void require(bool condition, const std::string& message)
{
  if (!condition)
    throw ValidationError(message);
}

void validate_grid(const GridConfig& grid)
{
  require(grid.width >= 1 && grid.height >= 1, "grid width and height must be at least 1");
}

}  // namespace

ScenarioConfig make_scenario(ScenarioKind kind, int n_hotspots, std::uint64_t seed, GridConfig grid,
                             std::span<const Hotspot> custom, TwoClusterLayout layout)
{
  validate_grid(grid);

  ScenarioConfig config;
  config.kind = kind;
  config.grid = grid;
  config.seed = seed;
  config.layout = layout;
  config.start_position = {0.5 * grid.width, 0.0};

  if (kind == ScenarioKind::Custom) {
    for (std::size_t i = 0; i < custom.size(); ++i) {
      if (!grid.contains(custom[i].position))
        throw ValidationError("hotspot " + std::to_string(i) + " lies outside the grid");
    }
    config.hotspots.assign(custom.begin(), custom.end());
    config.n_hotspots = static_cast<int>(custom.size());
    config.scenario_id = "custom";
    return config;
  }

  if (n_hotspots <= 0)
    throw ValidationError("n_hotspots must be positive");
  config.n_hotspots = n_hotspots;

  RandomSource src(seed, kScenarioStream);
  config.hotspots.reserve(static_cast<std::size_t>(n_hotspots));

  if (kind == ScenarioKind::UniformRandom) {
    for (int i = 0; i < n_hotspots; ++i)
      config.hotspots.push_back({uniform_interior(src, grid), 1.0, false});
    config.scenario_id = "uniform" + std::to_string(n_hotspots);
    return config;
  }

  const int n_near = (n_hotspots + 1) / 2;
  const int n_far = n_hotspots / 2;
  const double band = layout.near_band_fraction * grid.height;
  for (int i = 0; i < n_near; ++i) {
    const double x = src.uniform_open01() * grid.width;
    const double y = src.uniform_open01() * band;
    config.hotspots.push_back({{x, y}, 1.0, false});
  }
  const Vec2 centre{layout.far_center_x_fraction * grid.width,
                    layout.far_center_y_fraction * grid.height};
  const double radius = layout.far_radius_fraction * std::min(grid.width, grid.height);
  for (int i = 0; i < n_far; ++i) {
    const double r = radius * std::sqrt(src.uniform01());
    const double theta = 2.0 * std::numbers::pi * src.uniform01();
    Vec2 p{centre.x + r * std::cos(theta), centre.y + r * std::sin(theta)};
    p.x = std::clamp(p.x, 0.0, static_cast<double>(grid.width));
    p.y = std::clamp(p.y, 0.0, static_cast<double>(grid.height));
    config.hotspots.push_back({p, 1.0, false});
  }
  config.scenario_id = "twocluster" + std::to_string(n_hotspots);
  return config;
}

ScenarioConfig reseed(const ScenarioConfig& config, std::uint64_t seed)
{
  ScenarioConfig out = config;
  out.seed = seed;
  if (config.kind != ScenarioKind::Custom) {
    const ScenarioConfig fresh =
      make_scenario(config.kind, config.n_hotspots, seed, config.grid, {}, config.layout);
    out.hotspots = fresh.hotspots;
  }
  return out;
}

bool in_far_cluster(const Vec2& p, const GridConfig& grid, const TwoClusterLayout& layout)
{
  const Vec2 centre{layout.far_center_x_fraction * grid.width,
                    layout.far_center_y_fraction * grid.height};
  const double radius = layout.far_radius_fraction * std::min(grid.width, grid.height);
  return distance(p, centre) <= radius + 1e-9;
}

void validate(const ScenarioConfig& config)
{
  validate_grid(config.grid);
  require(!config.hotspots.empty(), "scenario has no hotspots");
  double weight_sum = 0.0;
  double weight_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < config.hotspots.size(); ++i) {
    const Hotspot& h = config.hotspots[i];
    require(config.grid.contains(h.position), "hotspot " + std::to_string(i) + " lies outside the grid");
    require(std::isfinite(h.weight) && h.weight > 0.0,
            "hotspot " + std::to_string(i) + " must have a positive weight");
    weight_sum += h.weight;
    weight_min = std::min(weight_min, h.weight);
  }
  require(config.n_uavs >= 1, "n_uavs must be positive");
  require(config.grid.contains(config.start_position), "start position lies outside the grid");
  require(config.max_steps >= 1, "max_steps must be positive");
  require(std::isfinite(config.dt) && config.dt > 0.0, "dt must be positive");

  const AlgorithmParams& p = config.params;
  require(std::isfinite(p.levy_weight) && p.levy_weight > 0.0, "levy_weight must be positive");
  require(p.levy_beta > 0.0 && p.levy_beta <= 2.0, "levy_beta must lie in (0, 2]");
  require(std::isfinite(p.explore_coeff) && std::isfinite(p.exploit_coeff),
          "explore/exploit coefficients must be finite");
  require(p.exploit_sign == 1 || p.exploit_sign == -1, "exploit_sign must be +1 or -1");
  require(std::isfinite(p.sigma_sensitivity) && p.sigma_sensitivity > 0.0,
          "sigma_sensitivity must be positive");
  require(std::isfinite(p.pso.inertia) && std::isfinite(p.pso.cognitive) && std::isfinite(p.pso.social),
          "pso coefficients must be finite");
  require(p.stagnation_limit >= 1, "stagnation_limit must be at least 1");
  require(p.abc_limit_neighbors >= 0, "abc_limit_neighbors must be nonnegative");
  require(p.shaping_epsilon >= 0.0, "shaping_epsilon must be nonnegative");
  if (p.fitness_shaping) {
    require(p.shaping_epsilon * weight_sum < weight_min,
            "shaping_epsilon * total hotspot weight must stay below the smallest hotspot weight");
  }

  const ConstraintParams& c = config.constraints;
  require(c.max_step_size > 0.0, "max_step_size must be positive");
  require(c.coverage_radius > 0.0, "coverage_radius must be positive");
  require(c.collision_radius > 0.0, "collision_radius must be positive");
  require(c.collision_radius <= c.safe_zone_radius, "collision_radius must not exceed safe_zone_radius");
  require(c.potential_field_gain > 0.0, "potential_field_gain must be positive");
  require(c.no_hotspot_threshold_radius > 0.0, "no_hotspot_threshold_radius must be positive");

  const auto formation = start_formation(config);
  for (std::size_t i = 0; i < formation.size(); ++i) {
    for (std::size_t j = i + 1; j < formation.size(); ++j) {
      require(distance(formation[i], formation[j]) >= c.collision_radius,
              "start formation does not fit the grid without collisions");
    }
  }
}

std::vector<Vec2> start_formation(const ScenarioConfig& config)
{
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(std::max(config.n_uavs, 0)));
  const double spacing = config.constraints.safe_zone_radius;
  const double centre = 0.5 * (config.n_uavs - 1);
  for (int i = 0; i < config.n_uavs; ++i) {
    Vec2 p{config.start_position.x + (i - centre) * spacing, config.start_position.y};
    p.x = std::clamp(p.x, 0.0, static_cast<double>(config.grid.width));
    p.y = std::clamp(p.y, 0.0, static_cast<double>(config.grid.height));
    out.push_back(p);
  }
  return out;
}

SwarmState initial_swarm(const ScenarioConfig& config)
{
  SwarmState swarm;
  for (const Vec2& p : start_formation(config)) {
    UavState uav;
    uav.position = p;
    uav.personal_best = {p, -std::numeric_limits<double>::infinity()};
    swarm.uavs.push_back(uav);
  }
  return swarm;
}

std::vector<std::size_t> mark_coverage(SwarmState& swarm, std::vector<Hotspot>& hotspots,
                                       double coverage_radius)
{
  std::vector<std::size_t> newly;
  const double r2 = coverage_radius * coverage_radius;
  for (std::size_t k = 0; k < hotspots.size(); ++k) {
    Hotspot& h = hotspots[k];
    if (h.covered)
      continue;
    for (const UavState& uav : swarm.uavs) {
      if ((uav.position - h.position).squared_norm() <= r2) {
        h.covered = true;
        newly.push_back(k);
        break;
      }
    }
  }
  swarm.covered_count = static_cast<int>(
    std::count_if(hotspots.begin(), hotspots.end(), [](const Hotspot& h) { return h.covered; }));
  return newly;
}

std::string to_string(Algorithm algorithm)
{
  switch (algorithm) {
    case Algorithm::Abc: return "abc";
    case Algorithm::Pso: return "pso";
    case Algorithm::HybridAbcLevy: return "hybrid";
  }
  return "unknown";
}

std::string to_string(ScenarioKind kind)
{
  switch (kind) {
    case ScenarioKind::UniformRandom: return "uniform";
    case ScenarioKind::TwoCluster: return "twocluster";
    case ScenarioKind::Custom: return "custom";
  }
  return "unknown";
}

std::string to_string(ZoneEscape mode)
{
  switch (mode) {
    case ZoneEscape::Auto: return "auto";
    case ZoneEscape::On: return "on";
    case ZoneEscape::Off: return "off";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& text)
{
  if (text == "abc" || text == "ABC")
    return Algorithm::Abc;
  if (text == "pso" || text == "PSO")
    return Algorithm::Pso;
  if (text == "hybrid" || text == "HybridAbcLevy" || text == "abc-levy")
    return Algorithm::HybridAbcLevy;
  throw ValidationError("unknown algorithm '" + text + "' (expected abc, pso or hybrid)");
}

ScenarioKind parse_scenario_kind(const std::string& text)
{
  if (text == "uniform" || text == "UniformRandom")
    return ScenarioKind::UniformRandom;
  if (text == "twocluster" || text == "TwoCluster")
    return ScenarioKind::TwoCluster;
  if (text == "custom" || text == "Custom")
    return ScenarioKind::Custom;
  throw ValidationError("unknown scenario kind '" + text + "'");
}

ZoneEscape parse_zone_escape(const std::string& text)
{
  if (text == "auto")
    return ZoneEscape::Auto;
  if (text == "on")
    return ZoneEscape::On;
  if (text == "off")
    return ZoneEscape::Off;
  throw ValidationError("zone_escape must be auto, on or off");
}

bool zone_escape_enabled(const ConstraintParams& constraints, Algorithm algorithm)
{
  switch (constraints.zone_escape) {
    case ZoneEscape::On: return true;
    case ZoneEscape::Off: return false;
    case ZoneEscape::Auto: return algorithm == Algorithm::HybridAbcLevy;
  }
  return false;
}

}  // namespace abclevy
