#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "abclevy/geometry.hpp"

namespace abclevy {

/// Raised when a scenario, parameter set or sweep description is invalid.
class ValidationError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Continuous domain [0, width] x [0, height]; cells are unit squares.
struct GridConfig
{
  int width = 100;
  int height = 100;

  bool contains(const Vec2& p) const
  {
    return p.x >= 0.0 && p.y >= 0.0 && p.x <= width && p.y <= height;
  }
  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct Hotspot
{
  Vec2 position;
  double weight = 1.0;
  bool covered = false;
};

struct ScoredPosition
{
  Vec2 position;
  double fitness = -std::numeric_limits<double>::infinity();
};

struct UavState
{
  Vec2 position;
  double fitness = 0.0;
  /// Consecutive steps without a strict fitness improvement.
  int stagnation = 0;
  /// PSO memory.
  ScoredPosition personal_best;
  Vec2 velocity;
  /// Set while the UAV is flying to a scout reset target.
  std::optional<Vec2> transit_target;
};

struct SwarmState
{
  std::vector<UavState> uavs;
  ScoredPosition global_best;
  std::int64_t step = 0;
  int covered_count = 0;
};

enum class Algorithm { Abc, Pso, HybridAbcLevy };

struct PsoParams
{
  double inertia = 0.7;
  double cognitive = 1.5;
  double social = 1.5;
};

struct AlgorithmParams
{
  /// Multiplier on every Levy step (the "LevyWeight").
  double levy_weight = 3.0;
  /// Stability index of the Levy kernel.
  double levy_beta = 1.5;
  /// Include the Mantegna sigma_u factor; false gives the bare kernel.
  bool mantegna_normalized = true;
  /// Pull of lower-fitness UAVs toward the best-known position.
  double explore_coeff = 0.1;
  /// Push of higher-fitness UAVs along (x_i - x_j) from the nearest fitter UAV.
  double exploit_coeff = 0.1;
  /// +1 applies the push as written (away from the neighbour), -1 attracts.
  int exploit_sign = 1;
  /// Use the sigmoid of the fitness gap as the onlooker probability.
  bool adaptive_lambda = false;
  double sigma_sensitivity = 10.0;
  PsoParams pso;
  int stagnation_limit = 25;
  /// ABC partner choice: 0 draws among all other UAVs, k > 0 among the k nearest.
  int abc_limit_neighbors = 0;
  /// Adds epsilon * sum w / (1 + distance) over uncovered hotspots to the fitness.
  bool fitness_shaping = true;
  double shaping_epsilon = 0.01;
  /// Re-score remembered best positions against the current uncovered set
  /// every step instead of keeping the fitness seen when they were found.
  bool rescore_memory = false;
};

enum class ZoneEscape { Auto, On, Off };

struct ConstraintParams
{
  double max_step_size = 5.0;
  double safe_zone_radius = 2.0;
  double coverage_radius = 3.0;
  double collision_radius = 1.0;
  double potential_field_gain = 10.0;
  double no_hotspot_threshold_radius = 15.0;
  /// Auto enables the no-hotspot-zone escape for the hybrid only.
  ZoneEscape zone_escape = ZoneEscape::Auto;
};

enum class ScenarioKind { UniformRandom, TwoCluster, Custom };

/// Geometry of the near-band / far-cluster layout, as fractions of the grid.
struct TwoClusterLayout
{
  double near_band_fraction = 0.3;
  double far_center_x_fraction = 0.5;
  double far_center_y_fraction = 0.9;
  double far_radius_fraction = 0.1;
};

struct ScenarioConfig
{
  std::string scenario_id = "custom";
  ScenarioKind kind = ScenarioKind::Custom;
  /// Used to regenerate preset layouts when the seed changes.
  int n_hotspots = 0;
  TwoClusterLayout layout;

  GridConfig grid;
  std::vector<Hotspot> hotspots;
  int n_uavs = 5;
  Vec2 start_position{50.0, 0.0};
  Algorithm algorithm = Algorithm::HybridAbcLevy;
  AlgorithmParams params;
  ConstraintParams constraints;
  std::uint64_t seed = 0;
  std::int64_t max_steps = 5000;
  double dt = 0.5;
  bool record_trajectories = false;
};

/**
 * Builds a scenario with default parameters.
 *
 * UniformRandom draws hotspots i.i.d. over the open grid interior.
 * TwoCluster puts ceil(n/2) hotspots in the band y < near_band_fraction * height
 * and floor(n/2) uniformly in a disc around the far centre. Custom copies
 * `custom` verbatim (n_hotspots is ignored). The result depends only on the
 * arguments.
 */
ScenarioConfig make_scenario(ScenarioKind kind, int n_hotspots, std::uint64_t seed, GridConfig grid,
                             std::span<const Hotspot> custom = {}, TwoClusterLayout layout = {});

/// Regenerates a preset layout for a new seed; Custom layouts only take the seed.
ScenarioConfig reseed(const ScenarioConfig& config, std::uint64_t seed);

/// Throws ValidationError describing the first violated constraint.
void validate(const ScenarioConfig& config);

/// Initial positions: a line along x centred on start_position, spaced by
/// the safe-zone radius and clamped into the grid.
std::vector<Vec2> start_formation(const ScenarioConfig& config);

/// Fresh swarm at the start formation; fitness values are not yet evaluated.
SwarmState initial_swarm(const ScenarioConfig& config);

/**
 * Marks every uncovered hotspot within `coverage_radius` of some UAV as
 * covered and returns the indices newly covered. Updates covered_count.
 */
std::vector<std::size_t> mark_coverage(SwarmState& swarm, std::vector<Hotspot>& hotspots,
                                       double coverage_radius);

/// Far-cluster membership for a TwoCluster layout on `grid`.
bool in_far_cluster(const Vec2& p, const GridConfig& grid, const TwoClusterLayout& layout);

std::string to_string(Algorithm algorithm);
std::string to_string(ScenarioKind kind);
std::string to_string(ZoneEscape mode);
Algorithm parse_algorithm(const std::string& text);
ScenarioKind parse_scenario_kind(const std::string& text);
ZoneEscape parse_zone_escape(const std::string& text);

/// Whether the no-hotspot-zone escape applies for this algorithm.
bool zone_escape_enabled(const ConstraintParams& constraints, Algorithm algorithm);

}  // namespace abclevy
