#pragma once

#include <optional>
#include <span>
#include <vector>

#include "abclevy/env.hpp"

namespace abclevy {

/// Per-step constraint diagnostics; counts are summed over UAVs.
struct ConstraintReport
{
  std::int64_t clamped_steps = 0;
  std::int64_t boundary_hits = 0;
  std::int64_t collision_interventions = 0;
  std::int64_t zone_escapes = 0;

  ConstraintReport& operator+=(const ConstraintReport& o)
  {
    clamped_steps += o.clamped_steps;
    boundary_hits += o.boundary_hits;
    collision_interventions += o.collision_interventions;
    zone_escapes += o.zone_escapes;
    return *this;
  }
  friend bool operator==(const ConstraintReport&, const ConstraintReport&) = default;
};

/// Rescales `displacement` to length max_step_size when it is longer.
Vec2 clamp_step(const Vec2& displacement, double max_step_size);

/// Componentwise clamp into [0, width] x [0, height].
Vec2 clamp_boundary(const Vec2& position, const GridConfig& grid);

/// Separation direction used when two agents coincide: +x for the lower
/// index of the pair, -x for the higher.
inline constexpr double kCoincidentDistance = 1e-9;

/**
 * Repulsive potential-field corrections. For every pair closer than
 * R = 2 * collision_radius, agent i receives
 * gain * (1/d - 1/R) / d^2 along the unit vector (x_i - x_j) / d.
 * Each agent's summed correction is clamped to max_step_size.
 */
std::vector<Vec2> potential_field_repulsion(std::span<const Vec2> positions, double collision_radius,
                                            double gain, double max_step_size);

/**
 * Full-speed displacement toward the nearest uncovered hotspot when none lies
 * within threshold_radius of `position`; empty otherwise or when every
 * hotspot is covered.
 */
std::optional<Vec2> escape_no_hotspot_zone(const Vec2& position, std::span<const Hotspot> hotspots,
                                           double threshold_radius, double max_step_size);

/// Result of pushing one step of proposals through the constraint pipeline.
struct PipelineResult
{
  std::vector<Vec2> positions;
  ConstraintReport report;
  /// True when the potential field (or the hold-position fallback) acted.
  bool collision_field_fired = false;
  /// Per UAV: the zone escape replaced the proposed displacement.
  std::vector<bool> escaped;
};

/**
 * Applies, per UAV: step clamp, zone-escape override (when enabled),
 * boundary clamp; then the potential-field correction and a second boundary
 * clamp for the whole swarm. If a pair still sits closer than the collision
 * radius, the UAVs involved hold their previous positions until the swarm
 * is collision-free again. `previous` must itself be collision-free.
 */
PipelineResult apply_constraints(std::span<const Vec2> previous, std::span<const Vec2> displacements,
                                 std::span<const Hotspot> hotspots, const GridConfig& grid,
                                 const ConstraintParams& constraints, bool zone_escape);

/// Smallest pairwise distance, +infinity for fewer than two positions.
double min_pairwise_distance(std::span<const Vec2> positions);

}  // namespace abclevy
