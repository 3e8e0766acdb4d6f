#include "abclevy/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace abclevy {

Vec2 clamp_step(const Vec2& displacement, double max_step_size)
{
  const double len = displacement.norm();
  if (len <= max_step_size)
    return displacement;
  double scale = max_step_size / len;
  Vec2 out = displacement * scale;
  // Rounding can leave the result an ulp above the cap.
  while (out.norm() > max_step_size) {
    scale = std::nextafter(scale, 0.0);
    out = displacement * scale;
  }
  return out;
}

Vec2 clamp_boundary(const Vec2& position, const GridConfig& grid)
{
  return {std::max(std::min(position.x, static_cast<double>(grid.width)), 0.0),
          std::max(std::min(position.y, static_cast<double>(grid.height)), 0.0)};
}

std::vector<Vec2> potential_field_repulsion(std::span<const Vec2> positions, double collision_radius,
                                            double gain, double max_step_size)
{
  const double influence = 2.0 * collision_radius;
  std::vector<Vec2> corrections(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = 0; j < positions.size(); ++j) {
      if (i == j)
        continue;
      const Vec2 diff = positions[i] - positions[j];
      const double d = diff.norm();
      if (d >= influence)
        continue;
      if (d < kCoincidentDistance) {
        const Vec2 axis{i < j ? 1.0 : -1.0, 0.0};
        const double magnitude =
          std::min(gain * (1.0 / kCoincidentDistance - 1.0 / influence), max_step_size);
        corrections[i] += axis * magnitude;
        continue;
      }
      const double magnitude = gain * (1.0 / d - 1.0 / influence) / (d * d);
      corrections[i] += diff * (magnitude / d);
    }
  }
  for (Vec2& c : corrections)
    c = clamp_step(c, max_step_size);
  return corrections;
}

std::optional<Vec2> escape_no_hotspot_zone(const Vec2& position, std::span<const Hotspot> hotspots,
                                           double threshold_radius, double max_step_size)
{
  const Hotspot* nearest = nullptr;
  double best = std::numeric_limits<double>::infinity();
  for (const Hotspot& h : hotspots) {
    if (h.covered)
      continue;
    const double d = distance(position, h.position);
    if (d <= threshold_radius)
      return std::nullopt;
    if (d < best) {
      best = d;
      nearest = &h;
    }
  }
  if (nearest == nullptr)
    return std::nullopt;
  return (nearest->position - position) * (max_step_size / best);
}

namespace {

// from + step, shrunk until the realised distance from `from` is within `cap`.
Vec2 capped_target(const Vec2& from, const Vec2& step, double cap)
{
  double scale = 1.0;
  Vec2 target = from + step;
  while (distance(target, from) > cap) {
    scale = std::nextafter(scale, 0.0);
    target = from + step * scale;
  }
  return target;
}

}  // namespace

double min_pairwise_distance(std::span<const Vec2> positions)
{
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < positions.size(); ++i)
    for (std::size_t j = i + 1; j < positions.size(); ++j)
      best = std::min(best, distance(positions[i], positions[j]));
  return best;
}

PipelineResult apply_constraints(std::span<const Vec2> previous, std::span<const Vec2> displacements,
                                 std::span<const Hotspot> hotspots, const GridConfig& grid,
                                 const ConstraintParams& constraints, bool zone_escape)
{
  const std::size_t n = previous.size();
  PipelineResult result;
  result.positions.resize(n);
  result.escaped.assign(n, false);

  for (std::size_t i = 0; i < n; ++i) {
    Vec2 step = clamp_step(displacements[i], constraints.max_step_size);
    if (!(step == displacements[i]))
      ++result.report.clamped_steps;
    if (zone_escape) {
      if (auto escape = escape_no_hotspot_zone(previous[i], hotspots,
                                               constraints.no_hotspot_threshold_radius,
                                               constraints.max_step_size)) {
        step = *escape;
        result.escaped[i] = true;
        ++result.report.zone_escapes;
      }
    }
    const Vec2 target = capped_target(previous[i], step, constraints.max_step_size);
    result.positions[i] = clamp_boundary(target, grid);
    if (!(result.positions[i] == target))
      ++result.report.boundary_hits;
  }

  const auto corrections = potential_field_repulsion(result.positions, constraints.collision_radius,
                                                     constraints.potential_field_gain,
                                                     constraints.max_step_size);
  for (std::size_t i = 0; i < n; ++i) {
    if (corrections[i].x == 0.0 && corrections[i].y == 0.0)
      continue;
    result.collision_field_fired = true;
    ++result.report.collision_interventions;
    Vec2 target = capped_target(result.positions[i], corrections[i], constraints.max_step_size);
    if (distance(target, previous[i]) > 2.0 * constraints.max_step_size)
      target = capped_target(previous[i], target - previous[i], 2.0 * constraints.max_step_size);
    result.positions[i] = clamp_boundary(target, grid);
    if (!(result.positions[i] == target))
      ++result.report.boundary_hits;
  }

  // Hold-position fallback: the previous configuration is collision-free, so
  // reverting offenders terminates after at most n passes.
  std::vector<bool> held(n, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (distance(result.positions[i], result.positions[j]) >= constraints.collision_radius)
          continue;
        for (std::size_t k : {i, j}) {
          if (!held[k]) {
            held[k] = true;
            result.positions[k] = previous[k];
            ++result.report.collision_interventions;
            result.collision_field_fired = true;
            changed = true;
          }
        }
      }
    }
  }
  return result;
}

}  // namespace abclevy
