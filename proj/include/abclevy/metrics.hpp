#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "abclevy/constraints.hpp"
#include "abclevy/env.hpp"

namespace abclevy {

/// Visit counts per unit cell. Cell (cx, cy) covers [cx, cx+1) x [cy, cy+1);
/// positions on the far edge fall into the last cell.
class Heatmap
{
public:
  Heatmap() = default;
  Heatmap(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  std::int64_t total() const { return total_; }
  std::int64_t at(int cx, int cy) const { return counts_[index(cx, cy)]; }
  std::int64_t max_count() const;
  std::span<const std::int64_t> counts() const { return counts_; }

  void add(const Vec2& position);
  /// Cell-wise sum; both maps must share dimensions.
  Heatmap& merge(const Heatmap& other);

  /// Plain P2 graymap, counts scaled to 0..255 by the largest cell; the
  /// first row is the top of the grid (cy = height - 1).
  void write_pgm(std::ostream& out) const;
  /// Raw counts, one CSV line per grid row in the same order as the PGM.
  void write_csv(std::ostream& out) const;

  friend bool operator==(const Heatmap&, const Heatmap&) = default;

private:
  std::size_t index(int cx, int cy) const
  {
    return static_cast<std::size_t>(cy) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(cx);
  }

  int width_ = 0;
  int height_ = 0;
  std::int64_t total_ = 0;
  std::vector<std::int64_t> counts_;
};

struct CoveragePoint
{
  std::int64_t step = 0;
  int covered = 0;
  friend bool operator==(const CoveragePoint&, const CoveragePoint&) = default;
};

struct TrajectoryFrame
{
  std::int64_t step = 0;
  std::vector<Vec2> positions;
  /// Whether the collision machinery moved anyone on the way into this frame.
  bool collision_field_fired = false;
};

struct RunMetrics
{
  std::optional<std::int64_t> steps_to_cover;
  std::optional<double> time_to_cover;
  double dt = 0.5;
  double biodiversity_b = 0.0;
  Heatmap heatmap;
  std::vector<CoveragePoint> coverage_curve;
  std::vector<TrajectoryFrame> trajectories;
  ConstraintReport constraint_report;
  std::int64_t recorded_steps = 0;
  double min_pairwise_distance = std::numeric_limits<double>::infinity();
  /// Largest single-step UAV displacement, overall and over steps where the
  /// collision field stayed idle.
  double max_displacement = 0.0;
  double max_displacement_field_idle = 0.0;
  /// Step at which each hotspot was first covered.
  std::vector<std::optional<std::int64_t>> hotspot_cover_step;
  std::vector<Vec2> final_positions;
};

RunMetrics make_run_metrics(const GridConfig& grid, std::size_t n_hotspots, double dt);

/**
 * Accounts one recorded simulation step: bins every UAV into the heatmap,
 * extends the coverage curve when the covered count changes, stamps newly
 * covered hotspots and sets steps_to_cover / time_to_cover the first time
 * every hotspot is covered.
 */
void record_step(RunMetrics& metrics, const SwarmState& swarm, std::span<const std::size_t> newly_covered);

/// Sum of weights over covered hotspots.
double biodiversity_metric(std::span<const Hotspot> hotspots);

/**
 * Pearson correlation between heatmap counts and a Gaussian kernel density
 * of the hotspot positions (bandwidth in grid units). A qualitative proxy
 * for "effort follows the hotspot distribution"; 0 for degenerate maps.
 */
double hotspot_alignment(const Heatmap& heatmap, std::span<const Hotspot> hotspots, double bandwidth);

}  // namespace abclevy
