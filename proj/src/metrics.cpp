#include "abclevy/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace abclevy {

Heatmap::Heatmap(int width, int height)
  : width_(width), height_(height),
    counts_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0)
{
  if (width < 1 || height < 1)
    throw std::invalid_argument("heatmap dimensions must be positive");
}

std::int64_t Heatmap::max_count() const
{
  return counts_.empty() ? 0 : *std::max_element(counts_.begin(), counts_.end());
}

void Heatmap::add(const Vec2& position)
{
  const int cx = std::clamp(static_cast<int>(std::floor(position.x)), 0, width_ - 1);
  const int cy = std::clamp(static_cast<int>(std::floor(position.y)), 0, height_ - 1);
  ++counts_[index(cx, cy)];
  ++total_;
}

Heatmap& Heatmap::merge(const Heatmap& other)
{
  if (counts_.empty()) {
    *this = other;
    return *this;
  }
  if (other.width_ != width_ || other.height_ != height_)
    throw std::invalid_argument("cannot merge heatmaps of different sizes");
  for (std::size_t i = 0; i < counts_.size(); ++i)
    counts_[i] += other.counts_[i];
  total_ += other.total_;
  return *this;
}

void Heatmap::write_pgm(std::ostream& out) const
{
  const std::int64_t peak = max_count();
  out << "P2\n" << width_ << ' ' << height_ << "\n255\n";
  for (int cy = height_ - 1; cy >= 0; --cy) {
    for (int cx = 0; cx < width_; ++cx) {
      const std::int64_t c = at(cx, cy);
      const std::int64_t level = peak == 0 ? 0 : (c * 255 + peak / 2) / peak;
      out << level << (cx + 1 < width_ ? ' ' : '\n');
    }
  }
}

void Heatmap::write_csv(std::ostream& out) const
{
  for (int cy = height_ - 1; cy >= 0; --cy) {
    for (int cx = 0; cx < width_; ++cx)
      out << at(cx, cy) << (cx + 1 < width_ ? ',' : '\n');
  }
}

RunMetrics make_run_metrics(const GridConfig& grid, std::size_t n_hotspots, double dt)
{
  RunMetrics metrics;
  metrics.dt = dt;
  metrics.heatmap = Heatmap(grid.width, grid.height);
  metrics.hotspot_cover_step.assign(n_hotspots, std::nullopt);
  return metrics;
}

void record_step(RunMetrics& metrics, const SwarmState& swarm, std::span<const std::size_t> newly_covered)
{
  for (const UavState& uav : swarm.uavs)
    metrics.heatmap.add(uav.position);
  ++metrics.recorded_steps;

  for (std::size_t k : newly_covered) {
    if (k < metrics.hotspot_cover_step.size() && !metrics.hotspot_cover_step[k])
      metrics.hotspot_cover_step[k] = swarm.step;
  }
  if (metrics.coverage_curve.empty() || metrics.coverage_curve.back().covered != swarm.covered_count)
    metrics.coverage_curve.push_back({swarm.step, swarm.covered_count});

  const auto total = static_cast<int>(metrics.hotspot_cover_step.size());
  if (!metrics.steps_to_cover && total > 0 && swarm.covered_count >= total) {
    metrics.steps_to_cover = swarm.step;
    metrics.time_to_cover = static_cast<double>(swarm.step) * metrics.dt;
  }
}

double biodiversity_metric(std::span<const Hotspot> hotspots)
{
  double b = 0.0;
  for (const Hotspot& h : hotspots)
    if (h.covered)
      b += h.weight;
  return b;
}

double hotspot_alignment(const Heatmap& heatmap, std::span<const Hotspot> hotspots, double bandwidth)
{
  const std::size_t cells = heatmap.counts().size();
  if (cells < 2 || hotspots.empty() || !(bandwidth > 0.0))
    return 0.0;
  std::vector<double> density(cells, 0.0);
  const double inv = 1.0 / (2.0 * bandwidth * bandwidth);
  for (int cy = 0; cy < heatmap.height(); ++cy) {
    for (int cx = 0; cx < heatmap.width(); ++cx) {
      const Vec2 centre{cx + 0.5, cy + 0.5};
      double d = 0.0;
      for (const Hotspot& h : hotspots)
        d += h.weight * std::exp(-(centre - h.position).squared_norm() * inv);
      density[static_cast<std::size_t>(cy) * heatmap.width() + cx] = d;
    }
  }
  const auto counts = heatmap.counts();
  double mean_c = 0.0;
  double mean_d = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    mean_c += static_cast<double>(counts[i]);
    mean_d += density[i];
  }
  mean_c /= static_cast<double>(cells);
  mean_d /= static_cast<double>(cells);
  double cov = 0.0;
  double var_c = 0.0;
  double var_d = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    const double a = static_cast<double>(counts[i]) - mean_c;
    const double b = density[i] - mean_d;
    cov += a * b;
    var_c += a * a;
    var_d += b * b;
  }
  if (var_c == 0.0 || var_d == 0.0)
    return 0.0;
  return cov / std::sqrt(var_c * var_d);
}

}  // namespace abclevy
