#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "abclevy/env.hpp"
#include "abclevy/random.hpp"

namespace abclevy {

/**
 * Coverage fitness of `position`: the summed weight of uncovered hotspots
 * within r_cov, plus epsilon * w_k / (1 + distance) over uncovered hotspots
 * when shaping is on. Covered hotspots never contribute.
 */
double fitness(const Vec2& position, std::span<const Hotspot> hotspots, double r_cov, bool shaping,
               double epsilon = 0.01);

/// Roulette weights fit_i / sum(fit). A zero total yields the uniform
/// distribution. Throws std::invalid_argument for empty or negative input.
std::vector<double> nectar_probabilities(std::span<const double> fitnesses);

/// Onlooker probability 1 / (1 + exp(-sigma * (f_i - f_best))).
double adaptive_levy_probability(double fitness, double best_fitness, double sigma);

/// x_i + phi * (x_i - x_k), phi drawn per axis from U(-1, 1).
Vec2 abc_candidate(RandomSource& src, const Vec2& x_i, const Vec2& x_k);
Vec2 abc_candidate(const Vec2& x_i, const Vec2& x_k, const Vec2& phi);

struct PsoUpdate
{
  Vec2 velocity;
  Vec2 position;
};

/// Velocity and position update with explicit per-axis r1, r2 factors.
PsoUpdate pso_step(const UavState& state, const Vec2& global_best, const PsoParams& params,
                   const Vec2& r1, const Vec2& r2);
/// Same update drawing r1, r2 ~ U(0, 1) per axis from `src`.
PsoUpdate pso_step(const UavState& state, const Vec2& global_best, const PsoParams& params,
                   RandomSource& src);

enum class MovePhase { Employed, Onlooker, Scout };

struct ProposedMove
{
  std::size_t uav_index = 0;
  Vec2 displacement;
  MovePhase phase = MovePhase::Employed;
  /// Absolute reset target, present only for Scout moves.
  std::optional<Vec2> target;
  /// New PSO velocity, present only for PSO moves.
  std::optional<Vec2> velocity;
};

/// Per-UAV Levy displacement provider; the default samples levy_step().
using LevyDraw = std::function<Vec2(RandomSource& src, std::size_t uav)>;

/// Read-only inputs shared by every optimizer step.
struct StepContext
{
  const SwarmState& swarm;
  std::span<const Hotspot> hotspots;
  const AlgorithmParams& params;
  const ConstraintParams& constraints;
  const GridConfig& grid;
};

/**
 * One iteration of the hybrid ABC-Levy update: Levy employed move with
 * boundary clamp, median-split exploration/exploitation nudges, safe-zone
 * separation, probabilistic onlooker Levy moves kept only on strict fitness
 * improvement, and scout resets for stagnated UAVs. `streams` holds one
 * source per UAV. Every intermediate move is step-clamped and kept inside
 * the grid. The swarm is not modified.
 */
std::vector<ProposedMove> hybrid_step(const StepContext& ctx, std::span<RandomSource> streams,
                                      const LevyDraw& levy = {});

/// One iteration of the canonical ABC: employed, onlooker and scout phases
/// with greedy (strictly better) acceptance.
std::vector<ProposedMove> abc_step(const StepContext& ctx, std::span<RandomSource> streams);

/// One iteration of the global-best PSO.
std::vector<ProposedMove> pso_swarm_step(const StepContext& ctx, std::span<RandomSource> streams);

/// Dispatches on `algorithm`.
std::vector<ProposedMove> optimizer_step(Algorithm algorithm, const StepContext& ctx,
                                         std::span<RandomSource> streams);

/// Pairwise separation: both members of a pair closer than `radius` move
/// `radius` away from each other, pairs visited in (i, j) order.
void separate_pairs(std::span<Vec2> positions, double radius);

}  // namespace abclevy
