#include "abclevy/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "abclevy/constraints.hpp"

namespace abclevy {

double fitness(const Vec2& position, std::span<const Hotspot> hotspots, double r_cov, bool shaping,
               double epsilon)
{
  const double r2 = r_cov * r_cov;
  double indicator = 0.0;
  double shaped = 0.0;
  for (const Hotspot& h : hotspots) {
    if (h.covered)
      continue;
    const Vec2 diff = position - h.position;
    if (diff.squared_norm() <= r2)
      indicator += h.weight;
    if (shaping)
      shaped += h.weight / (1.0 + diff.norm());
  }
  return indicator + epsilon * shaped;
}

std::vector<double> nectar_probabilities(std::span<const double> fitnesses)
{
  if (fitnesses.empty())
    throw std::invalid_argument("nectar_probabilities: empty fitness list");
  double total = 0.0;
  for (double f : fitnesses) {
    if (!(f >= 0.0))
      throw std::invalid_argument("nectar_probabilities: fitness values must be nonnegative");
    total += f;
  }
  std::vector<double> out(fitnesses.size());
  if (total == 0.0) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(fitnesses.size()));
    return out;
  }
  std::transform(fitnesses.begin(), fitnesses.end(), out.begin(), [total](double f) { return f / total; });
  return out;
}

double adaptive_levy_probability(double fitness_value, double best_fitness, double sigma)
{
  return 1.0 / (1.0 + std::exp(-sigma * (fitness_value - best_fitness)));
}

Vec2 abc_candidate(const Vec2& x_i, const Vec2& x_k, const Vec2& phi)
{
  const Vec2 diff = x_i - x_k;
  return {x_i.x + phi.x * diff.x, x_i.y + phi.y * diff.y};
}

Vec2 abc_candidate(RandomSource& src, const Vec2& x_i, const Vec2& x_k)
{
  const double phi_x = src.uniform(-1.0, 1.0);
  const double phi_y = src.uniform(-1.0, 1.0);
  return abc_candidate(x_i, x_k, {phi_x, phi_y});
}

PsoUpdate pso_step(const UavState& state, const Vec2& global_best, const PsoParams& params,
                   const Vec2& r1, const Vec2& r2)
{
  const Vec2 to_personal = state.personal_best.position - state.position;
  const Vec2 to_global = global_best - state.position;
  PsoUpdate out;
  out.velocity = {
    params.inertia * state.velocity.x + params.cognitive * r1.x * to_personal.x +
      params.social * r2.x * to_global.x,
    params.inertia * state.velocity.y + params.cognitive * r1.y * to_personal.y +
      params.social * r2.y * to_global.y,
  };
  out.position = state.position + out.velocity;
  return out;
}

PsoUpdate pso_step(const UavState& state, const Vec2& global_best, const PsoParams& params,
                   RandomSource& src)
{
  const Vec2 r1{src.uniform01(), src.uniform01()};
  const Vec2 r2{src.uniform01(), src.uniform01()};
  return pso_step(state, global_best, params, r1, r2);
}

void separate_pairs(std::span<Vec2> positions, double radius)
{
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      const Vec2 diff = positions[i] - positions[j];
      const double d = diff.norm();
      if (d >= radius)
        continue;
      const Vec2 dir = d < kCoincidentDistance ? Vec2{1.0, 0.0} : diff * (1.0 / d);
      positions[i] += dir * radius;
      positions[j] -= dir * radius;
    }
  }
}

namespace {

class StepHelper
{
public:
  explicit StepHelper(const StepContext& ctx) : ctx_(ctx) {}

  double eval(const Vec2& p) const
  {
    return fitness(p, ctx_.hotspots, ctx_.constraints.coverage_radius, ctx_.params.fitness_shaping,
                   ctx_.params.shaping_epsilon);
  }

  Vec2 move(const Vec2& from, const Vec2& displacement) const
  {
    return clamp_boundary(from + clamp_step(displacement, ctx_.constraints.max_step_size), ctx_.grid);
  }

  Vec2 random_position(RandomSource& src) const
  {
    return {src.uniform_open01() * ctx_.grid.width, src.uniform_open01() * ctx_.grid.height};
  }

  bool stagnated(std::size_t i) const
  {
    return ctx_.swarm.uavs[i].stagnation >= ctx_.params.stagnation_limit;
  }

  ProposedMove scout(std::size_t i, RandomSource& src) const
  {
    ProposedMove move;
    move.uav_index = i;
    move.phase = MovePhase::Scout;
    move.target = random_position(src);
    move.displacement = *move.target - ctx_.swarm.uavs[i].position;
    return move;
  }

private:
  const StepContext& ctx_;
};

void check_streams(const StepContext& ctx, std::span<RandomSource> streams)
{
  if (streams.size() != ctx.swarm.uavs.size())
    throw std::invalid_argument("optimizer step needs one random stream per UAV");
}

double median_of(std::vector<double> values)
{
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

std::vector<ProposedMove> hybrid_step(const StepContext& ctx, std::span<RandomSource> streams,
                                      const LevyDraw& levy)
{
  check_streams(ctx, streams);
  const StepHelper helper(ctx);
  const AlgorithmParams& params = ctx.params;
  const std::size_t n = ctx.swarm.uavs.size();
  if (n == 0)
    return {};

  auto draw = [&](std::size_t i) {
    if (levy)
      return levy(streams[i], i);
    return levy_step(streams[i], params.levy_weight, params.levy_beta, params.mantegna_normalized).vector;
  };

  std::vector<Vec2> work(n);
  std::vector<double> fit(n);

  // Employed phase: unconditional Levy move.
  for (std::size_t i = 0; i < n; ++i) {
    work[i] = helper.move(ctx.swarm.uavs[i].position, draw(i));
    fit[i] = helper.eval(work[i]);
  }

  // Exploration / exploitation balancing around the swarm median.
  const double median = median_of(fit);
  const std::vector<Vec2> snapshot = work;
  const bool have_best = std::isfinite(ctx.swarm.global_best.fitness);
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 nudge;
    if (fit[i] > median) {
      std::optional<std::size_t> nearest;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || !(fit[j] > fit[i]))
          continue;
        const double d = distance(snapshot[i], snapshot[j]);
        if (d < best) {
          best = d;
          nearest = j;
        }
      }
      if (nearest)
        nudge = (snapshot[i] - snapshot[*nearest]) * (params.exploit_coeff * params.exploit_sign);
    } else if (have_best) {
      nudge = (ctx.swarm.global_best.position - snapshot[i]) * params.explore_coeff;
    }
    work[i] = helper.move(snapshot[i], nudge);
  }

  // Safe-zone separation.
  separate_pairs(work, ctx.constraints.safe_zone_radius);
  for (std::size_t i = 0; i < n; ++i) {
    work[i] = clamp_boundary(work[i], ctx.grid);
    fit[i] = helper.eval(work[i]);
  }

  // Onlooker phase: selected UAVs try a fresh Levy move, kept on improvement.
  std::vector<double> select_prob;
  if (params.adaptive_lambda) {
    select_prob.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      select_prob[i] = adaptive_levy_probability(fit[i], ctx.swarm.global_best.fitness,
                                                 params.sigma_sensitivity);
  } else {
    select_prob = nectar_probabilities(fit);
  }
  std::vector<bool> onlooker(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (!streams[i].bernoulli(select_prob[i]))
      continue;
    const Vec2 candidate = helper.move(work[i], draw(i));
    const double candidate_fit = helper.eval(candidate);
    if (candidate_fit > fit[i]) {
      work[i] = candidate;
      fit[i] = candidate_fit;
      onlooker[i] = true;
    }
  }

  std::vector<ProposedMove> moves;
  moves.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (helper.stagnated(i)) {
      moves.push_back(helper.scout(i, streams[i]));
      continue;
    }
    ProposedMove move;
    move.uav_index = i;
    move.phase = onlooker[i] ? MovePhase::Onlooker : MovePhase::Employed;
    move.displacement = work[i] - ctx.swarm.uavs[i].position;
    moves.push_back(move);
  }
  return moves;
}

namespace {

std::size_t pick_partner(const std::vector<Vec2>& positions, std::size_t i, int limit_neighbors,
                         RandomSource& src)
{
  const std::size_t n = positions.size();
  std::vector<std::size_t> others;
  others.reserve(n - 1);
  for (std::size_t k = 0; k < n; ++k)
    if (k != i)
      others.push_back(k);
  if (limit_neighbors > 0 && static_cast<std::size_t>(limit_neighbors) < others.size()) {
    std::stable_sort(others.begin(), others.end(), [&](std::size_t a, std::size_t b) {
      return distance(positions[i], positions[a]) < distance(positions[i], positions[b]);
    });
    others.resize(static_cast<std::size_t>(limit_neighbors));
  }
  return others[src.index(others.size())];
}

std::size_t roulette(std::span<const double> probabilities, double draw)
{
  double acc = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    acc += probabilities[i];
    if (draw < acc)
      return i;
  }
  return probabilities.size() - 1;
}

}  // namespace

std::vector<ProposedMove> abc_step(const StepContext& ctx, std::span<RandomSource> streams)
{
  check_streams(ctx, streams);
  const StepHelper helper(ctx);
  const std::size_t n = ctx.swarm.uavs.size();
  if (n == 0)
    return {};

  std::vector<Vec2> work(n);
  std::vector<double> fit(n);
  for (std::size_t i = 0; i < n; ++i) {
    work[i] = ctx.swarm.uavs[i].position;
    fit[i] = helper.eval(work[i]);
  }

  auto try_candidate = [&](std::size_t i, RandomSource& src) {
    if (n < 2)
      return false;
    const std::size_t k = pick_partner(work, i, ctx.params.abc_limit_neighbors, src);
    const Vec2 raw = abc_candidate(src, work[i], work[k]);
    const Vec2 candidate = helper.move(work[i], raw - work[i]);
    const double candidate_fit = helper.eval(candidate);
    if (candidate_fit > fit[i]) {
      work[i] = candidate;
      fit[i] = candidate_fit;
      return true;
    }
    return false;
  };

  for (std::size_t i = 0; i < n; ++i)
    try_candidate(i, streams[i]);

  std::vector<bool> onlooker(n, false);
  const std::vector<double> probabilities = nectar_probabilities(fit);
  for (std::size_t o = 0; o < n; ++o) {
    const std::size_t i = roulette(probabilities, streams[o].uniform01());
    if (try_candidate(i, streams[o]))
      onlooker[i] = true;
  }

  std::vector<ProposedMove> moves;
  moves.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (helper.stagnated(i)) {
      moves.push_back(helper.scout(i, streams[i]));
      continue;
    }
    ProposedMove move;
    move.uav_index = i;
    move.phase = onlooker[i] ? MovePhase::Onlooker : MovePhase::Employed;
    move.displacement = work[i] - ctx.swarm.uavs[i].position;
    moves.push_back(move);
  }
  return moves;
}

std::vector<ProposedMove> pso_swarm_step(const StepContext& ctx, std::span<RandomSource> streams)
{
  check_streams(ctx, streams);
  std::vector<ProposedMove> moves;
  moves.reserve(ctx.swarm.uavs.size());
  for (std::size_t i = 0; i < ctx.swarm.uavs.size(); ++i) {
    const UavState& uav = ctx.swarm.uavs[i];
    const PsoUpdate update = pso_step(uav, ctx.swarm.global_best.position, ctx.params.pso, streams[i]);
    ProposedMove move;
    move.uav_index = i;
    move.displacement = update.position - uav.position;
    move.velocity = update.velocity;
    moves.push_back(move);
  }
  return moves;
}

std::vector<ProposedMove> optimizer_step(Algorithm algorithm, const StepContext& ctx,
                                         std::span<RandomSource> streams)
{
  switch (algorithm) {
    case Algorithm::Abc: return abc_step(ctx, streams);
    case Algorithm::Pso: return pso_swarm_step(ctx, streams);
    case Algorithm::HybridAbcLevy: return hybrid_step(ctx, streams);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace abclevy
