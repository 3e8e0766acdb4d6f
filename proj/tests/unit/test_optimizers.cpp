#include <doctest.h>

#include <cmath>
#include <vector>

#include "abclevy/constraints.hpp"
#include "abclevy/optimizers.hpp"

using namespace abclevy;

namespace {

std::vector<RandomSource> make_streams(std::size_t n, std::uint64_t seed = 1)
{
  std::vector<RandomSource> streams;
  for (std::size_t i = 0; i < n; ++i)
    streams.emplace_back(seed, i + 1);
  return streams;
}

SwarmState swarm_at(const std::vector<Vec2>& positions)
{
  SwarmState swarm;
  for (const Vec2& p : positions) {
    UavState u;
    u.position = p;
    u.personal_best = {p, 0.0};
    swarm.uavs.push_back(u);
  }
  return swarm;
}

const LevyDraw zero_levy = [](RandomSource&, std::size_t) { return Vec2{}; };

bool near(const Vec2& a, const Vec2& b, double tol = 1e-12)
{
  return distance(a, b) <= tol;
}

}  // namespace

TEST_CASE("fitness examples")
{
  std::vector<Hotspot> hs{{{10.0, 10.0}, 1.0, false}};
  CHECK(fitness({10.0, 10.0}, hs, 3.0, false) == 1.0);
  hs[0].covered = true;
  CHECK(fitness({10.0, 10.0}, hs, 3.0, false) == 0.0);
  CHECK(fitness({10.0, 10.0}, hs, 3.0, true) == 0.0);

  const std::vector<Hotspot> three{{{1.0, 1.0}, 1.0, false}, {{2.0, 1.0}, 1.0, false}, {{1.0, 2.0}, 1.0, false}};
  CHECK(fitness({1.5, 1.5}, three, 3.0, false) == 3.0);

  const std::vector<Hotspot> one{{{0.0, 0.0}, 2.0, false}};
  CHECK(fitness({3.0, 4.0}, one, 3.0, true, 0.01) == doctest::Approx(0.01 * 2.0 / 6.0));
}

TEST_CASE("fitness equals a brute-force indicator sum on a small lattice")
{
  // Hotspots on half-integer coordinates so the oracle can compare doubled
  // integer coordinates exactly.
  struct H
  {
    int x2, y2;
    bool covered;
  };
  const std::vector<std::vector<H>> layouts{
    {{3, 3, false}},
    {{2, 2, false}, {7, 5, false}},
    {{4, 4, false}, {5, 9, true}, {10, 0, false}},
    {{0, 0, false}, {9, 9, false}, {6, 2, false}},
  };
  const int r2_doubled = 9;  // (2 * 1.5)^2
  for (const auto& layout : layouts) {
    std::vector<Hotspot> hs;
    for (const H& h : layout)
      hs.push_back({{h.x2 / 2.0, h.y2 / 2.0}, 1.0, h.covered});
    int checked = 0;
    for (int x = 0; x <= 5; ++x) {
      for (int y = 0; y <= 5; ++y) {
        int expected = 0;
        for (const H& h : layout) {
          const int dx = 2 * x - h.x2;
          const int dy = 2 * y - h.y2;
          if (!h.covered && dx * dx + dy * dy <= r2_doubled)
            ++expected;
        }
        CHECK(fitness({double(x), double(y)}, hs, 1.5, false) == double(expected));
        ++checked;
      }
    }
    CHECK(checked == 36);
  }
}

TEST_CASE("nectar probabilities")
{
  const std::vector<double> even{1, 1, 1, 1};
  for (double p : nectar_probabilities(even))
    CHECK(p == 0.25);
  const std::vector<double> two{1, 3};
  const auto p = nectar_probabilities(two);
  CHECK(std::abs(p[0] - 0.25) < 1e-12);
  CHECK(std::abs(p[1] - 0.75) < 1e-12);
  const std::vector<double> zeros{0, 0};
  CHECK(nectar_probabilities(zeros) == std::vector<double>{0.5, 0.5});
  CHECK_THROWS_AS(nectar_probabilities(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(nectar_probabilities(std::vector<double>{1.0, -0.5}), std::invalid_argument);

  const std::vector<double> mixed{0.2, 1.7, 0.0, 3.1};
  double total = 0.0;
  for (double q : nectar_probabilities(mixed)) {
    CHECK(q >= 0.0);
    total += q;
  }
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("adaptive levy probability")
{
  CHECK(adaptive_levy_probability(2.0, 2.0, 10.0) == 0.5);
  CHECK(adaptive_levy_probability(1.0, 2.0, 10.0) < 0.5);
  CHECK(adaptive_levy_probability(1.0, 2.0, 10.0) == doctest::Approx(1.0 / (1.0 + std::exp(10.0))));
}

TEST_CASE("abc candidate")
{
  CHECK(abc_candidate({4.0, 5.0}, {4.0, 5.0}, {0.7, -0.3}) == Vec2{4.0, 5.0});
  CHECK(abc_candidate({4.0, 5.0}, {1.0, 9.0}, {0.0, 0.0}) == Vec2{4.0, 5.0});
  CHECK(abc_candidate({0.0, 0.0}, {2.0, 0.0}, {-1.0, -1.0}) == Vec2{2.0, 0.0});

  RandomSource src(4, 1);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 c = abc_candidate(src, {10.0, 10.0}, {12.0, 7.0});
    CHECK(std::abs(c.x - 10.0) <= 2.0);
    CHECK(std::abs(c.y - 10.0) <= 3.0);
  }
}

TEST_CASE("pso step examples")
{
  UavState s;
  s.position = {0.0, 0.0};
  s.velocity = {0.0, 0.0};
  s.personal_best = {{1.0, 0.0}, 1.0};
  const PsoUpdate u = pso_step(s, {0.0, 1.0}, PsoParams{0.7, 1.5, 1.5}, {1.0, 1.0}, {1.0, 1.0});
  CHECK(u.velocity.x == doctest::Approx(1.5));
  CHECK(u.velocity.y == doctest::Approx(1.5));
  CHECK(u.position.x == doctest::Approx(1.5));
  CHECK(u.position.y == doctest::Approx(1.5));

  UavState m;
  m.position = {3.0, 4.0};
  m.velocity = {1.0, -2.0};
  m.personal_best = {{7.0, 7.0}, 1.0};
  const PsoUpdate still = pso_step(m, {9.0, 1.0}, PsoParams{1.0, 0.0, 0.0}, {0.5, 0.5}, {0.5, 0.5});
  CHECK(still.velocity == Vec2{1.0, -2.0});
  CHECK(still.position == Vec2{4.0, 2.0});

  m.personal_best.position = m.position;
  const PsoUpdate inertia = pso_step(m, m.position, PsoParams{0.7, 1.5, 1.5}, {0.3, 0.9}, {0.2, 0.4});
  CHECK(inertia.velocity.x == doctest::Approx(0.7));
  CHECK(inertia.velocity.y == doctest::Approx(-1.4));
}

TEST_CASE("separate_pairs pushes coincident agents apart on the x axis")
{
  std::vector<Vec2> p{{20.0, 20.0}, {20.0, 20.0}};
  separate_pairs(p, 2.0);
  CHECK(distance(p[0], p[1]) >= 2.0);
  CHECK(p[0] == Vec2{22.0, 20.0});
  CHECK(p[1] == Vec2{18.0, 20.0});

  std::vector<Vec2> q{{20.0, 20.0}, {20.0, 21.0}};
  separate_pairs(q, 2.0);
  CHECK(q[0] == Vec2{20.0, 18.0});
  CHECK(q[1] == Vec2{20.0, 23.0});
}

TEST_CASE("hybrid step: single UAV with a zero draw stays put")
{
  const std::vector<Hotspot> hs{{{60.0, 60.0}, 1.0, false}};
  SwarmState swarm = swarm_at({{50.0, 50.0}});
  AlgorithmParams params;
  ConstraintParams constraints;
  GridConfig grid;
  auto streams = make_streams(1);
  const StepContext ctx{swarm, hs, params, constraints, grid};
  const auto moves = hybrid_step(ctx, streams, zero_levy);
  REQUIRE(moves.size() == 1);
  CHECK(moves[0].displacement == Vec2{});

  const std::vector<Vec2> prev{{50.0, 50.0}};
  const auto piped = apply_constraints(prev, std::vector<Vec2>{moves[0].displacement}, hs, grid, constraints, true);
  CHECK(piped.positions[0] == Vec2{50.0, 50.0});
}

TEST_CASE("hybrid step: coincident UAVs are separated")
{
  const std::vector<Hotspot> hs{{{60.0, 60.0}, 1.0, false}};
  SwarmState swarm = swarm_at({{40.0, 40.0}, {40.0, 40.0}});
  AlgorithmParams params;
  ConstraintParams constraints;
  GridConfig grid;
  auto streams = make_streams(2);
  const auto moves = hybrid_step({swarm, hs, params, constraints, grid}, streams, zero_levy);
  const Vec2 a = swarm.uavs[0].position + moves[0].displacement;
  const Vec2 b = swarm.uavs[1].position + moves[1].displacement;
  CHECK(distance(a, b) >= constraints.safe_zone_radius - 1e-12);
}

TEST_CASE("hybrid step: stagnated UAV becomes a scout")
{
  const std::vector<Hotspot> hs{{{60.0, 60.0}, 1.0, false}};
  SwarmState swarm = swarm_at({{40.0, 40.0}, {10.0, 10.0}});
  AlgorithmParams params;
  swarm.uavs[1].stagnation = params.stagnation_limit;
  ConstraintParams constraints;
  GridConfig grid;
  auto streams = make_streams(2);
  const auto moves = hybrid_step({swarm, hs, params, constraints, grid}, streams);
  CHECK(moves[0].phase != MovePhase::Scout);
  REQUIRE(moves[1].phase == MovePhase::Scout);
  REQUIRE(moves[1].target.has_value());
  CHECK(grid.contains(*moves[1].target));
  CHECK(near(swarm.uavs[1].position + moves[1].displacement, *moves[1].target));
}

TEST_CASE("hybrid step: median split nudges")
{
  // Fitness order 0 < 1 < 2 < 3; median falls between UAV 1 and UAV 2.
  const std::vector<Hotspot> hs{
    {{30.0, 30.0}, 1.0, false}, {{50.0, 50.0}, 2.0, false}, {{70.0, 70.0}, 3.0, false}};
  SwarmState swarm = swarm_at({{10.0, 10.0}, {30.0, 30.0}, {50.0, 50.0}, {70.0, 70.0}});
  swarm.global_best = {{20.0, 80.0}, 10.0};
  AlgorithmParams params;
  ConstraintParams constraints;
  GridConfig grid;
  auto streams = make_streams(4);
  auto moves = hybrid_step({swarm, hs, params, constraints, grid}, streams, zero_levy);

  // Lower half: pull 0.1 * (g - x), capped at the step size.
  CHECK(near(moves[0].displacement, clamp_step(Vec2{1.0, 7.0}, 5.0)));
  CHECK(near(moves[1].displacement, clamp_step(Vec2{-1.0, 5.0}, 5.0)));
  // Upper half: push 0.1 * (x_i - x_j) from the nearest fitter UAV; the best has none.
  CHECK(near(moves[2].displacement, {-2.0, -2.0}));
  CHECK(moves[3].displacement == Vec2{});

  params.exploit_sign = -1;
  streams = make_streams(4);
  moves = hybrid_step({swarm, hs, params, constraints, grid}, streams, zero_levy);
  CHECK(near(moves[2].displacement, {2.0, 2.0}));
}

TEST_CASE("hybrid step with vanishing coefficients is the identity")
{
  const std::vector<Hotspot> hs{{{55.0, 55.0}, 1.0, false}, {{5.0, 90.0}, 1.0, false}};
  SwarmState swarm = swarm_at({{10.0, 10.0}, {30.0, 70.0}, {50.0, 50.0}, {80.0, 20.0}});
  swarm.global_best = {{50.0, 50.0}, 1.0};
  AlgorithmParams params;
  params.explore_coeff = 0.0;
  params.exploit_coeff = 0.0;
  params.levy_weight = 1e-300;
  ConstraintParams constraints;
  GridConfig grid;
  auto streams = make_streams(4, 17);
  for (int round = 0; round < 20; ++round) {
    const auto moves = hybrid_step({swarm, hs, params, constraints, grid}, streams);
    for (const ProposedMove& m : moves)
      CHECK(m.displacement.norm() < 1e-200);
  }
}

TEST_CASE("every optimizer proposal stays in the grid")
{
  const ScenarioConfig s = make_scenario(ScenarioKind::UniformRandom, 20, 5, GridConfig{});
  SwarmState swarm = swarm_at({{5.0, 5.0}, {99.0, 1.0}, {50.0, 50.0}, {0.0, 100.0}, {70.0, 30.0}});
  swarm.global_best = {{60.0, 60.0}, 0.05};
  ConstraintParams constraints;
  for (Algorithm a : {Algorithm::Abc, Algorithm::HybridAbcLevy}) {
    auto streams = make_streams(5, 33);
    for (int round = 0; round < 200; ++round) {
      const auto moves = optimizer_step(a, {swarm, s.hotspots, s.params, constraints, s.grid}, streams);
      REQUIRE(moves.size() == 5);
      for (const ProposedMove& m : moves) {
        const Vec2 end = swarm.uavs[m.uav_index].position + m.displacement;
        CHECK(s.grid.contains(end));
      }
    }
  }
}

TEST_CASE("abc step is greedy")
{
  const ScenarioConfig s = make_scenario(ScenarioKind::UniformRandom, 20, 9, GridConfig{});
  SwarmState swarm = swarm_at({{20.0, 20.0}, {25.0, 60.0}, {50.0, 50.0}, {80.0, 80.0}, {90.0, 10.0}});
  ConstraintParams constraints;
  auto streams = make_streams(5, 8);
  int accepted = 0;
  for (int round = 0; round < 200; ++round) {
    const auto moves = abc_step({swarm, s.hotspots, s.params, constraints, s.grid}, streams);
    for (const ProposedMove& m : moves) {
      const Vec2 start = swarm.uavs[m.uav_index].position;
      const double before = fitness(start, s.hotspots, 3.0, true);
      const double after = fitness(start + m.displacement, s.hotspots, 3.0, true);
      CHECK(after >= before);
      if (m.displacement != Vec2{})
        ++accepted;
    }
  }
  CHECK(accepted > 0);
}

TEST_CASE("pso swarm step reports a velocity for every UAV")
{
  const ScenarioConfig s = make_scenario(ScenarioKind::UniformRandom, 20, 9, GridConfig{});
  SwarmState swarm = swarm_at({{20.0, 20.0}, {25.0, 60.0}});
  swarm.global_best = {{40.0, 40.0}, 1.0};
  ConstraintParams constraints;
  auto streams = make_streams(2);
  const auto moves = pso_swarm_step({swarm, s.hotspots, s.params, constraints, s.grid}, streams);
  for (const ProposedMove& m : moves) {
    REQUIRE(m.velocity.has_value());
    CHECK(near(*m.velocity, m.displacement, 1e-12));
  }
  std::vector<RandomSource> wrong = make_streams(1);
  CHECK_THROWS_AS(pso_swarm_step({swarm, s.hotspots, s.params, constraints, s.grid}, wrong), std::invalid_argument);
}
