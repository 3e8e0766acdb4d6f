#include <doctest.h>

#include <sstream>

#include "abclevy/metrics.hpp"
#include "abclevy/simulation.hpp"

using namespace abclevy;

TEST_CASE("heatmap binning")
{
  Heatmap h(100, 100);
  h.add({99.999, 100.0});
  CHECK(h.at(99, 99) == 1);
  h.add({0.0, 0.0});
  h.add({100.0, 0.0});
  h.add({3.5, 7.2});
  CHECK(h.at(0, 0) == 1);
  CHECK(h.at(99, 0) == 1);
  CHECK(h.at(3, 7) == 1);
  CHECK(h.total() == 4);
  CHECK(h.max_count() == 1);

  Heatmap g(100, 100);
  g.add({3.9, 7.9});
  h.merge(g);
  CHECK(h.at(3, 7) == 2);
  CHECK(h.total() == 5);
  CHECK_THROWS_AS(h.merge(Heatmap(10, 10)), std::invalid_argument);
  CHECK_THROWS_AS(Heatmap(0, 5), std::invalid_argument);
}

TEST_CASE("heatmap output orientation")
{
  Heatmap h(3, 2);
  h.add({0.5, 1.5});
  h.add({0.5, 1.5});
  h.add({2.5, 0.5});
  std::ostringstream csv;
  h.write_csv(csv);
  CHECK(csv.str() == "2,0,0\n0,0,1\n");
  std::ostringstream pgm;
  h.write_pgm(pgm);
  CHECK(pgm.str().rfind("P2\n3 2\n255\n", 0) == 0);
  CHECK(pgm.str().find("255 0 0") != std::string::npos);
}

TEST_CASE("record_step accounting")
{
  RunMetrics m = make_run_metrics(GridConfig{}, 20, 0.5);
  SwarmState swarm;
  for (int i = 0; i < 5; ++i) {
    UavState u;
    u.position = {10.0 * i, 5.0};
    swarm.uavs.push_back(u);
  }
  record_step(m, swarm, {});
  CHECK(m.heatmap.total() == 5);
  CHECK(m.recorded_steps == 1);
  CHECK_FALSE(m.steps_to_cover.has_value());

  swarm.step = 455;
  swarm.covered_count = 20;
  std::vector<std::size_t> all(20);
  for (std::size_t k = 0; k < 20; ++k)
    all[k] = k;
  record_step(m, swarm, all);
  REQUIRE(m.steps_to_cover.has_value());
  CHECK(*m.steps_to_cover == 455);
  CHECK(*m.time_to_cover == 227.5);
  CHECK(m.hotspot_cover_step[7] == 455);
  CHECK(m.coverage_curve.back() == CoveragePoint{455, 20});
  CHECK(m.heatmap.total() == 10);
}

TEST_CASE("biodiversity examples")
{
  std::vector<Hotspot> hs(20, Hotspot{{1.0, 1.0}, 1.0, false});
  CHECK(biodiversity_metric(hs) == 0.0);
  for (Hotspot& h : hs)
    h.covered = true;
  CHECK(biodiversity_metric(hs) == 20.0);
  const std::vector<Hotspot> weighted{{{1.0, 1.0}, 2.0, true}, {{2.0, 2.0}, 3.0, false}};
  CHECK(biodiversity_metric(weighted) == 2.0);
}

TEST_CASE("alignment is high when visits sit on the hotspots")
{
  const std::vector<Hotspot> hs{{{20.0, 20.0}, 1.0, false}, {{80.0, 70.0}, 1.0, false}};
  Heatmap on(100, 100), off(100, 100);
  for (int i = 0; i < 50; ++i) {
    on.add({20.0, 20.0});
    on.add({80.0, 70.0});
    off.add({50.0, 95.0});
  }
  const double aligned = hotspot_alignment(on, hs, 6.0);
  const double misplaced = hotspot_alignment(off, hs, 6.0);
  CHECK(aligned > 0.0);
  CHECK(misplaced < 0.0);
  CHECK(aligned > misplaced);
  CHECK(hotspot_alignment(Heatmap(100, 100), hs, 6.0) == 0.0);
}

TEST_CASE("a UAV starting on the only hotspot covers it at step 0")
{
  const std::vector<Hotspot> hs{{{50.0, 2.0}, 1.0, false}};
  ScenarioConfig c = make_scenario(ScenarioKind::Custom, 0, 0, GridConfig{}, hs);
  c.n_uavs = 1;
  const RunMetrics m = run_scenario(c);
  REQUIRE(m.steps_to_cover.has_value());
  CHECK(*m.steps_to_cover == 0);
  CHECK(*m.time_to_cover == 0.0);
  CHECK(m.heatmap.total() == 1);
}

TEST_CASE("run invariants on the uniform preset")
{
  for (Algorithm a : {Algorithm::HybridAbcLevy, Algorithm::Abc, Algorithm::Pso}) {
    ScenarioConfig c = make_scenario(ScenarioKind::UniformRandom, 20, 3, GridConfig{});
    c.algorithm = a;
    c.max_steps = 800;
    c.record_trajectories = true;
    const RunMetrics m = run_scenario(c);
    CHECK(m.heatmap.total() == c.n_uavs * m.recorded_steps);
    CHECK(static_cast<std::int64_t>(m.trajectories.size()) == m.recorded_steps);
    for (std::size_t i = 1; i < m.coverage_curve.size(); ++i)
      CHECK(m.coverage_curve[i].covered > m.coverage_curve[i - 1].covered);
    CHECK(m.min_pairwise_distance >= c.constraints.collision_radius);
    CHECK(m.max_displacement <= 2.0 * c.constraints.max_step_size + 1e-9);
    CHECK(m.max_displacement_field_idle <= c.constraints.max_step_size + 1e-9);
    if (m.steps_to_cover)
      CHECK(*m.time_to_cover == *m.steps_to_cover * c.dt);
  }
}

TEST_CASE("identical configs give identical runs")
{
  ScenarioConfig c = make_scenario(ScenarioKind::TwoCluster, 20, 11, GridConfig{});
  c.max_steps = 600;
  c.record_trajectories = true;
  const RunMetrics a = run_scenario(c);
  const RunMetrics b = run_scenario(c);
  CHECK(a.steps_to_cover == b.steps_to_cover);
  CHECK(a.heatmap == b.heatmap);
  CHECK(a.coverage_curve == b.coverage_curve);
  CHECK(a.constraint_report == b.constraint_report);
  REQUIRE(a.trajectories.size() == b.trajectories.size());
  for (std::size_t i = 0; i < a.trajectories.size(); ++i)
    CHECK(a.trajectories[i].positions == b.trajectories[i].positions);
}
