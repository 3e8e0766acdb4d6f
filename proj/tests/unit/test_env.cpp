#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "abclevy/env.hpp"
#include "abclevy/scenario_io.hpp"

using namespace abclevy;

TEST_CASE("uniform scenario is deterministic and interior")
{
  const ScenarioConfig a = make_scenario(ScenarioKind::UniformRandom, 20, 42, GridConfig{});
  const ScenarioConfig b = make_scenario(ScenarioKind::UniformRandom, 20, 42, GridConfig{});
  REQUIRE(a.hotspots.size() == 20);
  for (std::size_t i = 0; i < a.hotspots.size(); ++i) {
    const Vec2 p = a.hotspots[i].position;
    CHECK((p.x > 0.0 && p.x < 100.0 && p.y > 0.0 && p.y < 100.0));
    CHECK(p == b.hotspots[i].position);
    CHECK_FALSE(a.hotspots[i].covered);
  }
  CHECK(a.scenario_id == "uniform20");
  const ScenarioConfig c = make_scenario(ScenarioKind::UniformRandom, 20, 43, GridConfig{});
  CHECK_FALSE(c.hotspots[0].position == a.hotspots[0].position);
}

TEST_CASE("two-cluster layout membership over many seeds")
{
  const GridConfig grid;
  const TwoClusterLayout layout;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const ScenarioConfig s = make_scenario(ScenarioKind::TwoCluster, 20, seed, grid);
    REQUIRE(s.hotspots.size() == 20);
    int near = 0, far = 0;
    for (const Hotspot& h : s.hotspots) {
      if (h.position.y <= 30.0)
        ++near;
      if (distance(h.position, {50.0, 90.0}) <= 10.0) {
        ++far;
        CHECK(in_far_cluster(h.position, grid, layout));
      }
    }
    CHECK(near == 10);
    CHECK(far == 10);
  }
  const ScenarioConfig odd = make_scenario(ScenarioKind::TwoCluster, 5, 1, grid);
  int near = 0;
  for (const Hotspot& h : odd.hotspots)
    near += h.position.y <= 30.0;
  CHECK(near == 3);
}

TEST_CASE("custom scenario passthrough")
{
  const std::vector<Hotspot> list{{{50.0, 50.0}, 1.0, false}};
  const ScenarioConfig s = make_scenario(ScenarioKind::Custom, 0, 0, GridConfig{}, list);
  REQUIRE(s.hotspots.size() == 1);
  CHECK(s.hotspots[0].position == Vec2{50.0, 50.0});
  CHECK_NOTHROW(validate(s));

  const std::vector<Hotspot> outside{{{150.0, 50.0}, 1.0, false}};
  CHECK_THROWS_AS(make_scenario(ScenarioKind::Custom, 0, 0, GridConfig{}, outside), ValidationError);
  CHECK_THROWS_AS(make_scenario(ScenarioKind::UniformRandom, 0, 0, GridConfig{}), ValidationError);
}

TEST_CASE("reseed regenerates preset layouts only")
{
  const ScenarioConfig u = make_scenario(ScenarioKind::UniformRandom, 20, 1, GridConfig{});
  CHECK(reseed(u, 5).hotspots[3].position == make_scenario(ScenarioKind::UniformRandom, 20, 5, GridConfig{}).hotspots[3].position);
  const std::vector<Hotspot> list{{{10.0, 10.0}, 1.0, false}};
  const ScenarioConfig c = make_scenario(ScenarioKind::Custom, 0, 0, GridConfig{}, list);
  const ScenarioConfig r = reseed(c, 9);
  CHECK(r.seed == 9);
  CHECK(r.hotspots[0].position == Vec2{10.0, 10.0});
}

TEST_CASE("mark_coverage examples")
{
  SwarmState swarm;
  swarm.uavs.push_back(UavState{});
  swarm.uavs[0].position = {12.0, 10.0};

  std::vector<Hotspot> hs{{{10.0, 10.0}, 1.0, false}};
  auto newly = mark_coverage(swarm, hs, 3.0);
  CHECK(newly == std::vector<std::size_t>{0});
  CHECK(hs[0].covered);
  CHECK(swarm.covered_count == 1);

  std::vector<Hotspot> far{{{10.0, 10.0}, 1.0, false}};
  CHECK(mark_coverage(swarm, far, 1.5).empty());
  CHECK_FALSE(far[0].covered);

  // Boundary is inclusive.
  std::vector<Hotspot> edge{{{10.0, 10.0}, 1.0, false}};
  CHECK(mark_coverage(swarm, edge, 2.0).size() == 1);

  swarm.uavs[0].position = {90.0, 90.0};
  newly = mark_coverage(swarm, hs, 3.0);
  CHECK(newly.empty());
  CHECK(hs[0].covered);
  CHECK(swarm.covered_count == 1);
}

TEST_CASE("start formation is collision free and inside the grid")
{
  ScenarioConfig s = make_scenario(ScenarioKind::UniformRandom, 20, 0, GridConfig{});
  for (int n : {1, 2, 5, 10}) {
    s.n_uavs = n;
    const auto f = start_formation(s);
    REQUIRE(static_cast<int>(f.size()) == n);
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(s.grid.contains(f[i]));
      for (std::size_t j = i + 1; j < f.size(); ++j)
        CHECK(distance(f[i], f[j]) >= s.constraints.safe_zone_radius);
    }
  }
  s.n_uavs = 1;
  CHECK(start_formation(s)[0] == Vec2{50.0, 0.0});
}

TEST_CASE("validate rejects bad configurations")
{
  const ScenarioConfig base = make_scenario(ScenarioKind::UniformRandom, 20, 0, GridConfig{});
  CHECK_NOTHROW(validate(base));

  auto expect_invalid = [&](auto mutate) {
    ScenarioConfig c = base;
    mutate(c);
    CHECK_THROWS_AS(validate(c), ValidationError);
  };
  expect_invalid([](ScenarioConfig& c) { c.n_uavs = 0; });
  expect_invalid([](ScenarioConfig& c) { c.params.levy_weight = 0.0; });
  expect_invalid([](ScenarioConfig& c) { c.params.levy_beta = 2.5; });
  expect_invalid([](ScenarioConfig& c) { c.params.stagnation_limit = 0; });
  expect_invalid([](ScenarioConfig& c) { c.params.exploit_sign = 0; });
  expect_invalid([](ScenarioConfig& c) { c.params.shaping_epsilon = 0.06; });
  expect_invalid([](ScenarioConfig& c) { c.hotspots.clear(); });
  expect_invalid([](ScenarioConfig& c) { c.hotspots[0].weight = 0.0; });
  expect_invalid([](ScenarioConfig& c) { c.hotspots[0].position = {-1.0, 5.0}; });
  expect_invalid([](ScenarioConfig& c) { c.start_position = {120.0, 0.0}; });
  expect_invalid([](ScenarioConfig& c) { c.max_steps = 0; });
  expect_invalid([](ScenarioConfig& c) { c.dt = 0.0; });
  expect_invalid([](ScenarioConfig& c) { c.constraints.max_step_size = 0.0; });
  expect_invalid([](ScenarioConfig& c) { c.constraints.collision_radius = 3.0; });
  expect_invalid([](ScenarioConfig& c) { c.grid.width = 0; });
  expect_invalid([](ScenarioConfig& c) {
    c.grid = {2, 2};
    c.hotspots = {{{1.0, 1.0}, 1.0, false}};
    c.start_position = {1.0, 0.0};
    c.n_uavs = 5;
  });
}

TEST_CASE("enum names round-trip")
{
  for (Algorithm a : {Algorithm::Abc, Algorithm::Pso, Algorithm::HybridAbcLevy})
    CHECK(parse_algorithm(to_string(a)) == a);
  for (ScenarioKind k : {ScenarioKind::UniformRandom, ScenarioKind::TwoCluster, ScenarioKind::Custom})
    CHECK(parse_scenario_kind(to_string(k)) == k);
  for (ZoneEscape z : {ZoneEscape::Auto, ZoneEscape::On, ZoneEscape::Off})
    CHECK(parse_zone_escape(to_string(z)) == z);
  CHECK_THROWS_AS(parse_algorithm("ga"), ValidationError);

  ConstraintParams c;
  CHECK(zone_escape_enabled(c, Algorithm::HybridAbcLevy));
  CHECK_FALSE(zone_escape_enabled(c, Algorithm::Abc));
  c.zone_escape = ZoneEscape::On;
  CHECK(zone_escape_enabled(c, Algorithm::Pso));
  c.zone_escape = ZoneEscape::Off;
  CHECK_FALSE(zone_escape_enabled(c, Algorithm::HybridAbcLevy));
}

TEST_CASE("scenario JSON round-trip")
{
  ScenarioConfig s = make_scenario(ScenarioKind::TwoCluster, 12, 8, GridConfig{});
  s.params.levy_weight = 2.5;
  s.params.exploit_sign = -1;
  s.constraints.zone_escape = ZoneEscape::On;
  s.max_steps = 321;
  const ScenarioConfig back = scenario_from_json(scenario_to_json(s));
  CHECK(back.scenario_id == s.scenario_id);
  CHECK(back.hotspots.size() == 12);
  for (std::size_t i = 0; i < 12; ++i)
    CHECK(back.hotspots[i].position == s.hotspots[i].position);
  CHECK(back.params.levy_weight == 2.5);
  CHECK(back.params.exploit_sign == -1);
  CHECK(back.constraints.zone_escape == ZoneEscape::On);
  CHECK(back.max_steps == 321);

  const std::vector<Hotspot> list{{{1.0, 2.0}, 2.0, false}, {{3.0, 4.0}, 3.0, false}};
  const ScenarioConfig custom = make_scenario(ScenarioKind::Custom, 0, 4, GridConfig{}, list);
  const ScenarioConfig cb = scenario_from_json(scenario_to_json(custom));
  CHECK(cb.kind == ScenarioKind::Custom);
  CHECK(cb.hotspots[1].weight == 3.0);
}

TEST_CASE("scenario JSON errors")
{
  using nlohmann::json;
  CHECK_THROWS_AS(scenario_from_json(json{{"kind", "uniform"}, {"n_hotspots", 5}, {"bogus", 1}}), ValidationError);
  CHECK_THROWS_AS(scenario_from_json(json{{"kind", "uniform"}, {"n_hotspots", "many"}}), ValidationError);
  CHECK_THROWS_AS(scenario_from_json(json{{"kind", "uniform"}}), ValidationError);
  CHECK_THROWS_AS(scenario_from_json(json{{"kind", "custom"}, {"n_hotspots", 3}}), ValidationError);
  CHECK_THROWS_AS(scenario_from_json(json{{"hotspots", json::array({json{{"x", 1}}})}}), ValidationError);
  CHECK_THROWS_AS(scenario_from_json(json{{"kind", "uniform"}, {"n_hotspots", 5}, {"params", {{"levy_weight", -1}}}}),
                  ValidationError);
  CHECK_THROWS_AS(scenario_from_json(json::array()), ValidationError);
  CHECK_NOTHROW(scenario_from_json(json{{"hotspots", json::array({json{{"x", 50}, {"y", 50}}})}}));

  const auto dir = std::filesystem::temp_directory_path() / "abclevy_env_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream bad(dir / "bad.json");
    bad << "{ not json";
  }
  CHECK_THROWS_AS(load_scenario(dir / "bad.json"), ValidationError);
  CHECK_THROWS_AS(load_scenario(dir / "missing.json"), IoError);
  std::filesystem::remove_all(dir);

  CHECK(preset_scenario("uniform20", 3).hotspots.size() == 20);
  CHECK(preset_scenario("twocluster20", 3).scenario_id == "twocluster20");
  CHECK_THROWS_AS(preset_scenario("uniform30", 3), ValidationError);
}
