#include "abclevy/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <set>

namespace abclevy {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
  if (!obj.is_object())
    throw ValidationError(where + " must be a JSON object");
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key))
      throw ValidationError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where)
{
  if (!obj.contains(key))
    return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(where + "." + key + " has the wrong type");
  }
}

Vec2 read_point(const json& value, const std::string& where)
{
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number())
    throw ValidationError(where + " must be a [x, y] pair");
  return {value[0].get<double>(), value[1].get<double>()};
}

void read_params(const json& obj, AlgorithmParams& p)
{
  const std::string where = "params";
  check_keys(obj, where,
             {"levy_weight", "levy_beta", "mantegna_normalized", "explore_coeff", "exploit_coeff",
              "exploit_sign", "adaptive_lambda", "sigma_sensitivity", "pso", "stagnation_limit",
              "abc_limit_neighbors", "fitness_shaping", "shaping_epsilon", "rescore_memory"});
  read(obj, "levy_weight", p.levy_weight, where);
  read(obj, "levy_beta", p.levy_beta, where);
  read(obj, "mantegna_normalized", p.mantegna_normalized, where);
  read(obj, "explore_coeff", p.explore_coeff, where);
  read(obj, "exploit_coeff", p.exploit_coeff, where);
  read(obj, "exploit_sign", p.exploit_sign, where);
  read(obj, "adaptive_lambda", p.adaptive_lambda, where);
  read(obj, "sigma_sensitivity", p.sigma_sensitivity, where);
  read(obj, "stagnation_limit", p.stagnation_limit, where);
  read(obj, "abc_limit_neighbors", p.abc_limit_neighbors, where);
  read(obj, "fitness_shaping", p.fitness_shaping, where);
  read(obj, "shaping_epsilon", p.shaping_epsilon, where);
  read(obj, "rescore_memory", p.rescore_memory, where);
  if (obj.contains("pso")) {
    const json& pso = obj.at("pso");
    check_keys(pso, "params.pso", {"inertia", "cognitive", "social"});
    read(pso, "inertia", p.pso.inertia, "params.pso");
    read(pso, "cognitive", p.pso.cognitive, "params.pso");
    read(pso, "social", p.pso.social, "params.pso");
  }
}

void read_constraints(const json& obj, ConstraintParams& c)
{
  const std::string where = "constraints";
  check_keys(obj, where,
             {"max_step_size", "safe_zone_radius", "coverage_radius", "collision_radius",
              "potential_field_gain", "no_hotspot_threshold_radius", "zone_escape"});
  read(obj, "max_step_size", c.max_step_size, where);
  read(obj, "safe_zone_radius", c.safe_zone_radius, where);
  read(obj, "coverage_radius", c.coverage_radius, where);
  read(obj, "collision_radius", c.collision_radius, where);
  read(obj, "potential_field_gain", c.potential_field_gain, where);
  read(obj, "no_hotspot_threshold_radius", c.no_hotspot_threshold_radius, where);
  if (obj.contains("zone_escape")) {
    std::string mode;
    read(obj, "zone_escape", mode, where);
    c.zone_escape = parse_zone_escape(mode);
  }
}

void read_layout(const json& obj, TwoClusterLayout& layout)
{
  const std::string where = "layout";
  check_keys(obj, where,
             {"near_band_fraction", "far_center_x_fraction", "far_center_y_fraction", "far_radius_fraction"});
  read(obj, "near_band_fraction", layout.near_band_fraction, where);
  read(obj, "far_center_x_fraction", layout.far_center_x_fraction, where);
  read(obj, "far_center_y_fraction", layout.far_center_y_fraction, where);
  read(obj, "far_radius_fraction", layout.far_radius_fraction, where);
}

}  // namespace

ScenarioConfig scenario_from_json(const json& doc)
{
  check_keys(doc, "scenario",
             {"scenario_id", "kind", "n_hotspots", "layout", "grid", "hotspots", "n_uavs", "start",
              "algorithm", "params", "constraints", "seed", "max_steps", "dt", "trajectories"});

  GridConfig grid;
  if (doc.contains("grid")) {
    check_keys(doc.at("grid"), "grid", {"width", "height"});
    read(doc.at("grid"), "width", grid.width, "grid");
    read(doc.at("grid"), "height", grid.height, "grid");
  }
  std::uint64_t seed = 0;
  read(doc, "seed", seed, "scenario");
  TwoClusterLayout layout;
  if (doc.contains("layout"))
    read_layout(doc.at("layout"), layout);

  ScenarioConfig config;
  if (doc.contains("hotspots")) {
    const json& list = doc.at("hotspots");
    if (!list.is_array())
      throw ValidationError("hotspots must be an array");
    std::vector<Hotspot> hotspots;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "hotspots[" + std::to_string(i) + "]";
      const json& item = list[i];
      check_keys(item, where, {"x", "y", "weight"});
      if (!item.contains("x") || !item.contains("y"))
        throw ValidationError(where + " needs x and y");
      Hotspot h;
      read(item, "x", h.position.x, where);
      read(item, "y", h.position.y, where);
      read(item, "weight", h.weight, where);
      hotspots.push_back(h);
    }
    config = make_scenario(ScenarioKind::Custom, 0, seed, grid, hotspots, layout);
  } else if (doc.contains("kind") && doc.contains("n_hotspots")) {
    std::string kind_text;
    int n = 0;
    read(doc, "kind", kind_text, "scenario");
    read(doc, "n_hotspots", n, "scenario");
    const ScenarioKind kind = parse_scenario_kind(kind_text);
    if (kind == ScenarioKind::Custom)
      throw ValidationError("kind 'custom' requires an explicit hotspots list");
    config = make_scenario(kind, n, seed, grid, {}, layout);
  } else {
    throw ValidationError("scenario needs either hotspots or kind and n_hotspots");
  }

  read(doc, "scenario_id", config.scenario_id, "scenario");
  read(doc, "n_uavs", config.n_uavs, "scenario");
  if (doc.contains("start"))
    config.start_position = read_point(doc.at("start"), "start");
  if (doc.contains("algorithm")) {
    std::string algorithm;
    read(doc, "algorithm", algorithm, "scenario");
    config.algorithm = parse_algorithm(algorithm);
  }
  if (doc.contains("params"))
    read_params(doc.at("params"), config.params);
  if (doc.contains("constraints"))
    read_constraints(doc.at("constraints"), config.constraints);
  read(doc, "max_steps", config.max_steps, "scenario");
  read(doc, "dt", config.dt, "scenario");
  read(doc, "trajectories", config.record_trajectories, "scenario");

  validate(config);
  return config;
}

json scenario_to_json(const ScenarioConfig& c)
{
  json doc;
  doc["scenario_id"] = c.scenario_id;
  doc["grid"] = {{"width", c.grid.width}, {"height", c.grid.height}};
  if (c.kind == ScenarioKind::Custom) {
    json list = json::array();
    for (const Hotspot& h : c.hotspots)
      list.push_back({{"x", h.position.x}, {"y", h.position.y}, {"weight", h.weight}});
    doc["hotspots"] = list;
  } else {
    doc["kind"] = to_string(c.kind);
    doc["n_hotspots"] = c.n_hotspots;
    doc["layout"] = {{"near_band_fraction", c.layout.near_band_fraction},
                     {"far_center_x_fraction", c.layout.far_center_x_fraction},
                     {"far_center_y_fraction", c.layout.far_center_y_fraction},
                     {"far_radius_fraction", c.layout.far_radius_fraction}};
  }
  doc["n_uavs"] = c.n_uavs;
  doc["start"] = {c.start_position.x, c.start_position.y};
  doc["algorithm"] = to_string(c.algorithm);
  const AlgorithmParams& p = c.params;
  doc["params"] = {{"levy_weight", p.levy_weight},
                   {"levy_beta", p.levy_beta},
                   {"mantegna_normalized", p.mantegna_normalized},
                   {"explore_coeff", p.explore_coeff},
                   {"exploit_coeff", p.exploit_coeff},
                   {"exploit_sign", p.exploit_sign},
                   {"adaptive_lambda", p.adaptive_lambda},
                   {"sigma_sensitivity", p.sigma_sensitivity},
                   {"pso", {{"inertia", p.pso.inertia}, {"cognitive", p.pso.cognitive}, {"social", p.pso.social}}},
                   {"stagnation_limit", p.stagnation_limit},
                   {"abc_limit_neighbors", p.abc_limit_neighbors},
                   {"fitness_shaping", p.fitness_shaping},
                   {"shaping_epsilon", p.shaping_epsilon},
                   {"rescore_memory", p.rescore_memory}};
  const ConstraintParams& k = c.constraints;
  doc["constraints"] = {{"max_step_size", k.max_step_size},
                        {"safe_zone_radius", k.safe_zone_radius},
                        {"coverage_radius", k.coverage_radius},
                        {"collision_radius", k.collision_radius},
                        {"potential_field_gain", k.potential_field_gain},
                        {"no_hotspot_threshold_radius", k.no_hotspot_threshold_radius},
                        {"zone_escape", to_string(k.zone_escape)}};
  doc["seed"] = c.seed;
  doc["max_steps"] = c.max_steps;
  doc["dt"] = c.dt;
  doc["trajectories"] = c.record_trajectories;
  return doc;
}

ScenarioConfig load_scenario(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open scenario file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return scenario_from_json(doc);
}

ScenarioConfig preset_scenario(const std::string& name, std::uint64_t seed)
{
  if (name == "uniform20")
    return make_scenario(ScenarioKind::UniformRandom, 20, seed, GridConfig{});
  if (name == "twocluster20")
    return make_scenario(ScenarioKind::TwoCluster, 20, seed, GridConfig{});
  throw ValidationError("unknown preset '" + name + "' (expected uniform20 or twocluster20)");
}

}  // namespace abclevy
