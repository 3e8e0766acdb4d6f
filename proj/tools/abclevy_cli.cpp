// Command-line runner for single scenarios, parameter sweeps and algorithm
// comparisons. Exit codes: 0 ok, 1 validation error, 2 I/O error,
// 3 coverage failure (run --require-coverage).

#include <cstdint>
#include <fstream>
#include <sstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abclevy/experiment.hpp"
#include "abclevy/scenario_io.hpp"
#include "abclevy/simulation.hpp"

namespace {

using namespace abclevy;

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitCoverage = 3;

/// Accepts "a..b" ranges and comma-separated lists, e.g. "1..20" or "3,7,11".
std::vector<std::uint64_t> parse_seeds(const std::string& text)
{
  std::vector<std::uint64_t> seeds;
  const auto dots = text.find("..");
  try {
    if (dots != std::string::npos) {
      const std::uint64_t lo = std::stoull(text.substr(0, dots));
      const std::uint64_t hi = std::stoull(text.substr(dots + 2));
      if (hi < lo)
        throw ValidationError("empty seed range " + text);
      for (std::uint64_t s = lo; s <= hi; ++s)
        seeds.push_back(s);
      return seeds;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty())
        seeds.push_back(std::stoull(item));
  } catch (const std::logic_error&) {
    throw ValidationError("cannot parse seeds from '" + text + "'");
  }
  return seeds;
}

std::vector<std::string> split_list(const std::string& text)
{
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty())
      out.push_back(item);
  return out;
}

struct ScenarioFlags
{
  std::string scenario_file;
  std::string preset;
  std::optional<std::string> algorithm;
  std::optional<double> levy_weight;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> max_steps;

  void attach(CLI::App* cmd, bool with_algorithm)
  {
    auto* file = cmd->add_option("--scenario", scenario_file, "Scenario JSON file");
    auto* pre = cmd->add_option("--preset", preset, "Built-in scenario: uniform20 | twocluster20");
    file->excludes(pre);
    if (with_algorithm)
      cmd->add_option("--algorithm", algorithm, "abc | pso | hybrid");
    cmd->add_option("--levy-weight", levy_weight, "Levy step multiplier");
    cmd->add_option("--max-steps", max_steps, "Step budget per run");
  }

  ScenarioConfig build(std::uint64_t default_seed) const
  {
    ScenarioConfig config;
    if (!scenario_file.empty())
      config = load_scenario(scenario_file);
    else
      config = preset_scenario(preset.empty() ? "uniform20" : preset, seed.value_or(default_seed));
    if (seed)
      config = reseed(config, *seed);
    if (algorithm)
      config.algorithm = parse_algorithm(*algorithm);
    if (levy_weight)
      config.params.levy_weight = *levy_weight;
    if (max_steps)
      config.max_steps = *max_steps;
    validate(config);
    return config;
  }
};

std::ofstream open_out(const std::filesystem::path& path)
{
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot write " + path.string());
  return out;
}

void prepare_dir(const std::filesystem::path& dir)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create output directory " + dir.string());
}

int cmd_run(const ScenarioFlags& flags, const std::string& out_dir, bool trajectories, bool require_coverage)
{
  ScenarioConfig config = flags.build(0);
  config.record_trajectories = trajectories;
  if (!out_dir.empty())
    prepare_dir(out_dir);

  const RunMetrics metrics = run_scenario(config);
  const RunRecord record = make_run_record(config, metrics, "");

  write_run_rows(std::cout, {record});
  if (!out_dir.empty()) {
    const std::filesystem::path dir(out_dir);
    auto runs = open_out(dir / "run.csv");
    write_run_rows(runs, {record});
    auto pgm = open_out(dir / "heatmap.pgm");
    metrics.heatmap.write_pgm(pgm);
    auto csv = open_out(dir / "heatmap.csv");
    metrics.heatmap.write_csv(csv);
    auto curve = open_out(dir / "coverage.csv");
    curve << "step,covered\n";
    for (const CoveragePoint& p : metrics.coverage_curve)
      curve << p.step << ',' << p.covered << '\n';
    auto scenario = open_out(dir / "scenario.json");
    scenario << scenario_to_json(config).dump(2) << '\n';
    if (trajectories) {
      auto traj = open_out(dir / "trajectories.csv");
      traj << "step,uav,x,y,collision_field\n";
      for (const TrajectoryFrame& frame : metrics.trajectories)
        for (std::size_t i = 0; i < frame.positions.size(); ++i)
          traj << frame.step << ',' << i << ',' << frame.positions[i].x << ',' << frame.positions[i].y << ','
               << (frame.collision_field_fired ? 1 : 0) << '\n';
    }
  }
  if (require_coverage && !metrics.steps_to_cover) {
    std::cerr << "not all hotspots covered within " << config.max_steps << " steps\n";
    return kExitCoverage;
  }
  return 0;
}

int cmd_sweep(const std::string& spec_file, const ScenarioFlags& flags, const std::string& parameter,
              const std::string& values, const std::string& seeds, const std::string& out_dir, unsigned jobs)
{
  SweepSpec spec;
  if (!spec_file.empty()) {
    std::ifstream in(spec_file);
    if (!in)
      throw IoError("cannot open sweep spec " + spec_file);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError(std::string("malformed sweep spec: ") + e.what());
    }
    spec = sweep_from_json(doc);
  } else {
    spec.base = flags.build(0);
    spec.parameter = parse_sweep_parameter(parameter);
  }
  if (!values.empty())
    spec.values = split_list(values);
  if (!seeds.empty())
    spec.seeds = parse_seeds(seeds);
  if (!out_dir.empty())
    spec.output_dir = out_dir;
  if (jobs != 0)
    spec.jobs = jobs;

  const SweepResult result = run_sweep(spec);
  write_summary(std::cout, result.summary);
  return 0;
}

int cmd_compare(const ScenarioFlags& flags, const std::string& algorithms, const std::string& seeds,
                const std::string& out_dir, unsigned jobs)
{
  const ScenarioConfig base = flags.build(0);
  std::vector<Algorithm> list;
  for (const std::string& a : split_list(algorithms))
    list.push_back(parse_algorithm(a));
  const auto seed_list = parse_seeds(seeds);
  if (seed_list.empty())
    throw ValidationError("compare needs at least one seed");
  if (!out_dir.empty())
    prepare_dir(out_dir);

  const ComparisonTable table = compare_algorithms(base, list, seed_list, jobs);
  write_comparison(std::cout, table);
  if (!out_dir.empty()) {
    auto out = open_out(std::filesystem::path(out_dir) / "comparison.csv");
    write_comparison(out, table);
    auto runs = open_out(std::filesystem::path(out_dir) / "runs.csv");
    write_run_rows(runs, table.runs);
  }
  return 0;
}

int cmd_validate(const std::string& scenario_file)
{
  const ScenarioConfig config = load_scenario(scenario_file);
  std::cout << "ok: " << config.hotspots.size() << " hotspots, " << config.n_uavs << " UAVs, algorithm "
            << to_string(config.algorithm) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Hybrid ABC-Levy swarm coverage simulator"};
  app.require_subcommand(1);

  ScenarioFlags run_flags;
  std::string run_out;
  bool trajectories = false;
  bool require_coverage = false;
  auto* run = app.add_subcommand("run", "Run one scenario");
  run_flags.attach(run, true);
  run->add_option("--seed", run_flags.seed, "Random seed (also reseeds preset layouts)");
  run->add_option("--out", run_out, "Output directory");
  run->add_flag("--trajectories", trajectories, "Log per-step UAV positions");
  run->add_flag("--require-coverage", require_coverage, "Exit with 3 when coverage is incomplete");

  ScenarioFlags sweep_flags;
  std::string sweep_spec;
  std::string sweep_parameter = "levy_weight";
  std::string sweep_values;
  std::string sweep_seeds;
  std::string sweep_out;
  unsigned sweep_jobs = 0;
  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter over several seeds");
  sweep->add_option("--spec", sweep_spec, "Sweep spec JSON file");
  sweep_flags.attach(sweep, true);
  sweep->add_option("--parameter", sweep_parameter, "levy_weight | algorithm | n_uavs");
  sweep->add_option("--values", sweep_values, "Comma-separated values");
  sweep->add_option("--seeds", sweep_seeds, "Seeds: a..b or comma list");
  sweep->add_option("--out", sweep_out, "Output directory");
  sweep->add_option("--jobs", sweep_jobs, "Worker threads (0 = all cores)");

  ScenarioFlags compare_flags;
  std::string compare_algorithms_text = "hybrid,abc,pso";
  std::string compare_seeds = "1..20";
  std::string compare_out;
  unsigned compare_jobs = 0;
  auto* compare = app.add_subcommand("compare", "Compare algorithms on identical scenarios");
  compare_flags.attach(compare, false);
  compare->add_option("--algorithms", compare_algorithms_text, "Comma-separated algorithms");
  compare->add_option("--seeds", compare_seeds, "Seeds: a..b or comma list");
  compare->add_option("--out", compare_out, "Output directory");
  compare->add_option("--jobs", compare_jobs, "Worker threads (0 = all cores)");

  std::string validate_file;
  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
  validate_cmd->add_option("--scenario", validate_file, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*run)
      return cmd_run(run_flags, run_out, trajectories, require_coverage);
    if (*sweep)
      return cmd_sweep(sweep_spec, sweep_flags, sweep_parameter, sweep_values, sweep_seeds, sweep_out, sweep_jobs);
    if (*compare)
      return cmd_compare(compare_flags, compare_algorithms_text, compare_seeds, compare_out, compare_jobs);
    if (*validate_cmd)
      return cmd_validate(validate_file);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
