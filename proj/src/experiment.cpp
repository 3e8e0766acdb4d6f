#include "abclevy/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "abclevy/scenario_io.hpp"
#include "abclevy/simulation.hpp"

namespace abclevy {

namespace {

std::string format_double(double v)
{
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

double parse_double(const std::string& text, const std::string& what)
{
  if (text == "inf")
    return std::numeric_limits<double>::infinity();
  if (text == "-inf")
    return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ValidationError("cannot parse " + what + " from '" + text + "'");
  return v;
}

template <typename Int>
Int parse_int(const std::string& text, const std::string& what)
{
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ValidationError("cannot parse " + what + " from '" + text + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line)
{
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ','))
    out.push_back(field);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  return out;
}

std::string canonical_value(SweepParameter parameter, const std::string& value)
{
  switch (parameter) {
    case SweepParameter::LevyWeight: return format_double(parse_double(value, "levy weight"));
    case SweepParameter::Algorithm: return to_string(parse_algorithm(value));
    case SweepParameter::NUavs: return std::to_string(parse_int<int>(value, "n_uavs"));
  }
  return value;
}

std::string file_safe(std::string label)
{
  for (char& c : label)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_'))
      c = '_';
  return label;
}

void ensure_writable(const std::filesystem::path& dir)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create output directory " + dir.string());
  const auto probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out)
      throw IoError("output directory " + dir.string() + " is not writable");
  }
  std::filesystem::remove(probe, ec);
}

std::ofstream open_output(const std::filesystem::path& path)
{
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot write " + path.string());
  return out;
}

unsigned worker_count(unsigned requested, std::size_t tasks)
{
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

}  // namespace

std::string to_string(SweepParameter parameter)
{
  switch (parameter) {
    case SweepParameter::LevyWeight: return "levy_weight";
    case SweepParameter::Algorithm: return "algorithm";
    case SweepParameter::NUavs: return "n_uavs";
  }
  return "unknown";
}

SweepParameter parse_sweep_parameter(const std::string& text)
{
  if (text == "levy_weight" || text == "LevyWeight")
    return SweepParameter::LevyWeight;
  if (text == "algorithm" || text == "Algorithm")
    return SweepParameter::Algorithm;
  if (text == "n_uavs" || text == "NUavs")
    return SweepParameter::NUavs;
  throw ValidationError("unknown sweep parameter '" + text + "'");
}

std::optional<double> quantile_steps(std::vector<std::optional<std::int64_t>> steps, double q)
{
  if (steps.empty())
    return std::nullopt;
  std::sort(steps.begin(), steps.end(), [](const auto& a, const auto& b) {
    if (!a || !b)
      return a.has_value() && !b.has_value();
    return *a < *b;
  });
  const double pos = q * static_cast<double>(steps.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  if (!steps[lo] || !steps[hi])
    return std::nullopt;
  const double frac = pos - static_cast<double>(lo);
  return static_cast<double>(*steps[lo]) + frac * static_cast<double>(*steps[hi] - *steps[lo]);
}

std::optional<double> median_steps(std::vector<std::optional<std::int64_t>> steps)
{
  return quantile_steps(std::move(steps), 0.5);
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParameter parameter, const std::string& value)
{
  ScenarioConfig config = base;
  switch (parameter) {
    case SweepParameter::LevyWeight:
      config.params.levy_weight = parse_double(value, "levy weight");
      break;
    case SweepParameter::Algorithm:
      config.algorithm = parse_algorithm(value);
      break;
    case SweepParameter::NUavs:
      config.n_uavs = parse_int<int>(value, "n_uavs");
      break;
  }
  return config;
}

RunRecord make_run_record(const ScenarioConfig& config, const RunMetrics& metrics, const std::string& sweep_value)
{
  RunRecord r;
  r.scenario_id = config.scenario_id;
  r.algorithm = config.algorithm;
  r.levy_weight = config.params.levy_weight;
  r.seed = config.seed;
  r.steps_to_cover = metrics.steps_to_cover;
  r.time_to_cover = metrics.time_to_cover;
  r.biodiversity_b = metrics.biodiversity_b;
  r.min_pairwise_distance = metrics.min_pairwise_distance;
  r.collision_interventions = metrics.constraint_report.collision_interventions;
  r.n_uavs = config.n_uavs;
  r.sweep_value = sweep_value;
  if (config.kind == ScenarioKind::TwoCluster) {
    int far = 0;
    for (std::size_t k = 0; k < config.hotspots.size(); ++k) {
      if (metrics.hotspot_cover_step[k] && in_far_cluster(config.hotspots[k].position, config.grid, config.layout))
        ++far;
    }
    r.far_cluster_covered = far;
  }
  return r;
}

void validate_sweep(const SweepSpec& spec)
{
  if (spec.values.empty())
    throw ValidationError("sweep needs at least one value");
  if (spec.seeds.empty())
    throw ValidationError("sweep needs at least one seed");
  for (const std::string& value : spec.values)
    validate(apply_sweep_value(reseed(spec.base, spec.seeds.front()), spec.parameter, value));
  if (!spec.output_dir.empty())
    ensure_writable(spec.output_dir);
}

SweepResult run_sweep(const SweepSpec& spec)
{
  validate_sweep(spec);

  std::vector<std::string> labels;
  for (const std::string& value : spec.values)
    labels.push_back(canonical_value(spec.parameter, value));

  const std::size_t n_runs = labels.size() * spec.seeds.size();
  std::vector<RunRecord> rows(n_runs);
  std::vector<RunMetrics> metrics(n_runs);
  std::vector<double> alignment(n_runs, 0.0);

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t task = next++; task < n_runs; task = next++) {
      const std::size_t v = task / spec.seeds.size();
      const std::size_t s = task % spec.seeds.size();
      const ScenarioConfig config = apply_sweep_value(reseed(spec.base, spec.seeds[s]), spec.parameter, labels[v]);
      RunMetrics run = run_scenario(config);
      rows[task] = make_run_record(config, run, labels[v]);
      alignment[task] = hotspot_alignment(run.heatmap, config.hotspots, config.constraints.coverage_radius * 2.0);
      metrics[task] = std::move(run);
    }
  };
  std::vector<std::jthread> pool;
  const unsigned workers = worker_count(spec.jobs, n_runs);
  for (unsigned t = 0; t + 1 < workers; ++t)
    pool.emplace_back(worker);
  worker();
  pool.clear();

  SweepResult result;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    ValueSummary summary;
    summary.value = labels[v];
    std::vector<std::optional<std::int64_t>> steps;
    for (std::size_t s = 0; s < spec.seeds.size(); ++s) {
      const std::size_t task = v * spec.seeds.size() + s;
      steps.push_back(rows[task].steps_to_cover);
      summary.heatmap.merge(metrics[task].heatmap);
      summary.mean_alignment += alignment[task];
      ++summary.runs;
      if (rows[task].steps_to_cover)
        ++summary.successes;
    }
    summary.mean_alignment /= summary.runs;
    summary.success_rate = static_cast<double>(summary.successes) / summary.runs;
    summary.median_steps = median_steps(steps);
    const auto q1 = quantile_steps(steps, 0.25);
    const auto q3 = quantile_steps(steps, 0.75);
    if (q1 && q3)
      summary.iqr_steps = *q3 - *q1;
    result.summary.push_back(std::move(summary));
  }
  std::stable_sort(result.summary.begin(), result.summary.end(), [](const ValueSummary& a, const ValueSummary& b) {
    if (!a.median_steps || !b.median_steps)
      return a.median_steps.has_value() && !b.median_steps.has_value();
    return *a.median_steps < *b.median_steps;
  });

  result.rows = std::move(rows);
  if (spec.keep_metrics)
    result.metrics = std::move(metrics);

  if (!spec.output_dir.empty()) {
    auto runs_out = open_output(spec.output_dir / "runs.csv");
    write_run_rows(runs_out, result.rows);
    auto summary_out = open_output(spec.output_dir / "summary.csv");
    write_summary(summary_out, result.summary);
    for (const ValueSummary& s : result.summary) {
      const std::string stem = "heatmap_" + to_string(spec.parameter) + "_" + file_safe(s.value);
      auto pgm = open_output(spec.output_dir / (stem + ".pgm"));
      s.heatmap.write_pgm(pgm);
      auto csv = open_output(spec.output_dir / (stem + ".csv"));
      s.heatmap.write_csv(csv);
    }
  }
  return result;
}

ComparisonTable compare_algorithms(const ScenarioConfig& base, const std::vector<Algorithm>& algorithms,
                                   const std::vector<std::uint64_t>& seeds, unsigned jobs)
{
  if (algorithms.size() < 2)
    throw ValidationError("compare needs at least two algorithms");
  SweepSpec spec;
  spec.base = base;
  spec.parameter = SweepParameter::Algorithm;
  for (Algorithm a : algorithms)
    spec.values.push_back(to_string(a));
  spec.seeds = seeds;
  spec.jobs = jobs;
  const SweepResult sweep = run_sweep(spec);

  ComparisonTable table;
  table.scenario_id = base.scenario_id;
  table.two_cluster = base.kind == ScenarioKind::TwoCluster;
  table.runs = sweep.rows;
  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    AlgorithmComparison row;
    row.algorithm = algorithms[a];
    std::vector<std::optional<std::int64_t>> steps;
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      const RunRecord& r = sweep.rows[a * seeds.size() + s];
      steps.push_back(r.steps_to_cover);
      ++row.runs;
      if (r.steps_to_cover)
        ++row.successes;
      if (r.far_cluster_covered.value_or(0) > 0)
        ++row.far_cluster_runs;
    }
    row.success_rate = static_cast<double>(row.successes) / row.runs;
    row.median_steps = median_steps(steps);
    table.rows.push_back(row);
  }
  return table;
}

void write_run_rows(std::ostream& out, const std::vector<RunRecord>& rows)
{
  out << kRunCsvHeader << '\n';
  for (const RunRecord& r : rows) {
    out << r.scenario_id << ',' << to_string(r.algorithm) << ',' << format_double(r.levy_weight) << ',' << r.seed
        << ',' << (r.steps_to_cover ? std::to_string(*r.steps_to_cover) : "NA") << ','
        << (r.time_to_cover ? format_double(*r.time_to_cover) : "NA") << ',' << format_double(r.biodiversity_b)
        << ',' << format_double(r.min_pairwise_distance) << ',' << r.collision_interventions << ',' << r.n_uavs
        << ',' << r.sweep_value << ','
        << (r.far_cluster_covered ? std::to_string(*r.far_cluster_covered) : "NA") << '\n';
  }
}

std::vector<RunRecord> parse_run_rows(std::istream& in)
{
  std::string line;
  if (!std::getline(in, line) || line != kRunCsvHeader)
    throw ValidationError("run CSV header does not match the schema");
  std::vector<RunRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    const auto f = split_csv(line);
    if (f.size() != 12)
      throw ValidationError("run CSV row has " + std::to_string(f.size()) + " fields, expected 12");
    RunRecord r;
    r.scenario_id = f[0];
    r.algorithm = parse_algorithm(f[1]);
    r.levy_weight = parse_double(f[2], "levy_weight");
    r.seed = parse_int<std::uint64_t>(f[3], "seed");
    if (f[4] != "NA")
      r.steps_to_cover = parse_int<std::int64_t>(f[4], "steps_to_cover");
    if (f[5] != "NA")
      r.time_to_cover = parse_double(f[5], "time_to_cover_s");
    r.biodiversity_b = parse_double(f[6], "biodiversity_b");
    r.min_pairwise_distance = parse_double(f[7], "min_pairwise_distance");
    r.collision_interventions = parse_int<std::int64_t>(f[8], "collision_interventions");
    r.n_uavs = parse_int<int>(f[9], "n_uavs");
    r.sweep_value = f[10];
    if (f[11] != "NA")
      r.far_cluster_covered = parse_int<int>(f[11], "far_cluster_covered");
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_summary(std::ostream& out, const std::vector<ValueSummary>& summary)
{
  out << "value,runs,successes,success_rate,median_steps,iqr_steps,mean_alignment\n";
  for (const ValueSummary& s : summary) {
    out << s.value << ',' << s.runs << ',' << s.successes << ',' << format_double(s.success_rate) << ','
        << (s.median_steps ? format_double(*s.median_steps) : "NA") << ','
        << (s.iqr_steps ? format_double(*s.iqr_steps) : "NA") << ',' << format_double(s.mean_alignment) << '\n';
  }
}

void write_comparison(std::ostream& out, const ComparisonTable& table)
{
  out << "scenario_id,two_cluster,algorithm,runs,successes,success_rate,median_steps,far_cluster_runs\n";
  for (const AlgorithmComparison& row : table.rows) {
    out << table.scenario_id << ',' << (table.two_cluster ? "yes" : "no") << ',' << to_string(row.algorithm) << ','
        << row.runs << ',' << row.successes << ',' << format_double(row.success_rate) << ','
        << (row.median_steps ? format_double(*row.median_steps) : "NA") << ',' << row.far_cluster_runs << '\n';
  }
}

SweepSpec sweep_from_json(const nlohmann::json& doc)
{
  if (!doc.is_object())
    throw ValidationError("sweep spec must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "base" && key != "parameter" && key != "values" && key != "seeds" && key != "output_dir" &&
        key != "jobs")
      throw ValidationError("unknown key '" + key + "' in sweep spec");
  }
  if (!doc.contains("base"))
    throw ValidationError("sweep spec needs a base scenario");
  SweepSpec spec;
  spec.base = scenario_from_json(doc.at("base"));
  try {
    if (doc.contains("parameter"))
      spec.parameter = parse_sweep_parameter(doc.at("parameter").get<std::string>());
    if (doc.contains("values")) {
      for (const auto& v : doc.at("values"))
        spec.values.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    if (doc.contains("seeds"))
      spec.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
    if (doc.contains("output_dir"))
      spec.output_dir = doc.at("output_dir").get<std::string>();
    if (doc.contains("jobs"))
      spec.jobs = doc.at("jobs").get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed sweep spec: ") + e.what());
  }
  return spec;
}

}  // namespace abclevy
