#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "abclevy/env.hpp"
#include "abclevy/metrics.hpp"

namespace abclevy {

enum class SweepParameter { LevyWeight, Algorithm, NUavs };

std::string to_string(SweepParameter parameter);
SweepParameter parse_sweep_parameter(const std::string& text);

struct SweepSpec
{
  ScenarioConfig base;
  SweepParameter parameter = SweepParameter::LevyWeight;
  std::vector<std::string> values;
  std::vector<std::uint64_t> seeds;
  /// Empty path: nothing is written.
  std::filesystem::path output_dir;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned jobs = 0;
  /// Keep the full RunMetrics of every run in the result.
  bool keep_metrics = false;
};

/// One line of the per-run CSV.
struct RunRecord
{
  std::string scenario_id;
  Algorithm algorithm = Algorithm::HybridAbcLevy;
  double levy_weight = 0.0;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> steps_to_cover;
  std::optional<double> time_to_cover;
  double biodiversity_b = 0.0;
  double min_pairwise_distance = 0.0;
  std::int64_t collision_interventions = 0;
  int n_uavs = 0;
  std::string sweep_value;
  /// Far-cluster hotspots covered; only meaningful for TwoCluster layouts.
  std::optional<int> far_cluster_covered;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct ValueSummary
{
  std::string value;
  int runs = 0;
  int successes = 0;
  double success_rate = 0.0;
  /// Uncovered runs rank above every covered one; empty when the median
  /// (or quartile) falls on an uncovered run.
  std::optional<double> median_steps;
  std::optional<double> iqr_steps;
  double mean_alignment = 0.0;
  Heatmap heatmap;
};

struct SweepResult
{
  /// Ordered by (value index, seed index) regardless of execution order.
  std::vector<RunRecord> rows;
  /// Sorted by median steps_to_cover, uncovered medians last.
  std::vector<ValueSummary> summary;
  /// Parallel to `rows` when keep_metrics was set.
  std::vector<RunMetrics> metrics;
};

/// Applies one sweep value to a configuration (throws ValidationError).
ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParameter parameter, const std::string& value);

/// Builds the per-run record for a finished run.
RunRecord make_run_record(const ScenarioConfig& config, const RunMetrics& metrics, const std::string& sweep_value);

/// Throws ValidationError or IoError; nothing is run.
void validate_sweep(const SweepSpec& spec);

/**
 * Runs every (value, seed) pair on a worker pool. Each run gets
 * reseed(base, seed) with the value applied, so preset layouts follow the
 * seed. Writes runs.csv, summary.csv and heatmap_<value>.{pgm,csv} to
 * output_dir when one is set.
 */
SweepResult run_sweep(const SweepSpec& spec);

struct AlgorithmComparison
{
  Algorithm algorithm = Algorithm::HybridAbcLevy;
  int runs = 0;
  int successes = 0;
  double success_rate = 0.0;
  std::optional<double> median_steps;
  /// Runs that covered at least one far-cluster hotspot (TwoCluster only).
  int far_cluster_runs = 0;

  friend bool operator==(const AlgorithmComparison&, const AlgorithmComparison&) = default;
};

struct ComparisonTable
{
  std::string scenario_id;
  /// The near-band / far-cluster layout on which plain ABC and PSO stall.
  bool two_cluster = false;
  std::vector<AlgorithmComparison> rows;
  std::vector<RunRecord> runs;

  friend bool operator==(const ComparisonTable&, const ComparisonTable&) = default;
};

/// Needs at least two algorithms and one seed.
ComparisonTable compare_algorithms(const ScenarioConfig& base, const std::vector<Algorithm>& algorithms,
                                   const std::vector<std::uint64_t>& seeds, unsigned jobs = 0);

inline constexpr const char* kRunCsvHeader =
  "scenario_id,algorithm,levy_weight,seed,steps_to_cover,time_to_cover_s,biodiversity_b,"
  "min_pairwise_distance,collision_interventions,n_uavs,sweep_value,far_cluster_covered";

void write_run_rows(std::ostream& out, const std::vector<RunRecord>& rows);
/// Parses the output of write_run_rows; throws ValidationError on schema violations.
std::vector<RunRecord> parse_run_rows(std::istream& in);

void write_summary(std::ostream& out, const std::vector<ValueSummary>& summary);
void write_comparison(std::ostream& out, const ComparisonTable& table);

/// Sweep description file: {base: scenario, parameter, values, seeds, output_dir, jobs}.
SweepSpec sweep_from_json(const nlohmann::json& doc);

/// Order statistic helpers shared with the acceptance suite; uncovered runs
/// are passed as std::nullopt and sort above every value.
std::optional<double> median_steps(std::vector<std::optional<std::int64_t>> steps);
std::optional<double> quantile_steps(std::vector<std::optional<std::int64_t>> steps, double q);

}  // namespace abclevy
