#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "abclevy/geometry.hpp"

namespace abclevy {

/**
 * Deterministic random stream.
 *
 * Backed by std::mt19937_64, whose output sequence is fixed by the standard.
 * The engine seed is splitmix64(seed ^ splitmix64(stream_id)), so every
 * (seed, stream_id) pair selects its own well-mixed starting state. All
 * conversions to real numbers are done here rather than through the
 * <random> distributions, whose algorithms are implementation-defined.
 */
class RandomSource
{
public:
  RandomSource(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01();
  /// Uniform in the open interval (0, 1).
  double uniform_open01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Index uniform in [0, n). n must be positive.
  std::size_t index(std::size_t n);
  bool bernoulli(double p) { return uniform01() < p; }

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Two independent standard normal variates (Box-Muller).
std::pair<double, double> gaussian_pair(RandomSource& src);

/// Mantegna scale for stability index beta in (0, 2].
/// Throws std::invalid_argument outside that range.
double mantegna_sigma(double beta);

struct LevyStep
{
  Vec2 vector;
  /// Euclidean length of `vector` before any step-size clamping.
  double raw_magnitude = 0.0;
};

/// Largest per-axis magnitude the sampler emits; larger draws saturate here.
inline constexpr double kLevyComponentCap = 1e300;
/// Smallest |v| used as a Mantegna denominator.
inline constexpr double kLevyMinDenominator = 1e-300;

/**
 * One 2-D Levy step, sampled per axis with the Mantegna construction:
 * component = levy_weight * sigma_u * u / |v|^(1/beta), with (u, v) a fresh
 * Gaussian pair for each axis. When `normalized` is false sigma_u is taken
 * as 1, which is the bare lambda * u * |v|^(-1/beta) kernel.
 */
LevyStep levy_step(RandomSource& src, double levy_weight, double beta, bool normalized = true);

/// Same construction from explicit Gaussian draws (per axis u, v).
Vec2 levy_from_draws(Vec2 u, Vec2 v, double levy_weight, double beta, bool normalized = true);

}  // namespace abclevy
