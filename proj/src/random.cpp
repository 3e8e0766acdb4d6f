#include "abclevy/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace abclevy {

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream_id)
  : seed_(seed), stream_id_(stream_id), engine_(splitmix64(seed ^ splitmix64(stream_id)))
{}

double RandomSource::uniform01()
{
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomSource::uniform_open01()
{
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::size_t RandomSource::index(std::size_t n)
{
  if (n == 0)
    throw std::invalid_argument("RandomSource::index: empty range");
  // Lemire-style rejection keeps the result unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return static_cast<std::size_t>(r % n);
}

std::pair<double, double> gaussian_pair(RandomSource& src)
{
  const double u1 = src.uniform_open01();
  const double u2 = src.uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(theta), radius * std::sin(theta)};
}

double mantegna_sigma(double beta)
{
  if (!(beta > 0.0 && beta <= 2.0))
    throw std::invalid_argument("levy beta must lie in (0, 2], got " + std::to_string(beta));
  const double num = std::tgamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0);
  const double den = std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
  return std::pow(num / den, 1.0 / beta);
}

namespace {

double levy_component(double u, double v, double scale, double beta)
{
  const double denom = std::pow(std::max(std::abs(v), kLevyMinDenominator), 1.0 / beta);
  double value = scale * u / denom;
  if (!std::isfinite(value) || std::abs(value) > kLevyComponentCap)
    value = std::copysign(kLevyComponentCap, u);
  return value;
}

}  // namespace

Vec2 levy_from_draws(Vec2 u, Vec2 v, double levy_weight, double beta, bool normalized)
{
  const double scale = levy_weight * (normalized ? mantegna_sigma(beta) : 1.0);
  if (u.x == 0.0 && u.y == 0.0)
    return {};
  return {levy_component(u.x, v.x, scale, beta), levy_component(u.y, v.y, scale, beta)};
}

LevyStep levy_step(RandomSource& src, double levy_weight, double beta, bool normalized)
{
  if (!(levy_weight > 0.0))
    throw std::invalid_argument("levy weight must be positive");
  if (!(beta > 0.0 && beta <= 2.0))
    throw std::invalid_argument("levy beta must lie in (0, 2]");

  auto draw_axis = [&src]() {
    auto [u, v] = gaussian_pair(src);
    for (int redraw = 0; std::abs(v) < kLevyMinDenominator && redraw < 8; ++redraw)
      v = gaussian_pair(src).second;
    if (std::abs(v) < kLevyMinDenominator)
      v = kLevyMinDenominator;
    return std::pair{u, v};
  };
  const auto [ux, vx] = draw_axis();
  const auto [uy, vy] = draw_axis();

  LevyStep step;
  step.vector = levy_from_draws({ux, uy}, {vx, vy}, levy_weight, beta, normalized);
  step.raw_magnitude = step.vector.norm();
  return step;
}

}  // namespace abclevy
