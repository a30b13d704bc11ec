#include "igsub/random.hpp"

#include <algorithm>
#include <cmath>

#include "igsub/error.hpp"

namespace igsub {
namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32),
                    0x9e3779b9u};
  return std::mt19937_64(seq);
}

constexpr double kPoissonNormalThreshold = 1e12;

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

double RandomSource::uniform() {
  // (k + 0.5) / 2^53 for k in [0, 2^53): never 0, never 1.
  const std::uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double RandomSource::exponential(double rate) {
  detail::require(rate > 0.0, "exponential: rate must be > 0");
  return -std::log(uniform()) / rate;
}

double RandomSource::poisson(double mean) {
  detail::require(mean >= 0.0 && !std::isnan(mean),
                  "poisson: mean must be >= 0");
  if (mean == 0.0) return 0.0;
  if (mean > kPoissonNormalThreshold) {
    // Box–Muller on our own uniforms keeps this branch portable.
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double z = r * std::cos(2.0 * M_PI * uniform());
    return std::max(0.0, std::round(mean + std::sqrt(mean) * z));
  }
  std::poisson_distribution<long long> dist(mean);
  return static_cast<double>(dist(engine_));
}

}  // namespace igsub
