#pragma once

#include <cstdint>
#include <random>

namespace igsub {

/// Deterministic uniform stream keyed by (seed, stream_id).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq, both of which
/// the standard specifies exactly, and uniforms are formed from the top 53
/// bits of each output, so uniform() and exponential() sequences are
/// identical across standard libraries. poisson() delegates to
/// std::poisson_distribution and is reproducible per standard library only.
class RandomSource {
 public:
  RandomSource(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Uniform on the open interval (0, 1).
  double uniform();

  /// Exponential with the given rate, drawn as −ln(U)/rate.
  double exponential(double rate);

  /// Poisson count with the given mean. Means above 1e12 use the normal
  /// approximation; the result is always a nonnegative integer value.
  double poisson(double mean);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace igsub
