#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace ghp {

/// Identifies an independent random stream. Equal (seed, stream_id) pairs
/// give bit-identical sequences on every run and thread layout; concurrent
/// work must use distinct stream ids.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

/// xoshiro256** keyed by an RngStream through SplitMix64. Satisfies
/// UniformRandomBitGenerator so Boost.Random distributions can sit on top.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(RngStream stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  double exponential();
  double normal();
  /// Gamma(shape, 1).
  double gamma(double shape);

 private:
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace ghp
