#ifndef MUMENET_RNG_HPP
#define MUMENET_RNG_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace mumenet {

/// Derives a per-stream sub-seed from the master seed and a stream label.
/// Same (master, label) always maps to the same value; distinct labels land
/// in distinct SplitMix64 streams so adding a consumer never perturbs others.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream_label);

/// Deterministic RNG used everywhere randomness is needed. Wraps SplitMix64
/// with explicit distribution code so draws are identical across platforms
/// (std:: distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01();

  /// Uniform in [lo, hi].
  double uniform(double lo, double hi);

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard normal via Box-Muller; one draw per call, no cached spare.
  double normal(double mean, double sigma);

  /// Exponential inter-arrival sample with the given rate (>0).
  double exponential(double rate);

 private:
  std::uint64_t state_;
};

}  // namespace mumenet

#endif
