#pragma once

#include <cstdint>
#include <limits>

namespace wclique {

/// Counter-based 64-bit generator (SplitMix64 output function over a
/// per-stream seed and odd increment). Output k of a stream depends only on
/// (seed, gamma, k), so any trial's stream is available without advancing
/// through earlier trials.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t gamma) : seed_(seed), gamma_(gamma | 1u) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return at(counter_++); }
  /// Output number k, without touching the stream position.
  result_type at(std::uint64_t k) const { return mix64(seed_ + (k + 1) * gamma_); }
  std::uint64_t position() const { return counter_; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  /// Uniform on (0, 1].
  double uniform_open0() { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }
  /// Standard normal (Box-Muller, both variates used in turn).
  double normal();

  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t gamma_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Deterministic stream for (master seed, trial index).
RngStream split_stream(std::uint64_t master_seed, std::uint64_t index);

}  // namespace wclique
