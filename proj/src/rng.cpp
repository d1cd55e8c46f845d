#include "wclique/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace wclique {

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform_open0()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Odd increment with enough bit transitions to avoid weak gammas.
std::uint64_t mix_gamma(std::uint64_t z) {
  z = RngStream::mix64(z) | 1u;
  if (std::popcount(z ^ (z >> 1)) < 24) z ^= 0xaaaaaaaaaaaaaaaaULL;
  return z;
}

}  // namespace

RngStream split_stream(std::uint64_t master_seed, std::uint64_t index) {
  const std::uint64_t master = RngStream::mix64(master_seed + kGolden);
  const std::uint64_t seed = RngStream::mix64(master ^ RngStream::mix64(index * kGolden + 1));
  return RngStream(seed, mix_gamma(seed + kGolden));
}

}  // namespace wclique
