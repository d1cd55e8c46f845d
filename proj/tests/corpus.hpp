#pragma once

#include "wclique/graphon.hpp"
#include "wclique/rng.hpp"

#include <vector>

namespace wclique::testing {

inline StepGraphon two_clique() {
  return StepGraphon::validate(Eigen::Vector2d(0.5, 0.5), Eigen::Matrix2d::Identity());
}

inline StepGraphon nonregular() {
  Eigen::Matrix2d v;
  v << 0.8, 0.2, 0.2, 0.4;
  return StepGraphon::validate(Eigen::Vector2d(0.5, 0.5), v);
}

inline StepGraphon random_graphon(RngStream& rng, int blocks) {
  Eigen::VectorXd mu(blocks);
  for (int i = 0; i < blocks; ++i) mu(i) = 0.1 + rng.uniform();
  mu /= mu.sum();
  Eigen::MatrixXd v(blocks, blocks);
  for (int i = 0; i < blocks; ++i)
    for (int j = i; j < blocks; ++j) v(i, j) = v(j, i) = rng.uniform();
  return StepGraphon::derived(mu, v);
}

/// 24 graphons with 1..5 blocks, random weights and values.
inline std::vector<StepGraphon> random_corpus(std::uint64_t seed = 2024, int size = 24) {
  RngStream rng = split_stream(seed, 0);
  std::vector<StepGraphon> out;
  for (int k = 0; k < size; ++k) out.push_back(random_graphon(rng, 1 + k % 5));
  return out;
}

/// Circulant values on equal blocks: block-transitive, hence K_r-regular for
/// every r.
inline std::vector<StepGraphon> regular_corpus(std::uint64_t seed = 7, int size = 12) {
  RngStream rng = split_stream(seed, 1);
  std::vector<StepGraphon> out;
  for (int k = 0; k < size; ++k) {
    const int b = 2 + k % 4;
    std::vector<double> gen(static_cast<std::size_t>(b));
    for (int d = 0; d <= b / 2; ++d) gen[static_cast<std::size_t>(d)] = 0.15 + 0.8 * rng.uniform();
    for (int d = b / 2 + 1; d < b; ++d) gen[static_cast<std::size_t>(d)] = gen[static_cast<std::size_t>(b - d)];
    Eigen::MatrixXd v(b, b);
    for (int i = 0; i < b; ++i)
      for (int j = 0; j < b; ++j) v(i, j) = gen[static_cast<std::size_t>((j - i + b) % b)];
    out.push_back(StepGraphon::validate(Eigen::VectorXd::Constant(b, 1.0 / b), v));
  }
  return out;
}

}  // namespace wclique::testing
