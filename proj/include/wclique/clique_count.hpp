#pragma once

#include "wclique/sampler.hpp"

#include <cstdint>

namespace wclique {

/// Number of r-subsets of vertices inducing a clique (X_{n,r}); r = 2 counts
/// edges. Throws NumericalError if the count would exceed 2^63 - 1.
std::uint64_t count_cliques(const SampledGraph& g, int r);

/// Brute force over all r-subsets; n <= 20.
std::uint64_t count_cliques_reference(const SampledGraph& g, int r);

/// C(n, k) if it fits in 63 bits, otherwise throws NumericalError.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace wclique
