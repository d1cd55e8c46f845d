#pragma once

// Brute-force ground truth used by the test suites and `selftest`: naive
// density enumeration, exact laws of tiny clique counts, and the tuple
// bookkeeping behind the moment expansion of the centred count.

#include "wclique/graphon.hpp"
#include "wclique/multigraph.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace wclique::oracle {

using VertexSet = std::vector<int>;

/// t(H, W) by plain enumeration of all B^k block assignments; k <= 12.
double naive_hom_density(const LabeledMultigraph& h, const StepGraphon& w);

enum class TupleClass { X, F, Other };

struct TupleStructure {
  int m = 0;
  TupleClass classification = TupleClass::Other;
  /// k = (k_2, ..., k_m): number of loose cycles of each length, entry 0
  /// for length 2. Filled only for TupleClass::F.
  std::vector<int> cycle_type;
  int vertex_count = 0;
};

/// X: some set meets the union of the others in <= 1 vertex. F: not X and
/// the union has (r-1)m vertices (a disjoint union of loose cycles).
TupleStructure classify_tuple(const std::vector<VertexSet>& sets);

/// E[prod_i (I_{R_i} - t_r)] by inclusion-exclusion over sub-collections,
/// each term a density of an associated graph. m <= 12.
double delta_exact(const std::vector<VertexSet>& sets, const StepGraphon& w);

struct TupleCounts {
  /// Keyed by the cycle-type vector (k_2, ..., k_m).
  std::map<std::vector<int>, std::uint64_t> by_type;
  std::uint64_t x_class = 0;
  std::uint64_t other = 0;
};

/// Enumerates all ordered m-tuples of r-subsets of [n]; C(n,r)^m <= 1e7.
TupleCounts count_tuples_by_type(int n, int r, int m);

/// m! (n)_{(r-1)m} / prod_l (2l((r-2)!)^l)^{k_l} k_l! for k = (k_2, ..., k_m),
/// m = sum_l l k_l: the number of ordered tuples with that cycle type.
double a_formula(int n, int r, const std::vector<int>& cycle_type);

/// Exact law of X_{n,r}: count -> probability. n <= 5, B <= 4.
std::map<std::uint64_t, double> exact_distribution(const StepGraphon& w, int n, int r);

/// For a tuple that is a vertex-disjoint union of loose cycles (the parts
/// index into `sets`): checks that delta factorizes over the parts within
/// 1e-10 and, when W is K_r-regular, that every proper sub-collection C of a
/// part has E[prod I] = t_r^|C|.
bool factorization_check(const std::vector<VertexSet>& sets, const std::vector<std::vector<int>>& parts,
                         const StepGraphon& w);

}  // namespace wclique::oracle
