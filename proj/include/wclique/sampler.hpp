#pragma once

#include "wclique/graphon.hpp"
#include "wclique/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace wclique {

/// One draw of G(n, W): symmetric bit-packed adjacency with zero diagonal,
/// plus the block (type) of every vertex.
class SampledGraph {
 public:
  SampledGraph() = default;
  SampledGraph(int n, std::vector<std::uint64_t> bits, std::vector<int> types);

  /// Graph on n vertices with the given undirected edges; all types 0.
  static SampledGraph from_edges(int n, std::span<const std::pair<int, int>> edges);

  int n() const { return n_; }
  std::size_t words_per_row() const { return words_; }
  std::span<const std::uint64_t> row(int v) const {
    return {bits_.data() + static_cast<std::size_t>(v) * words_, words_};
  }
  bool has_edge(int u, int v) const {
    return (bits_[static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v) / 64] >> (v % 64)) & 1u;
  }
  int degree(int v) const;
  std::uint64_t edge_count() const;
  const std::vector<int>& types() const { return types_; }

  /// Copy with edge {u, v} added.
  SampledGraph with_edge(int u, int v) const;

  /// All edges u < v in lexicographic order.
  std::vector<std::pair<int, int>> edge_list() const;

 private:
  int n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<int> types_;
};

inline constexpr int kDefaultMaxVertices = 1 << 16;

/// Two-step sampling: a block per vertex with probabilities mu, then each
/// pair independently with probability values(type_u, type_v).
SampledGraph sample_graph(const StepGraphon& w, int n, RngStream& stream, int max_vertices = kDefaultMaxVertices);

/// "u v" per line, 0-indexed, u < v, sorted.
void write_edge_list(const SampledGraph& g, std::ostream& out);

}  // namespace wclique
