#pragma once

#include <cstddef>
#include <vector>

namespace wclique {

/// Small multigraph with optional marked (pinned) vertices. Edges are stored
/// with u < v, merged by pair, multiplicity >= 1.
class LabeledMultigraph {
 public:
  struct Edge {
    int u;
    int v;
    int multiplicity;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  explicit LabeledMultigraph(int n_vertices);

  /// Adds `multiplicity` parallel copies of {u, v}.
  void add_edge(int u, int v, int multiplicity = 1);
  void set_marked(std::vector<int> marked);

  int n_vertices() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& marked() const { return marked_; }
  int multiplicity(int u, int v) const;
  /// Sum of multiplicities.
  int total_multiplicity() const;
  LabeledMultigraph simplified() const;
  LabeledMultigraph without_marks() const;

  friend bool operator==(const LabeledMultigraph&, const LabeledMultigraph&) = default;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<int> marked_;
};

LabeledMultigraph complete_graph(int r);
/// C_2 is the double edge.
LabeledMultigraph cycle_graph(int ell);
/// Two copies of K_r sharing j vertices (labels 0..j-1); with `doubled` the
/// shared edge {0,1} gets multiplicity 2 (requires j == 2).
LabeledMultigraph build_glued_cliques(int r, int j, bool doubled = false);
/// G_{ell,r}: ell r-cliques chained in a cycle, consecutive cliques sharing
/// one vertex (a pair when ell == 2). Simple graph on ell*(r-1) vertices.
LabeledMultigraph build_loose_cycle_graph(int ell, int r);
/// Clique graph of a family of vertex sets: vertices are the union relabelled
/// in increasing order, every set becomes a clique, parallel edges merged.
LabeledMultigraph associated_graph(const std::vector<std::vector<int>>& sets);

}  // namespace wclique
