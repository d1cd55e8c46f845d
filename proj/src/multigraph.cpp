#include "wclique/multigraph.hpp"

#include "wclique/types.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace wclique {

LabeledMultigraph::LabeledMultigraph(int n_vertices) : n_(n_vertices) {
  if (n_vertices < 0) throw InputError("negative vertex count");
}

void LabeledMultigraph::add_edge(int u, int v, int multiplicity) {
  if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InputError("edge endpoint out of range");
  if (multiplicity < 1) throw InputError("edge multiplicity must be >= 1");
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v, 0},
                             [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  if (it != edges_.end() && it->u == u && it->v == v) {
    it->multiplicity += multiplicity;
  } else {
    edges_.insert(it, Edge{u, v, multiplicity});
  }
}

void LabeledMultigraph::set_marked(std::vector<int> marked) {
  std::vector<int> seen = marked;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw InputError("marked vertices must be distinct");
  for (int v : marked)
    if (v < 0 || v >= n_) throw InputError("marked vertex out of range");
  marked_ = std::move(marked);
}

int LabeledMultigraph::multiplicity(int u, int v) const {
  if (u > v) std::swap(u, v);
  for (const auto& e : edges_)
    if (e.u == u && e.v == v) return e.multiplicity;
  return 0;
}

int LabeledMultigraph::total_multiplicity() const {
  int total = 0;
  for (const auto& e : edges_) total += e.multiplicity;
  return total;
}

LabeledMultigraph LabeledMultigraph::simplified() const {
  LabeledMultigraph g = *this;
  for (auto& e : g.edges_) e.multiplicity = 1;
  return g;
}

LabeledMultigraph LabeledMultigraph::without_marks() const {
  LabeledMultigraph g = *this;
  g.marked_.clear();
  return g;
}

LabeledMultigraph complete_graph(int r) {
  if (r < 1) throw InputError("clique size must be >= 1");
  LabeledMultigraph g(r);
  for (int u = 0; u < r; ++u)
    for (int v = u + 1; v < r; ++v) g.add_edge(u, v);
  return g;
}

LabeledMultigraph cycle_graph(int ell) {
  if (ell < 2) throw InputError("cycle length must be >= 2");
  LabeledMultigraph g(ell);
  if (ell == 2) {
    g.add_edge(0, 1, 2);
    return g;
  }
  for (int i = 0; i < ell; ++i) g.add_edge(i, (i + 1) % ell);
  return g;
}

LabeledMultigraph build_glued_cliques(int r, int j, bool doubled) {
  if (r < 1 || j < 0 || j > r) throw InputError("glued cliques need 0 <= j <= r");
  if (doubled && j != 2) throw InputError("only the shared edge of a 2-overlap can be doubled");
  const int n = 2 * r - j;
  std::vector<int> first(static_cast<std::size_t>(r));
  std::vector<int> second;
  for (int i = 0; i < r; ++i) first[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < j; ++i) second.push_back(i);
  for (int i = r; i < n; ++i) second.push_back(i);
  LabeledMultigraph g(n);
  for (const auto* clique : {&first, &second})
    for (std::size_t a = 0; a < clique->size(); ++a)
      for (std::size_t b = a + 1; b < clique->size(); ++b)
        if (g.multiplicity((*clique)[a], (*clique)[b]) == 0) g.add_edge((*clique)[a], (*clique)[b]);
  if (doubled) g.add_edge(0, 1);
  return g;
}

LabeledMultigraph build_loose_cycle_graph(int ell, int r) {
  if (ell < 2 || r < 2) throw InputError("loose cycles need ell >= 2 and r >= 2");
  // Shared (degree-2) vertices are 0..ell-1; clique i holds shared i and
  // (i+1) mod ell plus r-2 private vertices.
  std::vector<std::vector<int>> sets;
  int next = ell;
  for (int i = 0; i < ell; ++i) {
    std::vector<int> s{i, (i + 1) % ell};
    for (int k = 0; k < r - 2; ++k) s.push_back(next++);
    sets.push_back(std::move(s));
  }
  return associated_graph(sets);
}

LabeledMultigraph associated_graph(const std::vector<std::vector<int>>& sets) {
  std::map<int, int> label;
  for (const auto& s : sets)
    for (int v : s) label.emplace(v, 0);
  int next = 0;
  for (auto& [v, l] : label) l = next++;
  LabeledMultigraph g(next);
  for (const auto& s : sets)
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        const int u = label.at(s[a]);
        const int v = label.at(s[b]);
        if (u == v) throw InputError("vertex repeated inside a set");
        if (g.multiplicity(u, v) == 0) g.add_edge(u, v);
      }
  return g;
}

}  // namespace wclique
