#include "wclique/oracle.hpp"

#include "wclique/density.hpp"
#include "wclique/types.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace wclique::oracle {

double naive_hom_density(const LabeledMultigraph& h, const StepGraphon& w) {
  if (!h.marked().empty()) throw InputError("naive_hom_density takes an unmarked pattern");
  const int k = h.n_vertices();
  if (k > kMaxPatternVertices) throw BudgetError("naive enumeration limited to 12 vertices");
  const auto blocks = static_cast<int>(w.blocks());
  std::vector<int> assign(static_cast<std::size_t>(k), 0);
  double total = 0.0;
  while (true) {
    double term = 1.0;
    for (int v = 0; v < k; ++v) term *= w.mu(assign[static_cast<std::size_t>(v)]);
    for (const auto& e : h.edges())
      term *= std::pow(w.value(assign[static_cast<std::size_t>(e.u)], assign[static_cast<std::size_t>(e.v)]),
                       e.multiplicity);
    total += term;
    int pos = 0;
    while (pos < k && ++assign[static_cast<std::size_t>(pos)] == blocks) assign[static_cast<std::size_t>(pos++)] = 0;
    if (pos == k) break;
  }
  return total;
}

namespace {

void check_sets(const std::vector<VertexSet>& sets) {
  if (sets.empty()) throw InputError("tuple must contain at least one set");
  const std::size_t r = sets.front().size();
  if (r < 2) throw InputError("sets must have at least 2 elements");
  for (const auto& s : sets) {
    if (s.size() != r) throw InputError("all sets in a tuple must have the same size");
    std::set<int> distinct(s.begin(), s.end());
    if (distinct.size() != s.size()) throw InputError("set with repeated element");
  }
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
  return x;
}

double clique_density(const StepGraphon& w, int r) { return hom_density(complete_graph(r), w); }

}  // namespace

TupleStructure classify_tuple(const std::vector<VertexSet>& sets) {
  check_sets(sets);
  const int m = static_cast<int>(sets.size());
  const int r = static_cast<int>(sets.front().size());
  std::map<int, int> degree;
  for (const auto& s : sets)
    for (int v : s) ++degree[v];

  TupleStructure out;
  out.m = m;
  out.vertex_count = static_cast<int>(degree.size());
  for (const auto& s : sets) {
    const auto shared = std::count_if(s.begin(), s.end(), [&](int v) { return degree[v] >= 2; });
    if (shared <= 1) {
      out.classification = TupleClass::X;
      return out;
    }
  }
  if (out.vertex_count != (r - 1) * m) return out;

  // Replace every set by the edge between its two degree-2 vertices; the
  // result is 2-regular, and its components are the loose cycles.
  std::map<int, int> index;
  for (const auto& [v, d] : degree)
    if (d == 2) index.emplace(v, static_cast<int>(index.size()));
  std::vector<int> parent(index.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::pair<int, int>> edges;
  for (const auto& s : sets) {
    std::vector<int> ends;
    for (int v : s)
      if (degree[v] == 2) ends.push_back(index.at(v));
    if (ends.size() != 2) return out;
    edges.emplace_back(ends[0], ends[1]);
    parent[static_cast<std::size_t>(find_root(parent, ends[0]))] = find_root(parent, ends[1]);
  }
  std::map<int, int> cycle_edges;
  for (auto [a, b] : edges) ++cycle_edges[find_root(parent, a)];
  out.cycle_type.assign(static_cast<std::size_t>(std::max(m - 1, 0)), 0);
  for (const auto& [root, len] : cycle_edges) {
    if (len < 2) return out;
    ++out.cycle_type[static_cast<std::size_t>(len - 2)];
  }
  out.classification = TupleClass::F;
  return out;
}

double delta_exact(const std::vector<VertexSet>& sets, const StepGraphon& w) {
  check_sets(sets);
  const int m = static_cast<int>(sets.size());
  if (m > 12) throw BudgetError("delta_exact limited to m <= 12");
  const int r = static_cast<int>(sets.front().size());
  const double t_r = clique_density(w, r);
  double total = 0.0;
  for (std::uint32_t subset = 0; subset < (std::uint32_t{1} << m); ++subset) {
    std::vector<VertexSet> chosen;
    for (int i = 0; i < m; ++i)
      if ((subset >> i) & 1u) chosen.push_back(sets[static_cast<std::size_t>(i)]);
    const double joint = chosen.empty() ? 1.0 : hom_density(associated_graph(chosen), w);
    total += std::pow(-t_r, m - static_cast<int>(chosen.size())) * joint;
  }
  return total;
}

TupleCounts count_tuples_by_type(int n, int r, int m) {
  if (n < 0 || r < 2 || m < 1) throw InputError("count_tuples_by_type needs n >= 0, r >= 2, m >= 1");
  TupleCounts counts;
  if (n < r) return counts;
  std::vector<VertexSet> subsets;
  VertexSet current(static_cast<std::size_t>(r));
  std::iota(current.begin(), current.end(), 0);
  while (true) {
    subsets.push_back(current);
    int i = r - 1;
    while (i >= 0 && current[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) break;
    ++current[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) current[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j - 1)] + 1;
  }
  const double total = std::pow(static_cast<double>(subsets.size()), m);
  if (total > 1e7) throw BudgetError("tuple enumeration exceeds 1e7 tuples");

  std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
  std::vector<VertexSet> tuple(static_cast<std::size_t>(m));
  while (true) {
    for (int i = 0; i < m; ++i) tuple[static_cast<std::size_t>(i)] = subsets[pick[static_cast<std::size_t>(i)]];
    const TupleStructure s = classify_tuple(tuple);
    if (s.classification == TupleClass::X) {
      ++counts.x_class;
    } else if (s.classification == TupleClass::F) {
      ++counts.by_type[s.cycle_type];
    } else {
      ++counts.other;
    }
    int pos = 0;
    while (pos < m && ++pick[static_cast<std::size_t>(pos)] == subsets.size()) pick[static_cast<std::size_t>(pos++)] = 0;
    if (pos == m) break;
  }
  return counts;
}

double a_formula(int n, int r, const std::vector<int>& cycle_type) {
  int m = 0;
  for (std::size_t i = 0; i < cycle_type.size(); ++i) m += static_cast<int>(i + 2) * cycle_type[i];
  const int vertices = (r - 1) * m;
  if (vertices > n) return 0.0;
  long double value = 1.0L;
  for (int k = 2; k <= m; ++k) value *= k;
  for (int k = 0; k < vertices; ++k) value *= n - k;
  long double fact = 1.0L;
  for (int k = 2; k <= r - 2; ++k) fact *= k;
  for (std::size_t i = 0; i < cycle_type.size(); ++i) {
    const int ell = static_cast<int>(i + 2);
    const long double aut = 2.0L * ell * std::pow(fact, static_cast<long double>(ell));
    for (int c = 0; c < cycle_type[i]; ++c) value /= aut * (c + 1);
  }
  return static_cast<double>(value);
}

std::map<std::uint64_t, double> exact_distribution(const StepGraphon& w, int n, int r) {
  if (n < 1 || n > 5) throw BudgetError("exact_distribution limited to 1 <= n <= 5");
  if (w.blocks() > 4) throw BudgetError("exact_distribution limited to B <= 4");
  if (r < 1) throw InputError("clique size must be >= 1");
  const int blocks = static_cast<int>(w.blocks());
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  const int n_pairs = static_cast<int>(pairs.size());

  std::vector<std::uint32_t> r_subsets;
  for (std::uint32_t s = 0; s < (1u << n); ++s)
    if (std::popcount(s) == r) r_subsets.push_back(s);

  std::map<std::uint64_t, double> law;
  std::vector<int> types(static_cast<std::size_t>(n), 0);
  while (true) {
    double p_types = 1.0;
    for (int t : types) p_types *= w.mu(t);
    for (std::uint32_t edges = 0; edges < (1u << n_pairs); ++edges) {
      double p = p_types;
      bool adj[5][5] = {};
      for (int k = 0; k < n_pairs && p > 0; ++k) {
        const auto [u, v] = pairs[static_cast<std::size_t>(k)];
        const double q = w.value(types[static_cast<std::size_t>(u)], types[static_cast<std::size_t>(v)]);
        const bool present = (edges >> k) & 1u;
        p *= present ? q : 1.0 - q;
        adj[u][v] = adj[v][u] = present;
      }
      if (p == 0.0) continue;
      std::uint64_t cliques = 0;
      for (std::uint32_t s : r_subsets) {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
          for (int v = u + 1; v < n && ok; ++v)
            if (((s >> u) & 1u) && ((s >> v) & 1u) && !adj[u][v]) ok = false;
        cliques += ok ? 1 : 0;
      }
      law[cliques] += p;
    }
    int pos = 0;
    while (pos < n && ++types[static_cast<std::size_t>(pos)] == blocks) types[static_cast<std::size_t>(pos++)] = 0;
    if (pos == n) break;
  }
  return law;
}

bool factorization_check(const std::vector<VertexSet>& sets, const std::vector<std::vector<int>>& parts,
                         const StepGraphon& w) {
  check_sets(sets);
  std::vector<int> seen(sets.size(), 0);
  for (const auto& part : parts)
    for (int i : part) {
      if (i < 0 || static_cast<std::size_t>(i) >= sets.size()) throw InputError("part index out of range");
      ++seen[static_cast<std::size_t>(i)];
    }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
    throw InputError("parts must partition the tuple");

  const auto select = [&](const std::vector<int>& idx) {
    std::vector<VertexSet> out;
    for (int i : idx) out.push_back(sets[static_cast<std::size_t>(i)]);
    return out;
  };

  const double whole = delta_exact(sets, w);
  double product = 1.0;
  for (const auto& part : parts) product *= delta_exact(select(part), w);
  if (std::abs(whole - product) > 1e-10) return false;

  const int r = static_cast<int>(sets.front().size());
  if (!is_kr_regular(w, r)) return true;
  const double t_r = clique_density(w, r);
  for (const auto& part : parts) {
    const auto cycle = select(part);
    const auto size = static_cast<int>(cycle.size());
    for (std::uint32_t sub = 1; sub + 1 < (std::uint32_t{1} << size); ++sub) {
      std::vector<VertexSet> chosen;
      for (int i = 0; i < size; ++i)
        if ((sub >> i) & 1u) chosen.push_back(cycle[static_cast<std::size_t>(i)]);
      const double joint = hom_density(associated_graph(chosen), w);
      if (std::abs(joint - std::pow(t_r, static_cast<int>(chosen.size()))) > 1e-10) return false;
    }
  }
  return true;
}

}  // namespace wclique::oracle
