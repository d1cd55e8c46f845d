#include "wclique/clique_count.hpp"

#include "wclique/types.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <vector>

namespace wclique {

namespace {

constexpr std::uint64_t kCountLimit = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());

// Oriented adjacency: row v holds the neighbours ranked after v.
struct ForwardRows {
  int n = 0;
  std::size_t words = 0;
  std::vector<std::uint64_t> bits;

  const std::uint64_t* row(int v) const { return bits.data() + static_cast<std::size_t>(v) * words; }
};

// Orientation by vertex index: a masked copy of the adjacency rows.
ForwardRows orient_by_index(const SampledGraph& g) {
  ForwardRows f{g.n(), g.words_per_row(), std::vector<std::uint64_t>(static_cast<std::size_t>(g.n()) * g.words_per_row(), 0)};
  for (int v = 0; v < g.n(); ++v) {
    const auto src = g.row(v);
    std::uint64_t* dst = f.bits.data() + static_cast<std::size_t>(v) * f.words;
    const std::size_t first = static_cast<std::size_t>(v + 1) / 64;
    for (std::size_t w = first; w < f.words; ++w) dst[w] = src[w];
    if (first < f.words) dst[first] &= ~std::uint64_t{0} << ((v + 1) % 64);
  }
  return f;
}

// Orientation by (degree, index) rank: low-degree vertices first, so the
// out-neighbourhoods of the recursion roots stay small.
ForwardRows orient_by_degree(const SampledGraph& g) {
  const int n = g.n();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> degree(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) degree[static_cast<std::size_t>(v)] = g.degree(v);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return degree[static_cast<std::size_t>(a)] < degree[static_cast<std::size_t>(b)];
  });
  std::vector<int> rank(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;

  ForwardRows f{n, g.words_per_row(), std::vector<std::uint64_t>(static_cast<std::size_t>(n) * g.words_per_row(), 0)};
  for (int v = 0; v < n; ++v) {
    const int rv = rank[static_cast<std::size_t>(v)];
    std::uint64_t* dst = f.bits.data() + static_cast<std::size_t>(rv) * f.words;
    const auto src = g.row(v);
    for (std::size_t w = 0; w < f.words; ++w) {
      std::uint64_t word = src[w];
      while (word) {
        const int u = static_cast<int>(w * 64) + std::countr_zero(word);
        word &= word - 1;
        const int ru = rank[static_cast<std::size_t>(u)];
        if (ru > rv) dst[static_cast<std::size_t>(ru) / 64] |= std::uint64_t{1} << (ru % 64);
      }
    }
  }
  return f;
}

class CliqueCounter {
 public:
  CliqueCounter(const ForwardRows& rows, int r, bool checked)
      : rows_(rows), r_(r), checked_(checked),
        scratch_(static_cast<std::size_t>(std::max(r, 1)) * rows.words, 0) {}

  std::uint64_t run() {
    std::uint64_t total = 0;
    for (int v = 0; v < rows_.n; ++v) add(total, extend(rows_.row(v), static_cast<std::size_t>(v) / 64, r_ - 1, 0));
    return total;
  }

 private:
  void add(std::uint64_t& total, std::uint64_t x) const {
    if (checked_ && (x > kCountLimit || total > kCountLimit - x))
      throw NumericalError("clique count exceeds 2^63 - 1");
    total += x;
  }

  // Cliques of `need` more vertices inside the candidate set `cand`, whose
  // nonzero words start at `from`.
  std::uint64_t extend(const std::uint64_t* cand, std::size_t from, int need, int depth) {
    const std::size_t words = rows_.words;
    if (need == 1) {
      std::uint64_t c = 0;
      for (std::size_t w = from; w < words; ++w) c += static_cast<std::uint64_t>(std::popcount(cand[w]));
      return c;
    }
    std::uint64_t total = 0;
    std::uint64_t* next = scratch_.data() + static_cast<std::size_t>(depth) * words;
    for (std::size_t w = from; w < words; ++w) {
      std::uint64_t word = cand[w];
      while (word) {
        const int u = static_cast<int>(w * 64) + std::countr_zero(word);
        word &= word - 1;
        const std::uint64_t* nu = rows_.row(u);
        const std::size_t start = static_cast<std::size_t>(u) / 64;
        if (need == 2) {
          std::uint64_t c = 0;
          for (std::size_t k = start; k < words; ++k) c += static_cast<std::uint64_t>(std::popcount(cand[k] & nu[k]));
          add(total, c);
          continue;
        }
        int size = 0;
        for (std::size_t k = start; k < words; ++k) {
          next[k] = cand[k] & nu[k];
          size += std::popcount(next[k]);
        }
        if (size >= need - 1) add(total, extend(next, start, need - 1, depth + 1));
      }
    }
    return total;
  }

  const ForwardRows& rows_;
  int r_;
  bool checked_;
  std::vector<std::uint64_t> scratch_;
};

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
    if (out > kCountLimit) throw NumericalError("binomial coefficient exceeds 2^63 - 1");
  }
  return static_cast<std::uint64_t>(out);
}

std::uint64_t count_cliques(const SampledGraph& g, int r) {
  if (r < 2) throw InputError("clique size r must be >= 2");
  if (r > g.n()) return 0;
  if (r == 2) return g.edge_count();
  bool checked = false;
  try {
    binomial(static_cast<std::uint64_t>(g.n()), static_cast<std::uint64_t>(r));
  } catch (const NumericalError&) {
    checked = true;
  }
  const ForwardRows rows = r <= 3 ? orient_by_index(g) : orient_by_degree(g);
  return CliqueCounter(rows, r, checked).run();
}

std::uint64_t count_cliques_reference(const SampledGraph& g, int r) {
  if (g.n() > 20) throw BudgetError("reference clique count limited to n <= 20");
  if (r < 1) throw InputError("clique size must be >= 1");
  std::uint64_t count = 0;
  const std::uint32_t limit = std::uint32_t{1} << g.n();
  for (std::uint32_t subset = 0; subset < limit; ++subset) {
    if (std::popcount(subset) != r) continue;
    bool clique = true;
    for (int u = 0; u < g.n() && clique; ++u) {
      if (!((subset >> u) & 1u)) continue;
      for (int v = u + 1; v < g.n(); ++v)
        if (((subset >> v) & 1u) && !g.has_edge(u, v)) {
          clique = false;
          break;
        }
    }
    if (clique) ++count;
  }
  return count;
}

}  // namespace wclique
