#include "wclique/sampler.hpp"

#include "wclique/types.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <string>

namespace wclique {

SampledGraph::SampledGraph(int n, std::vector<std::uint64_t> bits, std::vector<int> types)
    : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64), bits_(std::move(bits)), types_(std::move(types)) {
  if (bits_.size() != static_cast<std::size_t>(n) * words_) throw InputError("adjacency size mismatch");
  if (types_.size() != static_cast<std::size_t>(n)) throw InputError("one type per vertex required");
}

SampledGraph SampledGraph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  if (n < 0) throw InputError("negative vertex count");
  const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  std::vector<std::uint64_t> bits(static_cast<std::size_t>(n) * words, 0);
  for (auto [u, v] : edges) {
    if (u == v || u < 0 || v < 0 || u >= n || v >= n) throw InputError("invalid edge");
    bits[static_cast<std::size_t>(u) * words + static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
    bits[static_cast<std::size_t>(v) * words + static_cast<std::size_t>(u) / 64] |= std::uint64_t{1} << (u % 64);
  }
  return SampledGraph(n, std::move(bits), std::vector<int>(static_cast<std::size_t>(n), 0));
}

int SampledGraph::degree(int v) const {
  int d = 0;
  for (std::uint64_t word : row(v)) d += std::popcount(word);
  return d;
}

std::uint64_t SampledGraph::edge_count() const {
  std::uint64_t total = 0;
  for (std::uint64_t word : bits_) total += static_cast<std::uint64_t>(std::popcount(word));
  return total / 2;
}

SampledGraph SampledGraph::with_edge(int u, int v) const {
  if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) throw InputError("invalid edge");
  SampledGraph g = *this;
  g.bits_[static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
  g.bits_[static_cast<std::size_t>(v) * words_ + static_cast<std::size_t>(u) / 64] |= std::uint64_t{1} << (u % 64);
  return g;
}

std::vector<std::pair<int, int>> SampledGraph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u) {
    const auto r = row(u);
    for (std::size_t w = static_cast<std::size_t>(u) / 64; w < words_; ++w) {
      std::uint64_t word = r[w];
      while (word) {
        const int v = static_cast<int>(w * 64) + std::countr_zero(word);
        word &= word - 1;
        if (v > u) out.emplace_back(u, v);
      }
    }
  }
  return out;
}

void write_edge_list(const SampledGraph& g, std::ostream& out) {
  for (auto [u, v] : g.edge_list()) out << u << ' ' << v << '\n';
}

namespace {

// Bit (r, c) of a 64x64 block is bit c of a[r]; swaps it with (c, r).
void transpose64(std::uint64_t* a) {
  std::uint64_t m = 0x00000000ffffffffULL;
  for (int j = 32; j != 0; j >>= 1, m ^= m << j) {
    for (int k = 0; k < 64; k = ((k | j) + 1) & ~j) {
      const std::uint64_t t = ((a[k] >> j) ^ a[k | j]) & m;
      a[k | j] ^= t;
      a[k] ^= t << j;
    }
  }
}

enum class PairClass { Never, Always, Sliced, Sparse };

struct PairRule {
  PairClass kind = PairClass::Never;
  std::uint64_t fixed_point = 0;  // p * 2^64 for Sliced
  int slice_bits = 0;
  bool complement = false;  // Sparse: skip over non-edges instead of edges
  double log_keep = 0.0;    // log(1 - q) for Sparse, q = min(p, 1 - p)
};

// Sliced pairs compare 64 uniform bit-streams against the binary expansion of
// p at once, most significant digit first: a lane is decided (edge iff its
// stream falls below p) at its first digit that differs from p, so a word
// costs about log2(64) + 2 random words. Rare events (q < 1/16) use
// geometric skipping along the block's vertex list instead.
PairRule make_rule(double p) {
  PairRule rule;
  if (p <= 0.0) return rule;
  if (p >= 1.0) {
    rule.kind = PairClass::Always;
    return rule;
  }
  const double q = std::min(p, 1.0 - p);
  if (q >= 1.0 / 16.0) {
    rule.kind = PairClass::Sliced;
    rule.fixed_point = static_cast<std::uint64_t>(std::ldexp(p, 64));
    rule.slice_bits = 64 - std::countr_zero(rule.fixed_point);
    return rule;
  }
  rule.kind = PairClass::Sparse;
  rule.complement = p > 0.5;
  rule.log_keep = std::log1p(-q);
  return rule;
}

}  // namespace

SampledGraph sample_graph(const StepGraphon& w, int n, RngStream& stream, int max_vertices) {
  if (n < 1) throw InputError("sample size n must be >= 1");
  if (n > max_vertices)
    throw InputError("n = " + std::to_string(n) + " exceeds the vertex cap " + std::to_string(max_vertices));
  const int blocks = static_cast<int>(w.blocks());
  const auto nn = static_cast<std::size_t>(n);
  const std::size_t words = (nn + 63) / 64;

  // Step 1: types.
  std::vector<double> cumulative(static_cast<std::size_t>(blocks));
  double acc = 0.0;
  for (int b = 0; b < blocks; ++b) cumulative[static_cast<std::size_t>(b)] = acc += w.mu(b);
  std::vector<int> types(nn, 0);
  if (blocks > 1) {
    for (auto& t : types) {
      const double u = stream.uniform() * acc;
      int b = 0;
      while (b + 1 < blocks && u >= cumulative[static_cast<std::size_t>(b)]) ++b;
      t = b;
    }
  }

  std::vector<std::vector<std::uint64_t>> masks(static_cast<std::size_t>(blocks), std::vector<std::uint64_t>(words, 0));
  std::vector<std::vector<int>> members(static_cast<std::size_t>(blocks));
  for (int v = 0; v < n; ++v) {
    const auto b = static_cast<std::size_t>(types[static_cast<std::size_t>(v)]);
    masks[b][static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
    members[b].push_back(v);
  }
  std::vector<PairRule> rules(static_cast<std::size_t>(blocks * blocks));
  for (int a = 0; a < blocks; ++a)
    for (int b = 0; b < blocks; ++b) rules[static_cast<std::size_t>(a * blocks + b)] = make_rule(w.value(a, b));

  // Step 2: strict upper triangle, row by row.
  std::vector<std::uint64_t> upper(nn * words, 0);
  std::vector<std::uint64_t> open_bits(static_cast<std::size_t>(blocks));
  for (int i = 0; i + 1 < n; ++i) {
    const int a = types[static_cast<std::size_t>(i)];
    std::uint64_t* row = upper.data() + static_cast<std::size_t>(i) * words;
    const std::size_t first_word = static_cast<std::size_t>(i + 1) / 64;
    const std::uint64_t first_mask = ~std::uint64_t{0} << ((i + 1) % 64);
    const auto above = [&](std::size_t wd) { return wd == first_word ? first_mask : ~std::uint64_t{0}; };

    int slice_bits = 0;
    for (int b = 0; b < blocks; ++b) {
      const PairRule& rule = rules[static_cast<std::size_t>(a * blocks + b)];
      const auto& mask = masks[static_cast<std::size_t>(b)];
      if (rule.kind == PairClass::Always || (rule.kind == PairClass::Sparse && rule.complement)) {
        for (std::size_t wd = first_word; wd < words; ++wd) row[wd] |= mask[wd] & above(wd);
      }
      if (rule.kind == PairClass::Sliced) slice_bits = std::max(slice_bits, rule.slice_bits);
      if (rule.kind == PairClass::Sparse) {
        const auto& list = members[static_cast<std::size_t>(b)];
        auto pos = static_cast<std::ptrdiff_t>(std::upper_bound(list.begin(), list.end(), i) - list.begin()) - 1;
        const auto size = static_cast<std::ptrdiff_t>(list.size());
        while (true) {
          const double gap = std::floor(std::log(stream.uniform_open0()) / rule.log_keep);
          if (gap >= static_cast<double>(size - pos)) break;
          pos += static_cast<std::ptrdiff_t>(gap) + 1;
          if (pos >= size) break;
          const int j = list[static_cast<std::size_t>(pos)];
          row[static_cast<std::size_t>(j) / 64] ^= std::uint64_t{1} << (j % 64);
        }
      }
    }
    if (slice_bits > 0) {
      for (std::size_t wd = first_word; wd < words; ++wd) {
        std::uint64_t pending = 0;
        for (int b = 0; b < blocks; ++b) {
          auto& x = open_bits[static_cast<std::size_t>(b)];
          x = rules[static_cast<std::size_t>(a * blocks + b)].kind == PairClass::Sliced
                  ? masks[static_cast<std::size_t>(b)][wd] & above(wd)
                  : 0;
          pending |= x;
        }
        std::uint64_t hits = 0;
        for (int k = 1; k <= slice_bits && pending; ++k) {
          const std::uint64_t u = stream();
          pending = 0;
          for (int b = 0; b < blocks; ++b) {
            auto& x = open_bits[static_cast<std::size_t>(b)];
            if (!x) continue;
            if ((rules[static_cast<std::size_t>(a * blocks + b)].fixed_point >> (64 - k)) & 1u) {
              hits |= x & ~u;
              x &= u;
            } else {
              x &= ~u;
            }
            pending |= x;
          }
        }
        row[wd] |= hits;
      }
    }
  }

  // Symmetrize: adjacency = upper | transpose(upper), one 64x64 tile at a time.
  std::vector<std::uint64_t> bits = upper;
  std::uint64_t tile[64];
  for (std::size_t bi = 0; bi < words; ++bi) {
    for (std::size_t bj = bi; bj < words; ++bj) {
      for (std::size_t r = 0; r < 64; ++r) {
        const std::size_t v = bi * 64 + r;
        tile[r] = v < nn ? upper[v * words + bj] : 0;
      }
      transpose64(tile);
      for (std::size_t c = 0; c < 64; ++c) {
        const std::size_t v = bj * 64 + c;
        if (v < nn) bits[v * words + bi] |= tile[c];
      }
    }
  }
  return SampledGraph(n, std::move(bits), std::move(types));
}

}  // namespace wclique
