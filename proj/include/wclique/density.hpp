#pragma once

// Homomorphism and conditional densities of small multigraphs in step
// graphons, plus the per-block quantities derived from them.

#include "wclique/graphon.hpp"
#include "wclique/multigraph.hpp"
#include "wclique/types.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wclique {

/// Largest pattern (in vertices) the density engine accepts. Longer loose
/// cycles go through the transfer-matrix identity instead.
inline constexpr int kMaxPatternVertices = 12;

namespace detail {

inline constexpr std::size_t kMaxFactorEntries = std::size_t{1} << 26;

template <typename Scalar>
struct Factor {
  std::vector<int> scope;  // sorted vertex ids
  std::vector<Scalar> table;  // index = sum_k block(scope[k]) * B^k
};

template <typename Scalar>
Scalar int_power(Scalar base, int exponent) {
  Scalar out = 1;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

// Sums prod_{edges} W^mult * prod_{free v} mu over all block assignments of
// the free vertices, with pinned[v] >= 0 fixing vertex v to that block.
// Free vertices are summed out one at a time (greedy min-degree order), so
// the cost is B^(width+1) per step rather than B^(free vertices).
template <typename Scalar>
Scalar contract(const LabeledMultigraph& h, const StepGraphonT<Scalar>& w, const std::vector<int>& pinned) {
  const int n = h.n_vertices();
  if (n > kMaxPatternVertices)
    throw BudgetError("pattern has " + std::to_string(n) + " vertices; the density engine accepts at most " +
                      std::to_string(kMaxPatternVertices));
  const auto blocks = static_cast<std::size_t>(w.blocks());
  const auto& values = w.values();

  Scalar constant = 1;
  std::vector<Factor<Scalar>> factors;
  for (const auto& e : h.edges()) {
    const int pu = pinned[static_cast<std::size_t>(e.u)];
    const int pv = pinned[static_cast<std::size_t>(e.v)];
    if (pu >= 0 && pv >= 0) {
      constant *= int_power<Scalar>(values(pu, pv), e.multiplicity);
    } else if (pu >= 0 || pv >= 0) {
      const int fixed = pu >= 0 ? pu : pv;
      Factor<Scalar> f{{pu >= 0 ? e.v : e.u}, std::vector<Scalar>(blocks)};
      for (std::size_t b = 0; b < blocks; ++b)
        f.table[b] = int_power<Scalar>(values(fixed, static_cast<Eigen::Index>(b)), e.multiplicity);
      factors.push_back(std::move(f));
    } else {
      Factor<Scalar> f{{e.u, e.v}, std::vector<Scalar>(blocks * blocks)};
      for (std::size_t a = 0; a < blocks; ++a)
        for (std::size_t b = 0; b < blocks; ++b)
          f.table[a + blocks * b] =
              int_power<Scalar>(values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)), e.multiplicity);
      factors.push_back(std::move(f));
    }
  }
  if (constant == Scalar(0)) return Scalar(0);

  std::vector<int> free;
  for (int v = 0; v < n; ++v)
    if (pinned[static_cast<std::size_t>(v)] < 0) free.push_back(v);

  const auto touches = [](const Factor<Scalar>& f, int v) {
    return std::binary_search(f.scope.begin(), f.scope.end(), v);
  };

  while (!free.empty()) {
    // Pick the free vertex whose elimination creates the smallest factor.
    std::size_t best = 0;
    std::size_t best_width = SIZE_MAX;
    for (std::size_t k = 0; k < free.size(); ++k) {
      std::vector<int> scope;
      for (const auto& f : factors)
        if (touches(f, free[k])) scope.insert(scope.end(), f.scope.begin(), f.scope.end());
      std::sort(scope.begin(), scope.end());
      scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
      if (scope.size() < best_width) {
        best_width = scope.size();
        best = k;
      }
    }
    const int v = free[best];
    free.erase(free.begin() + static_cast<std::ptrdiff_t>(best));

    std::vector<Factor<Scalar>> involved;
    std::vector<Factor<Scalar>> rest;
    for (auto& f : factors) (touches(f, v) ? involved : rest).push_back(std::move(f));

    std::vector<int> scope;
    for (const auto& f : involved)
      for (int u : f.scope)
        if (u != v) scope.push_back(u);
    std::sort(scope.begin(), scope.end());
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());

    std::size_t entries = 1;
    for (std::size_t k = 0; k < scope.size(); ++k) {
      entries *= blocks;
      if (entries > kMaxFactorEntries) throw BudgetError("intermediate density table too large");
    }

    // For each involved factor: stride of every scope variable and of v.
    std::vector<std::vector<std::size_t>> strides(involved.size(), std::vector<std::size_t>(scope.size(), 0));
    std::vector<std::size_t> v_stride(involved.size(), 0);
    for (std::size_t fi = 0; fi < involved.size(); ++fi) {
      std::size_t stride = 1;
      for (int u : involved[fi].scope) {
        if (u == v) {
          v_stride[fi] = stride;
        } else {
          const auto pos = std::lower_bound(scope.begin(), scope.end(), u) - scope.begin();
          strides[fi][static_cast<std::size_t>(pos)] = stride;
        }
        stride *= blocks;
      }
    }

    Factor<Scalar> out{scope, std::vector<Scalar>(entries)};
    std::vector<std::size_t> assign(scope.size(), 0);
    std::vector<std::size_t> base(involved.size(), 0);
    for (std::size_t idx = 0; idx < entries; ++idx) {
      Scalar sum = 0;
      for (std::size_t b = 0; b < blocks; ++b) {
        Scalar term = w.mu(static_cast<Eigen::Index>(b));
        for (std::size_t fi = 0; fi < involved.size() && term != Scalar(0); ++fi)
          term *= involved[fi].table[base[fi] + b * v_stride[fi]];
        sum += term;
      }
      out.table[idx] = sum;
      // Odometer increment over the new scope, keeping factor offsets in step.
      for (std::size_t k = 0; k < assign.size(); ++k) {
        for (std::size_t fi = 0; fi < involved.size(); ++fi) base[fi] += strides[fi][k];
        if (++assign[k] < blocks) break;
        for (std::size_t fi = 0; fi < involved.size(); ++fi) base[fi] -= strides[fi][k] * blocks;
        assign[k] = 0;
      }
    }
    rest.push_back(std::move(out));
    factors = std::move(rest);
  }

  Scalar result = constant;
  for (const auto& f : factors) result *= f.table.front();
  return result;
}

}  // namespace detail

/// t(H, W): expected product of W over the edges of H (with multiplicity)
/// at independent block-distributed types.
template <typename Scalar>
Scalar hom_density(const LabeledMultigraph& h, const StepGraphonT<Scalar>& w) {
  if (!h.marked().empty()) throw InputError("hom_density takes an unmarked pattern; use conditional_density");
  return detail::contract(h, w, std::vector<int>(static_cast<std::size_t>(h.n_vertices()), -1));
}

/// t_x(H, W) with the marked vertices of H pinned to `blocks` (same order as
/// h.marked()). Block-constant, so a block index stands in for a type x.
template <typename Scalar>
Scalar conditional_density(const LabeledMultigraph& h, const StepGraphonT<Scalar>& w, std::span<const int> blocks) {
  if (h.marked().empty()) throw InputError("conditional_density needs at least one marked vertex");
  if (blocks.size() != h.marked().size()) throw InputError("one block index per marked vertex required");
  std::vector<int> pinned(static_cast<std::size_t>(h.n_vertices()), -1);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k] < 0 || blocks[k] >= w.blocks()) throw InputError("block index out of range");
    pinned[static_cast<std::size_t>(h.marked()[k])] = blocks[k];
  }
  return detail::contract(h, w, pinned);
}

template <typename Scalar>
BlockVector<Scalar> degree_function(const StepGraphonT<Scalar>& w) {
  return w.values() * w.mu();
}

/// Entry i = t_x(K_r•, W) for x in block i.
template <typename Scalar>
BlockVector<Scalar> clique_profile(const StepGraphonT<Scalar>& w, int r) {
  if (r < 2) throw InputError("clique size r must be >= 2");
  LabeledMultigraph k = complete_graph(r);
  k.set_marked({0});
  BlockVector<Scalar> out(w.blocks());
  for (int i = 0; i < w.blocks(); ++i) {
    const int block[] = {i};
    out(i) = conditional_density(k, w, std::span<const int>(block));
  }
  return out;
}

/// Absolute spread (max - min) of the clique profile is at most tol.
template <typename Scalar>
bool is_kr_regular(const StepGraphonT<Scalar>& w, int r, double tol = 1e-10) {
  const BlockVector<Scalar> profile = clique_profile(w, r);
  return static_cast<double>(profile.maxCoeff() - profile.minCoeff()) <= tol;
}

/// V_W(r)(x, y) = t_{x,y}(K_r••, W) on the same partition; V_W(2) = W.
template <typename Scalar>
StepGraphonT<Scalar> build_vwr(const StepGraphonT<Scalar>& w, int r) {
  if (r < 2) throw InputError("clique size r must be >= 2");
  if (r == 2) return w;
  LabeledMultigraph k = complete_graph(r);
  k.set_marked({0, 1});
  const Eigen::Index blocks = w.blocks();
  MatrixX<Scalar> v(blocks, blocks);
  for (int i = 0; i < blocks; ++i) {
    for (int j = i; j < blocks; ++j) {
      const int pair[] = {i, j};
      v(i, j) = v(j, i) = conditional_density(k, w, std::span<const int>(pair));
    }
  }
  return StepGraphonT<Scalar>::derived(w.mu(), std::move(v));
}

}  // namespace wclique
