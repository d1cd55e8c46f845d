#include "corpus.hpp"

#include "wclique/clique_count.hpp"
#include "wclique/rng.hpp"
#include "wclique/sampler.hpp"

#include <doctest.h>

using namespace wclique;

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(65536, 4) == 768543969628897280ULL);
  CHECK(binomial(66, 33) == 7219428434016265740ULL);
  CHECK_THROWS_AS(binomial(68, 34), NumericalError);
}

TEST_CASE("small graphs") {
  std::vector<std::pair<int, int>> k5;
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) k5.emplace_back(u, v);
  const SampledGraph g = SampledGraph::from_edges(5, k5);
  CHECK(count_cliques(g, 2) == 10);
  CHECK(count_cliques(g, 3) == 10);
  CHECK(count_cliques(g, 4) == 5);
  CHECK(count_cliques(g, 5) == 1);
  CHECK(count_cliques(g, 6) == 0);
  CHECK_THROWS_AS(count_cliques(g, 1), InputError);
  const SampledGraph empty = SampledGraph::from_edges(0, std::vector<std::pair<int, int>>{});
  CHECK(count_cliques(empty, 3) == 0);
}

TEST_CASE("bitset recursion equals brute force") {
  const auto corpus = wclique::testing::random_corpus();
  for (int k = 0; k < 1000; ++k) {
    RngStream s = split_stream(21, static_cast<std::uint64_t>(k));
    const int n = 1 + k % 20;
    const SampledGraph g = sample_graph(corpus[static_cast<std::size_t>(k) % corpus.size()], n, s);
    for (int r = 2; r <= 5; ++r) REQUIRE(count_cliques(g, r) == count_cliques_reference(g, r));
  }
  RngStream s = split_stream(22, 0);
  CHECK_THROWS_AS(count_cliques_reference(sample_graph(corpus[0], 21, s), 3), BudgetError);
}

TEST_CASE("complete graphs across word boundaries") {
  for (int n : {63, 64, 65, 129}) {
    RngStream s = split_stream(23, static_cast<std::uint64_t>(n));
    const SampledGraph g = sample_graph(StepGraphon::constant(1.0), n, s);
    for (int r = 2; r <= 5; ++r) CHECK(count_cliques(g, r) == binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r)));
  }
}

TEST_CASE("one added edge changes the count by the common-neighbour cliques") {
  RngStream s = split_stream(24, 0);
  const SampledGraph g = sample_graph(StepGraphon::constant(0.5), 90, s);
  int u = 0, v = 1;
  while (g.has_edge(u, v)) ++v;
  const SampledGraph h = g.with_edge(u, v);
  std::vector<std::pair<int, int>> sub;
  std::vector<int> common;
  for (int x = 0; x < 90; ++x)
    if (g.has_edge(u, x) && g.has_edge(v, x)) common.push_back(x);
  for (std::size_t i = 0; i < common.size(); ++i)
    for (std::size_t j = i + 1; j < common.size(); ++j)
      if (g.has_edge(common[i], common[j])) sub.emplace_back(static_cast<int>(i), static_cast<int>(j));
  const SampledGraph link = SampledGraph::from_edges(static_cast<int>(common.size()), sub);
  CHECK(count_cliques(h, 3) - count_cliques(g, 3) == common.size());
  CHECK(count_cliques(h, 4) - count_cliques(g, 4) == link.edge_count());
  CHECK(count_cliques(h, 5) - count_cliques(g, 5) == count_cliques(link, 3));
}
