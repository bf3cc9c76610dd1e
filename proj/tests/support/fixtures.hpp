#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "chipfire/chipfire.hpp"

namespace chipfire {

inline void PrintTo(const Divisor& d, std::ostream* os) { *os << format_tuple(d); }

}  // namespace chipfire

namespace chipfire::testing {

/// Three vertices with weights 0, 3, 1; three v1-v2 edges and one v2-v3 edge.
inline WeightedMultigraph heavy_middle() {
  return WeightedMultigraph::from_indices({0, 3, 1}, {{0, 1}, {0, 1}, {0, 1}, {1, 2}});
}

/// Triangle, bridge, double edge (one side looped), bridge, weighted leaf.
inline WeightedMultigraph chain_fixture() {
  return WeightedMultigraph::from_indices({0, 0, 0, 1, 0, 1},
                                          {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {3, 4}, {4, 5}, {4, 4}});
}

/// Central triangle with three bridged pendants; bridge tree is a 3-star.
inline WeightedMultigraph star_fixture() {
  return WeightedMultigraph::from_indices({0, 0, 0, 1, 0, 0, 2},
                                          {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 4}, {4, 5}, {4, 5}, {2, 6}});
}

inline WeightedMultigraph cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return WeightedMultigraph::from_indices(std::vector<std::int64_t>(n, 0), edges);
}

inline WeightedMultigraph path(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return WeightedMultigraph::from_indices(std::vector<std::int64_t>(n, 0), edges);
}

struct GraphShape {
  std::size_t max_vertices = 6;
  std::size_t max_edges = 10;
  std::int64_t max_weight = 2;
  double loop_probability = 0.1;
};

/// Random spanning tree plus extra edges (some loops), random weights.
template <class Rng>
WeightedMultigraph random_graph(Rng& rng, const GraphShape& shape) {
  std::uniform_int_distribution<std::size_t> n_dist(1, shape.max_vertices);
  const std::size_t n = n_dist(rng);
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.push_back({std::uniform_int_distribution<std::size_t>(0, v - 1)(rng), v});
  std::size_t target = std::uniform_int_distribution<std::size_t>(edges.size(), std::max(edges.size(), shape.max_edges))(rng);
  if (n == 1 && shape.loop_probability <= 0) target = 0;
  std::bernoulli_distribution loop(shape.loop_probability);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  while (edges.size() < target) {
    const std::size_t a = pick(rng);
    if (loop(rng)) {
      edges.push_back({a, a});
      continue;
    }
    if (n == 1) continue;
    std::size_t b = pick(rng);
    while (b == a) b = pick(rng);
    edges.push_back({a, b});
  }
  std::vector<std::int64_t> weights(n);
  std::uniform_int_distribution<std::int64_t> w(0, shape.max_weight);
  for (auto& x : weights) x = w(rng);
  return WeightedMultigraph::from_indices(weights, edges);
}

template <class Rng>
Divisor random_divisor(Rng& rng, std::size_t n, Chips lo, Chips hi) {
  std::uniform_int_distribution<Chips> dist(lo, hi);
  Divisor d(n);
  for (std::size_t v = 0; v < n; ++v) d[v] = dist(rng);
  return d;
}

template <class Rng>
VertexSet random_subset(Rng& rng, std::size_t n) {
  std::bernoulli_distribution coin(0.5);
  VertexSet z(n);
  for (std::size_t v = 0; v < n; ++v)
    if (coin(rng)) z.insert(v);
  return z;
}

/// d plus a random combination of principal divisors.
template <class Rng>
Divisor random_shift(Rng& rng, const WeightedMultigraph& g, Divisor d, int terms, int max_multiple = 2) {
  std::uniform_int_distribution<int> mult(-max_multiple, max_multiple);
  for (int i = 0; i < terms; ++i) d += static_cast<Chips>(mult(rng)) * t_set(g, random_subset(rng, g.num_vertices()));
  return d;
}

inline std::string describe(const Divisor& d) { return format_tuple(d); }

}  // namespace chipfire::testing
