#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chipfire/detail/checked.hpp"
#include "chipfire/divisor.hpp"
#include "chipfire/errors.hpp"

namespace chipfire {

/// Unordered edge between vertex positions; u == v is a loop.
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;

  bool is_loop() const noexcept { return u == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Connected, vertex-weighted multigraph. Parallel edges and loops allowed.
///
/// Vertices are addressed by position (declaration order). Names are opaque
/// strings; their lexicographic order is the tie-break order used wherever a
/// "first vertex" is needed. Immutable after construction.
class WeightedMultigraph {
 public:
  struct VertexSpec {
    std::string name;
    std::int64_t weight = 0;
  };

  WeightedMultigraph(std::vector<VertexSpec> vertices, const std::vector<std::pair<std::string, std::string>>& edges) {
    init_vertices(std::move(vertices));
    std::vector<Edge> resolved;
    resolved.reserve(edges.size());
    for (const auto& [a, b] : edges) resolved.push_back({index_or_throw(a), index_or_throw(b)});
    init_edges(std::move(resolved));
  }

  WeightedMultigraph(std::vector<VertexSpec> vertices, std::vector<Edge> edges) {
    init_vertices(std::move(vertices));
    for (const Edge& e : edges)
      if (e.u >= names_.size() || e.v >= names_.size()) throw GraphError("edge endpoint out of range");
    init_edges(std::move(edges));
  }

  /// Vertices named v1..vn.
  static WeightedMultigraph from_indices(const std::vector<std::int64_t>& weights, std::vector<Edge> edges) {
    std::vector<VertexSpec> specs;
    specs.reserve(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) specs.push_back({"v" + std::to_string(i + 1), weights[i]});
    return WeightedMultigraph(std::move(specs), std::move(edges));
  }

  std::size_t num_vertices() const noexcept { return names_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  const std::string& name(std::size_t v) const { return names_.at(v); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::int64_t weight(std::size_t v) const { return weights_.at(v); }
  const std::vector<std::int64_t>& weights() const noexcept { return weights_; }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const std::string& name) const {
    auto v = find(name);
    if (!v) throw DomainError("unknown vertex '" + name + "'");
    return *v;
  }

  /// Number of edges joining u and v (u != v); loops are reported by loops().
  std::int64_t multiplicity(std::size_t u, std::size_t v) const {
    if (u == v) return 0;
    return adjacency_[u * names_.size() + v];
  }

  std::int64_t loops(std::size_t v) const { return loops_.at(v); }

  /// Distinct neighbours other than v itself, ascending position.
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return neighbors_.at(v); }

  /// Lexicographically smallest vertex name.
  std::size_t first_vertex() const { return lex_order_.front(); }

  /// Positions sorted by name.
  const std::vector<std::size_t>& lex_order() const noexcept { return lex_order_; }

  void require_vertex(std::size_t v) const {
    if (v >= names_.size()) throw DomainError("vertex position " + std::to_string(v) + " out of range");
  }

  void require_divisor(const Divisor& d) const {
    if (d.size() != names_.size())
      throw DomainError("divisor has " + std::to_string(d.size()) + " entries, graph has " +
                        std::to_string(names_.size()) + " vertices");
  }

  void require_set(const VertexSet& s) const {
    if (s.universe() != names_.size()) throw DomainError("vertex set does not match graph");
  }

  friend bool operator==(const WeightedMultigraph& a, const WeightedMultigraph& b) {
    return a.names_ == b.names_ && a.weights_ == b.weights_ && a.adjacency_ == b.adjacency_ && a.loops_ == b.loops_;
  }

 private:
  void init_vertices(std::vector<VertexSpec> vertices) {
    if (vertices.empty()) throw GraphError("no vertices");
    for (auto& spec : vertices) {
      if (spec.name.empty()) throw GraphError("empty vertex name");
      if (spec.weight < 0) throw GraphError("negative weight on vertex '" + spec.name + "'");
      if (!index_.emplace(spec.name, names_.size()).second)
        throw GraphError("duplicate vertex '" + spec.name + "'");
      names_.push_back(std::move(spec.name));
      weights_.push_back(spec.weight);
    }
    lex_order_.resize(names_.size());
    std::iota(lex_order_.begin(), lex_order_.end(), std::size_t{0});
    std::sort(lex_order_.begin(), lex_order_.end(), [&](std::size_t a, std::size_t b) { return names_[a] < names_[b]; });
  }

  std::size_t index_or_throw(const std::string& name) const {
    auto v = find(name);
    if (!v) throw GraphError("edge references undeclared vertex '" + name + "'");
    return *v;
  }

  void init_edges(std::vector<Edge> edges) {
    const std::size_t n = names_.size();
    edges_ = std::move(edges);
    adjacency_.assign(n * n, 0);
    loops_.assign(n, 0);
    neighbors_.assign(n, {});
    for (const Edge& e : edges_) {
      if (e.is_loop()) {
        ++loops_[e.u];
      } else {
        ++adjacency_[e.u * n + e.v];
        ++adjacency_[e.v * n + e.u];
      }
    }
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (adjacency_[u * n + v] > 0) neighbors_[u].push_back(v);

    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t w : neighbors_[u])
        if (!seen[w]) {
          seen[w] = true;
          ++reached;
          stack.push_back(w);
        }
    }
    if (reached != n) throw GraphError("graph is disconnected");
  }

  std::vector<std::string> names_;
  std::vector<std::int64_t> weights_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::size_t> lex_order_;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> adjacency_;
  std::vector<std::int64_t> loops_;
  std::vector<std::vector<std::size_t>> neighbors_;
};

/// |E| - |V| + 1 + sum of weights.
inline std::int64_t genus(const WeightedMultigraph& g) {
  std::int64_t total = static_cast<std::int64_t>(g.num_edges()) - static_cast<std::int64_t>(g.num_vertices()) + 1;
  for (std::int64_t w : g.weights()) total = detail::checked_add(total, w);
  return total;
}

/// Edge endpoints at v; a loop counts twice.
inline std::int64_t valence(const WeightedMultigraph& g, std::size_t v) {
  g.require_vertex(v);
  std::int64_t total = 2 * g.loops(v);
  for (std::size_t w : g.neighbors(v)) total += g.multiplicity(v, w);
  return total;
}

/// Number of edges from v into Z, ignoring loops and any edge with both ends at v.
inline std::int64_t edges_into(const WeightedMultigraph& g, std::size_t v, const VertexSet& z) {
  std::int64_t total = 0;
  for (std::size_t w : g.neighbors(v))
    if (z.contains(w)) total += g.multiplicity(v, w);
  return total;
}

inline Divisor canonical_divisor(const WeightedMultigraph& g) {
  Divisor k(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) k[v] = 2 * g.weight(v) - 2 + valence(g, v);
  return k;
}

struct StabilityReport {
  bool semistable = false;
  bool stable = false;
  // False when genus < 2; both flags are then reported false.
  bool applicable = false;
};

inline StabilityReport stability(const WeightedMultigraph& g) {
  StabilityReport r;
  r.applicable = genus(g) >= 2;
  if (!r.applicable) return r;
  r.semistable = true;
  r.stable = true;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (g.weight(v) != 0) continue;
    const auto val = valence(g, v);
    if (val < 2) r.semistable = false;
    if (val < 3) r.stable = false;
  }
  return r;
}

inline bool is_semistable(const WeightedMultigraph& g) { return stability(g).semistable; }
inline bool is_stable(const WeightedMultigraph& g) { return stability(g).stable; }

/// No weight-0 vertex of valence 1; the condition for uniform divisors to
/// exist. Unlike is_semistable this applies at every genus.
inline bool has_no_weightless_leaves(const WeightedMultigraph& g) {
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (g.weight(v) == 0 && valence(g, v) == 1) return false;
  return true;
}

/// Every weight-0 vertex carries at least one loop.
inline bool weightless_vertices_have_loops(const WeightedMultigraph& g) {
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (g.weight(v) == 0 && g.loops(v) == 0) return false;
  return true;
}

/// Bridge flags indexed like g.edges().
struct EdgeCut {
  std::vector<bool> is_bridge;

  std::vector<std::size_t> bridges() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < is_bridge.size(); ++i)
      if (is_bridge[i]) out.push_back(i);
    return out;
  }
  std::size_t count() const { return bridges().size(); }
};

/// Low-link DFS keyed on edge identity, so parallel edges are never bridges.
inline EdgeCut bridges(const WeightedMultigraph& g) {
  const std::size_t n = g.num_vertices();
  const auto& edges = g.edges();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incident(n);  // (neighbour, edge id)
  for (std::size_t id = 0; id < edges.size(); ++id) {
    if (edges[id].is_loop()) continue;
    incident[edges[id].u].push_back({edges[id].v, id});
    incident[edges[id].v].push_back({edges[id].u, id});
  }

  EdgeCut cut{std::vector<bool>(edges.size(), false)};
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> disc(n, kUnvisited), low(n, 0);
  std::size_t timer = 0;

  struct Frame {
    std::size_t vertex;
    std::size_t parent_edge;
    std::size_t next;
  };
  std::vector<Frame> stack{{0, kUnvisited, 0}};
  disc[0] = low[0] = timer++;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next < incident[f.vertex].size()) {
      auto [w, id] = incident[f.vertex][f.next++];
      if (id == f.parent_edge) continue;
      if (disc[w] == kUnvisited) {
        disc[w] = low[w] = timer++;
        stack.push_back({w, id, 0});
      } else {
        low[f.vertex] = std::min(low[f.vertex], disc[w]);
      }
      continue;
    }
    const Frame done = f;
    stack.pop_back();
    if (!stack.empty()) {
      std::size_t parent = stack.back().vertex;
      low[parent] = std::min(low[parent], low[done.vertex]);
      if (low[done.vertex] > disc[parent]) cut.is_bridge[done.parent_edge] = true;
    }
  }
  return cut;
}

struct BridgeTree {
  WeightedMultigraph tree;
  std::vector<std::size_t> vertex_map;  // g position -> tree position
};

/// Contracts every non-bridge edge. Tree vertices are the 2-edge-connected
/// components, ordered by their smallest member position and named by joining
/// member names with '+'. Weights are zero.
inline BridgeTree contract_non_bridges(const WeightedMultigraph& g) {
  const std::size_t n = g.num_vertices();
  const EdgeCut cut = bridges(g);

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edges()[id];
    if (e.is_loop() || cut.is_bridge[id]) continue;
    std::size_t a = find(e.u), b = find(e.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  std::vector<std::size_t> root_to_tree(n, static_cast<std::size_t>(-1));
  std::vector<std::size_t> vertex_map(n);
  std::vector<WeightedMultigraph::VertexSpec> specs;
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t r = find(v);
    if (root_to_tree[r] == static_cast<std::size_t>(-1)) {
      root_to_tree[r] = specs.size();
      specs.push_back({g.name(v), 0});
    } else {
      specs[root_to_tree[r]].name += "+" + g.name(v);
    }
    vertex_map[v] = root_to_tree[r];
  }

  std::vector<Edge> tree_edges;
  for (std::size_t id : cut.bridges()) tree_edges.push_back({vertex_map[g.edges()[id].u], vertex_map[g.edges()[id].v]});
  return {WeightedMultigraph(std::move(specs), std::move(tree_edges)), std::move(vertex_map)};
}

/// True iff the bridge tree is a path.
inline bool is_chain_of_2ec(const WeightedMultigraph& g) {
  const BridgeTree bt = contract_non_bridges(g);
  for (std::size_t v = 0; v < bt.tree.num_vertices(); ++v)
    if (valence(bt.tree, v) > 2) return false;
  return true;
}

struct BulletModel {
  WeightedMultigraph graph;
  std::vector<std::size_t> embed;  // g position -> graph position
  bool identity = false;           // g was already weightless and loopless
};

/// Weightless, loopless model: each unit of weight at v and each loop at v
/// becomes a new vertex joined to v by two parallel edges. Original vertices
/// keep their names and positions; new vertices follow, named "<v>#w<i>" for
/// weight and "<v>#l<i>" for loops.
inline BulletModel bullet_model(const WeightedMultigraph& g) {
  const std::size_t n = g.num_vertices();
  bool identity = true;
  for (std::size_t v = 0; v < n; ++v)
    if (g.weight(v) != 0 || g.loops(v) != 0) identity = false;

  std::vector<std::size_t> embed(n);
  std::iota(embed.begin(), embed.end(), std::size_t{0});
  if (identity) return {g, std::move(embed), true};

  std::vector<WeightedMultigraph::VertexSpec> specs;
  std::unordered_map<std::string, bool> taken;
  for (std::size_t v = 0; v < n; ++v) {
    specs.push_back({g.name(v), 0});
    taken[g.name(v)] = true;
  }
  auto fresh = [&](std::string base) {
    while (taken.count(base)) base += "'";
    taken[base] = true;
    return base;
  };

  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (!e.is_loop()) edges.push_back(e);
  auto add_satellite = [&](std::size_t v, const std::string& label) {
    const std::size_t s = specs.size();
    specs.push_back({fresh(label), 0});
    edges.push_back({v, s});
    edges.push_back({v, s});
  };
  for (std::size_t v = 0; v < n; ++v) {
    for (std::int64_t i = 1; i <= g.weight(v); ++i) add_satellite(v, g.name(v) + "#w" + std::to_string(i));
    for (std::int64_t i = 1; i <= g.loops(v); ++i) add_satellite(v, g.name(v) + "#l" + std::to_string(i));
  }
  return {WeightedMultigraph(std::move(specs), std::move(edges)), std::move(embed), false};
}

/// Pushes a divisor on g into the bullet model (zero on new vertices).
inline Divisor embed_divisor(const BulletModel& model, const Divisor& d) {
  Divisor out(model.graph.num_vertices());
  for (std::size_t v = 0; v < d.size(); ++v) out[model.embed.at(v)] = d[v];
  return out;
}

}  // namespace chipfire
