#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "chipfire/detail/checked.hpp"
#include "chipfire/divisor.hpp"
#include "chipfire/divisors.hpp"
#include "chipfire/errors.hpp"
#include "chipfire/graph.hpp"

namespace chipfire {

/// Outcome of burning from a seed set.
struct DharResult {
  VertexSet fixed_set;           // last set of the chain
  VertexSet dhar_set;            // complement of fixed_set
  std::vector<VertexSet> chain;  // seed = chain.front() strictly increasing to fixed_set
};

/// Grows the seed by adding, each round, every outside vertex v with
/// v.V_i > d(v), until nothing is added.
inline DharResult dhar(const WeightedMultigraph& g, const Divisor& d, const VertexSet& seed) {
  g.require_divisor(d);
  g.require_set(seed);
  if (seed.empty()) throw DomainError("dhar: seed set is empty");
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (!seed.contains(v) && d[v] < 0)
      throw DomainError("dhar: divisor is negative at '" + g.name(v) + "' outside the seed");

  DharResult r;
  r.chain.push_back(seed);
  VertexSet current = seed;
  for (;;) {
    std::vector<std::size_t> added;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      if (!current.contains(v) && edges_into(g, v, current) > d[v]) added.push_back(v);
    if (added.empty()) break;
    for (std::size_t v : added) current.insert(v);
    r.chain.push_back(current);
  }
  r.fixed_set = current;
  r.dhar_set = current.complement();
  return r;
}

/// Effective off V and every nonempty A outside V has a vertex with
/// d(v) < v.A^c; checked by burning from V.
inline bool is_reduced(const WeightedMultigraph& g, const Divisor& d, const VertexSet& v_set) {
  g.require_divisor(d);
  g.require_set(v_set);
  if (v_set.empty()) throw DomainError("is_reduced: vertex set is empty");
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (!v_set.contains(v) && d[v] < 0) return false;
  return dhar(g, d, v_set).dhar_set.empty();
}

inline bool is_reduced(const WeightedMultigraph& g, const Divisor& d, std::size_t u) {
  g.require_vertex(u);
  return is_reduced(g, d, VertexSet(g.num_vertices(), {u}));
}

namespace detail {

// Bound on burn-and-fire rounds; hitting it means a bug, not a large input.
inline constexpr std::uint64_t kReductionRoundCeiling = 50'000'000;

/// Breadth-first order starting from the seed vertices (seed first, in position order).
inline std::vector<std::size_t> bfs_order(const WeightedMultigraph& g, const VertexSet& seed) {
  std::vector<std::size_t> order;
  std::vector<bool> seen(g.num_vertices(), false);
  std::deque<std::size_t> queue;
  for (std::size_t v : seed.members()) {
    seen[v] = true;
    order.push_back(v);
    queue.push_back(v);
  }
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : g.neighbors(v))
      if (!seen[w]) {
        seen[w] = true;
        order.push_back(w);
        queue.push_back(w);
      }
  }
  return order;
}

/// Moves debt off the non-seed vertices by firing growing BFS prefixes.
inline void clear_debt_outside(const WeightedMultigraph& g, Divisor& d, const VertexSet& seed) {
  bool in_debt = false;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) in_debt = in_debt || (d[v] < 0 && !seed.contains(v));
  if (!in_debt) return;
  const std::vector<std::size_t> order = bfs_order(g, seed);
  const std::size_t seed_size = seed.count();
  for (std::size_t i = order.size(); i-- > seed_size;) {
    const std::size_t v = order[i];
    if (d[v] >= 0) continue;
    const VertexSet prefix(g.num_vertices(), std::vector<std::size_t>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(i)));
    const std::int64_t inflow = edges_into(g, v, prefix);  // >= 1: v was discovered from the prefix
    const std::int64_t times = (-d[v] + inflow - 1) / inflow;
    d += times * t_set(g, prefix);
  }
}

}  // namespace detail

namespace detail {

/// Burnt set of Dhar's iteration from `seed`, grown vertex by vertex with
/// running counts of edges into the burnt set. Same fixed point as dhar().
inline std::vector<char> burn(const WeightedMultigraph& g, const Divisor& d, const VertexSet& seed) {
  const std::size_t n = g.num_vertices();
  std::vector<char> burnt(n, 0);
  std::vector<std::int64_t> heat(n, 0);
  std::vector<std::size_t> stack;
  for (std::size_t v : seed.members()) {
    burnt[v] = 1;
    stack.push_back(v);
  }
  while (!stack.empty()) {
    const std::size_t b = stack.back();
    stack.pop_back();
    for (std::size_t w : g.neighbors(b)) {
      if (burnt[w]) continue;
      heat[w] += g.multiplicity(b, w);
      if (heat[w] > d[w]) {
        burnt[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return burnt;
}

}  // namespace detail

/// A divisor equivalent to d that is V-reduced.
///
/// Debt outside V is cleared by firing BFS prefixes from V, then the unburnt
/// set is fired toward V until burning from V reaches every vertex. Each round
/// fires the unburnt set W as many times as every w in W can afford.
inline Divisor reduce_to_set(const WeightedMultigraph& g, Divisor d, const VertexSet& v_set) {
  g.require_divisor(d);
  g.require_set(v_set);
  if (v_set.empty()) throw DomainError("reduce_to_set: vertex set is empty");
  if (v_set.full()) return d;

  detail::clear_debt_outside(g, d, v_set);
  const std::size_t n = g.num_vertices();
  std::vector<std::int64_t> outflow(n);
  for (std::uint64_t round = 0;; ++round) {
    if (round >= detail::kReductionRoundCeiling) throw std::logic_error("reduce_to_set: round ceiling reached");
    const std::vector<char> burnt = detail::burn(g, d, v_set);
    std::int64_t times = -1;
    for (std::size_t w = 0; w < n; ++w) {
      if (burnt[w]) continue;
      outflow[w] = 0;
      for (std::size_t x : g.neighbors(w))
        if (burnt[x]) outflow[w] += g.multiplicity(w, x);
      if (outflow[w] == 0) continue;
      const std::int64_t afford = d[w] / outflow[w];
      times = times < 0 ? afford : std::min(times, afford);
    }
    if (times < 0) return d;  // everything burnt
    // Stability of the unburnt set guarantees every outflow vertex affords one firing.
    times = std::max<std::int64_t>(times, 1);
    for (std::size_t w = 0; w < n; ++w) {
      if (burnt[w] || outflow[w] == 0) continue;
      d[w] = detail::checked_sub(d[w], detail::checked_mul(times, outflow[w]));
      for (std::size_t x : g.neighbors(w))
        if (burnt[x]) d[x] = detail::checked_add(d[x], detail::checked_mul(times, g.multiplicity(w, x)));
    }
  }
}

/// The unique u-reduced divisor equivalent to d.
inline Divisor reduce_to(const WeightedMultigraph& g, const Divisor& d, std::size_t u) {
  g.require_vertex(u);
  return reduce_to_set(g, d, VertexSet(g.num_vertices(), {u}));
}

/// Per-run record of the effectivization loop.
struct EffectivizeTrace {
  std::uint64_t iterations = 0;
  std::vector<Chips> deficits;  // total negative mass before each iteration
};

/// An effective divisor equivalent to d, or nullopt when the class has none.
///
/// Repeats: V := negative support, burn from V, subtract t of the burnt set
/// (i.e. fire the Dhar set into it). The class is tested for effectivity first
/// through its reduced form at the first vertex.
inline std::optional<Divisor> effectivize(const WeightedMultigraph& g, Divisor d, EffectivizeTrace* trace = nullptr) {
  g.require_divisor(d);
  if (d.degree() < 0) return std::nullopt;
  const std::size_t u = g.first_vertex();
  if (reduce_to(g, d, u)[u] < 0) return std::nullopt;

  for (std::uint64_t round = 0; !d.is_effective(); ++round) {
    if (round >= detail::kReductionRoundCeiling) throw std::logic_error("effectivize: round ceiling reached");
    VertexSet negative(g.num_vertices());
    Chips deficit = 0;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      if (d[v] < 0) {
        negative.insert(v);
        deficit -= d[v];
      }
    if (trace) {
      ++trace->iterations;
      trace->deficits.push_back(deficit);
    }
    const DharResult burn = dhar(g, d, negative);
    if (burn.dhar_set.empty()) throw std::logic_error("effectivize: empty Dhar set on an effective class");
    d -= t_set(g, burn.fixed_set);
  }
  return d;
}

}  // namespace chipfire
