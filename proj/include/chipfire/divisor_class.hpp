#pragma once

#include <cstddef>
#include <vector>

#include "chipfire/detail/parallel.hpp"
#include "chipfire/divisor.hpp"
#include "chipfire/divisors.hpp"
#include "chipfire/errors.hpp"
#include "chipfire/graph.hpp"
#include "chipfire/options.hpp"
#include "chipfire/reduce.hpp"

namespace chipfire {

/// A linear equivalence class, held as its reduced form at a base vertex.
struct DivisorClass {
  std::size_t base_vertex = 0;
  Divisor canonical;

  Chips degree() const { return canonical.degree(); }
  bool is_effective() const { return canonical[base_vertex] >= 0; }

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

inline DivisorClass class_of(const WeightedMultigraph& g, const Divisor& d, std::size_t u) {
  return {u, reduce_to(g, d, u)};
}

inline DivisorClass class_of(const WeightedMultigraph& g, const Divisor& d) { return class_of(g, d, g.first_vertex()); }

/// d1 ~ d2: equal degree and d1 - d2 reduces to zero at the first vertex.
inline bool equivalent(const WeightedMultigraph& g, const Divisor& d1, const Divisor& d2) {
  g.require_divisor(d1);
  g.require_divisor(d2);
  if (d1.degree() != d2.degree()) return false;
  return reduce_to(g, d1 - d2, g.first_vertex()).is_zero();
}

/// Every effective divisor in the class, ascending lexicographic, no duplicates.
inline std::vector<Divisor> effective_representatives(const WeightedMultigraph& g, const DivisorClass& c,
                                                      const Options& options = {}) {
  g.require_divisor(c.canonical);
  const Chips degree = c.degree();
  if (degree < 0 || !c.is_effective()) return {};
  const std::uint64_t count = detail::count_effective(g.num_vertices(), degree);
  if (count > options.budget) throw BudgetExceeded("effective_representatives", count, options.budget);
  return detail::ordered_filter(
      [&](const auto& sink) { detail::for_each_effective(g.num_vertices(), degree, sink); },
      [&](const Divisor& candidate) { return reduce_to(g, candidate, c.base_vertex) == c.canonical; },
      options.threads, false);
}

}  // namespace chipfire
