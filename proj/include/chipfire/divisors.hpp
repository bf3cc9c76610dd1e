#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "chipfire/detail/checked.hpp"
#include "chipfire/divisor.hpp"
#include "chipfire/errors.hpp"
#include "chipfire/graph.hpp"
#include "chipfire/options.hpp"

namespace chipfire {

/// Principal divisor of firing Z: v.Z off Z, -v.Z^c on Z. Loops contribute nothing.
inline Divisor t_set(const WeightedMultigraph& g, const VertexSet& z) {
  g.require_set(z);
  const VertexSet zc = z.complement();
  Divisor t(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    t[v] = z.contains(v) ? -edges_into(g, v, zc) : edges_into(g, v, z);
  return t;
}

/// Bilinear intersection product.
inline std::int64_t intersection(const WeightedMultigraph& g, const Divisor& a, const Divisor& b) {
  g.require_divisor(a);
  g.require_divisor(b);
  const std::size_t n = g.num_vertices();
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      std::int64_t pairing;
      if (i != j) {
        pairing = g.multiplicity(i, j);
      } else {
        pairing = 0;
        for (std::size_t w : g.neighbors(i)) pairing -= g.multiplicity(i, w);
      }
      total = detail::checked_add(total, detail::checked_mul(detail::checked_mul(a[i], b[j]), pairing));
    }
  }
  return total;
}

/// Unit divisor at v.
inline Divisor vertex_divisor(const WeightedMultigraph& g, std::size_t v) {
  g.require_vertex(v);
  Divisor d(g.num_vertices());
  d[v] = 1;
  return d;
}

/// k_G - d.
inline Divisor residual(const WeightedMultigraph& g, const Divisor& d) {
  g.require_divisor(d);
  return canonical_divisor(g) - d;
}

/// e(v) + min(e(v), omega(v) + loops(v)).
inline Divisor e_deg(const WeightedMultigraph& g, const Divisor& e) {
  g.require_divisor(e);
  if (!e.is_effective()) throw DomainError("e_deg needs an effective divisor");
  Divisor out(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    out[v] = e[v] + std::min<std::int64_t>(e[v], g.weight(v) + g.loops(v));
  return out;
}

namespace detail {

/// Number of integer vectors x with lower <= x <= upper and sum(x) = total,
/// saturating at uint64 max.
inline std::uint64_t count_box(const std::vector<Chips>& lower, const std::vector<Chips>& upper, Chips total) {
  Chips lo_sum = 0;
  std::vector<Chips> span(lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (upper[i] < lower[i]) return 0;
    lo_sum = checked_add(lo_sum, lower[i]);
    span[i] = upper[i] - lower[i];
  }
  const Chips rest = total - lo_sum;
  if (rest < 0) return 0;
  // ways[s] = number of ways to reach partial sum s.
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(rest) + 1, 0);
  ways[0] = 1;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (Chips s : span) {
    // next[t] = ways[t - s] + ... + ways[t], via saturating prefix sums.
    std::vector<std::uint64_t> prefix(ways.size() + 1, 0);
    for (std::size_t t = 0; t < ways.size(); ++t) prefix[t + 1] = saturating_add(prefix[t], ways[t]);
    std::vector<std::uint64_t> next(ways.size(), 0);
    for (std::size_t t = 0; t < ways.size(); ++t) {
      const std::size_t from = t >= static_cast<std::size_t>(s) ? t - static_cast<std::size_t>(s) : 0;
      next[t] = prefix[t + 1] == kMax ? kMax : prefix[t + 1] - prefix[from];
    }
    ways = std::move(next);
  }
  return ways[static_cast<std::size_t>(rest)];
}

/// Visits every x with lower <= x <= upper and sum(x) = total in ascending
/// lexicographic order. Stops early when visit returns false.
inline void for_each_in_box(const std::vector<Chips>& lower, const std::vector<Chips>& upper, Chips total,
                            const std::function<bool(const Divisor&)>& visit) {
  const std::size_t n = lower.size();
  if (n == 0) return;
  // suffix bounds so each prefix can still be completed
  std::vector<Chips> lo_suffix(n + 1, 0), hi_suffix(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) {
    if (upper[i] < lower[i]) return;
    lo_suffix[i] = checked_add(lo_suffix[i + 1], lower[i]);
    hi_suffix[i] = checked_add(hi_suffix[i + 1], upper[i]);
  }
  if (total < lo_suffix[0] || total > hi_suffix[0]) return;

  Divisor x(n);
  bool keep_going = true;
  std::function<void(std::size_t, Chips)> rec = [&](std::size_t i, Chips remaining) {
    if (i + 1 == n) {
      x[i] = remaining;
      keep_going = visit(x);
      return;
    }
    const Chips from = std::max(lower[i], remaining - hi_suffix[i + 1]);
    const Chips to = std::min(upper[i], remaining - lo_suffix[i + 1]);
    for (Chips c = from; c <= to && keep_going; ++c) {
      x[i] = c;
      rec(i + 1, remaining - c);
    }
  };
  rec(0, total);
}

/// Effective divisors of the given degree on n vertices, ascending lexicographic.
inline void for_each_effective(std::size_t n, Chips degree, const std::function<bool(const Divisor&)>& visit) {
  if (degree < 0) return;
  for_each_in_box(std::vector<Chips>(n, 0), std::vector<Chips>(n, degree), degree, visit);
}

inline std::uint64_t count_effective(std::size_t n, Chips degree) {
  if (degree < 0 || n == 0) return 0;
  return binomial(static_cast<std::uint64_t>(degree) + n - 1, n - 1);
}

}  // namespace detail
}  // namespace chipfire
