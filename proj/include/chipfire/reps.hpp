#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "chipfire/detail/checked.hpp"
#include "chipfire/detail/parallel.hpp"
#include "chipfire/divisor.hpp"
#include "chipfire/divisor_class.hpp"
#include "chipfire/divisors.hpp"
#include "chipfire/errors.hpp"
#include "chipfire/graph.hpp"
#include "chipfire/options.hpp"
#include "chipfire/reduce.hpp"

namespace chipfire {

using Rational = boost::rational<std::int64_t>;

struct BalanceBounds {
  Rational lower;  // m_Z
  Rational upper;  // M_Z
};

namespace detail {

inline void require_balance_domain(const WeightedMultigraph& g) {
  if (genus(g) < 2) throw DomainError("semibalanced divisors need genus >= 2, got " + std::to_string(genus(g)));
}

inline void require_proper_subset(const VertexSet& z) {
  if (z.empty() || z.full()) throw DomainError("Z must be a nonempty proper vertex subset");
}

inline Chips sum_over(const Divisor& d, const VertexSet& z) {
  Chips total = 0;
  for (std::size_t v : z.members()) total = checked_add(total, d[v]);
  return total;
}

/// Z.Z^c: number of edges crossing the cut.
inline std::int64_t cut_size(const WeightedMultigraph& g, const VertexSet& z) {
  std::int64_t total = 0;
  const VertexSet zc = z.complement();
  for (std::size_t v : z.members()) total += edges_into(g, v, zc);
  return total;
}

// Subsets are walked as bitmasks; beyond this many vertices the sweep is refused.
inline constexpr std::size_t kMaxSubsetVertices = 40;

inline VertexSet subset_from_mask(std::size_t n, std::uint64_t mask) {
  VertexSet z(n);
  for (std::size_t v = 0; v < n; ++v)
    if (mask >> v & 1U) z.insert(v);
  return z;
}

/// m_Z <= d(Z) <= M_Z, cross-multiplied by 2(2g-2).
inline bool within_bounds(Chips total_degree, std::int64_t canonical_mass, std::int64_t cut, std::int64_t two_g_minus_2,
                          Chips mass) {
  const std::int64_t centre = checked_mul(checked_mul(2, total_degree), canonical_mass);
  const std::int64_t slack = checked_mul(cut, two_g_minus_2);
  const std::int64_t scaled = checked_mul(checked_mul(2, two_g_minus_2), mass);
  return checked_sub(centre, slack) <= scaled && scaled <= checked_add(centre, slack);
}

// boost::rational keeps the denominator positive.
inline Chips floor_of(const Rational& q) {
  const auto p = q.numerator(), d = q.denominator();
  return p >= 0 ? p / d : -((-p + d - 1) / d);
}

inline Chips ceil_of(const Rational& q) { return -floor_of(-q); }

}  // namespace detail

/// m_Z = d k(Z)/(2g-2) - Z.Z^c/2 and M_Z = d k(Z)/(2g-2) + Z.Z^c/2, exactly.
inline BalanceBounds balance_bounds(const WeightedMultigraph& g, Chips total_degree, const VertexSet& z) {
  g.require_set(z);
  detail::require_balance_domain(g);
  detail::require_proper_subset(z);
  const Rational centre(detail::checked_mul(total_degree, detail::sum_over(canonical_divisor(g), z)), 2 * genus(g) - 2);
  const Rational half_cut(detail::cut_size(g, z), 2);
  return {centre - half_cut, centre + half_cut};
}

/// Checks m_Z(d) <= d(Z) <= M_Z(d) over every nonempty proper Z.
inline bool is_semibalanced(const WeightedMultigraph& g, const Divisor& d, const Options& options = {}) {
  g.require_divisor(d);
  detail::require_balance_domain(g);
  if (!is_semistable(g)) throw DomainError("is_semibalanced: graph is not semistable");
  const std::size_t n = g.num_vertices();
  if (n > detail::kMaxSubsetVertices || (std::uint64_t{1} << n) - 2 > options.budget)
    throw BudgetExceeded("is_semibalanced", n >= 64 ? UINT64_MAX : (std::uint64_t{1} << n) - 2, options.budget);

  const Divisor k = canonical_divisor(g);
  const std::int64_t two_g_minus_2 = 2 * genus(g) - 2;
  const Chips total = d.degree();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    const VertexSet z = detail::subset_from_mask(n, mask);
    if (!detail::within_bounds(total, detail::sum_over(k, z), detail::cut_size(g, z), two_g_minus_2, detail::sum_over(d, z)))
      return false;
  }
  return true;
}

/// Lexicographically smallest semibalanced divisor in the class. Candidates
/// come from the box cut out by the single-vertex bounds.
inline Divisor semibalanced_representative(const WeightedMultigraph& g, const DivisorClass& c, const Options& options = {}) {
  g.require_divisor(c.canonical);
  detail::require_balance_domain(g);
  if (!is_semistable(g)) throw DomainError("semibalanced_representative: graph is not semistable");
  const std::size_t n = g.num_vertices();
  const Chips degree = c.degree();
  std::vector<Chips> lower(n), upper(n);
  if (n == 1) {
    lower[0] = upper[0] = degree;
  } else {
    for (std::size_t v = 0; v < n; ++v) {
      const BalanceBounds b = balance_bounds(g, degree, VertexSet(n, {v}));
      lower[v] = detail::ceil_of(b.lower);
      upper[v] = detail::floor_of(b.upper);
    }
  }
  const std::uint64_t count = detail::count_box(lower, upper, degree);
  if (count > options.budget) throw BudgetExceeded("semibalanced_representative", count, options.budget);

  auto hits = detail::ordered_filter(
      [&](const auto& sink) { detail::for_each_in_box(lower, upper, degree, sink); },
      [&](const Divisor& candidate) {
        return reduce_to(g, candidate, c.base_vertex) == c.canonical && is_semibalanced(g, candidate, options);
      },
      options.threads, true);
  if (hits.empty()) throw std::logic_error("semibalanced_representative: no semibalanced divisor in the class");
  return hits.front();
}

/// 0 <= d(v) <= k_G(v) everywhere.
inline bool is_uniform(const WeightedMultigraph& g, const Divisor& d) {
  g.require_divisor(d);
  const Divisor k = canonical_divisor(g);
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (d[v] < 0 || d[v] > k[v]) return false;
  return true;
}

/// Both the class and its residual class contain effective divisors.
inline bool is_special_class(const WeightedMultigraph& g, const DivisorClass& c) {
  g.require_divisor(c.canonical);
  if (!c.is_effective()) return false;
  return effectivize(g, residual(g, c.canonical)).has_value();
}

/// Lexicographically smallest uniform divisor in the class, if any.
inline std::optional<Divisor> uniform_representative(const WeightedMultigraph& g, const DivisorClass& c,
                                                     const Options& options = {}) {
  g.require_divisor(c.canonical);
  const Divisor k = canonical_divisor(g);
  const std::vector<Chips> lower(g.num_vertices(), 0);
  const std::vector<Chips>& upper = k.values();
  const std::uint64_t count = detail::count_box(lower, upper, c.degree());
  if (count > options.budget) throw BudgetExceeded("uniform_representative", count, options.budget);
  auto hits = detail::ordered_filter(
      [&](const auto& sink) { detail::for_each_in_box(lower, upper, c.degree(), sink); },
      [&](const Divisor& candidate) { return reduce_to(g, candidate, c.base_vertex) == c.canonical; }, options.threads,
      true);
  if (hits.empty()) return std::nullopt;
  return hits.front();
}

enum class CliffordBranch { Uniform, VReducedNonEffective, ResidualVReduced };

inline const char* to_string(CliffordBranch b) {
  switch (b) {
    case CliffordBranch::Uniform: return "Uniform";
    case CliffordBranch::VReducedNonEffective: return "VReducedNonEffective";
    case CliffordBranch::ResidualVReduced: return "ResidualVReduced";
  }
  return "?";
}

struct CliffordCertificate {
  CliffordBranch branch = CliffordBranch::Uniform;
  Divisor representative;
  // Uniform: the per-vertex upper bounds k_G.
  std::optional<Divisor> upper_bounds;
  // Reduced branches: the vertex and the (negative) value there.
  std::optional<std::size_t> vertex;
  std::optional<Chips> negative_value;
  // ResidualVReduced: the reduced residual.
  std::optional<Divisor> residual_form;
};

/// Special class whose graph misses the hypotheses of the explicit construction.
struct NotCovered {
  bool chain_of_2ec = false;
  bool weightless_vertices_have_loops = false;
};

using CliffordOutcome = std::variant<CliffordCertificate, NotCovered>;

/// Certified Clifford representative for classes of degree 0..2g-2:
/// non-effective class -> its reduced form at the first vertex;
/// non-effective residual -> k_G minus the residual's reduced form;
/// special class -> a uniform divisor, when g is a chain of 2-edge-connected
/// components and every weight-0 vertex carries a loop; otherwise NotCovered.
inline CliffordOutcome clifford_representative(const WeightedMultigraph& g, const DivisorClass& c, const Options& options = {}) {
  g.require_divisor(c.canonical);
  const Chips degree = c.degree();
  const std::int64_t gen = genus(g);
  if (degree < 0 || degree > 2 * gen - 2)
    throw DomainError("clifford_representative: degree " + std::to_string(degree) + " outside [0, " +
                      std::to_string(2 * gen - 2) + "]");
  const std::size_t v = g.first_vertex();

  const Divisor reduced = reduce_to(g, c.canonical, v);
  if (reduced[v] < 0) {
    CliffordCertificate cert;
    cert.branch = CliffordBranch::VReducedNonEffective;
    cert.representative = reduced;
    cert.vertex = v;
    cert.negative_value = reduced[v];
    return cert;
  }

  const Divisor residual_reduced = reduce_to(g, residual(g, c.canonical), v);
  if (residual_reduced[v] < 0) {
    CliffordCertificate cert;
    cert.branch = CliffordBranch::ResidualVReduced;
    cert.representative = canonical_divisor(g) - residual_reduced;
    cert.vertex = v;
    cert.negative_value = residual_reduced[v];
    cert.residual_form = residual_reduced;
    return cert;
  }

  NotCovered hypotheses{is_chain_of_2ec(g), weightless_vertices_have_loops(g)};
  if (!hypotheses.chain_of_2ec || !hypotheses.weightless_vertices_have_loops) return hypotheses;

  auto uniform = uniform_representative(g, c, options);
  if (!uniform) throw std::logic_error("clifford_representative: special class without a uniform representative");
  CliffordCertificate cert;
  cert.branch = CliffordBranch::Uniform;
  cert.representative = *uniform;
  cert.upper_bounds = canonical_divisor(g);
  return cert;
}

/// Re-checks a certificate from scratch against the class it claims to represent.
inline bool verify_certificate(const WeightedMultigraph& g, const DivisorClass& c, const CliffordCertificate& cert) {
  const Divisor& rep = cert.representative;
  g.require_divisor(rep);
  if (!equivalent(g, rep, c.canonical)) return false;
  switch (cert.branch) {
    case CliffordBranch::Uniform: {
      if (!cert.upper_bounds || *cert.upper_bounds != canonical_divisor(g)) return false;
      for (std::size_t v = 0; v < g.num_vertices(); ++v)
        if (rep[v] < 0 || rep[v] > (*cert.upper_bounds)[v]) return false;
      return is_chain_of_2ec(g) && weightless_vertices_have_loops(g) && is_special_class(g, c);
    }
    case CliffordBranch::VReducedNonEffective: {
      if (!cert.vertex || !cert.negative_value) return false;
      return is_reduced(g, rep, *cert.vertex) && rep[*cert.vertex] < 0 && rep[*cert.vertex] == *cert.negative_value;
    }
    case CliffordBranch::ResidualVReduced: {
      if (!cert.vertex || !cert.residual_form) return false;
      const Divisor res = residual(g, rep);
      return res == *cert.residual_form && is_reduced(g, res, *cert.vertex) && res[*cert.vertex] < 0;
    }
  }
  return false;
}

}  // namespace chipfire
