#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chipfire/detail/checked.hpp"
#include "chipfire/divisor.hpp"
#include "chipfire/divisors.hpp"
#include "chipfire/errors.hpp"
#include "chipfire/graph.hpp"
#include "chipfire/options.hpp"
#include "chipfire/reduce.hpp"

namespace chipfire {

enum class RankMethod { definition, regime_shortcut, oracle };

inline const char* to_string(RankMethod m) {
  switch (m) {
    case RankMethod::definition: return "definition";
    case RankMethod::regime_shortcut: return "regime_shortcut";
    case RankMethod::oracle: return "oracle";
  }
  return "?";
}

struct RankReport {
  std::int64_t rank = -1;
  /// Effective divisor of degree rank + 1 on the bullet model that the class
  /// cannot cover; lexicographically smallest such. Absent when the rank came
  /// from the degree > 2g - 2 shortcut.
  std::optional<Divisor> witness;
  RankMethod method = RankMethod::definition;
};

/// Baker-Norine rank, computed on the weightless loopless model.
///
/// The definitional scan walks degree k = 0, 1, ... . Level k holds the
/// reduced forms of every class [d - e] with e effective of degree k, each
/// tagged with the lexicographically smallest e reaching it. The first level
/// containing a non-effective class gives rank k - 1.
inline RankReport rank(const WeightedMultigraph& g, const Divisor& d, const Options& options = {}) {
  g.require_divisor(d);
  const Chips degree = d.degree();
  const BulletModel model = bullet_model(g);
  const WeightedMultigraph& gb = model.graph;
  const std::size_t n = gb.num_vertices();

  if (options.shortcuts) {
    const std::int64_t gen = genus(g);
    if (degree < 0) return {-1, Divisor(n), RankMethod::regime_shortcut};
    if (degree > 2 * gen - 2) return {degree - gen, std::nullopt, RankMethod::regime_shortcut};
  }

  const std::size_t u = model.embed[g.first_vertex()];
  const Divisor start = reduce_to(gb, embed_divisor(model, d), u);
  if (start[u] < 0) return {-1, Divisor(n), RankMethod::definition};

  // d - v = d - u + (u - v); adding the reduced form of u - v keeps
  // everything off u effective, so re-reduction needs no debt clearing.
  std::vector<Divisor> shift(n);
  for (std::size_t v = 0; v < n; ++v) {
    Divisor step(n);
    step[u] += 1;
    step[v] -= 1;
    shift[v] = reduce_to(gb, step, u);
    shift[v][u] -= 1;
  }

  std::unordered_map<Divisor, Divisor> level{{start, Divisor(n)}};
  std::uint64_t work = 0;
  for (std::int64_t k = 1;; ++k) {
    std::unordered_map<Divisor, Divisor> next;
    std::optional<Divisor> failing;
    for (const auto& [reduced, lexmin_e] : level) {
      for (std::size_t v = 0; v < n; ++v) {
        if (++work > options.budget)
          throw BudgetExceeded("rank", detail::count_effective(n, k), options.budget);
        Divisor next_form;
        if (v == u || reduced[v] > 0) {
          // Removing a chip where one is present keeps a reduced divisor reduced.
          next_form = reduced;
          next_form[v] -= 1;
        } else {
          next_form = reduce_to(gb, reduced + shift[v], u);
        }
        Divisor e = lexmin_e;
        e[v] += 1;
        if (next_form[u] < 0) {
          if (!failing || e < *failing) failing = std::move(e);
          continue;
        }
        auto [it, inserted] = next.try_emplace(std::move(next_form), e);
        if (!inserted && e < it->second) it->second = std::move(e);
      }
    }
    if (failing) return {k - 1, std::move(failing), RankMethod::definition};
    level = std::move(next);
  }
}

namespace detail {

/// Membership in the Laplacian lattice by exact linear algebra: D (degree 0)
/// is principal iff the reduced Laplacian system L' x = D' has an integral
/// solution. Stores adj(L') and det(L').
class LaplacianLattice {
 public:
  explicit LaplacianLattice(const WeightedMultigraph& g) : n_(g.num_vertices()) {
    using boost::multiprecision::cpp_rational;
    const std::size_t m = n_ - 1;
    if (m == 0) return;
    std::vector<std::vector<cpp_rational>> a(m, std::vector<cpp_rational>(2 * m, 0));
    for (std::size_t i = 0; i < m; ++i) {
      std::int64_t deg = 0;
      for (std::size_t w : g.neighbors(i + 1)) deg += g.multiplicity(i + 1, w);
      for (std::size_t j = 0; j < m; ++j) a[i][j] = (i == j) ? cpp_rational(deg) : cpp_rational(-g.multiplicity(i + 1, j + 1));
      a[i][m + i] = 1;
    }
    cpp_rational det = 1;
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t pivot = col;
      while (a[pivot][col] == 0) ++pivot;  // nonsingular for connected graphs
      if (pivot != col) {
        std::swap(a[pivot], a[col]);
        det = -det;
      }
      det *= a[col][col];
      const cpp_rational inv = 1 / a[col][col];
      for (auto& x : a[col]) x *= inv;
      for (std::size_t r = 0; r < m; ++r) {
        if (r == col || a[r][col] == 0) continue;
        const cpp_rational f = a[r][col];
        for (std::size_t c = 0; c < 2 * m; ++c) a[r][c] -= f * a[col][c];
      }
    }
    det_ = to_int64(det);
    adjugate_.assign(m * m, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) adjugate_[i * m + j] = to_int64(a[i][m + j] * det);
  }

  bool is_principal(const Divisor& d) const {
    const std::size_t m = n_ - 1;
    for (std::size_t i = 0; i < m; ++i) {
      __int128 acc = 0;
      for (std::size_t j = 0; j < m; ++j) acc += static_cast<__int128>(adjugate_[i * m + j]) * d[j + 1];
      if (acc % det_ != 0) return false;
    }
    return true;
  }

  std::int64_t spanning_trees() const { return det_ < 0 ? -det_ : det_; }

 private:
  static std::int64_t to_int64(const boost::multiprecision::cpp_rational& q) {
    if (boost::multiprecision::denominator(q) != 1) throw std::logic_error("adjugate entry is not integral");
    const auto& z = boost::multiprecision::numerator(q);
    if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("Laplacian adjugate entry exceeds int64");
    return static_cast<std::int64_t>(z);
  }

  std::size_t n_;
  std::int64_t det_ = 1;
  std::vector<std::int64_t> adjugate_;
};

}  // namespace detail

/// Brute-force rank straight from the definition: for each k and each
/// effective e of degree k, search all effective f of degree deg - k for one
/// with d - e - f in the Laplacian lattice. Shares no reduction code with rank().
inline std::int64_t rank_oracle(const WeightedMultigraph& g, const Divisor& d, const Options& options = {}) {
  g.require_divisor(d);
  const BulletModel model = bullet_model(g);
  const WeightedMultigraph& gb = model.graph;
  const std::size_t n = gb.num_vertices();
  const Divisor lifted = embed_divisor(model, d);
  const Chips degree = lifted.degree();
  const detail::LaplacianLattice lattice(gb);

  std::uint64_t work = 0;
  for (std::int64_t k = 0;; ++k) {
    if (degree - k < 0) return k - 1;
    bool all_covered = true;
    detail::for_each_effective(n, k, [&](const Divisor& e) {
      const Divisor target = lifted - e;
      bool covered = false;
      detail::for_each_effective(n, degree - k, [&](const Divisor& f) {
        if (++work > options.budget)
          throw BudgetExceeded("rank_oracle", detail::saturating_mul(detail::count_effective(n, k), detail::count_effective(n, degree - k)),
                               options.budget);
        covered = lattice.is_principal(target - f);
        return !covered;
      });
      all_covered = covered;
      return covered;
    });
    if (!all_covered) return k - 1;
  }
}

/// True iff d - e_deg(e) is equivalent to an effective divisor on g for every
/// effective e of degree s on g. A true answer certifies rank(d) >= s.
inline bool rank_lower_bound_edeg(const WeightedMultigraph& g, const Divisor& d, std::int64_t s,
                                  const Options& options = {}) {
  g.require_divisor(d);
  if (s < 0) throw DomainError("rank_lower_bound_edeg: s must be nonnegative");
  const std::uint64_t count = detail::count_effective(g.num_vertices(), s);
  if (count > options.budget) throw BudgetExceeded("rank_lower_bound_edeg", count, options.budget);
  bool holds = true;
  detail::for_each_effective(g.num_vertices(), s, [&](const Divisor& e) {
    holds = effectivize(g, d - e_deg(g, e)).has_value();
    return holds;
  });
  return holds;
}

struct RiemannRochReport {
  std::int64_t degree = 0;
  std::int64_t genus = 0;
  std::int64_t rank = 0;
  std::int64_t residual_rank = 0;
  bool holds = false;
};

/// Computes r(d) and r(k_G - d) and checks r(d) - r(k_G - d) = deg - g + 1.
inline RiemannRochReport riemann_roch(const WeightedMultigraph& g, const Divisor& d, const Options& options = {}) {
  RiemannRochReport r;
  r.degree = d.degree();
  r.genus = genus(g);
  r.rank = rank(g, d, options).rank;
  r.residual_rank = rank(g, residual(g, d), options).rank;
  r.holds = r.rank - r.residual_rank == r.degree - r.genus + 1;
  return r;
}

inline bool riemann_roch_check(const WeightedMultigraph& g, const Divisor& d, const Options& options = {}) {
  return riemann_roch(g, d, options).holds;
}

/// rank(d) <= deg/2, for 0 <= deg <= 2g - 2.
inline bool clifford_check(const WeightedMultigraph& g, const Divisor& d, const Options& options = {}) {
  g.require_divisor(d);
  const Chips degree = d.degree();
  const std::int64_t gen = genus(g);
  if (degree < 0) throw DomainError("clifford_check: degree " + std::to_string(degree) + " is below 0");
  if (degree > 2 * gen - 2)
    throw DomainError("clifford_check: degree " + std::to_string(degree) + " exceeds 2g-2 = " + std::to_string(2 * gen - 2));
  return 2 * rank(g, d, options).rank <= degree;
}

}  // namespace chipfire
