#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

#include "chipfire/detail/checked.hpp"
#include "chipfire/errors.hpp"

namespace chipfire {

using Chips = std::int64_t;

/// Integer chip configuration indexed by vertex position (declaration order).
/// A Divisor does not remember its graph; operations that take a graph check
/// that the sizes agree.
class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(std::size_t num_vertices) : values_(num_vertices, 0) {}
  explicit Divisor(std::vector<Chips> values) : values_(std::move(values)) {}
  Divisor(std::initializer_list<Chips> values) : values_(values) {}

  std::size_t size() const noexcept { return values_.size(); }
  Chips operator[](std::size_t i) const { return values_[i]; }
  Chips& operator[](std::size_t i) { return values_[i]; }
  const std::vector<Chips>& values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  Chips degree() const {
    Chips total = 0;
    for (Chips c : values_) total = detail::checked_add(total, c);
    return total;
  }

  bool is_effective() const {
    return std::all_of(values_.begin(), values_.end(), [](Chips c) { return c >= 0; });
  }

  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](Chips c) { return c == 0; });
  }

  Divisor& operator+=(const Divisor& other) {
    require_same_size(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] = detail::checked_add(values_[i], other.values_[i]);
    return *this;
  }

  Divisor& operator-=(const Divisor& other) {
    require_same_size(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] = detail::checked_sub(values_[i], other.values_[i]);
    return *this;
  }

  Divisor& operator*=(Chips factor) {
    for (Chips& c : values_) c = detail::checked_mul(c, factor);
    return *this;
  }

  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator*(Chips k, Divisor a) { return a *= k; }
  friend Divisor operator-(Divisor a) { return a *= -1; }

  // Lexicographic on the value tuple in declaration order.
  friend bool operator==(const Divisor&, const Divisor&) = default;
  friend auto operator<=>(const Divisor&, const Divisor&) = default;

 private:
  void require_same_size(const Divisor& other) const {
    if (other.size() != size()) throw DomainError("divisors live on graphs of different size");
  }

  std::vector<Chips> values_;
};

/// Subset of vertex positions.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t num_vertices) : bits_(num_vertices, false) {}
  VertexSet(std::size_t num_vertices, std::initializer_list<std::size_t> members) : bits_(num_vertices, false) {
    for (std::size_t m : members) insert(m);
  }
  VertexSet(std::size_t num_vertices, const std::vector<std::size_t>& members) : bits_(num_vertices, false) {
    for (std::size_t m : members) insert(m);
  }

  static VertexSet all(std::size_t num_vertices) {
    VertexSet s(num_vertices);
    s.bits_.assign(num_vertices, true);
    return s;
  }

  std::size_t universe() const noexcept { return bits_.size(); }
  bool contains(std::size_t v) const { return bits_.at(v); }
  void insert(std::size_t v) { bits_.at(v) = true; }
  void erase(std::size_t v) { bits_.at(v) = false; }

  std::size_t count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }
  bool empty() const { return std::none_of(bits_.begin(), bits_.end(), [](bool b) { return b; }); }
  bool full() const { return std::all_of(bits_.begin(), bits_.end(), [](bool b) { return b; }); }

  VertexSet complement() const {
    VertexSet c(bits_.size());
    for (std::size_t i = 0; i < bits_.size(); ++i) c.bits_[i] = !bits_[i];
    return c;
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out.push_back(i);
    return out;
  }

  bool is_subset_of(const VertexSet& other) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && !other.bits_.at(i)) return false;
    return true;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<bool> bits_;
};

}  // namespace chipfire

template <>
struct std::hash<chipfire::Divisor> {
  std::size_t operator()(const chipfire::Divisor& d) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto c : d) h = (h ^ static_cast<std::size_t>(c)) * 0x100000001b3ULL;
    return h;
  }
};
