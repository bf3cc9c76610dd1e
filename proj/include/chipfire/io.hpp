#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chipfire/divisor.hpp"
#include "chipfire/errors.hpp"
#include "chipfire/graph.hpp"

namespace chipfire {

struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;
};

/// A parsed graph file. Edge locations are indexed like graph.edges().
struct GraphDocument {
  WeightedMultigraph graph;
  std::vector<SourceLocation> vertex_locations;
  std::vector<SourceLocation> edge_locations;
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline bool valid_vertex_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name)
    if (c == ',' || c == '=' || c == '#' || static_cast<unsigned char>(c) <= ' ') return false;
  return true;
}

inline std::optional<std::int64_t> parse_int(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace detail

/// Parses the line-oriented graph format:
///
///     graph
///     vertex v1 weight 0
///     edge v1 v2 x3      # multiplicity suffix, default 1
///     loop v2 x2
///
/// Vertices may be declared after edges that mention them. Repeated edge lines
/// add up.
inline GraphDocument parse_graph(std::string_view text) {
  struct PendingEdge {
    std::string a, b;
    SourceLocation at;
    SourceLocation a_at, b_at;
  };
  std::vector<WeightedMultigraph::VertexSpec> vertices;
  std::vector<SourceLocation> vertex_locations;
  std::map<std::string, std::size_t, std::less<>> declared;
  std::vector<PendingEdge> pending;
  bool saw_header = false;
  std::size_t header_line = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tokens = detail::tokenize_line(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string_view keyword = tokens[0].text;

    if (!saw_header) {
      if (keyword != "graph" || tokens.size() != 1)
        throw ParseError("expected 'graph' header", line_no, tokens[0].column);
      saw_header = true;
      header_line = line_no;
      continue;
    }

    auto multiplicity = [&](std::size_t at) -> std::int64_t {
      if (tokens.size() <= at) return 1;
      if (tokens.size() > at + 1) throw ParseError("unexpected token '" + std::string(tokens[at + 1].text) + "'", line_no, tokens[at + 1].column);
      const std::string_view t = tokens[at].text;
      std::optional<std::int64_t> k;
      if (t.size() >= 2 && t[0] == 'x') k = detail::parse_int(t.substr(1));
      if (!k || *k < 1) throw ParseError("bad multiplicity '" + std::string(t) + "', expected xK with K >= 1", line_no, tokens[at].column);
      return *k;
    };
    auto vertex_name = [&](std::size_t at) -> std::string {
      if (tokens.size() <= at) throw ParseError("missing vertex name", line_no, 0);
      if (!detail::valid_vertex_name(tokens[at].text))
        throw ParseError("invalid vertex name '" + std::string(tokens[at].text) + "'", line_no, tokens[at].column);
      return std::string(tokens[at].text);
    };

    if (keyword == "vertex") {
      std::string name = vertex_name(1);
      std::int64_t weight = 0;
      if (tokens.size() > 2) {
        if (tokens[2].text != "weight" || tokens.size() != 4)
          throw ParseError("expected 'vertex NAME weight W'", line_no, tokens[2].column);
        auto w = detail::parse_int(tokens[3].text);
        if (!w) throw ParseError("bad weight '" + std::string(tokens[3].text) + "'", line_no, tokens[3].column);
        if (*w < 0) throw ParseError("negative weight on vertex '" + name + "'", line_no, tokens[3].column);
        weight = *w;
      }
      if (declared.count(name)) throw ParseError("duplicate vertex '" + name + "'", line_no, tokens[1].column);
      declared.emplace(name, vertices.size());
      vertices.push_back({std::move(name), weight});
      vertex_locations.push_back({line_no, tokens[0].column});
    } else if (keyword == "edge") {
      std::string a = vertex_name(1);
      std::string b = vertex_name(2);
      const std::int64_t k = multiplicity(3);
      for (std::int64_t i = 0; i < k; ++i)
        pending.push_back({a, b, {line_no, tokens[0].column}, {line_no, tokens[1].column}, {line_no, tokens[2].column}});
    } else if (keyword == "loop") {
      std::string a = vertex_name(1);
      const std::int64_t k = multiplicity(2);
      for (std::int64_t i = 0; i < k; ++i)
        pending.push_back({a, a, {line_no, tokens[0].column}, {line_no, tokens[1].column}, {line_no, tokens[1].column}});
    } else {
      throw ParseError("unknown keyword '" + std::string(keyword) + "'", line_no, tokens[0].column);
    }
  }

  if (!saw_header) throw ParseError("empty document, expected 'graph' header", line_no, 0);
  if (vertices.empty()) throw ParseError("no vertices", header_line, 0);

  std::vector<Edge> edges;
  std::vector<SourceLocation> edge_locations;
  for (const auto& e : pending) {
    auto a = declared.find(e.a);
    if (a == declared.end()) throw ParseError("edge references undeclared vertex '" + e.a + "'", e.a_at.line, e.a_at.column);
    auto b = declared.find(e.b);
    if (b == declared.end()) throw ParseError("edge references undeclared vertex '" + e.b + "'", e.b_at.line, e.b_at.column);
    edges.push_back({a->second, b->second});
    edge_locations.push_back(e.at);
  }
  try {
    WeightedMultigraph g(std::move(vertices), std::move(edges));
    return {std::move(g), std::move(vertex_locations), std::move(edge_locations)};
  } catch (const GraphError& err) {
    throw ParseError(err.what(), header_line, 0);
  }
}

/// Inverse of parse_graph up to comments and edge-line grouping.
inline std::string serialize_graph(const WeightedMultigraph& g) {
  std::ostringstream out;
  out << "graph\n";
  for (std::size_t v = 0; v < g.num_vertices(); ++v) out << "vertex " << g.name(v) << " weight " << g.weight(v) << "\n";
  // Group by endpoint pair, in order of first appearance.
  std::vector<std::pair<Edge, std::int64_t>> groups;
  for (const Edge& e : g.edges()) {
    const Edge key{std::min(e.u, e.v), std::max(e.u, e.v)};
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& p) { return p.first == key; });
    if (it == groups.end())
      groups.push_back({key, 1});
    else
      ++it->second;
  }
  for (const auto& [e, k] : groups) {
    if (e.is_loop())
      out << "loop " << g.name(e.u);
    else
      out << "edge " << g.name(e.u) << " " << g.name(e.v);
    if (k > 1) out << " x" << k;
    out << "\n";
  }
  return out.str();
}

/// Parses `name=int,name=int,...`; omitted vertices are 0. A bare "0" or an
/// empty literal is the zero divisor. Errors carry the 1-based column.
inline Divisor parse_divisor(const WeightedMultigraph& g, std::string_view literal) {
  Divisor d(g.num_vertices());
  std::string_view trimmed = literal;
  while (!trimmed.empty() && trimmed.front() == ' ') trimmed.remove_prefix(1);
  while (!trimmed.empty() && trimmed.back() == ' ') trimmed.remove_suffix(1);
  if (trimmed.empty() || trimmed == "0") return d;

  std::vector<bool> seen(g.num_vertices(), false);
  std::size_t pos = 0;
  while (pos <= literal.size()) {
    const std::size_t end = std::min(literal.find(',', pos), literal.size());
    std::string_view item = literal.substr(pos, end - pos);
    std::size_t column = pos + 1;
    while (!item.empty() && item.front() == ' ') {
      item.remove_prefix(1);
      ++column;
    }
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    const std::size_t eq = item.find('=');
    if (item.empty() || eq == std::string_view::npos || eq == 0)
      throw ParseError("expected 'vertex=integer' in divisor literal", 1, column);
    const std::string name(item.substr(0, eq));
    const auto v = g.find(name);
    if (!v) throw ParseError("unknown vertex '" + name + "' in divisor literal", 1, column);
    if (seen[*v]) throw ParseError("vertex '" + name + "' given twice in divisor literal", 1, column);
    seen[*v] = true;
    const auto value = detail::parse_int(item.substr(eq + 1));
    if (!value) throw ParseError("bad integer '" + std::string(item.substr(eq + 1)) + "' in divisor literal", 1, column + eq + 1);
    d[*v] = *value;
    if (end == literal.size()) break;
    pos = end + 1;
  }
  return d;
}

/// `name=value,...` over every vertex, declaration order.
inline std::string format_divisor(const WeightedMultigraph& g, const Divisor& d) {
  g.require_divisor(d);
  std::string out;
  for (std::size_t v = 0; v < d.size(); ++v) {
    if (v) out += ",";
    out += g.name(v) + "=" + std::to_string(d[v]);
  }
  return out;
}

/// `(d1,d2,...)` in declaration order.
inline std::string format_tuple(const Divisor& d) {
  std::string out = "(";
  for (std::size_t v = 0; v < d.size(); ++v) {
    if (v) out += ",";
    out += std::to_string(d[v]);
  }
  return out + ")";
}

}  // namespace chipfire
