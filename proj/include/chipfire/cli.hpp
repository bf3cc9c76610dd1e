#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chipfire/chipfire.hpp"

namespace chipfire::cli {

using Json = nlohmann::ordered_json;

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomain = 1;  // NotEffective, NotFound, precondition violations
inline constexpr int kInput = 2;   // parse, usage and resource errors

namespace detail {

// Integers beyond 2^53 are written as decimal strings.
inline Json json_int(std::int64_t v) {
  constexpr std::int64_t kExact = std::int64_t{1} << 53;
  if (v > kExact || v < -kExact) return std::to_string(v);
  return v;
}

inline Json json_divisor(const WeightedMultigraph& g, const Divisor& d) {
  Json out = Json::object();
  for (std::size_t v = 0; v < d.size(); ++v) out[g.name(v)] = json_int(d[v]);
  return out;
}

inline Json json_set(const WeightedMultigraph& g, const VertexSet& s) {
  Json out = Json::array();
  for (std::size_t v : s.members()) out.push_back(g.name(v));
  return out;
}

struct Request {
  std::string command;
  std::string graph_path;
  std::vector<std::string> divisors;
  std::optional<std::string> base;
  std::optional<std::string> set;
  bool json = false;
  std::uint64_t budget = Options{}.budget;
  unsigned threads = 1;
  bool no_shortcuts = false;
};

/// Thrown for a domain outcome that should end the command with exit 1 but
/// still print a result (e.g. NotEffective).
struct DomainOutcome {
  Json result;
};

class Command {
 public:
  Command(const Request& request, const WeightedMultigraph& g) : request_(request), g_(g) {
    options_.budget = request.budget;
    options_.threads = request.threads;
    options_.shortcuts = !request.no_shortcuts;
  }

  Json run(Json& certificate) {
    const std::string& c = request_.command;
    if (c == "info") return info();
    if (c == "rank") return rank_cmd();
    if (c == "reduce") return reduce_cmd();
    if (c == "equivalent") return equivalent_cmd();
    if (c == "effectivize") return effectivize_cmd();
    if (c == "rr-check") return rr_cmd();
    if (c == "clifford-rep") return clifford_cmd(certificate);
    if (c == "semibalanced") return semibalanced_cmd();
    if (c == "uniform") return uniform_cmd();
    if (c == "report") return report(certificate);
    throw DomainError("unknown command '" + c + "'");
  }

 private:
  Divisor divisor(std::size_t i = 0) const {
    if (request_.divisors.size() <= i)
      throw ParseError("command '" + request_.command + "' needs " + std::to_string(i + 1) + " --divisor option(s)", 1, 0);
    return parse_divisor(g_, request_.divisors[i]);
  }

  std::size_t base() const {
    if (!request_.base) return g_.first_vertex();
    auto v = g_.find(*request_.base);
    if (!v) throw ParseError("unknown base vertex '" + *request_.base + "'", 1, 0);
    return *v;
  }

  VertexSet vertex_set() const {
    VertexSet s(g_.num_vertices());
    std::stringstream in(*request_.set);
    std::string name;
    while (std::getline(in, name, ',')) {
      auto v = g_.find(name);
      if (!v) throw ParseError("unknown vertex '" + name + "' in --set", 1, 0);
      s.insert(*v);
    }
    if (s.empty()) throw ParseError("--set is empty", 1, 0);
    return s;
  }

  Json canonical(const Divisor& d) const {
    const DivisorClass c = class_of(g_, d, base());
    return Json{{"base", g_.name(c.base_vertex)}, {"divisor", json_divisor(g_, c.canonical)}};
  }

  Json info() const {
    Json vertices = Json::array();
    for (std::size_t v = 0; v < g_.num_vertices(); ++v)
      vertices.push_back(Json{{"name", g_.name(v)}, {"weight", json_int(g_.weight(v))}, {"loops", json_int(g_.loops(v))},
                              {"valence", json_int(valence(g_, v))}});
    Json bridge_list = Json::array();
    for (std::size_t id : bridges(g_).bridges())
      bridge_list.push_back(g_.name(g_.edges()[id].u) + "-" + g_.name(g_.edges()[id].v));
    const StabilityReport st = stability(g_);
    return Json{{"vertices", vertices},
                {"edges", json_int(static_cast<std::int64_t>(g_.num_edges()))},
                {"genus", json_int(genus(g_))},
                {"canonical_divisor", json_divisor(g_, canonical_divisor(g_))},
                {"stability", Json{{"semistable", st.semistable}, {"stable", st.stable}, {"applicable", st.applicable}}},
                {"bridges", bridge_list},
                {"chain_of_2ec", is_chain_of_2ec(g_)},
                {"weightless_vertices_have_loops", weightless_vertices_have_loops(g_)},
                {"bullet_model_vertices", json_int(static_cast<std::int64_t>(bullet_model(g_).graph.num_vertices()))}};
  }

  Json rank_json(const Divisor& d) const {
    const RankReport r = rank(g_, d, options_);
    Json witness = nullptr;
    if (r.witness) witness = json_divisor(bullet_model(g_).graph, *r.witness);
    return Json{{"degree", json_int(d.degree())}, {"genus", json_int(genus(g_))}, {"rank", json_int(r.rank)},
                {"method", to_string(r.method)},      {"witness", witness},           {"canonical", canonical(d)}};
  }

  Json rank_cmd() const { return rank_json(divisor()); }

  Json reduce_cmd() const {
    const Divisor d = divisor();
    Json result;
    if (request_.set) {
      const VertexSet s = vertex_set();
      const Divisor r = reduce_to_set(g_, d, s);
      result = Json{{"seed", json_set(g_, s)}, {"reduced", json_divisor(g_, r)}, {"is_reduced", is_reduced(g_, r, s)}};
    } else {
      const std::size_t u = base();
      const Divisor r = reduce_to(g_, d, u);
      result = Json{{"seed", Json::array({g_.name(u)})}, {"reduced", json_divisor(g_, r)}, {"is_reduced", is_reduced(g_, r, u)}};
    }
    result["canonical"] = canonical(d);
    return result;
  }

  Json equivalent_cmd() const {
    const Divisor a = divisor(0), b = divisor(1);
    return Json{{"equivalent", equivalent(g_, a, b)}, {"canonical", Json::array({canonical(a), canonical(b)})}};
  }

  Json effectivize_cmd() const {
    const Divisor d = divisor();
    EffectivizeTrace trace;
    const auto e = effectivize(g_, d, &trace);
    if (!e) throw DomainOutcome{Json{{"status", "NotEffective"}, {"canonical", canonical(d)}}};
    return Json{{"status", "Effective"},
                {"divisor", json_divisor(g_, *e)},
                {"iterations", json_int(static_cast<std::int64_t>(trace.iterations))},
                {"canonical", canonical(d)}};
  }

  Json rr_json(const Divisor& d) const {
    const RiemannRochReport r = riemann_roch(g_, d, options_);
    const std::string identity = std::to_string(r.rank) + " - " + std::to_string(r.residual_rank) + " = " +
                                 std::to_string(r.degree) + " - " + std::to_string(r.genus) + " + 1";
    return Json{{"degree", json_int(r.degree)},      {"genus", json_int(r.genus)},
                {"rank", json_int(r.rank)},          {"residual_rank", json_int(r.residual_rank)},
                {"identity", identity},              {"holds", r.holds},
                {"canonical", canonical(d)}};
  }

  Json rr_cmd() const {
    Json result = rr_json(divisor());
    if (!result["holds"].get<bool>()) throw DomainOutcome{result};
    return result;
  }

  Json clifford_json(const Divisor& d, Json& certificate) const {
    const DivisorClass c = class_of(g_, d, g_.first_vertex());
    const CliffordOutcome outcome = clifford_representative(g_, c, options_);
    Json result;
    if (const auto* nc = std::get_if<NotCovered>(&outcome)) {
      result = Json{{"status", "NotCovered"},
                    {"special", true},
                    {"hypotheses", Json{{"chain_of_2ec", nc->chain_of_2ec},
                                        {"weightless_vertices_have_loops", nc->weightless_vertices_have_loops}}}};
    } else {
      const auto& cert = std::get<CliffordCertificate>(outcome);
      result = Json{{"status", "Certified"},
                    {"branch", to_string(cert.branch)},
                    {"representative", json_divisor(g_, cert.representative)},
                    {"verified", verify_certificate(g_, c, cert)}};
      certificate = Json{{"branch", to_string(cert.branch)}};
      if (cert.upper_bounds) certificate["upper_bounds"] = json_divisor(g_, *cert.upper_bounds);
      if (cert.vertex) certificate["vertex"] = g_.name(*cert.vertex);
      if (cert.negative_value) certificate["negative_value"] = json_int(*cert.negative_value);
      if (cert.residual_form) certificate["residual_form"] = json_divisor(g_, *cert.residual_form);
    }
    result["canonical"] = canonical(d);
    return result;
  }

  Json clifford_cmd(Json& certificate) const { return clifford_json(divisor(), certificate); }

  Json semibalanced_cmd() const {
    const Divisor d = divisor();
    const Divisor rep = semibalanced_representative(g_, class_of(g_, d, base()), options_);
    return Json{{"representative", json_divisor(g_, rep)},
                {"input_is_semibalanced", is_semibalanced(g_, d, options_)},
                {"canonical", canonical(d)}};
  }

  Json uniform_cmd() const {
    const Divisor d = divisor();
    const auto rep = uniform_representative(g_, class_of(g_, d, base()), options_);
    if (!rep) throw DomainOutcome{Json{{"status", "NotFound"}, {"canonical", canonical(d)}}};
    return Json{{"status", "Found"}, {"representative", json_divisor(g_, *rep)}, {"canonical", canonical(d)}};
  }

  Json report(Json& certificate) const {
    Json result{{"info", info()}};
    if (request_.divisors.empty()) return result;
    const Divisor d = divisor();
    result["rank"] = rank_json(d);
    result["riemann_roch"] = rr_json(d);
    const DivisorClass c = class_of(g_, d, base());
    result["special"] = is_special_class(g_, c);
    result["uniform_divisor"] = is_uniform(g_, d);
    const std::int64_t gen = genus(g_);
    if (d.degree() >= 0 && d.degree() <= 2 * gen - 2) {
      result["clifford_inequality"] = clifford_check(g_, d, options_);
      result["clifford_representative"] = clifford_json(d, certificate);
    }
    if (gen >= 2 && is_semistable(g_)) {
      result["semibalanced"] = Json{{"input_is_semibalanced", is_semibalanced(g_, d, options_)},
                                    {"representative", json_divisor(g_, semibalanced_representative(g_, c, options_))}};
    }
    return result;
  }

  const Request& request_;
  const WeightedMultigraph& g_;
  Options options_;
};

inline void print_human(std::ostream& out, const Json& value, const std::string& indent) {
  for (auto it = value.begin(); it != value.end(); ++it) {
    const Json& v = it.value();
    const bool nested_object = v.is_object() && !v.empty() && std::any_of(v.begin(), v.end(), [](const Json& x) { return x.is_structured(); });
    if (nested_object) {
      out << indent << it.key() << ":\n";
      print_human(out, v, indent + "  ");
    } else if (v.is_string()) {
      out << indent << it.key() << ": " << v.get<std::string>() << "\n";
    } else {
      out << indent << it.key() << ": " << v.dump() << "\n";
    }
  }
}

}  // namespace detail

inline const std::vector<std::pair<std::string, std::string>>& command_table() {
  static const std::vector<std::pair<std::string, std::string>> table{
      {"info", "genus, canonical divisor, stability, bridges"},
      {"rank", "rank of a divisor with a witness"},
      {"reduce", "reduced form at --base or w.r.t. --set"},
      {"equivalent", "linear equivalence of two --divisor values"},
      {"effectivize", "effective representative of the class, if any"},
      {"rr-check", "Riemann-Roch identity for the divisor"},
      {"clifford-rep", "certified Clifford representative"},
      {"semibalanced", "semibalanced representative of the class"},
      {"uniform", "uniform representative of the class"},
      {"report", "everything above for one divisor"}};
  return table;
}

inline std::vector<std::string> commands() {
  std::vector<std::string> names;
  for (const auto& entry : command_table()) names.push_back(entry.first);
  return names;
}

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Request req;
  CLI::App app{"Divisor theory on vertex-weighted multigraphs", "chipfire"};
  app.require_subcommand(1);
  for (const auto& [name, description] : command_table()) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("graph", req.graph_path, "graph file")->required();
    sub->add_option("--divisor", req.divisors, "divisor literal v=int,... (repeat for 'equivalent')");
    sub->add_option("--base", req.base, "base vertex for reduced forms");
    sub->add_option("--set", req.set, "comma-separated seed set for 'reduce'");
    sub->add_flag("--json", req.json, "emit one JSON object");
    sub->add_option("--budget", req.budget, "candidate budget for enumerations");
    sub->add_option("--threads", req.threads, "worker threads")->check(CLI::Range(1u, 256u));
    sub->add_flag("--no-shortcuts", req.no_shortcuts, "force the definitional rank scan");
    sub->final_callback([&req, name] { req.command = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInput;
  }

  const auto start = std::chrono::steady_clock::now();
  Json doc{{"command", req.command}};
  Json inputs{{"graph", req.graph_path}};
  if (!req.divisors.empty()) inputs["divisor"] = req.divisors;
  if (req.base) inputs["base"] = *req.base;
  if (req.set) inputs["set"] = *req.set;
  inputs["budget"] = detail::json_int(static_cast<std::int64_t>(req.budget));
  inputs["no_shortcuts"] = req.no_shortcuts;
  doc["inputs"] = inputs;

  int code = kOk;
  Json certificate;
  try {
    std::ifstream file(req.graph_path);
    if (!file) throw ParseError("cannot open graph file '" + req.graph_path + "'", 0, 0);
    std::stringstream text;
    text << file.rdbuf();
    const GraphDocument parsed = parse_graph(text.str());
    detail::Command command(req, parsed.graph);
    try {
      doc["result"] = command.run(certificate);
    } catch (detail::DomainOutcome& outcome) {
      doc["result"] = std::move(outcome.result);
      code = kDomain;
    }
  } catch (const ParseError& e) {
    doc["error"] = Json{{"kind", "parse"}, {"message", e.message()}, {"line", e.line()}, {"column", e.column()}};
    code = kInput;
  } catch (const BudgetExceeded& e) {
    doc["error"] = Json{{"kind", "budget"}, {"message", e.what()}, {"count", e.count()}, {"budget", e.budget()}};
    code = kInput;
  } catch (const DomainError& e) {
    doc["error"] = Json{{"kind", "domain"}, {"message", e.what()}};
    code = kDomain;
  } catch (const std::exception& e) {
    doc["error"] = Json{{"kind", "internal"}, {"message", e.what()}};
    code = kInput;
  }
  if (!certificate.is_null()) doc["certificate"] = certificate;
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  doc["timing"] = Json{{"elapsed_ms", elapsed}};

  if (req.json) {
    out << doc.dump() << "\n";
  } else {
    if (doc.contains("error")) {
      const Json& e = doc["error"];
      err << "error (" << e["kind"].get<std::string>() << "): " << e["message"].get<std::string>();
      if (e.contains("line") && e["line"].get<std::size_t>() != 0) {
        err << " [line " << e["line"].get<std::size_t>();
        if (e["column"].get<std::size_t>() != 0) err << ", column " << e["column"].get<std::size_t>();
        err << "]";
      }
      err << "\n";
    }
    out << "command: " << req.command << "\n";
    if (doc.contains("result")) detail::print_human(out, doc["result"], "");
    if (!certificate.is_null()) {
      out << "certificate:\n";
      detail::print_human(out, certificate, "  ");
    }
  }
  return code;
}

}  // namespace chipfire::cli
