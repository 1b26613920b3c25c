#include "strucnet/json_io.hpp"

#include "strucnet/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

namespace strucnet {

namespace {

const Json& require(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    throw ValidationError(std::string("document is missing required key \"") + key + "\"");
  return doc.at(key);
}

int node_1based(const Json& v, const char* what) {
  if (!v.is_number_integer())
    throw ValidationError(std::string(what) + " indices must be integers");
  const std::int64_t raw = v.get<std::int64_t>();
  if (raw < 1) throw ValidationError(std::string(what) + " indices are 1-based (got " +
                                     std::to_string(raw) + ")");
  return static_cast<int>(raw - 1);
}

std::vector<std::pair<int, int>> edges_from(const Json& arr, const char* what) {
  if (!arr.is_array()) throw ValidationError(std::string(what) + " must be an array of pairs");
  std::vector<std::pair<int, int>> out;
  out.reserve(arr.size());
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2)
      throw ValidationError(std::string(what) + " entries must be [from, to] pairs");
    out.emplace_back(node_1based(e[0], what), node_1based(e[1], what));
  }
  return out;
}

Json edges_to(const std::vector<std::pair<int, int>>& edges) {
  Json arr = Json::array();
  for (auto [a, b] : edges) arr.push_back({a + 1, b + 1});
  return arr;
}

Json shift(const std::vector<int>& nodes) {
  Json arr = Json::array();
  for (int v : nodes) arr.push_back(v + 1);
  return arr;
}

Json eigenvalues_to(const std::vector<PbhEigenvalue>& eigs) {
  Json arr = Json::array();
  for (const auto& e : eigs) {
    Json row{{"re", e.approx.real()},
             {"im", e.approx.imag()},
             {"multiplicity", e.multiplicity},
             {"rational", e.is_rational}};
    if (e.is_rational) row["exact"] = e.exact.str();
    arr.push_back(std::move(row));
  }
  return arr;
}

Json matrix_to(const MatQ& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json to_json(const StructuredNetwork& net) {
  Json doc{{"n", net.n},
           {"m", net.m},
           {"state_edges", edges_to(net.state_edges)},
           {"input_edges", edges_to(net.input_edges)}};
  if (!net.labels.empty()) doc["labels"] = net.labels;
  return doc;
}

Json to_json(const ExtendedNetwork& net) {
  Json doc = to_json(net.base);
  doc["orders"] = net.orders;
  Json het = Json::array();
  for (char h : net.heterogeneous) het.push_back(h != 0);
  doc["heterogeneous"] = het;
  return doc;
}

StructuredNetwork network_from_json(const Json& doc) {
  StructuredNetwork net;
  const Json& n = require(doc, "n");
  const Json& m = require(doc, "m");
  if (!n.is_number_integer() || !m.is_number_integer())
    throw ValidationError("n and m must be integers");
  net.n = n.get<int>();
  net.m = m.get<int>();
  net.state_edges = edges_from(require(doc, "state_edges"), "state_edges");
  net.input_edges = edges_from(require(doc, "input_edges"), "input_edges");
  if (doc.contains("labels")) {
    const Json& labels = doc.at("labels");
    if (!labels.is_array()) throw ValidationError("labels must be an array of strings");
    for (const auto& l : labels) {
      if (!l.is_string()) throw ValidationError("labels must be an array of strings");
      net.labels.push_back(l.get<std::string>());
    }
  }
  validate(net);
  return net;
}

ExtendedNetwork extended_from_json(const Json& doc) {
  ExtendedNetwork ext;
  ext.base = network_from_json(doc);
  const Json& orders = require(doc, "orders");
  if (!orders.is_array() || static_cast<int>(orders.size()) != ext.base.n)
    throw ValidationError("orders must list one integer per state node");
  for (const auto& o : orders) {
    if (!o.is_number_integer() || o.get<int>() < 1)
      throw ValidationError("subsystem orders must be integers >= 1");
    ext.orders.push_back(o.get<int>());
  }
  if (doc.contains("heterogeneous")) {
    const Json& het = doc.at("heterogeneous");
    if (!het.is_array() || static_cast<int>(het.size()) != ext.base.n)
      throw ValidationError("heterogeneous must list one boolean per state node");
    for (const auto& h : het) {
      if (!h.is_boolean()) throw ValidationError("heterogeneous entries must be booleans");
      ext.heterogeneous.push_back(h.get<bool>() ? 1 : 0);
    }
  } else {
    ext.heterogeneous.assign(ext.base.n, 0);
  }
  validate(ext);
  return ext;
}

std::variant<StructuredNetwork, ExtendedNetwork> any_network_from_json(const Json& doc) {
  if (doc.is_object() && doc.contains("orders")) return extended_from_json(doc);
  return network_from_json(doc);
}

std::variant<StructuredNetwork, ExtendedNetwork> parse_network_text(const std::string& text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ValidationError("input is not valid JSON");
  return any_network_from_json(doc);
}

Json to_json(const PathCycleCover& cover) {
  Json stems = Json::array();
  for (const auto& s : cover.stems)
    stems.push_back({{"input", s.input + 1}, {"nodes", shift(s.nodes)}});
  Json cycles = Json::array();
  for (const auto& c : cover.cycles) cycles.push_back(shift(c));
  return Json{{"stems", std::move(stems)}, {"cycles", std::move(cycles)}};
}

PathCycleCover cover_from_json(const Json& doc) {
  PathCycleCover cover;
  if (doc.contains("stems")) {
    const Json& stems = doc.at("stems");
    if (!stems.is_array()) throw ValidationError("stems must be an array");
    for (const auto& s : stems) {
      Stem stem;
      stem.input = node_1based(require(s, "input"), "input");
      const Json& nodes = require(s, "nodes");
      if (!nodes.is_array()) throw ValidationError("stem nodes must be an array");
      for (const auto& v : nodes) stem.nodes.push_back(node_1based(v, "stem node"));
      cover.stems.push_back(std::move(stem));
    }
  }
  if (doc.contains("cycles")) {
    const Json& cycles = doc.at("cycles");
    if (!cycles.is_array()) throw ValidationError("cycles must be an array");
    for (const auto& c : cycles) {
      if (!c.is_array()) throw ValidationError("each cycle must be an array of nodes");
      std::vector<int> cycle;
      for (const auto& v : c) cycle.push_back(node_1based(v, "cycle node"));
      cover.cycles.push_back(std::move(cycle));
    }
  }
  return cover;
}

Json to_json(const Classification& c) {
  Json overlaps = Json::array();
  for (const auto& [a, b, node] : c.reach_overlaps)
    overlaps.push_back({{"input_a", a + 1}, {"input_b", b + 1}, {"shared_node", node + 1}});
  Json doc{{"label", to_string(c.label)},
           {"d_c", c.d_c},
           {"num_states", c.num_states},
           {"inaccessible", shift(c.inaccessible)},
           {"acyclic", c.acyclic},
           {"reach_overlaps", std::move(overlaps)}};
  if (c.witness) doc["witness"] = to_json(*c.witness);
  if (c.dimension_witness) doc["dimension_witness"] = to_json(*c.dimension_witness);
  return doc;
}

Json to_json(const ExtensionPlan& plan) {
  Json doc{{"network", to_json(plan.result)},
           {"modified_subsystems", shift(plan.modified_subsystems)},
           {"s_first_order", plan.s_first_order},
           {"s_hat", plan.s_hat},
           {"delta", plan.delta},
           {"base_cover", to_json(plan.base_cover)}};
  if (plan.certificate) doc["certificate"] = to_json(*plan.certificate);
  return doc;
}

Json to_json(const RankVerification& v) {
  return Json{{"seed", v.seed},
              {"target", v.target},
              {"per_trial", v.per_trial},
              {"rank", v.rank},
              {"full_rank", v.full_rank}};
}

Json to_json(const PbhReport& r) {
  Json doc{{"mode", to_string(r.mode)},
           {"n", r.n},
           {"m", r.m},
           {"p", r.p},
           {"eigenvalues", eigenvalues_to(r.eigenvalues)},
           {"irrational_spectrum_degree", r.irrational_spectrum_degree},
           {"uncontrollable", eigenvalues_to(r.uncontrollable)},
           {"uncontrollable_complete", r.uncontrollable_complete},
           {"controllable_rank", r.controllable_rank},
           {"diagonalizable", r.diagonalizable},
           {"eigvec_condition", r.eigvec_condition},
           {"hypothesis", to_string(r.hypothesis)},
           {"which_test", to_string(r.which_test)},
           {"certificate_rank", r.certificate_rank},
           {"certificate_target", r.certificate_target},
           {"verdict", to_string(r.verdict)}};
  if (r.n_basis) doc["n_basis"] = matrix_to(*r.n_basis);
  doc["naive_per_eigenvalue_pass"] =
      r.naive_per_eigenvalue_pass ? Json(*r.naive_per_eigenvalue_pass) : Json(nullptr);
  if (!r.note.empty()) doc["note"] = r.note;
  return doc;
}

std::string export_dot(const SystemGraph& g) {
  std::ostringstream out;
  out << "digraph network {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=circle, fontsize=11];\n";
  for (int u = 0; u < g.num_inputs; ++u)
    out << "  u" << u << " [label=\"" << g.input_labels[u]
        << "\", shape=box, style=filled, fillcolor=lightgrey];\n";
  const std::vector<int> offsets = g.subsystem_offsets();
  const int num_subsystems = static_cast<int>(offsets.size()) - 1;
  for (int i = 0; i < num_subsystems; ++i) {
    if (offsets[i + 1] - offsets[i] < 2) continue;
    out << "  subgraph cluster_subsys_" << i + 1 << " {\n";
    out << "    label=\"subsystem " << i + 1 << "\";\n    color=red;\n";
    for (int v = offsets[i]; v < offsets[i + 1]; ++v)
      out << "    s" << v << " [label=\"" << g.state_labels[v] << "\"];\n";
    out << "  }\n";
  }
  for (int v = 0; v < g.num_states; ++v)
    if (g.subsystem_order[v] < 2)
      out << "  s" << v << " [label=\"" << g.state_labels[v] << "\"];\n";
  for (int u = 0; u < g.num_inputs; ++u)
    for (int v : g.input_adj[u]) out << "  u" << u << " -> s" << v << ";\n";
  for (int v = 0; v < g.num_states; ++v) {
    std::vector<int> succ = g.state_adj[v];
    std::sort(succ.begin(), succ.end());
    for (int w : succ) out << "  s" << v << " -> s" << w << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex;
  for (int shift_bits = 60; shift_bits >= 0; shift_bits -= 4)
    out << ((hash >> shift_bits) & 0xf);
  return out.str();
}

Json schema_catalog() {
  const Json edge_list{{"type", "array"},
                       {"items", {{"type", "array"},
                                  {"items", {{"type", "integer"}, {"minimum", 1}}},
                                  {"minItems", 2},
                                  {"maxItems", 2}}}};
  Json network{
      {"type", "object"},
      {"required", {"n", "m", "state_edges", "input_edges"}},
      {"properties",
       {{"n", {{"type", "integer"}, {"minimum", 1}}},
        {"m", {{"type", "integer"}, {"minimum", 1}}},
        {"state_edges", edge_list},
        {"input_edges", edge_list},
        {"labels", {{"type", "array"}, {"items", {{"type", "string"}}}}}}},
      {"description",
       "Directed network; state_edges are [from, to] state pairs, input_edges are "
       "[input, state] pairs; all indices 1-based; no self-loops or duplicates."}};
  Json extended = network;
  extended["required"].push_back("orders");
  extended["properties"]["orders"] =
      Json{{"type", "array"}, {"items", {{"type", "integer"}, {"minimum", 1}}}};
  extended["properties"]["heterogeneous"] =
      Json{{"type", "array"}, {"items", {{"type", "boolean"}}}};
  extended["description"] =
      "Extended network: per-subsystem local orders, optional heterogeneous flags.";
  Json cover{
      {"type", "object"},
      {"properties",
       {{"stems",
         {{"type", "array"},
          {"items",
           {{"type", "object"},
            {"required", {"input", "nodes"}},
            {"properties",
             {{"input", {{"type", "integer"}, {"minimum", 1}}},
              {"nodes", {{"type", "array"}, {"items", {{"type", "integer"}, {"minimum", 1}}}}}}}}}}},
        {"cycles",
         {{"type", "array"},
          {"items", {{"type", "array"}, {"items", {{"type", "integer"}, {"minimum", 1}}}}}}}}},
      {"description", "Stem/cycle family; stems list their driving input first node onward."}};
  Json envelope{
      {"type", "object"},
      {"required", {"tool", "version", "command", "input_digest"}},
      {"properties",
       {{"tool", {{"type", "string"}}},
        {"version", {{"type", "string"}}},
        {"command", {{"type", "string"}}},
        {"seed", {{"type", "integer"}}},
        {"input_digest", {{"type", "string"}}}}},
      {"description",
       "Common wrapper around every CLI JSON report; the payload is command-specific."}};
  return Json{{"network", network},
              {"extended_network", extended},
              {"cover", cover},
              {"report_envelope", envelope}};
}

}  // namespace strucnet
