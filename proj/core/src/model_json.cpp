#include "kfl/model_json.hpp"

#include <fstream>
#include <set>

#include "kfl/error.hpp"

namespace kfl {

namespace {

std::string expect_string(const nlohmann::json& j, const char* what) {
  if (!j.is_string()) throw Error(std::string("model JSON: ") + what + " must be a string");
  return j.get<std::string>();
}

}  // namespace

std::optional<Node> ModelDocument::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == name) return i;
  return std::nullopt;
}

ModelDocument parse_model_document(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("model JSON must be an object");
  ModelDocument doc;

  if (!j.contains("nodes") || !j["nodes"].is_array())
    throw Error("model JSON: \"nodes\" must be an array");
  std::set<std::string> seen;
  for (const auto& n : j["nodes"]) {
    auto name = expect_string(n, "node name");
    if (name.empty()) throw Error("model JSON: empty node name");
    if (!seen.insert(name).second) throw Error("model JSON: duplicate node '" + name + "'");
    doc.nodes.push_back(std::move(name));
  }
  if (doc.nodes.empty()) throw Error("model JSON: a model needs at least one node");
  if (doc.nodes.size() > kMaxNodes)
    throw Error("model JSON: at most " + std::to_string(kMaxNodes) + " nodes are supported");

  auto require_node = [&](const std::string& name) {
    if (!doc.index_of(name)) throw Error("model JSON: unknown node '" + name + "'");
  };

  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw Error("model JSON: \"edges\" must be an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) throw Error("model JSON: each edge is a [from, to] pair");
      auto from = expect_string(e[0], "edge endpoint");
      auto to = expect_string(e[1], "edge endpoint");
      require_node(from);
      require_node(to);
      doc.edges.emplace_back(std::move(from), std::move(to));
    }
  }

  if (j.contains("valuation")) {
    if (!j["valuation"].is_object()) throw Error("model JSON: \"valuation\" must be an object");
    for (const auto& [atom, members] : j["valuation"].items()) {
      if (!is_atom_name(atom)) throw Error("model JSON: invalid atom name '" + atom + "'");
      if (!members.is_array()) throw Error("model JSON: valuation of '" + atom + "' must be an array");
      std::vector<std::string> names;
      for (const auto& m : members) {
        auto name = expect_string(m, "valuation member");
        require_node(name);
        names.push_back(std::move(name));
      }
      doc.valuation.emplace_back(atom, std::move(names));
    }
  }
  return doc;
}

ModelDocument load_model_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("model file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_model_document(j);
}

Model to_model(const ModelDocument& doc) {
  std::vector<std::pair<Node, Node>> edges;
  for (const auto& [a, b] : doc.edges) edges.emplace_back(*doc.index_of(a), *doc.index_of(b));
  Valuation v;
  for (const auto& [atom, members] : doc.valuation) {
    NodeSet s;
    for (const auto& name : members) s.insert(*doc.index_of(name));
    v[atom] = s;
  }
  return Model(Frame::from_edges(doc.nodes.size(), edges), std::move(v));
}

std::vector<std::string> default_node_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("k" + std::to_string(i));
  return names;
}

ModelDocument to_document(const Model& m, std::span<const std::string> names) {
  std::vector<std::string> own;
  if (names.empty()) {
    own = default_node_names(m.size());
    names = own;
  }
  if (names.size() != m.size()) throw Error("node name list does not match the model size");
  ModelDocument doc;
  doc.nodes.assign(names.begin(), names.end());
  for (auto [a, b] : m.frame().edges()) doc.edges.emplace_back(names[a], names[b]);
  for (const auto& [atom, set] : m.valuation()) {
    std::vector<std::string> members;
    for (Node k : set) members.push_back(names[k]);
    doc.valuation.emplace_back(atom, std::move(members));
  }
  return doc;
}

nlohmann::ordered_json to_json(const ModelDocument& doc) {
  nlohmann::ordered_json j;
  j["nodes"] = doc.nodes;
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : doc.edges) j["edges"].push_back({a, b});
  j["valuation"] = nlohmann::ordered_json::object();
  for (const auto& [atom, members] : doc.valuation) j["valuation"][atom] = members;
  return j;
}

nlohmann::ordered_json countermodel_to_json(const Countermodel& c,
                                            std::span<const std::string> names) {
  ModelDocument doc = to_document(c.model, names);
  nlohmann::ordered_json j = to_json(doc);
  nlohmann::ordered_json failing;
  failing["theorem"] = std::string(to_string(c.theorem));
  failing["node"] = doc.nodes[c.failing_node];
  failing["instance"] = render(c.failing_instance);
  if (!c.premises.empty()) {
    failing["premises"] = nlohmann::ordered_json::array();
    for (const auto& p : c.premises) failing["premises"].push_back(render(p));
  }
  j["failing"] = std::move(failing);
  return j;
}

}  // namespace kfl
