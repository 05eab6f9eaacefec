#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "kfl/semantics.hpp"
#include "kfl/witness.hpp"

namespace kfl {

/// The on-disk model format:
///
///     {"nodes":["k0","k1"],"edges":[["k0","k1"]],"valuation":{"p":["k1"]}}
///
/// Node indices follow the order of "nodes". Unknown top-level keys (for
/// example the "failing" block of a countermodel) are ignored on input.
struct ModelDocument {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  /// Atom to member names, in input order.
  std::vector<std::pair<std::string, std::vector<std::string>>> valuation;

  std::optional<Node> index_of(std::string_view name) const;
};

/// Validates names, uniqueness, and references. Throws kfl::Error.
ModelDocument parse_model_document(const nlohmann::json& j);
ModelDocument load_model_document(const std::filesystem::path& path);

Model to_model(const ModelDocument& doc);

/// Default names are k0, k1, ...
std::vector<std::string> default_node_names(std::size_t n);
ModelDocument to_document(const Model& m, std::span<const std::string> names = {});

nlohmann::ordered_json to_json(const ModelDocument& doc);

/// Model document plus {"failing": {"node": name, "instance": text}} and,
/// for rules, the premises forced there.
nlohmann::ordered_json countermodel_to_json(const Countermodel& c,
                                            std::span<const std::string> names = {});

}  // namespace kfl
