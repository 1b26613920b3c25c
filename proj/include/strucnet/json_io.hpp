#pragma once

#include "strucnet/classify.hpp"
#include "strucnet/cover.hpp"
#include "strucnet/extend.hpp"
#include "strucnet/network.hpp"
#include "strucnet/verify.hpp"

#include <json.hpp>  // vendored single-header nlohmann/json

#include <cstdint>
#include <string>
#include <variant>

namespace strucnet {

using Json = nlohmann::json;

// All documents use 1-based node indices; the converters translate.

Json to_json(const StructuredNetwork& net);
Json to_json(const ExtendedNetwork& net);
StructuredNetwork network_from_json(const Json& doc);
ExtendedNetwork extended_from_json(const Json& doc);

/// Loads either document kind ("orders" key selects the extended form).
std::variant<StructuredNetwork, ExtendedNetwork> any_network_from_json(const Json& doc);
std::variant<StructuredNetwork, ExtendedNetwork> parse_network_text(const std::string& text);

Json to_json(const PathCycleCover& cover);
PathCycleCover cover_from_json(const Json& doc);

Json to_json(const Classification& c);
Json to_json(const ExtensionPlan& plan);
Json to_json(const RankVerification& v);
Json to_json(const PbhReport& r);

/// Deterministic Graphviz rendering: inputs as filled boxes, one cluster
/// "subsys_<i>" per subsystem of order >= 2, edges sorted.
std::string export_dot(const SystemGraph& g);

/// FNV-1a 64-bit content digest, hex-encoded; embedded in CLI reports.
std::string fnv1a_hex(const std::string& bytes);

/// JSON schema catalog for every document kind the CLI reads or writes.
Json schema_catalog();

}  // namespace strucnet
