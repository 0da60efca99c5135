#pragma once

#include <string>

#include <json.hpp>

#include "focgnn/graph.hpp"

namespace focgnn {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// throws FormatError if j carries a format_version other than kFormatVersion
void check_format_version(const Json& j);

Json signature_to_json(const Signature& sig);
Signature signature_from_json(const Json& j);

// Facts are emitted sorted by node/predicate names for byte-stable output.
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json temporal_to_json(const TemporalGraph& tg);
TemporalGraph temporal_from_json(const Json& j);

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json features_to_json(const FeatureAssignment& fa, const std::vector<std::string>& nodes);

// compact single-line dump, used for equality checks and file output
std::string canonical_string(const Graph& g);
std::string canonical_string(const TemporalGraph& tg);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace focgnn
