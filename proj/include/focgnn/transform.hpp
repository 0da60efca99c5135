#pragma once

#include <string>

#include "focgnn/graph.hpp"

namespace focgnn {

inline constexpr std::string_view kAddedSeparator = "::";

std::string added_node_name(std::string_view a, std::string_view b);
std::string temporal_name(std::string_view pred, std::size_t t);  // t is 1-based

// base signature plus primal / aux1 / aux2
Signature transformed_signature(const Signature& base);

// Reifies every connected node pair {a,b} into mirror nodes a::b and b::a.
Graph transform_F(const Graph& g);

// signature with p@t for every t (t-major), used by temporalize and collapse_H
Signature temporal_signature(const Signature& base, std::size_t timestamps);

TemporalGraph temporalize(const TemporalGraph& tg);

// Union of the temporalized snapshots. Snapshots whose predicates already
// carry '@' (the output of transform_FT) are united as they are.
Graph collapse_H(const TemporalGraph& tg);

TemporalGraph transform_FT(const TemporalGraph& tg);

}  // namespace focgnn
