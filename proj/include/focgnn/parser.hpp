#pragma once

#include <string>
#include <string_view>

#include "focgnn/formula.hpp"
#include "focgnn/graph.hpp"

namespace focgnn {

// Largest counting threshold accepted anywhere (keeps compiled biases and
// pre-activations far from 64-bit limits).
inline constexpr std::int64_t kMaxThreshold = std::int64_t{1} << 31;

// Parses a program: optional `let name(v) = formula;` macro definitions
// followed by one formula. Predicates are checked against sig.
Formula parse_formula(std::string_view text, const Signature& sig);

// Canonical concrete syntax; parse_formula(print_formula(f)) reproduces f.
std::string print_formula(const Formula& f);

}  // namespace focgnn
