#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "focgnn/formula.hpp"
#include "focgnn/graph.hpp"

namespace focgnn {

struct Assignment {
  std::optional<std::string> x;
  std::optional<std::string> y;
};

// Brute-force model checking. Quantifiers range over all nodes, including the
// node bound to the other variable.
bool evaluate(const Formula& f, const Graph& g, const Assignment& a);

// Truth value at every node for a formula whose free variables are within {x}.
std::vector<bool> evaluate_nodes(const Formula& f, const Graph& g);

// Predicate names in f that g's signature lacks (empty when f is well-formed).
std::vector<std::string> missing_predicates(const Formula& f, const Signature& sig);

}  // namespace focgnn
