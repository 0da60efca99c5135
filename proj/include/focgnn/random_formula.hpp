#pragma once

#include <cstdint>

#include "focgnn/formula.hpp"
#include "focgnn/graph.hpp"

namespace focgnn {

struct RandomFormulaOptions {
  int max_depth = 2;
  std::int64_t max_threshold = 3;
  // relation atoms only as r(outer, bound) of their enclosing quantifier
  bool forward_only = false;
  std::size_t max_size = 40;
};

// Deterministic for a fixed seed; the result has exactly the free variable x.
Formula random_formula(std::uint64_t seed, const Signature& sig,
                       const RandomFormulaOptions& opts = {});

}  // namespace focgnn
