#pragma once

#include <variant>
#include <vector>

#include "focgnn/generic_gnn.hpp"
#include "focgnn/graph.hpp"
#include "focgnn/zo_gnn.hpp"

namespace focgnn {

using StepModel = std::variant<ZoGnn, GenericGnn>;

// One model per timestamp. Step t reads [encoding of snapshot t : x^{t-1}]
// and must output recurrent_dim values; x^0 is zero.
struct Tgnn {
  std::vector<StepModel> steps;
  std::size_t recurrent_dim = 1;

  std::size_t timestamps() const { return steps.size(); }
  void validate(const Signature& snapshot_sig) const;
};

// Runs step t on snapshot t of tg as given (callers temporalize first if the
// steps bind temporalized predicates).
FeatureAssignment forward_tgnn(const Tgnn& m, const TemporalGraph& tg);

// Single shared parameter set with state T*d whose slice T reproduces the
// original final output. All steps must be ZoGnn.
Tgnn homogenize(const Tgnn& m);

// Lifted model over transformed_signature(base); equal to m on primal nodes
// of transform_F(g). base fixes where the primal coordinate sits.
GenericGnn lift_to_transformed(const ZoGnn& m, const Signature& base);

}  // namespace focgnn
