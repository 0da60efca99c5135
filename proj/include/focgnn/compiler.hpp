#pragma once

#include <string>
#include <vector>

#include "focgnn/formula.hpp"
#include "focgnn/graph.hpp"
#include "focgnn/graph_io.hpp"
#include "focgnn/zo_gnn.hpp"

namespace focgnn {

enum class Backend { kSimple, kTransformed };

const char* backend_name(Backend b);
Backend backend_from_name(const std::string& name);

struct CompiledClassifier {
  ZoGnn model;  // one output coordinate
  Backend backend = Backend::kSimple;
  Formula source;
  Formula normalized;
  Signature base;
  // base for simple; transformed (possibly inverse-augmented) base otherwise
  Signature target;
  bool inverse_augmented = false;

  // graph the model runs on: g itself, or F(g) (after inverse augmentation
  // when the normalized formula reads some relation backwards)
  Graph prepare(const Graph& g) const;
  // one value per node of g
  std::vector<bool> classify(const Graph& g) const;
};

// Exact on simple graphs. Throws CompileError when a guard reads a relation
// backwards, since out-neighbour aggregation cannot see incoming edges.
CompiledClassifier compile_simple(const Formula& f, const Signature& base);

// Exact on every graph, run on prepare(g).
CompiledClassifier compile_transformed(const Formula& f, const Signature& base);

CompiledClassifier compile(const Formula& f, const Signature& base, Backend backend);

// Compiles f over the temporalized signature of tg and classifies the
// original nodes through F(H(tg)).
FeatureAssignment compile_pipeline(const Formula& f, const TemporalGraph& tg);

// model file with a "metadata" block
Json compiled_to_json(const CompiledClassifier& c);
CompiledClassifier compiled_from_json(const Json& j);

}  // namespace focgnn
