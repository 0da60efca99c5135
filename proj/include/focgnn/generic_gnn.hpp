#pragma once

#include <memory>
#include <string>
#include <vector>

#include "focgnn/graph.hpp"
#include "focgnn/zo_gnn.hpp"

namespace focgnn {

enum class Aggregate { kSum, kMax, kMean };

const char* aggregate_name(Aggregate a);
Aggregate aggregate_from_name(const std::string& name);

enum class ProgramOp { kInput, kSlice, kConcat, kPad, kAffine, kGate };

class ProgramNode;
using Program = std::shared_ptr<const ProgramNode>;

// Combine programs are built from a fixed constructor library. The input of a
// program is the flat vector [self : agg_1 : ... : agg_K : readout], each part
// of the layer's input width.
class ProgramNode {
 public:
  ProgramOp op = ProgramOp::kInput;
  std::size_t start = 0;  // slice start; pad left; gate coordinate
  std::size_t len = 0;    // slice length; pad right
  IntMatrix weights;      // affine
  std::vector<std::int64_t> bias;
  bool clip = true;
  std::vector<Program> parts;  // operands; gate uses parts[0] = then, parts[1] = else
};

Program prog_input();
Program prog_slice(Program of, std::size_t start, std::size_t len);
Program prog_concat(std::vector<Program> parts);
Program prog_pad(Program of, std::size_t left, std::size_t right);
Program prog_affine(Program of, IntMatrix weights, std::vector<std::int64_t> bias, bool clip);
// then_branch when self[coord] != 0, else_branch otherwise
Program prog_gate(std::size_t coord, Program then_branch, Program else_branch);

// output length for an input of the given length; throws on inconsistency
std::size_t program_output_dim(const Program& p, std::size_t input_len, std::size_t self_dim);

struct GenericLayer {
  std::vector<Aggregate> aggregate;  // one per relation
  Aggregate readout = Aggregate::kSum;
  Program combine;
  std::size_t input_dim = 0;
  std::size_t output_dim = 0;
};

struct GenericGnn {
  std::vector<std::string> binary_order;
  std::size_t input_dim = 1;
  std::vector<GenericLayer> layers;

  std::size_t output_dim() const { return layers.empty() ? input_dim : layers.back().output_dim; }
  std::size_t relations() const { return binary_order.size(); }
  void validate() const;
};

// Builds a layer and infers its output dimension from the program.
GenericLayer make_generic_layer(std::size_t relations, std::size_t input_dim, Program combine,
                                Aggregate aggregate = Aggregate::kSum,
                                Aggregate readout = Aggregate::kSum);

FeatureAssignment forward_generic(const GenericGnn& m, const Graph& g,
                                  const FeatureAssignment& init);

// sum-aggregation embedding of a 0/1-GNN
GenericGnn generic_from_zo(const ZoGnn& m);

}  // namespace focgnn
