#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "focgnn/bench.hpp"
#include "focgnn/compiler.hpp"
#include "focgnn/generic_gnn.hpp"
#include "focgnn/graph_io.hpp"
#include "focgnn/tgnn.hpp"
#include "focgnn/zo_gnn.hpp"

namespace focgnn {

struct Mismatch {
  std::string graph;  // corpus item id
  std::string node;
  std::string expected;
  std::string actual;
  Json witness;  // minimized counterexample graph, or null

  auto key() const { return std::tie(graph, node, expected, actual); }
};

struct Report {
  std::string suite;    // equivalence | invariance | commutation | ...
  std::string subject;  // formula text or model description
  std::string backend;  // empty when not applicable
  std::uint64_t seed = 0;
  std::size_t graphs = 0;
  std::size_t nodes = 0;
  std::vector<Mismatch> mismatches;
  double wall_seconds = 0.0;

  bool pass() const { return mismatches.empty(); }
  // counts add up, mismatches are re-sorted; order-independent
  void merge(const Report& other);
  // wall time is omitted unless asked for, so reports are reproducible
  Json to_json(bool with_time = false) const;
  std::string table() const;
};

// Graphs are drawn from derived seeds (seed, index) and named g0000, g0001, ...
struct CorpusSpec {
  std::uint64_t seed = 1;
  std::size_t count = 20;
  std::size_t min_nodes = 4;
  std::size_t max_nodes = 10;
  Signature sig;
  double degree = 2.0;
  bool simple = false;
  std::size_t timestamps = 1;  // temporal corpora only
};

struct CorpusItem {
  std::string id;
  Graph graph;
};
struct TemporalCorpusItem {
  std::string id;
  TemporalGraph graph;
};

std::vector<CorpusItem> make_corpus(const CorpusSpec& spec);
std::vector<TemporalCorpusItem> make_temporal_corpus(const CorpusSpec& spec);

// The standard corpus and signature used by the acceptance suites:
// unary {A, B}, binary {r, s}, 20 graphs of 4-10 nodes, degree 2.
Signature standard_signature();
CorpusSpec standard_corpus(std::uint64_t seed = 1);

// Compares c.classify against the oracle at every node. Mismatches carry a
// witness minimized by greedy deletion of triples, nodes and unary facts.
// Throws ValidationError if the simple backend meets a non-simple graph.
Report check_equivalence(const CompiledClassifier& c, const std::vector<CorpusItem>& corpus,
                         std::size_t jobs = 1);

struct EquivalenceSuite {
  std::size_t formulas = 300;
  std::size_t graphs = 20;
  std::size_t min_nodes = 4;
  std::size_t max_nodes = 10;
  int max_depth = 2;
  std::int64_t max_threshold = 3;
  double degree = 2.0;
  Backend backend = Backend::kTransformed;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
};
// Random formulas over standard_signature(), each against its own corpus.
// The simple backend uses direction-respecting formulas and simple graphs.
Report run_equivalence_suite(const EquivalenceSuite& s);

// 100 random formulas x corpus: oracle agreement of f and to_rsfoc2(f) plus
// is_rsfoc2 on every output.
Report run_normalization_suite(std::size_t formulas, const CorpusSpec& corpus, std::uint64_t seed);

// Random relabeling of node names (a bijection on the node list).
std::map<std::string, std::string> random_permutation(const std::vector<std::string>& nodes,
                                                      std::uint64_t seed);
TemporalGraph permute_temporal(const TemporalGraph& tg,
                               const std::map<std::string, std::string>& perm);

// Per-node output of some subject on a graph, keyed by node name.
using NodeOutputs = std::map<std::string, std::string>;

// For each graph and permutation p: outputs(permute(g,p))[p'(v)] equals
// outputs(g)[v], where p' extends p to added nodes by a::b -> p(a)::p(b).
Report check_permutation_invariance(const std::string& subject,
                                    const std::function<NodeOutputs(const Graph&)>& outputs,
                                    const std::vector<CorpusItem>& corpus, std::size_t perms,
                                    std::uint64_t seed);
Report check_permutation_invariance(const std::string& subject,
                                    const std::function<NodeOutputs(const TemporalGraph&)>& outputs,
                                    const std::vector<TemporalCorpusItem>& corpus,
                                    std::size_t perms, std::uint64_t seed);

NodeOutputs oracle_outputs(const Formula& f, const Graph& g);
// every node of c.prepare(g), including added nodes
NodeOutputs classifier_outputs(const CompiledClassifier& c, const Graph& g);
NodeOutputs zo_outputs(const ZoGnn& m, const Graph& g);
NodeOutputs generic_outputs(const GenericGnn& m, const Graph& g);
NodeOutputs tgnn_outputs(const Tgnn& m, const TemporalGraph& tg);

// collapse_H(transform_FT(tg)) == transform_F(collapse_H(tg)) by canonical text
Report check_commutation(const std::vector<TemporalCorpusItem>& corpus);

struct RandomModelOptions {
  std::size_t min_layers = 1;
  std::size_t max_layers = 2;
  std::size_t max_width = 3;
  std::int64_t weight_range = 2;  // entries in [-w, w]
  double density = 0.5;           // chance an entry is nonzero
};
ZoGnn random_zo_gnn(std::uint64_t seed, const std::vector<std::string>& binary_order,
                    std::size_t input_dim, std::size_t output_dim,
                    const RandomModelOptions& opts = {});
// heterogeneous steps over a snapshot signature
Tgnn random_tgnn(std::uint64_t seed, const Signature& snapshot_sig, std::size_t timestamps,
                 std::size_t recurrent_dim, const RandomModelOptions& opts = {});

// Negates one nonzero weight (C, A or R entry) chosen by seed; `where`
// receives a description of the entry.
ZoGnn corrupt_weight(const ZoGnn& m, std::uint64_t seed, std::string* where = nullptr);

// Invariance over every engine: the oracle, compiled classifiers on both
// backends, a random 0/1-GNN, generic GNNs (lifted, and with mean/max
// aggregation) and a random temporal GNN.
std::vector<Report> run_invariance_battery(std::size_t graphs, std::size_t perms,
                                           std::uint64_t seed);

// count random temporal graphs with T in [min_t, max_t], plus the
// two-snapshot separation graph.
Report run_commutation_suite(std::size_t count, std::size_t min_t, std::size_t max_t,
                             std::uint64_t seed);

struct MutationResult {
  Report clean;
  Report corrupted;
  std::string where;  // the corrupted entry
};
// Compiles a fixed classifier, checks it on the standard corpus, then
// negates one weight (chosen by seed) and checks again.
MutationResult run_mutation_selftest(std::uint64_t seed);

}  // namespace focgnn
