#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "focgnn/formula.hpp"
#include "focgnn/graph.hpp"
#include "focgnn/graph_io.hpp"
#include "focgnn/zo_gnn.hpp"

namespace focgnn {

struct Fig1 {
  Graph g1;
  Graph g2;
  Formula classifier;  // E>=1 y (p1(x,y) & p2(x,y))
};
Fig1 make_fig1();

struct GnHn {
  Graph g;
  Graph h;
  ZoGnn separator;  // one layer: r1 count minus r2 count
};
// n >= 1; nodes are named 1..4n+2, node 1 is the centre
GnHn make_gn_hn(std::size_t n);

struct TemporalSep {
  TemporalGraph graph;
  Formula classifier;  // over the temporalized signature
};
TemporalSep make_temporal_sep();

struct RandomGraphOptions {
  std::size_t nodes = 10;
  // delta: delta * nodes unordered pairs are drawn (capped at n(n-1)/2)
  double degree = 3.0;
  double edge_probability = 0.5;  // per pair, timestamp, relation and direction
  double unary_density = 0.5;     // per node, predicate and timestamp
  // at most one relation per ordered pair and timestamp
  bool simple = false;
};

// node names are v0, v1, ...
Graph random_graph(std::uint64_t seed, const Signature& sig, const RandomGraphOptions& opts);
TemporalGraph random_temporal_graph(std::uint64_t seed, const Signature& sig,
                                    std::size_t timestamps, const RandomGraphOptions& opts);

// Generation settings for a classifier over temporal graphs.
struct ClassifierSetting {
  std::string id;
  Signature base;  // snapshot signature
  std::size_t timestamps = 2;
  double degree = 3.0;
  Formula formula;  // over temporal_signature(base, timestamps)
};

// phi1 .. phi4
std::map<std::string, Formula> builtin_classifiers();
ClassifierSetting builtin_setting(const std::string& id);

struct DatasetParams {
  std::size_t count = 100;
  std::size_t min_nodes = 30;
  std::size_t max_nodes = 60;
  std::uint64_t seed = 7;
  double unary_density = 0.5;
  // overrides the classifier's default degree when positive
  double degree = 0.0;
};

struct LabeledItem {
  TemporalGraph graph;
  std::vector<bool> labels;  // per node, oracle on collapse_H(graph)
};

struct LabeledDataset {
  ClassifierSetting setting;
  DatasetParams params;
  double degree = 0.0;  // the degree actually used
  std::vector<LabeledItem> items;

  double positive_rate() const;
};

LabeledDataset gen_dataset(const ClassifierSetting& setting, const DatasetParams& params);

// dataset.json, graph_XXXX.json, labels.json
void write_dataset(const LabeledDataset& ds, const std::string& dir);

}  // namespace focgnn
