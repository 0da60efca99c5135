#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/rational.hpp>

namespace focgnn {

using NodeId = std::uint32_t;
using PredId = std::uint32_t;
using Rational = boost::rational<std::int64_t>;

inline constexpr std::string_view kPrimal = "primal";
inline constexpr std::string_view kAux1 = "aux1";
inline constexpr std::string_view kAux2 = "aux2";
inline constexpr std::string_view kInverseSuffix = "_inv";

bool is_valid_predicate_name(std::string_view name);
bool is_reserved_name(std::string_view name);

enum class ReservedNames { kReject, kAllow };

class Signature {
 public:
  Signature() = default;
  Signature(std::vector<std::string> unary, std::vector<std::string> binary,
            ReservedNames reserved = ReservedNames::kReject);

  const std::vector<std::string>& unary() const { return unary_; }
  const std::vector<std::string>& binary() const { return binary_; }
  std::optional<PredId> unary_index(std::string_view name) const;
  std::optional<PredId> binary_index(std::string_view name) const;
  bool has_unary(std::string_view name) const { return unary_index(name).has_value(); }
  bool has_binary(std::string_view name) const { return binary_index(name).has_value(); }
  // dimension of the node encoding: |P1|, or 1 when P1 is empty
  std::size_t encoding_dim() const { return unary_.empty() ? 1 : unary_.size(); }
  // true when the signature carries primal, aux1 and aux2
  bool is_transformed() const;

  bool operator==(const Signature& other) const {
    return unary_ == other.unary_ && binary_ == other.binary_;
  }

 private:
  std::vector<std::string> unary_;
  std::vector<std::string> binary_;
  std::unordered_map<std::string, PredId> unary_ix_;
  std::unordered_map<std::string, PredId> binary_ix_;
};

struct UnaryFact {
  NodeId node;
  PredId pred;
  auto operator<=>(const UnaryFact&) const = default;
};

struct Triple {
  NodeId source;
  PredId pred;
  NodeId target;
  auto operator<=>(const Triple&) const = default;
};

class Graph {
 public:
  Graph() = default;
  // Facts are deduplicated; out-of-range indices and self-loops are rejected.
  Graph(Signature sig, std::vector<std::string> nodes, std::vector<UnaryFact> unary,
        std::vector<Triple> triples);

  static Graph from_names(
      Signature sig, std::vector<std::string> nodes,
      const std::vector<std::pair<std::string, std::string>>& unary,
      const std::vector<std::tuple<std::string, std::string, std::string>>& triples);

  const Signature& signature() const { return sig_; }
  const std::vector<std::string>& nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_.size(); }
  const std::string& node_name(NodeId v) const { return nodes_[v]; }
  std::optional<NodeId> node_index(std::string_view name) const;

  // sorted by (node, pred) and (source, pred, target)
  const std::vector<UnaryFact>& unary_facts() const { return unary_; }
  const std::vector<Triple>& triples() const { return triples_; }

  bool has_unary(NodeId v, PredId p) const {
    return unary_bits_[static_cast<std::size_t>(v) * sig_.unary().size() + p] != 0;
  }
  bool has_triple(NodeId s, PredId p, NodeId t) const;
  std::span<const NodeId> out_neighbors(NodeId v, PredId p) const;

  bool operator==(const Graph& other) const {
    return sig_ == other.sig_ && nodes_ == other.nodes_ && unary_ == other.unary_ &&
           triples_ == other.triples_;
  }

 private:
  Signature sig_;
  std::vector<std::string> nodes_;
  std::unordered_map<std::string, NodeId> node_ix_;
  std::vector<UnaryFact> unary_;
  std::vector<Triple> triples_;
  std::vector<std::uint8_t> unary_bits_;
  // CSR per predicate: offsets_[p] has n+1 entries into targets_[p]
  std::vector<std::vector<std::uint32_t>> offsets_;
  std::vector<std::vector<NodeId>> targets_;
};

class TemporalGraph {
 public:
  TemporalGraph() = default;
  TemporalGraph(Signature sig, std::vector<std::string> nodes, std::vector<Graph> snapshots);

  const Signature& signature() const { return sig_; }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Graph>& snapshots() const { return snapshots_; }
  const Graph& snapshot(std::size_t t) const { return snapshots_[t]; }
  std::size_t timestamps() const { return snapshots_.size(); }

  bool operator==(const TemporalGraph& other) const {
    return sig_ == other.sig_ && nodes_ == other.nodes_ && snapshots_ == other.snapshots_;
  }

 private:
  Signature sig_;
  std::vector<std::string> nodes_;
  std::vector<Graph> snapshots_;
};

struct FeatureAssignment {
  std::size_t dim = 0;
  std::vector<std::vector<Rational>> rows;

  FeatureAssignment() = default;
  FeatureAssignment(std::size_t nodes, std::size_t d)
      : dim(d), rows(nodes, std::vector<Rational>(d, Rational(0))) {}
  std::size_t node_count() const { return rows.size(); }
  bool operator==(const FeatureAssignment&) const = default;
};

FeatureAssignment encode_nodes(const Graph& g);

std::vector<std::string> neighbors(const Graph& g, std::string_view node, std::string_view pred);

bool is_simple(const Graph& g);

bool is_bounded(const Graph& g, std::size_t n);

Graph add_inverse_predicates(const Graph& g);

// Relabels facts through perm (old name -> new name). The node list keeps its
// order, so node positions are stable while the structure moves.
Graph permute(const Graph& g, const std::map<std::string, std::string>& perm);

}  // namespace focgnn
