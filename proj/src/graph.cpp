#include "focgnn/graph.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "focgnn/error.hpp"

namespace focgnn {

bool is_valid_predicate_name(std::string_view name) {
  if (name.empty()) return false;
  auto head = name.front();
  if (!(std::isalpha(static_cast<unsigned char>(head)) || head == '_')) return false;
  for (char c : name.substr(1)) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '@')) return false;
  }
  return true;
}

bool is_reserved_name(std::string_view name) {
  return name == kPrimal || name == kAux1 || name == kAux2;
}

Signature::Signature(std::vector<std::string> unary, std::vector<std::string> binary,
                     ReservedNames reserved)
    : unary_(std::move(unary)), binary_(std::move(binary)) {
  std::set<std::string> seen;
  auto check = [&](const std::string& n) {
    if (!is_valid_predicate_name(n)) throw ValidationError("invalid predicate name '" + n + "'");
    if (reserved == ReservedNames::kReject && is_reserved_name(n))
      throw ValidationError("reserved predicate name '" + n + "'");
    if (!seen.insert(n).second) throw ValidationError("duplicate predicate name '" + n + "'");
  };
  for (PredId i = 0; i < unary_.size(); ++i) {
    check(unary_[i]);
    unary_ix_.emplace(unary_[i], i);
  }
  for (PredId i = 0; i < binary_.size(); ++i) {
    check(binary_[i]);
    binary_ix_.emplace(binary_[i], i);
  }
}

std::optional<PredId> Signature::unary_index(std::string_view name) const {
  auto it = unary_ix_.find(std::string(name));
  if (it == unary_ix_.end()) return std::nullopt;
  return it->second;
}

std::optional<PredId> Signature::binary_index(std::string_view name) const {
  auto it = binary_ix_.find(std::string(name));
  if (it == binary_ix_.end()) return std::nullopt;
  return it->second;
}

bool Signature::is_transformed() const {
  return has_unary(kPrimal) && has_binary(kAux1) && has_binary(kAux2);
}

Graph::Graph(Signature sig, std::vector<std::string> nodes, std::vector<UnaryFact> unary,
             std::vector<Triple> triples)
    : sig_(std::move(sig)), nodes_(std::move(nodes)), unary_(std::move(unary)),
      triples_(std::move(triples)) {
  const auto n = nodes_.size();
  for (NodeId i = 0; i < n; ++i) {
    if (nodes_[i].empty()) throw ValidationError("empty node identifier");
    if (!node_ix_.emplace(nodes_[i], i).second)
      throw ValidationError("duplicate node '" + nodes_[i] + "'");
  }
  const auto nu = sig_.unary().size();
  const auto nb = sig_.binary().size();
  for (const auto& f : unary_) {
    if (f.node >= n || f.pred >= nu) throw ValidationError("unary fact out of range");
  }
  for (const auto& t : triples_) {
    if (t.source >= n || t.target >= n || t.pred >= nb)
      throw ValidationError("triple out of range");
    if (t.source == t.target)
      throw ValidationError("self-loop triple on node '" + nodes_[t.source] + "'");
  }
  std::sort(unary_.begin(), unary_.end());
  unary_.erase(std::unique(unary_.begin(), unary_.end()), unary_.end());
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());

  unary_bits_.assign(n * nu, 0);
  for (const auto& f : unary_) unary_bits_[static_cast<std::size_t>(f.node) * nu + f.pred] = 1;

  offsets_.assign(nb, std::vector<std::uint32_t>(n + 1, 0));
  targets_.assign(nb, {});
  for (const auto& t : triples_) offsets_[t.pred][t.source + 1]++;
  for (PredId p = 0; p < nb; ++p) {
    for (std::size_t v = 0; v < n; ++v) offsets_[p][v + 1] += offsets_[p][v];
    targets_[p].resize(offsets_[p][n]);
  }
  // triples_ is sorted by source then pred then target, so each target list
  // comes out sorted
  std::vector<std::vector<std::uint32_t>> fill(nb);
  for (PredId p = 0; p < nb; ++p) fill[p] = offsets_[p];
  for (const auto& t : triples_) targets_[t.pred][fill[t.pred][t.source]++] = t.target;
}

Graph Graph::from_names(
    Signature sig, std::vector<std::string> nodes,
    const std::vector<std::pair<std::string, std::string>>& unary,
    const std::vector<std::tuple<std::string, std::string, std::string>>& triples) {
  std::unordered_map<std::string, NodeId> ix;
  for (NodeId i = 0; i < nodes.size(); ++i) ix.emplace(nodes[i], i);
  auto node = [&](const std::string& name) {
    auto it = ix.find(name);
    if (it == ix.end()) throw ValidationError("unknown node '" + name + "'");
    return it->second;
  };
  std::vector<UnaryFact> uf;
  for (const auto& [v, p] : unary) {
    auto pi = sig.unary_index(p);
    if (!pi) throw ValidationError("unknown unary predicate '" + p + "'");
    uf.push_back({node(v), *pi});
  }
  std::vector<Triple> tr;
  for (const auto& [s, p, t] : triples) {
    auto pi = sig.binary_index(p);
    if (!pi) throw ValidationError("unknown binary predicate '" + p + "'");
    tr.push_back({node(s), *pi, node(t)});
  }
  return Graph(std::move(sig), std::move(nodes), std::move(uf), std::move(tr));
}

std::optional<NodeId> Graph::node_index(std::string_view name) const {
  auto it = node_ix_.find(std::string(name));
  if (it == node_ix_.end()) return std::nullopt;
  return it->second;
}

std::span<const NodeId> Graph::out_neighbors(NodeId v, PredId p) const {
  const auto& off = offsets_[p];
  return std::span<const NodeId>(targets_[p].data() + off[v], off[v + 1] - off[v]);
}

bool Graph::has_triple(NodeId s, PredId p, NodeId t) const {
  auto nb = out_neighbors(s, p);
  return std::binary_search(nb.begin(), nb.end(), t);
}

TemporalGraph::TemporalGraph(Signature sig, std::vector<std::string> nodes,
                             std::vector<Graph> snapshots)
    : sig_(std::move(sig)), nodes_(std::move(nodes)), snapshots_(std::move(snapshots)) {
  if (snapshots_.empty()) throw ValidationError("temporal graph needs at least one snapshot");
  for (const auto& s : snapshots_) {
    if (!(s.signature() == sig_)) throw ValidationError("snapshot signature mismatch");
    if (s.nodes() != nodes_) throw ValidationError("snapshot node set mismatch");
  }
}

FeatureAssignment encode_nodes(const Graph& g) {
  const auto& sig = g.signature();
  FeatureAssignment out(g.node_count(), sig.encoding_dim());
  if (sig.unary().empty()) {
    for (auto& r : out.rows) r[0] = 1;
    return out;
  }
  for (const auto& f : g.unary_facts()) out.rows[f.node][f.pred] = 1;
  return out;
}

std::vector<std::string> neighbors(const Graph& g, std::string_view node, std::string_view pred) {
  auto v = g.node_index(node);
  if (!v) throw ValidationError("unknown node '" + std::string(node) + "'");
  auto p = g.signature().binary_index(pred);
  if (!p) throw ValidationError("unknown binary predicate '" + std::string(pred) + "'");
  std::vector<std::string> out;
  for (auto w : g.out_neighbors(*v, *p)) out.push_back(g.node_name(w));
  return out;
}

bool is_simple(const Graph& g) {
  // triples are sorted by (source, pred, target); collect targets per source
  std::vector<NodeId> seen;
  std::size_t i = 0;
  const auto& tr = g.triples();
  while (i < tr.size()) {
    std::size_t j = i;
    seen.clear();
    while (j < tr.size() && tr[j].source == tr[i].source) seen.push_back(tr[j++].target);
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    i = j;
  }
  return true;
}

bool is_bounded(const Graph& g, std::size_t n) { return g.node_count() <= n; }

Graph add_inverse_predicates(const Graph& g) {
  const auto& sig = g.signature();
  auto binary = sig.binary();
  const auto k = binary.size();
  for (const auto& r : sig.binary()) {
    if (r.size() >= kInverseSuffix.size() && r.ends_with(kInverseSuffix))
      throw ValidationError("predicate '" + r + "' already carries the inverse suffix");
  }
  for (std::size_t i = 0; i < k; ++i) binary.push_back(binary[i] + std::string(kInverseSuffix));
  auto reserved = sig.is_transformed() ? ReservedNames::kAllow : ReservedNames::kReject;
  Signature out_sig(sig.unary(), std::move(binary), reserved);
  auto triples = g.triples();
  for (const auto& t : g.triples())
    triples.push_back({t.target, static_cast<PredId>(t.pred + k), t.source});
  return Graph(std::move(out_sig), g.nodes(), g.unary_facts(), std::move(triples));
}

Graph permute(const Graph& g, const std::map<std::string, std::string>& perm) {
  const auto n = g.node_count();
  if (perm.size() != n) throw ValidationError("permutation size does not match node count");
  std::vector<NodeId> map(n);
  std::vector<bool> hit(n, false);
  for (const auto& [from, to] : perm) {
    auto a = g.node_index(from);
    auto b = g.node_index(to);
    if (!a || !b) throw ValidationError("permutation references unknown node");
    if (hit[*b]) throw ValidationError("permutation is not a bijection");
    hit[*b] = true;
    map[*a] = *b;
  }
  std::vector<UnaryFact> uf;
  for (const auto& f : g.unary_facts()) uf.push_back({map[f.node], f.pred});
  std::vector<Triple> tr;
  for (const auto& t : g.triples()) tr.push_back({map[t.source], t.pred, map[t.target]});
  return Graph(g.signature(), g.nodes(), std::move(uf), std::move(tr));
}

}  // namespace focgnn
