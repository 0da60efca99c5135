#include "focgnn/transform.hpp"

#include <algorithm>
#include <unordered_map>

#include "focgnn/error.hpp"

namespace focgnn {
namespace {

void check_base(const Signature& sig, const std::vector<std::string>& nodes) {
  for (const auto& names : {sig.unary(), sig.binary()})
    for (const auto& p : names)
      if (is_reserved_name(p))
        throw ValidationError("input already uses reserved predicate '" + p + "'");
  for (const auto& v : nodes) {
    // a leading or trailing ':' would make a::b ambiguous as well
    if (v.find(kAddedSeparator) != std::string::npos || v.front() == ':' || v.back() == ':')
      throw ValidationError("node identifier '" + v + "' conflicts with the '::' separator");
  }
}

std::uint64_t pair_key(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// connected unordered pairs (a < b by node position), sorted
std::vector<std::pair<NodeId, NodeId>> connected_pairs(const std::vector<const Graph*>& gs) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (const auto* g : gs)
    for (const auto& t : g->triples())
      pairs.emplace_back(std::min(t.source, t.target), std::max(t.source, t.target));
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

class Reifier {
 public:
  Reifier(const Signature& base, const std::vector<std::string>& nodes,
          std::vector<std::pair<NodeId, NodeId>> pairs)
      : sig_(transformed_signature(base)), n_(static_cast<NodeId>(nodes.size())),
        pairs_(std::move(pairs)) {
    nodes_ = nodes;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      auto [a, b] = pairs_[i];
      index_.emplace(pair_key(a, b), i);
      nodes_.push_back(added_node_name(nodes[a], nodes[b]));
      nodes_.push_back(added_node_name(nodes[b], nodes[a]));
    }
    primal_ = *sig_.unary_index(kPrimal);
    aux1_ = *sig_.binary_index(kAux1);
    aux2_ = *sig_.binary_index(kAux2);
  }

  const Signature& signature() const { return sig_; }

  // base-level unary facts and triples; predicate ids refer to the base
  // signature, which is a prefix of the transformed one
  Graph build(const std::vector<UnaryFact>& unary, const std::vector<Triple>& triples) const {
    std::vector<UnaryFact> uf(unary.begin(), unary.end());
    for (NodeId v = 0; v < n_; ++v) uf.push_back({v, primal_});
    std::vector<Triple> tr;
    tr.reserve(triples.size() + 6 * pairs_.size());
    for (const auto& t : triples) {
      auto i = index_.at(pair_key(std::min(t.source, t.target), std::max(t.source, t.target)));
      NodeId ab = n_ + static_cast<NodeId>(2 * i);
      NodeId ba = ab + 1;
      if (t.source < t.target)
        tr.push_back({ab, t.pred, ba});
      else
        tr.push_back({ba, t.pred, ab});
    }
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      auto [a, b] = pairs_[i];
      NodeId ab = n_ + static_cast<NodeId>(2 * i);
      NodeId ba = ab + 1;
      tr.push_back({ab, aux1_, a});
      tr.push_back({a, aux1_, ab});
      tr.push_back({ba, aux1_, b});
      tr.push_back({b, aux1_, ba});
      tr.push_back({ab, aux2_, ba});
      tr.push_back({ba, aux2_, ab});
    }
    return Graph(sig_, nodes_, std::move(uf), std::move(tr));
  }

 private:
  Signature sig_;
  NodeId n_;
  std::vector<std::pair<NodeId, NodeId>> pairs_;
  std::vector<std::string> nodes_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  PredId primal_ = 0, aux1_ = 0, aux2_ = 0;
};

}  // namespace

std::string added_node_name(std::string_view a, std::string_view b) {
  std::string out(a);
  out += kAddedSeparator;
  out += b;
  return out;
}

std::string temporal_name(std::string_view pred, std::size_t t) {
  return std::string(pred) + "@" + std::to_string(t);
}

Signature transformed_signature(const Signature& base) {
  auto unary = base.unary();
  auto binary = base.binary();
  for (const auto& names : {unary, binary})
    for (const auto& p : names)
      if (is_reserved_name(p))
        throw ValidationError("input already uses reserved predicate '" + p + "'");
  unary.emplace_back(kPrimal);
  binary.emplace_back(kAux1);
  binary.emplace_back(kAux2);
  return Signature(std::move(unary), std::move(binary), ReservedNames::kAllow);
}

Graph transform_F(const Graph& g) {
  check_base(g.signature(), g.nodes());
  Reifier r(g.signature(), g.nodes(), connected_pairs({&g}));
  return r.build(g.unary_facts(), g.triples());
}

Signature temporal_signature(const Signature& base, std::size_t timestamps) {
  std::vector<std::string> unary, binary;
  for (const auto& names : {base.unary(), base.binary()})
    for (const auto& p : names)
      if (p.find('@') != std::string::npos)
        throw ValidationError("predicate '" + p + "' is already temporalized");
  for (std::size_t t = 1; t <= timestamps; ++t) {
    for (const auto& p : base.unary()) unary.push_back(temporal_name(p, t));
    for (const auto& p : base.binary()) binary.push_back(temporal_name(p, t));
  }
  return Signature(std::move(unary), std::move(binary));
}

TemporalGraph temporalize(const TemporalGraph& tg) {
  const auto& base = tg.signature();
  const auto T = tg.timestamps();
  auto sig = temporal_signature(base, T);
  const auto nu = static_cast<PredId>(base.unary().size());
  const auto nb = static_cast<PredId>(base.binary().size());
  std::vector<Graph> snaps;
  for (std::size_t t = 0; t < T; ++t) {
    const auto& s = tg.snapshot(t);
    std::vector<UnaryFact> uf;
    for (const auto& f : s.unary_facts())
      uf.push_back({f.node, static_cast<PredId>(t * nu + f.pred)});
    std::vector<Triple> tr;
    for (const auto& e : s.triples())
      tr.push_back({e.source, static_cast<PredId>(t * nb + e.pred), e.target});
    snaps.emplace_back(sig, tg.nodes(), std::move(uf), std::move(tr));
  }
  return TemporalGraph(sig, tg.nodes(), std::move(snaps));
}

namespace {

// every non-reserved predicate carries '@': snapshots are already
// temporalized (e.g. the output of transform_FT). Mixed signatures throw.
bool already_temporal(const Signature& sig) {
  std::size_t tagged = 0, plain = 0;
  for (const auto& names : {sig.unary(), sig.binary()})
    for (const auto& p : names) {
      if (is_reserved_name(p)) continue;
      (p.find('@') != std::string::npos ? tagged : plain) += 1;
    }
  if (tagged > 0 && plain > 0)
    throw ValidationError("signature mixes temporalized and plain predicates");
  return tagged > 0;
}

}  // namespace

Graph collapse_H(const TemporalGraph& tg) {
  auto tt = already_temporal(tg.signature()) ? tg : temporalize(tg);
  std::vector<UnaryFact> uf;
  std::vector<Triple> tr;
  for (const auto& s : tt.snapshots()) {
    uf.insert(uf.end(), s.unary_facts().begin(), s.unary_facts().end());
    tr.insert(tr.end(), s.triples().begin(), s.triples().end());
  }
  return Graph(tt.signature(), tt.nodes(), std::move(uf), std::move(tr));
}

TemporalGraph transform_FT(const TemporalGraph& tg) {
  check_base(tg.signature(), tg.nodes());
  auto tt = temporalize(tg);
  std::vector<const Graph*> gs;
  for (const auto& s : tt.snapshots()) gs.push_back(&s);
  Reifier r(tt.signature(), tt.nodes(), connected_pairs(gs));
  std::vector<Graph> snaps;
  for (const auto& s : tt.snapshots()) snaps.push_back(r.build(s.unary_facts(), s.triples()));
  auto nodes = snaps.front().nodes();
  return TemporalGraph(r.signature(), std::move(nodes), std::move(snaps));
}

}  // namespace focgnn
