#include "focgnn/bench.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "focgnn/error.hpp"
#include "focgnn/evaluate.hpp"
#include "focgnn/parser.hpp"
#include "focgnn/rng.hpp"
#include "focgnn/transform.hpp"

namespace focgnn {
namespace {

std::vector<std::string> numbered(std::size_t n, const std::string& prefix, std::size_t from) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(from + i));
  return out;
}

// m distinct unordered pairs (a < b) out of n nodes
std::vector<std::pair<NodeId, NodeId>> sample_pairs(Rng& rng, std::size_t n, std::size_t m) {
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  m = static_cast<std::size_t>(std::min<std::uint64_t>(m, total));
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(m);
  if (m * 3 >= total) {
    std::vector<std::pair<NodeId, NodeId>> all;
    all.reserve(total);
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = a + 1; b < n; ++b) all.emplace_back(a, b);
    for (std::size_t i = 0; i < m; ++i) {
      auto j = i + rng.below(all.size() - i);
      std::swap(all[i], all[j]);
      out.push_back(all[i]);
    }
    return out;
  }
  std::set<std::pair<NodeId, NodeId>> seen;
  while (out.size() < m) {
    auto a = static_cast<NodeId>(rng.below(n));
    auto b = static_cast<NodeId>(rng.below(n));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (seen.emplace(a, b).second) out.emplace_back(a, b);
  }
  return out;
}

}  // namespace

Fig1 make_fig1() {
  Signature sig({}, {"p1", "p2"});
  std::vector<std::string> nodes{"a", "b", "c", "d"};
  Fig1 out;
  out.g1 = Graph::from_names(sig, nodes, {},
                             {{"a", "p1", "b"}, {"a", "p2", "b"}, {"c", "p1", "d"}, {"c", "p2", "d"}});
  out.g2 = Graph::from_names(sig, nodes, {},
                             {{"a", "p1", "b"}, {"a", "p2", "c"}, {"c", "p1", "d"}, {"b", "p2", "d"}});
  out.classifier = parse_formula("E>=1 y (p1(x,y) & p2(x,y))", sig);
  return out;
}

GnHn make_gn_hn(std::size_t n) {
  if (n == 0) throw ValidationError("G(n)/H(n) need n >= 1");
  Signature sig({}, {"r1", "r2"});
  const auto nodes = numbered(4 * n + 2, "", 1);
  auto build = [&](std::size_t r1_last) {
    std::vector<std::tuple<std::string, std::string, std::string>> tr;
    for (std::size_t i = 2; i <= 4 * n + 2; ++i)
      tr.emplace_back("1", i <= r1_last ? "r1" : "r2", std::to_string(i));
    return Graph::from_names(sig, nodes, {}, tr);
  };
  GnHn out;
  out.g = build(2 * n + 2);
  out.h = build(2 * n + 1);
  out.separator.binary_order = sig.binary();
  out.separator.input_dim = 1;
  auto layer = zero_layer(1, 1, 2);
  layer.A[0].set(0, 0, 1);
  layer.A[1].set(0, 0, -1);
  out.separator.layers.push_back(std::move(layer));
  return out;
}

TemporalSep make_temporal_sep() {
  Signature sig({}, {"r"});
  const auto nodes = numbered(5, "", 1);
  auto s1 = Graph::from_names(sig, nodes, {}, {{"1", "r", "2"}, {"4", "r", "5"}});
  auto s2 = Graph::from_names(sig, nodes, {}, {{"2", "r", "3"}});
  TemporalSep out;
  out.graph = TemporalGraph(sig, nodes, {s1, s2});
  out.classifier =
      parse_formula("E>=1 y (r@1(x,y) & E>=1 x (r@2(y,x)))", temporal_signature(sig, 2));
  return out;
}

TemporalGraph random_temporal_graph(std::uint64_t seed, const Signature& sig,
                                    std::size_t timestamps, const RandomGraphOptions& opts) {
  if (opts.nodes < 2) throw ValidationError("random graphs need at least 2 nodes");
  if (opts.degree < 0) throw ValidationError("degree must be non-negative");
  if (timestamps == 0) throw ValidationError("need at least one timestamp");
  Rng rng(seed);
  const auto n = opts.nodes;
  const auto m = static_cast<std::size_t>(std::floor(opts.degree * static_cast<double>(n)));
  const auto pairs = sample_pairs(rng, n, m);
  const auto nodes = numbered(n, "v", 0);
  const auto nu = sig.unary().size();
  const auto nb = sig.binary().size();
  std::vector<Graph> snaps;
  for (std::size_t t = 0; t < timestamps; ++t) {
    std::vector<UnaryFact> uf;
    for (NodeId v = 0; v < n; ++v)
      for (PredId p = 0; p < nu; ++p)
        if (rng.chance(opts.unary_density)) uf.push_back({v, p});
    std::vector<Triple> tr;
    for (const auto& [a, b] : pairs) {
      if (nb == 0) break;
      for (int dir = 0; dir < 2; ++dir) {
        const auto s = dir == 0 ? a : b;
        const auto d = dir == 0 ? b : a;
        if (opts.simple) {
          if (rng.chance(opts.edge_probability))
            tr.push_back({s, static_cast<PredId>(rng.below(nb)), d});
          continue;
        }
        for (PredId r = 0; r < nb; ++r)
          if (rng.chance(opts.edge_probability)) tr.push_back({s, r, d});
      }
    }
    snaps.emplace_back(sig, nodes, std::move(uf), std::move(tr));
  }
  return TemporalGraph(sig, nodes, std::move(snaps));
}

Graph random_graph(std::uint64_t seed, const Signature& sig, const RandomGraphOptions& opts) {
  return random_temporal_graph(seed, sig, 1, opts).snapshot(0);
}

namespace {

std::string phi4_text() {
  std::string text;
  for (int t = 3; t <= 10; ++t) {
    const auto s = std::to_string(t), s1 = std::to_string(t - 1), s2 = std::to_string(t - 2);
    text += "let phit" + s + "(y) = E>=2 x (p1@" + s + "(x,y) & Red@" + s + "(x)) & E>=1 x (p2@" +
            s1 + "(x,y) & Blue@" + s2 + "(x));\n";
  }
  for (int t = 3; t <= 10; ++t) {
    const auto s = std::to_string(t), s1 = std::to_string(t - 1), s2 = std::to_string(t - 2);
    if (t > 3) text += "| ";
    text += "E>=2 y (Black@" + s + "(y) & Red@" + s1 + "(y) & Blue@" + s2 + "(y) & p1@" + s +
            "(x,y) & p2@" + s1 + "(x,y) & p3@" + s2 + "(x,y) & phit" + s + "(y))\n";
  }
  return text;
}

const char* kPhi1 = "E>=2 y (p1@1(x,y) & Red@1(y)) & E>=1 y (p1@2(x,y) & Blue@2(y))";

}  // namespace

ClassifierSetting builtin_setting(const std::string& id) {
  ClassifierSetting s;
  s.id = id;
  if (id == "phi1" || id == "phi2" || id == "phi3") {
    s.base = Signature({"Red", "Blue"}, {"p1"});
    s.timestamps = 2;
    s.degree = 3.0;
    const auto sig = temporal_signature(s.base, s.timestamps);
    if (id == "phi1")
      s.formula = parse_formula(kPhi1, sig);
    else if (id == "phi2")
      s.formula = parse_formula(std::string("let phi1(x) = ") + kPhi1 +
                                    ";\nE[10,20] y (!p1@2(x,y) & phi1(y))",
                                sig);
    else
      s.formula = parse_formula("E>=2 y (p1@1(x,y) & p1@2(x,y))", sig);
    return s;
  }
  if (id == "phi4") {
    s.base = Signature({"Black", "Red", "Blue"}, {"p1", "p2", "p3"});
    s.timestamps = 10;
    s.degree = 5.0;
    s.formula = parse_formula(phi4_text(), temporal_signature(s.base, s.timestamps));
    return s;
  }
  throw ValidationError("unknown classifier '" + id + "' (expected phi1..phi4)");
}

std::map<std::string, Formula> builtin_classifiers() {
  std::map<std::string, Formula> out;
  for (const char* id : {"phi1", "phi2", "phi3", "phi4"}) out[id] = builtin_setting(id).formula;
  return out;
}

double LabeledDataset::positive_rate() const {
  std::size_t pos = 0, total = 0;
  for (const auto& it : items) {
    total += it.labels.size();
    pos += static_cast<std::size_t>(std::count(it.labels.begin(), it.labels.end(), true));
  }
  return total == 0 ? 0.0 : static_cast<double>(pos) / static_cast<double>(total);
}

LabeledDataset gen_dataset(const ClassifierSetting& setting, const DatasetParams& params) {
  if (params.min_nodes < 2 || params.min_nodes > params.max_nodes)
    throw ValidationError("node range must satisfy 2 <= min <= max");
  LabeledDataset ds;
  ds.setting = setting;
  ds.params = params;
  ds.degree = params.degree > 0 ? params.degree : setting.degree;
  for (std::size_t i = 0; i < params.count; ++i) {
    const auto child = derive_seed(params.seed, i);
    Rng rng(child);
    RandomGraphOptions opts;
    opts.nodes = static_cast<std::size_t>(
        rng.range(static_cast<std::int64_t>(params.min_nodes),
                  static_cast<std::int64_t>(params.max_nodes)));
    opts.degree = ds.degree;
    opts.unary_density = params.unary_density;
    LabeledItem item;
    item.graph = random_temporal_graph(derive_seed(child, 1), setting.base, setting.timestamps, opts);
    item.labels = evaluate_nodes(setting.formula, collapse_H(item.graph));
    ds.items.push_back(std::move(item));
  }
  return ds;
}

void write_dataset(const LabeledDataset& ds, const std::string& dir) {
  std::filesystem::create_directories(dir);
  Json manifest;
  manifest["format_version"] = kFormatVersion;
  manifest["classifier"] = ds.setting.id;
  manifest["formula"] = print_formula(ds.setting.formula);
  manifest["signature"] = signature_to_json(ds.setting.base);
  manifest["timestamps"] = ds.setting.timestamps;
  manifest["seed"] = ds.params.seed;
  manifest["count"] = ds.params.count;
  manifest["nodes"] = {ds.params.min_nodes, ds.params.max_nodes};
  manifest["degree"] = ds.degree;
  manifest["unary_density"] = ds.params.unary_density;
  Json files = Json::array();
  Json labels = Json::object();
  for (std::size_t i = 0; i < ds.items.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "graph_%04zu", i);
    const auto& item = ds.items[i];
    write_text_file((std::filesystem::path(dir) / (std::string(name) + ".json")).string(),
                    temporal_to_json(item.graph).dump() + "\n");
    files.push_back(std::string(name) + ".json");
    Json per = Json::object();
    for (std::size_t v = 0; v < item.labels.size(); ++v)
      per[item.graph.nodes()[v]] = item.labels[v] ? 1 : 0;
    labels[name] = std::move(per);
  }
  manifest["graphs"] = std::move(files);
  manifest["positive_rate"] = ds.positive_rate();
  write_text_file((std::filesystem::path(dir) / "dataset.json").string(), manifest.dump(2) + "\n");
  write_text_file((std::filesystem::path(dir) / "labels.json").string(), labels.dump() + "\n");
}

}  // namespace focgnn
