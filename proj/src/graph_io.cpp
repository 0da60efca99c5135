#include "focgnn/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "focgnn/error.hpp"

namespace focgnn {
namespace {

void require_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                  std::string_view what) {
  if (!j.is_object()) throw FormatError(std::string(what) + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw FormatError("unknown key '" + key + "' in " + std::string(what));
  }
}

std::vector<std::string> string_list(const Json& j, std::string_view what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw FormatError(std::string(what) + " entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Json facts_to_json(const Graph& g, bool unary) {
  const auto& sig = g.signature();
  Json out = Json::array();
  if (unary) {
    std::vector<std::pair<std::string, std::string>> fs;
    for (const auto& f : g.unary_facts())
      fs.emplace_back(g.node_name(f.node), sig.unary()[f.pred]);
    std::sort(fs.begin(), fs.end());
    for (auto& [v, p] : fs) out.push_back(Json::array({v, p}));
  } else {
    std::vector<std::tuple<std::string, std::string, std::string>> ts;
    for (const auto& t : g.triples())
      ts.emplace_back(g.node_name(t.source), sig.binary()[t.pred], g.node_name(t.target));
    std::sort(ts.begin(), ts.end());
    for (auto& [s, p, t] : ts) out.push_back(Json::array({s, p, t}));
  }
  return out;
}

Graph facts_from_json(const Signature& sig, const std::vector<std::string>& nodes,
                      const Json& unary, const Json& triples) {
  std::vector<std::pair<std::string, std::string>> uf;
  std::vector<std::tuple<std::string, std::string, std::string>> tr;
  if (!unary.is_null()) {
    if (!unary.is_array()) throw FormatError("unary_facts must be an array");
    for (const auto& f : unary) {
      if (!f.is_array() || f.size() != 2 || !f[0].is_string() || !f[1].is_string())
        throw FormatError("unary fact must be [node, predicate]");
      uf.emplace_back(f[0].get<std::string>(), f[1].get<std::string>());
    }
  }
  if (!triples.is_null()) {
    if (!triples.is_array()) throw FormatError("triples must be an array");
    for (const auto& t : triples) {
      if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_string() ||
          !t[2].is_string())
        throw FormatError("triple must be [source, predicate, target]");
      tr.emplace_back(t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>());
    }
  }
  return Graph::from_names(sig, nodes, uf, tr);
}

}  // namespace

void check_format_version(const Json& j) {
  if (!j.is_object() || !j.contains("format_version")) return;
  const auto& v = j["format_version"];
  if (!v.is_number_integer() || v.get<std::int64_t>() != kFormatVersion)
    throw FormatError("unsupported format_version " + v.dump() + " (this build reads v" +
                      std::to_string(kFormatVersion) + ")");
}

Json signature_to_json(const Signature& sig) {
  Json j;
  j["unary"] = sig.unary();
  j["binary"] = sig.binary();
  return j;
}

Signature signature_from_json(const Json& j) {
  require_keys(j, {"unary", "binary"}, "signature");
  auto unary = j.contains("unary") ? string_list(j["unary"], "signature.unary")
                                   : std::vector<std::string>{};
  auto binary = j.contains("binary") ? string_list(j["binary"], "signature.binary")
                                     : std::vector<std::string>{};
  // reserved names are only legal in the full set that F produces
  bool transformed = std::find(unary.begin(), unary.end(), kPrimal) != unary.end() &&
                     std::find(binary.begin(), binary.end(), kAux1) != binary.end() &&
                     std::find(binary.begin(), binary.end(), kAux2) != binary.end();
  return Signature(std::move(unary), std::move(binary),
                   transformed ? ReservedNames::kAllow : ReservedNames::kReject);
}

Json graph_to_json(const Graph& g) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["signature"] = signature_to_json(g.signature());
  j["nodes"] = g.nodes();
  j["unary_facts"] = facts_to_json(g, true);
  j["triples"] = facts_to_json(g, false);
  return j;
}

Graph graph_from_json(const Json& j) {
  require_keys(j, {"format_version", "signature", "nodes", "unary_facts", "triples"}, "graph");
  check_format_version(j);
  if (!j.contains("signature") || !j.contains("nodes"))
    throw FormatError("graph requires 'signature' and 'nodes'");
  auto sig = signature_from_json(j["signature"]);
  auto nodes = string_list(j["nodes"], "nodes");
  return facts_from_json(sig, nodes, j.value("unary_facts", Json()), j.value("triples", Json()));
}

Json temporal_to_json(const TemporalGraph& tg) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["signature"] = signature_to_json(tg.signature());
  j["nodes"] = tg.nodes();
  Json snaps = Json::array();
  for (const auto& s : tg.snapshots()) {
    Json sj;
    sj["unary_facts"] = facts_to_json(s, true);
    sj["triples"] = facts_to_json(s, false);
    snaps.push_back(std::move(sj));
  }
  j["snapshots"] = std::move(snaps);
  return j;
}

TemporalGraph temporal_from_json(const Json& j) {
  require_keys(j, {"format_version", "signature", "nodes", "snapshots"}, "temporal graph");
  check_format_version(j);
  if (!j.contains("signature") || !j.contains("nodes") || !j.contains("snapshots"))
    throw FormatError("temporal graph requires 'signature', 'nodes' and 'snapshots'");
  auto sig = signature_from_json(j["signature"]);
  auto nodes = string_list(j["nodes"], "nodes");
  if (!j["snapshots"].is_array()) throw FormatError("snapshots must be an array");
  std::vector<Graph> snaps;
  for (const auto& sj : j["snapshots"]) {
    require_keys(sj, {"unary_facts", "triples"}, "snapshot");
    snaps.push_back(
        facts_from_json(sig, nodes, sj.value("unary_facts", Json()), sj.value("triples", Json())));
  }
  return TemporalGraph(sig, nodes, std::move(snaps));
}

Json rational_to_json(const Rational& r) {
  if (r.denominator() == 1) return r.numerator();
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    auto s = j.get<std::string>();
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(s));
      return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
      throw FormatError("bad rational '" + s + "'");
    }
  }
  throw FormatError("rational must be an integer or \"p/q\" string");
}

Json features_to_json(const FeatureAssignment& fa, const std::vector<std::string>& nodes) {
  Json j;
  j["dim"] = fa.dim;
  Json feats = Json::object();
  for (std::size_t v = 0; v < fa.rows.size(); ++v) {
    Json row = Json::array();
    for (const auto& x : fa.rows[v]) row.push_back(rational_to_json(x));
    feats[nodes.at(v)] = std::move(row);
  }
  j["features"] = std::move(feats);
  return j;
}

std::string canonical_string(const Graph& g) { return graph_to_json(g).dump(); }

std::string canonical_string(const TemporalGraph& tg) { return temporal_to_json(tg).dump(); }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("invalid JSON in '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

}  // namespace focgnn
