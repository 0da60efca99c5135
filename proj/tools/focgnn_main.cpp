// focgnn command line: parse / eval / normalize / compile / run / transform /
// gen / verify / demo over the JSON graph and model formats.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "focgnn/bench.hpp"
#include "focgnn/compiler.hpp"
#include "focgnn/error.hpp"
#include "focgnn/evaluate.hpp"
#include "focgnn/graph_io.hpp"
#include "focgnn/model_io.hpp"
#include "focgnn/parser.hpp"
#include "focgnn/rsfoc.hpp"
#include "focgnn/tgnn.hpp"
#include "focgnn/transform.hpp"
#include "focgnn/verify.hpp"

using namespace focgnn;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr std::uint64_t kDefaultSeed = 1;

struct Options {
  bool pretty = false;
  std::string formula_path, expr, graph_path, signature_path, out_path, model_path;
  std::string node, backend = "transformed", op, classifier, family, nodes_range = "30:60";
  bool all = false, apply_f = false, with_inverse = false, with_time = false;
  std::uint64_t seed = kDefaultSeed;
  std::size_t count = 100, n = 1, jobs = 1, formulas = 300, graphs = 20, min_nodes = 4,
              max_nodes = 10, perms = 10, min_t = 2, max_t = 4, timestamps = 1, depth = 2;
  std::int64_t max_threshold = 3;
  double degree = -1, density = 0.5;
  std::string unary = "A,B", binary = "r,s", subject = "all";
};

void emit(const Json& j, const Options& o) { std::cout << (o.pretty ? j.dump(2) : j.dump()) << "\n"; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
  auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      auto v = std::stoul(s);
      return {v, v};
    }
    return {std::stoul(s.substr(0, colon)), std::stoul(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ValidationError("bad range '" + s + "' (expected LO:HI)");
  }
}

bool is_temporal(const Json& j) { return j.is_object() && j.contains("snapshots"); }

struct AnyGraph {
  std::optional<Graph> g;
  std::optional<TemporalGraph> tg;
};

AnyGraph load_graph(const std::string& path) {
  if (path.empty()) throw ValidationError("--graph is required");
  auto j = read_json_file(path);
  AnyGraph out;
  if (is_temporal(j))
    out.tg = temporal_from_json(j);
  else
    out.g = graph_from_json(j);
  return out;
}

// signature formulas are checked against: the graph's, temporalized for
// temporal graphs, or an explicit signature file
Signature formula_signature(const Options& o) {
  if (!o.signature_path.empty()) return signature_from_json(read_json_file(o.signature_path));
  if (!o.graph_path.empty()) {
    auto g = load_graph(o.graph_path);
    if (g.tg) return temporal_signature(g.tg->signature(), g.tg->timestamps());
    return g.g->signature();
  }
  throw ValidationError("a signature source is required (--graph or --signature)");
}

Formula load_formula(const Options& o, const Signature& sig) {
  if (!o.expr.empty() && !o.formula_path.empty())
    throw ValidationError("give either --formula or --expr, not both");
  if (!o.expr.empty()) return parse_formula(o.expr, sig);
  if (o.formula_path.empty()) throw ValidationError("a formula is required (--formula or --expr)");
  return parse_formula(read_text(o.formula_path), sig);
}

// graph the formula is evaluated on: temporal graphs are collapsed
Graph static_view(const AnyGraph& g) { return g.tg ? collapse_H(*g.tg) : *g.g; }

int cmd_parse(const Options& o) {
  auto f = load_formula(o, formula_signature(o));
  Json j;
  j["formula"] = print_formula(f);
  j["depth"] = quantifier_depth(f);
  j["size"] = f->size();
  Json fv = Json::array();
  if (f->free_vars() & var_bit(Var::kX)) fv.push_back("x");
  if (f->free_vars() & var_bit(Var::kY)) fv.push_back("y");
  j["free_variables"] = std::move(fv);
  emit(j, o);
  return 0;
}

int cmd_eval(const Options& o) {
  auto ag = load_graph(o.graph_path);
  auto g = static_view(ag);
  auto f = load_formula(o, g.signature());
  if (f->free_vars() & var_bit(Var::kY)) throw ValidationError("formula has free variable y");
  auto vals = evaluate_nodes(f, g);
  Json j;
  j["formula"] = print_formula(f);
  if (!o.node.empty() && !o.all) {
    auto v = g.node_index(o.node);
    if (!v) throw ValidationError("unknown node '" + o.node + "'");
    j["node"] = o.node;
    j["value"] = static_cast<bool>(vals[*v]);
  } else {
    Json m = Json::object();
    std::size_t pos = 0;
    for (std::size_t v = 0; v < vals.size(); ++v) {
      m[g.node_name(static_cast<NodeId>(v))] = vals[v] ? 1 : 0;
      pos += vals[v] ? 1 : 0;
    }
    j["values"] = std::move(m);
    j["positive"] = pos;
  }
  emit(j, o);
  return 0;
}

int cmd_normalize(const Options& o) {
  auto f = load_formula(o, formula_signature(o));
  auto n = to_rsfoc2(f);
  Json j;
  j["input"] = print_formula(f);
  j["normalized"] = print_formula(n);
  j["is_rsfoc2"] = is_rsfoc2(n);
  j["depth"] = quantifier_depth(n);
  emit(j, o);
  return 0;
}

int cmd_compile(const Options& o) {
  const auto sig = formula_signature(o);
  auto c = compile(load_formula(o, sig), sig, backend_from_name(o.backend));
  const auto text = compiled_to_json(c).dump() + "\n";
  if (o.out_path.empty()) {
    std::cout << text;
    return 0;
  }
  write_text_file(o.out_path, text);
  Json j;
  j["out"] = o.out_path;
  j["backend"] = backend_name(c.backend);
  j["layers"] = c.model.layers.size();
  j["inverse_augmented"] = c.inverse_augmented;
  emit(j, o);
  return 0;
}

int cmd_run(const Options& o) {
  if (o.model_path.empty()) throw ValidationError("--model is required");
  auto mj = read_json_file(o.model_path);
  const auto kind = mj.value("kind", std::string());
  auto ag = load_graph(o.graph_path);
  FeatureAssignment out;
  std::vector<std::string> nodes;
  if (kind == "tgnn") {
    if (!ag.tg) throw ValidationError("temporal models need a temporal graph");
    auto m = tgnn_from_json(mj);
    auto tg = o.apply_f ? transform_FT(*ag.tg) : *ag.tg;
    out = forward_tgnn(m, tg);
    nodes = tg.nodes();
  } else {
    if (!ag.g) throw ValidationError("static models need a static graph; collapse with transform --op H");
    Graph g = *ag.g;
    if (kind == "zo") {
      if (mj.contains("metadata") && o.apply_f) {
        auto c = compiled_from_json(mj);
        g = c.prepare(g);
        out = forward_zo(c.model, g);
      } else {
        if (o.apply_f) g = transform_F(g);
        out = forward_zo(zo_from_json(mj), g);
      }
    } else if (kind == "generic") {
      if (o.apply_f) g = transform_F(g);
      out = forward_generic(generic_from_json(mj), g, encode_nodes(g));
    } else {
      throw FormatError("unknown model kind '" + kind + "'");
    }
    nodes = g.nodes();
  }
  emit(features_to_json(out, nodes), o);
  return 0;
}

int cmd_transform(const Options& o) {
  auto ag = load_graph(o.graph_path);
  std::string text;
  if (o.op == "F") {
    if (!ag.g) throw ValidationError("F applies to static graphs; use FT for temporal graphs");
    auto g = o.with_inverse ? add_inverse_predicates(*ag.g) : *ag.g;
    text = graph_to_json(transform_F(g)).dump();
  } else {
    if (!ag.tg) throw ValidationError("--op " + o.op + " needs a temporal graph");
    if (o.op == "H")
      text = graph_to_json(collapse_H(*ag.tg)).dump();
    else if (o.op == "temporalize")
      text = temporal_to_json(temporalize(*ag.tg)).dump();
    else if (o.op == "FT")
      text = temporal_to_json(transform_FT(*ag.tg)).dump();
    else
      throw ValidationError("unknown --op '" + o.op + "' (F, H, temporalize, FT)");
  }
  write_or_print(o.out_path, text + "\n");
  return 0;
}

int cmd_gen(const Options& o) {
  if (!o.classifier.empty()) {
    auto setting = builtin_setting(o.classifier);
    DatasetParams p;
    p.count = o.count;
    std::tie(p.min_nodes, p.max_nodes) = parse_range(o.nodes_range);
    p.seed = o.seed;
    p.unary_density = o.density;
    if (o.degree > 0) p.degree = o.degree;
    auto ds = gen_dataset(setting, p);
    if (o.out_path.empty()) throw ValidationError("gen --classifier needs --out DIR");
    write_dataset(ds, o.out_path);
    Json j;
    j["out"] = o.out_path;
    j["classifier"] = o.classifier;
    j["graphs"] = ds.items.size();
    j["positive_rate"] = ds.positive_rate();
    emit(j, o);
    return 0;
  }
  Json j;
  if (o.family == "fig1") {
    auto f = make_fig1();
    j["G1"] = graph_to_json(f.g1);
    j["G2"] = graph_to_json(f.g2);
    j["formula"] = print_formula(f.classifier);
  } else if (o.family == "gnhn") {
    auto f = make_gn_hn(o.n);
    j["G"] = graph_to_json(f.g);
    j["H"] = graph_to_json(f.h);
    j["separator"] = zo_to_json(f.separator);
  } else if (o.family == "temporal") {
    auto f = make_temporal_sep();
    j["graph"] = temporal_to_json(f.graph);
    j["formula"] = print_formula(f.classifier);
  } else if (o.family == "random") {
    Signature sig(split_list(o.unary), split_list(o.binary));
    RandomGraphOptions ro;
    std::tie(ro.nodes, std::ignore) = parse_range(o.nodes_range);
    ro.degree = o.degree > 0 ? o.degree : 3.0;
    ro.unary_density = o.density;
    j = o.timestamps > 1 ? temporal_to_json(random_temporal_graph(o.seed, sig, o.timestamps, ro))
                         : graph_to_json(random_graph(o.seed, sig, ro));
  } else {
    throw ValidationError("gen needs --classifier phi1..phi4 or --family fig1|gnhn|temporal|random");
  }
  write_or_print(o.out_path, (o.pretty ? j.dump(2) : j.dump()) + "\n");
  return 0;
}

int report_out(const std::vector<Report>& reps, const Options& o) {
  bool ok = true;
  for (const auto& r : reps) ok = ok && r.pass();
  if (o.pretty) {
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (i) std::cout << "\n";
      std::cout << reps[i].table();
    }
  } else if (reps.size() == 1) {
    emit(reps[0].to_json(o.with_time), o);
  } else {
    Json arr = Json::array();
    for (const auto& r : reps) arr.push_back(r.to_json(o.with_time));
    Json j;
    j["pass"] = ok;
    j["reports"] = std::move(arr);
    emit(j, o);
  }
  return ok ? 0 : 1;
}

int cmd_verify(const std::string& which, const Options& o) {
  if (which == "equivalence") {
    if (!o.expr.empty() || !o.formula_path.empty()) {
      const auto sig = standard_signature();
      auto c = compile(load_formula(o, sig), sig, backend_from_name(o.backend));
      auto spec = standard_corpus(o.seed);
      spec.count = o.graphs;
      spec.min_nodes = o.min_nodes;
      spec.max_nodes = o.max_nodes;
      spec.simple = c.backend == Backend::kSimple;
      if (o.degree > 0) spec.degree = o.degree;
      auto rep = check_equivalence(c, make_corpus(spec), o.jobs);
      rep.seed = o.seed;
      return report_out({rep}, o);
    }
    EquivalenceSuite s;
    s.formulas = o.formulas;
    s.graphs = o.graphs;
    s.min_nodes = o.min_nodes;
    s.max_nodes = o.max_nodes;
    s.max_depth = static_cast<int>(o.depth);
    s.max_threshold = o.max_threshold;
    if (o.degree > 0) s.degree = o.degree;
    s.backend = backend_from_name(o.backend);
    s.seed = o.seed;
    s.jobs = o.jobs;
    return report_out({run_equivalence_suite(s)}, o);
  }
  if (which == "normalization") {
    auto spec = standard_corpus(o.seed);
    spec.count = o.graphs;
    spec.min_nodes = o.min_nodes;
    spec.max_nodes = o.max_nodes;
    return report_out({run_normalization_suite(o.formulas, spec, o.seed)}, o);
  }
  if (which == "invariance") {
    auto reps = run_invariance_battery(o.graphs, o.perms, o.seed);
    if (o.subject != "all") {
      std::vector<Report> keep;
      for (auto& r : reps)
        if (r.subject.rfind(o.subject, 0) == 0) keep.push_back(std::move(r));
      if (keep.empty()) throw ValidationError("no invariance subject matches '" + o.subject + "'");
      reps = std::move(keep);
    }
    return report_out(reps, o);
  }
  if (which == "commutation")
    return report_out({run_commutation_suite(o.count, o.min_t, o.max_t, o.seed)}, o);
  if (which == "mutation") {
    auto res = run_mutation_selftest(o.seed);
    // the self-test passes when the corrupted model is caught
    Report summary = res.corrupted;
    summary.suite = "mutation";
    const bool caught = res.clean.pass() && !res.corrupted.pass();
    if (o.pretty) {
      std::cout << "clean model:     " << (res.clean.pass() ? "0 mismatches" : "MISMATCHES") << "\n";
      std::cout << "corrupted entry: " << res.where << "\n";
      std::cout << "corrupted model: " << res.corrupted.mismatches.size() << " mismatches\n";
      std::cout << "result           " << (caught ? "PASS" : "FAIL") << "\n";
    } else {
      Json j;
      j["clean"] = res.clean.to_json(o.with_time);
      j["corrupted"] = res.corrupted.to_json(o.with_time);
      j["where"] = res.where;
      j["pass"] = caught;
      emit(j, o);
    }
    return caught ? 0 : 1;
  }
  throw ValidationError("unknown verify suite '" + which + "'");
}

int cmd_demo(const std::string& which, const Options& o) {
  Json j;
  std::ostringstream text;
  bool ok = true;
  if (which == "fig1") {
    auto f = make_fig1();
    auto c = compile_transformed(f.classifier, f.g1.signature());
    j["formula"] = print_formula(f.classifier);
    text << "classifier " << print_formula(f.classifier) << "\n";
    std::size_t agree = 0, probes = 0;
    for (auto [name, g] : {std::pair<std::string, const Graph*>{"G1", &f.g1}, {"G2", &f.g2}}) {
      auto oracle = evaluate_nodes(f.classifier, *g);
      auto model = c.classify(*g);
      Json per = Json::object();
      for (std::size_t v = 0; v < oracle.size(); ++v) {
        const auto& node = g->node_name(static_cast<NodeId>(v));
        per[node] = {{"oracle", static_cast<bool>(oracle[v])}, {"model", static_cast<bool>(model[v])}};
        ++probes;
        agree += oracle[v] == model[v] ? 1 : 0;
      }
      j[name] = std::move(per);
      text << "oracle a@" << name << " = " << (oracle[0] ? "true" : "false") << ", compiled on F("
           << name << ") = " << (model[0] ? "true" : "false") << ", simple graph: "
           << (is_simple(*g) ? "yes" : "no") << "\n";
    }
    j["probes"] = probes;
    j["agree"] = agree;
    text << "compiled-on-F model agrees with the oracle at " << agree << "/" << probes
         << " probes\n";
    ok = agree == probes;
  } else if (which == "gnhn") {
    Json rows = Json::array();
    for (std::size_t n : {1, 2, 5, 10}) {
      auto f = make_gn_hn(n);
      auto sg = forward_zo(f.separator, f.g).rows[0][0] != Rational(0);
      auto sh = forward_zo(f.separator, f.h).rows[0][0] != Rational(0);
      auto lifted = lift_to_transformed(f.separator, f.g.signature());
      auto lg = transform_F(f.g), lh = transform_F(f.h);
      auto fg = forward_generic(lifted, lg, encode_nodes(lg)).rows[0][0] != Rational(0);
      auto fh = forward_generic(lifted, lh, encode_nodes(lh)).rows[0][0] != Rational(0);
      rows.push_back({{"n", n}, {"G", sg}, {"H", sh}, {"lifted_G", fg}, {"lifted_H", fh}});
      text << "n=" << n << ": separator G(n)@1=" << sg << " H(n)@1=" << sh
           << ", lifted on F: G=" << fg << " H=" << fh << "\n";
      ok = ok && sg && !sh && fg == sg && fh == sh;
    }
    j["families"] = std::move(rows);
  } else if (which == "temporal") {
    auto f = make_temporal_sep();
    auto h = collapse_H(f.graph);
    auto oracle = evaluate_nodes(f.classifier, h);
    auto model = compile_pipeline(f.classifier, f.graph);
    j["formula"] = print_formula(f.classifier);
    j["collapsed_triples"] = h.triples().size();
    Json per = Json::object();
    text << "classifier " << print_formula(f.classifier) << "\n";
    for (std::size_t v = 0; v < oracle.size(); ++v) {
      const bool m = model.rows[v][0] != Rational(0);
      per[h.node_name(static_cast<NodeId>(v))] = {{"oracle", static_cast<bool>(oracle[v])}, {"model", m}};
      text << "node " << h.node_name(static_cast<NodeId>(v)) << ": oracle " << oracle[v]
           << ", F(H) model " << m << "\n";
      ok = ok && m == oracle[v];
    }
    j["nodes"] = std::move(per);
  } else {
    throw ValidationError("unknown demo '" + which + "' (fig1, gnhn, temporal)");
  }
  j["pass"] = ok;
  if (o.pretty)
    std::cout << text.str();
  else
    emit(j, o);
  return ok ? 0 : 1;
}

void print_error(const std::string& kind, const std::string& message) {
  Json j;
  j["error"] = {{"kind", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting two-variable logic and relational GNNs"};
  app.set_version_flag("--version", std::string("focgnn ") + kVersion + " (graph/model format v" +
                                        std::to_string(kFormatVersion) + ")");
  app.require_subcommand(1);
  Options o;
  app.add_flag("--pretty", o.pretty, "human-readable output");

  auto formula_opts = [&](CLI::App* c) {
    c->add_option("--formula", o.formula_path, "formula file");
    c->add_option("-e,--expr", o.expr, "formula text");
    c->add_option("--signature", o.signature_path, "signature JSON file");
  };
  auto pretty = [&](CLI::App* c) { c->add_flag("--pretty", o.pretty, "human-readable output"); };

  auto* parse = app.add_subcommand("parse", "echo the canonical form and depth of a formula");
  formula_opts(parse);
  parse->add_option("--graph", o.graph_path, "take the signature from a graph");
  pretty(parse);

  auto* eval = app.add_subcommand("eval", "evaluate a formula at nodes of a graph");
  formula_opts(eval);
  eval->add_option("--graph", o.graph_path, "graph JSON (temporal graphs are collapsed)")->required();
  eval->add_option("--node", o.node, "single node");
  eval->add_flag("--all", o.all, "every node (default)");
  pretty(eval);

  auto* norm = app.add_subcommand("normalize", "rewrite into relation-specified form");
  formula_opts(norm);
  norm->add_option("--graph", o.graph_path, "take the signature from a graph");
  pretty(norm);

  auto* comp = app.add_subcommand("compile", "compile a classifier into a 0/1-GNN");
  formula_opts(comp);
  comp->add_option("--graph", o.graph_path, "take the signature from a graph");
  comp->add_option("--backend", o.backend, "simple | transformed")->capture_default_str();
  comp->add_option("--out", o.out_path, "model file (stdout when omitted)");
  pretty(comp);

  auto* run = app.add_subcommand("run", "run a model on a graph");
  run->add_option("--model", o.model_path, "model JSON")->required();
  run->add_option("--graph", o.graph_path, "graph JSON")->required();
  run->add_flag("--apply-F", o.apply_f, "transform the graph first (FT for temporal models)");
  pretty(run);

  auto* tr = app.add_subcommand("transform", "apply F, H, temporalize or FT");
  tr->add_option("--op", o.op, "F | H | temporalize | FT")->required();
  tr->add_option("--graph", o.graph_path, "graph JSON")->required();
  tr->add_option("--out", o.out_path, "output file (stdout when omitted)");
  tr->add_flag("--with-inverse", o.with_inverse, "add r_inv predicates before F");

  auto* gen = app.add_subcommand("gen", "generate datasets and graph families");
  gen->add_option("--classifier", o.classifier, "phi1 | phi2 | phi3 | phi4");
  gen->add_option("--family", o.family, "fig1 | gnhn | temporal | random");
  gen->add_option("--count", o.count, "graphs in a dataset")->capture_default_str();
  gen->add_option("--nodes", o.nodes_range, "node range LO:HI")->capture_default_str();
  gen->add_option("--seed", o.seed, "seed")->capture_default_str();
  gen->add_option("--degree", o.degree, "pairs per node (classifier default when omitted)");
  gen->add_option("--density", o.density, "unary fact probability")->capture_default_str();
  gen->add_option("--n", o.n, "family size for gnhn")->capture_default_str();
  gen->add_option("--unary", o.unary, "unary predicates for random graphs")->capture_default_str();
  gen->add_option("--binary", o.binary, "binary predicates for random graphs")->capture_default_str();
  gen->add_option("--timestamps", o.timestamps, "snapshots for random graphs")->capture_default_str();
  gen->add_option("--out", o.out_path, "output directory (datasets) or file");
  pretty(gen);

  auto* ver = app.add_subcommand("verify", "oracle equivalence and invariance suites");
  ver->require_subcommand(1);
  auto common = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "seed")->capture_default_str();
    c->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
    c->add_flag("--with-time", o.with_time, "include wall time in JSON output");
    pretty(c);
  };
  auto* veq = ver->add_subcommand("equivalence", "compiled model vs oracle");
  common(veq);
  formula_opts(veq);
  veq->add_option("--formulas", o.formulas, "random formulas")->capture_default_str();
  veq->add_option("--graphs", o.graphs, "graphs per formula")->capture_default_str();
  veq->add_option("--min-nodes", o.min_nodes)->capture_default_str();
  veq->add_option("--max-nodes", o.max_nodes)->capture_default_str();
  veq->add_option("--depth", o.depth, "maximum quantifier depth")->capture_default_str();
  veq->add_option("--max-threshold", o.max_threshold)->capture_default_str();
  veq->add_option("--degree", o.degree, "pairs per node (default 2)");
  veq->add_option("--backend", o.backend, "simple | transformed")->capture_default_str();
  auto* vnorm = ver->add_subcommand("normalization", "formula vs its normal form");
  common(vnorm);
  vnorm->add_option("--formulas", o.formulas)->capture_default_str();
  vnorm->add_option("--graphs", o.graphs)->capture_default_str();
  vnorm->add_option("--min-nodes", o.min_nodes)->capture_default_str();
  vnorm->add_option("--max-nodes", o.max_nodes)->capture_default_str();
  auto* vinv = ver->add_subcommand("invariance", "permutation invariance of every engine");
  common(vinv);
  vinv->add_option("--graphs", o.graphs)->capture_default_str();
  vinv->add_option("--perms", o.perms, "permutations per graph")->capture_default_str();
  vinv->add_option("--subject", o.subject, "report prefix filter, or all")->capture_default_str();
  auto* vcom = ver->add_subcommand("commutation", "H . FT against F . H");
  common(vcom);
  vcom->add_option("--count", o.count)->capture_default_str();
  vcom->add_option("--min-t", o.min_t)->capture_default_str();
  vcom->add_option("--max-t", o.max_t)->capture_default_str();
  auto* vmut = ver->add_subcommand("mutation", "harness self-test with a corrupted weight");
  common(vmut);

  auto* demo = app.add_subcommand("demo", "separation examples with computed values");
  std::string demo_which;
  demo->add_option("which", demo_which, "fig1 | gnhn | temporal")->required();
  pretty(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage_error", e.what());
    return 2;
  }

  if (o.count == 0 && gen->parsed()) o.count = 1;
  try {
    if (parse->parsed()) return cmd_parse(o);
    if (eval->parsed()) return cmd_eval(o);
    if (norm->parsed()) return cmd_normalize(o);
    if (comp->parsed()) return cmd_compile(o);
    if (run->parsed()) return cmd_run(o);
    if (tr->parsed()) return cmd_transform(o);
    if (gen->parsed()) return cmd_gen(o);
    if (ver->parsed()) {
      for (auto* sub : ver->get_subcommands()) return cmd_verify(sub->get_name(), o);
    }
    if (demo->parsed()) return cmd_demo(demo_which, o);
  } catch (const ParseError& e) {
    Json j;
    j["error"] = {{"kind", e.kind()}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}};
    std::cerr << j.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    print_error(e.kind(), e.what());
    return 2;
  } catch (const nlohmann::json::exception& e) {
    print_error("format_error", e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error("internal_error", e.what());
    return 3;
  }
  return 0;
}
