#include "focgnn/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "focgnn/error.hpp"
#include "focgnn/evaluate.hpp"
#include "focgnn/parser.hpp"
#include "focgnn/random_formula.hpp"
#include "focgnn/rng.hpp"
#include "focgnn/rsfoc.hpp"
#include "focgnn/transform.hpp"

namespace focgnn {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string item_id(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%04zu", prefix, i);
  return buf;
}

// runs fn(i) for i in [0, n) on up to `jobs` threads
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (;;) {
        auto i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void sort_mismatches(std::vector<Mismatch>& ms) {
  std::sort(ms.begin(), ms.end(), [](const Mismatch& a, const Mismatch& b) { return a.key() < b.key(); });
}

// Graph as editable name-level facts.
struct FactGraph {
  Signature sig;
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> unary;
  std::vector<std::tuple<std::string, std::string, std::string>> triples;

  static FactGraph of(const Graph& g) {
    FactGraph f;
    f.sig = g.signature();
    f.nodes = g.nodes();
    for (const auto& u : g.unary_facts())
      f.unary.emplace_back(g.node_name(u.node), g.signature().unary()[u.pred]);
    for (const auto& t : g.triples())
      f.triples.emplace_back(g.node_name(t.source), g.signature().binary()[t.pred],
                             g.node_name(t.target));
    return f;
  }
  Graph build() const { return Graph::from_names(sig, nodes, unary, triples); }
};

// Greedy deletion while the disagreement at `probe` persists.
Graph minimize_witness(const CompiledClassifier& c, const Graph& g, const std::string& probe) {
  auto differs = [&](const Graph& h) {
    auto v = *h.node_index(probe);
    return evaluate_nodes(c.source, h)[v] != c.classify(h)[v];
  };
  auto cur = FactGraph::of(g);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < cur.triples.size();) {
      auto trial = cur;
      trial.triples.erase(trial.triples.begin() + static_cast<std::ptrdiff_t>(i));
      if (differs(trial.build())) {
        cur = std::move(trial);
        changed = true;
      } else {
        ++i;
      }
    }
    for (std::size_t i = 0; i < cur.nodes.size();) {
      const auto name = cur.nodes[i];
      if (name == probe) {
        ++i;
        continue;
      }
      auto trial = cur;
      trial.nodes.erase(trial.nodes.begin() + static_cast<std::ptrdiff_t>(i));
      std::erase_if(trial.unary, [&](const auto& u) { return u.first == name; });
      std::erase_if(trial.triples, [&](const auto& t) {
        return std::get<0>(t) == name || std::get<2>(t) == name;
      });
      if (differs(trial.build())) {
        cur = std::move(trial);
        changed = true;
      } else {
        ++i;
      }
    }
    for (std::size_t i = 0; i < cur.unary.size();) {
      auto trial = cur;
      trial.unary.erase(trial.unary.begin() + static_cast<std::ptrdiff_t>(i));
      if (differs(trial.build())) {
        cur = std::move(trial);
        changed = true;
      } else {
        ++i;
      }
    }
  }
  return cur.build();
}

std::string bit(bool b) { return b ? "1" : "0"; }

std::string rational_text(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string row_text(const std::vector<Rational>& row) {
  std::string s = "[";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) s += ",";
    s += rational_text(row[i]);
  }
  return s + "]";
}

NodeOutputs rows_by_name(const FeatureAssignment& fa, const std::vector<std::string>& nodes) {
  NodeOutputs out;
  for (std::size_t v = 0; v < nodes.size(); ++v) out[nodes[v]] = row_text(fa.rows[v]);
  return out;
}

std::string extend_name(const std::map<std::string, std::string>& perm, const std::string& name) {
  auto sep = name.find(kAddedSeparator);
  if (sep == std::string::npos) return perm.at(name);
  return added_node_name(perm.at(name.substr(0, sep)),
                         perm.at(name.substr(sep + kAddedSeparator.size())));
}

template <typename G, typename Item>
Report invariance(const std::string& subject, const std::function<NodeOutputs(const G&)>& outputs,
                  const std::vector<Item>& corpus, std::size_t perms, std::uint64_t seed,
                  const std::function<G(const G&, const std::map<std::string, std::string>&)>&
                      apply) {
  const auto t0 = Clock::now();
  Report rep;
  rep.suite = "invariance";
  rep.subject = subject;
  rep.seed = seed;
  for (std::size_t gi = 0; gi < corpus.size(); ++gi) {
    const auto& item = corpus[gi];
    const auto base = outputs(item.graph);
    for (std::size_t k = 0; k < perms; ++k) {
      auto perm = random_permutation(item.graph.nodes(), derive_seed(derive_seed(seed, gi), k));
      const auto moved = outputs(apply(item.graph, perm));
      rep.graphs += 1;
      for (const auto& [name, value] : base) {
        rep.nodes += 1;
        auto it = moved.find(extend_name(perm, name));
        const std::string got = it == moved.end() ? "<missing>" : it->second;
        if (got != value)
          rep.mismatches.push_back({item.id + "/p" + std::to_string(k), name, value, got, nullptr});
      }
    }
  }
  sort_mismatches(rep.mismatches);
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

}  // namespace

void Report::merge(const Report& other) {
  graphs += other.graphs;
  nodes += other.nodes;
  mismatches.insert(mismatches.end(), other.mismatches.begin(), other.mismatches.end());
  sort_mismatches(mismatches);
  wall_seconds += other.wall_seconds;
}

Json Report::to_json(bool with_time) const {
  Json j;
  j["suite"] = suite;
  j["subject"] = subject;
  if (!backend.empty()) j["backend"] = backend;
  j["seed"] = seed;
  j["graphs"] = graphs;
  j["nodes"] = nodes;
  j["mismatch_count"] = mismatches.size();
  j["pass"] = pass();
  Json ms = Json::array();
  for (const auto& m : mismatches) {
    Json e;
    e["graph"] = m.graph;
    e["node"] = m.node;
    e["expected"] = m.expected;
    e["actual"] = m.actual;
    if (!m.witness.is_null()) e["witness"] = m.witness;
    ms.push_back(std::move(e));
  }
  j["mismatches"] = std::move(ms);
  if (with_time) j["wall_seconds"] = wall_seconds;
  return j;
}

std::string Report::table() const {
  std::ostringstream os;
  os << "suite      " << suite << "\n";
  os << "subject    " << subject << "\n";
  if (!backend.empty()) os << "backend    " << backend << "\n";
  os << "seed       " << seed << "\n";
  os << "graphs     " << graphs << "\n";
  os << "nodes      " << nodes << "\n";
  os << "mismatches " << mismatches.size() << "\n";
  os << "result     " << (pass() ? "PASS" : "FAIL") << "\n";
  const std::size_t shown = std::min<std::size_t>(mismatches.size(), 20);
  if (shown) {
    os << "\n  graph                node                 expected   actual\n";
    for (std::size_t i = 0; i < shown; ++i) {
      const auto& m = mismatches[i];
      char line[256];
      std::snprintf(line, sizeof line, "  %-20s %-20s %-10s %s\n", m.graph.c_str(), m.node.c_str(),
                    m.expected.c_str(), m.actual.c_str());
      os << line;
    }
    if (shown < mismatches.size()) os << "  ... " << mismatches.size() - shown << " more\n";
  }
  return os.str();
}

std::vector<CorpusItem> make_corpus(const CorpusSpec& spec) {
  std::vector<CorpusItem> out;
  for (std::size_t i = 0; i < spec.count; ++i) {
    const auto child = derive_seed(spec.seed, i);
    Rng rng(child);
    RandomGraphOptions o;
    o.nodes = static_cast<std::size_t>(rng.range(static_cast<std::int64_t>(spec.min_nodes),
                                                 static_cast<std::int64_t>(spec.max_nodes)));
    o.degree = spec.degree;
    o.simple = spec.simple;
    out.push_back({item_id("g", i), random_graph(derive_seed(child, 1), spec.sig, o)});
  }
  return out;
}

std::vector<TemporalCorpusItem> make_temporal_corpus(const CorpusSpec& spec) {
  std::vector<TemporalCorpusItem> out;
  for (std::size_t i = 0; i < spec.count; ++i) {
    const auto child = derive_seed(spec.seed, i);
    Rng rng(child);
    RandomGraphOptions o;
    o.nodes = static_cast<std::size_t>(rng.range(static_cast<std::int64_t>(spec.min_nodes),
                                                 static_cast<std::int64_t>(spec.max_nodes)));
    o.degree = spec.degree;
    o.simple = spec.simple;
    out.push_back({item_id("g", i),
                   random_temporal_graph(derive_seed(child, 1), spec.sig, spec.timestamps, o)});
  }
  return out;
}

Signature standard_signature() { return Signature({"A", "B"}, {"r", "s"}); }

CorpusSpec standard_corpus(std::uint64_t seed) {
  CorpusSpec s;
  s.seed = seed;
  s.sig = standard_signature();
  return s;
}

Report check_equivalence(const CompiledClassifier& c, const std::vector<CorpusItem>& corpus,
                         std::size_t jobs) {
  const auto t0 = Clock::now();
  if (c.backend == Backend::kSimple)
    for (const auto& item : corpus)
      if (!is_simple(item.graph))
        throw ValidationError("simple backend needs simple graphs; '" + item.id + "' is not simple");
  std::vector<Report> parts(corpus.size());
  parallel_for(corpus.size(), jobs, [&](std::size_t i) {
    const auto& g = corpus[i].graph;
    auto oracle = evaluate_nodes(c.source, g);
    auto model = c.classify(g);
    auto& rep = parts[i];
    rep.graphs = 1;
    rep.nodes = g.node_count();
    for (std::size_t v = 0; v < oracle.size(); ++v) {
      if (oracle[v] == model[v]) continue;
      Mismatch m{corpus[i].id, g.node_name(static_cast<NodeId>(v)), bit(oracle[v]), bit(model[v]),
                 nullptr};
      if (rep.mismatches.empty())  // one witness per graph keeps reports small
        m.witness = graph_to_json(minimize_witness(c, g, m.node));
      rep.mismatches.push_back(std::move(m));
    }
  });
  Report rep;
  rep.suite = "equivalence";
  rep.subject = print_formula(c.source);
  rep.backend = backend_name(c.backend);
  for (const auto& p : parts) rep.merge(p);
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

Report run_equivalence_suite(const EquivalenceSuite& s) {
  const auto t0 = Clock::now();
  const auto sig = standard_signature();
  const bool simple = s.backend == Backend::kSimple;
  std::vector<Report> parts(s.formulas);
  parallel_for(s.formulas, s.jobs, [&](std::size_t i) {
    RandomFormulaOptions fo;
    fo.max_depth = s.max_depth;
    fo.max_threshold = s.max_threshold;
    fo.forward_only = simple;
    const auto fseed = derive_seed(s.seed, i);
    auto f = random_formula(fseed, sig, fo);
    auto c = compile(f, sig, s.backend);
    CorpusSpec cs;
    cs.seed = derive_seed(fseed, 1);
    cs.count = s.graphs;
    cs.min_nodes = s.min_nodes;
    cs.max_nodes = s.max_nodes;
    cs.sig = sig;
    cs.degree = s.degree;
    cs.simple = simple;
    auto rep = check_equivalence(c, make_corpus(cs), 1);
    const auto fid = item_id("f", i);
    for (auto& m : rep.mismatches) {
      m.graph = fid + "/" + m.graph;
      if (!m.witness.is_null()) m.witness["formula"] = print_formula(f);
    }
    parts[i] = std::move(rep);
  });
  Report rep;
  rep.suite = "equivalence";
  rep.subject = std::to_string(s.formulas) + " random formulas (depth <= " +
                std::to_string(s.max_depth) + ", thresholds <= " +
                std::to_string(s.max_threshold) + ")";
  rep.backend = backend_name(s.backend);
  rep.seed = s.seed;
  for (const auto& p : parts) rep.merge(p);
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

Report run_normalization_suite(std::size_t formulas, const CorpusSpec& corpus, std::uint64_t seed) {
  const auto t0 = Clock::now();
  Report rep;
  rep.suite = "normalization";
  rep.subject = std::to_string(formulas) + " random formulas";
  rep.seed = seed;
  for (std::size_t i = 0; i < formulas; ++i) {
    const auto fseed = derive_seed(seed, i);
    auto f = random_formula(fseed, corpus.sig);
    auto n = to_rsfoc2(f);
    const auto fid = item_id("f", i);
    if (!is_rsfoc2(n)) rep.mismatches.push_back({fid, "", "rsfoc2", "not rsfoc2", nullptr});
    auto spec = corpus;
    spec.seed = derive_seed(fseed, 1);
    for (const auto& item : make_corpus(spec)) {
      auto a = evaluate_nodes(f, item.graph);
      auto b = evaluate_nodes(n, item.graph);
      rep.graphs += 1;
      rep.nodes += a.size();
      for (std::size_t v = 0; v < a.size(); ++v)
        if (a[v] != b[v])
          rep.mismatches.push_back({fid + "/" + item.id, item.graph.node_name(static_cast<NodeId>(v)),
                                    bit(a[v]), bit(b[v]), nullptr});
    }
  }
  sort_mismatches(rep.mismatches);
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

std::map<std::string, std::string> random_permutation(const std::vector<std::string>& nodes,
                                                      std::uint64_t seed) {
  auto shuffled = nodes;
  Rng rng(seed);
  for (std::size_t i = shuffled.size(); i > 1; --i) std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) out[nodes[i]] = shuffled[i];
  return out;
}

TemporalGraph permute_temporal(const TemporalGraph& tg,
                               const std::map<std::string, std::string>& perm) {
  std::vector<Graph> snaps;
  for (const auto& s : tg.snapshots()) snaps.push_back(permute(s, perm));
  return TemporalGraph(tg.signature(), tg.nodes(), std::move(snaps));
}

Report check_permutation_invariance(const std::string& subject,
                                    const std::function<NodeOutputs(const Graph&)>& outputs,
                                    const std::vector<CorpusItem>& corpus, std::size_t perms,
                                    std::uint64_t seed) {
  return invariance<Graph>(subject, outputs, corpus, perms, seed,
                           [](const Graph& g, const auto& p) { return permute(g, p); });
}

Report check_permutation_invariance(const std::string& subject,
                                    const std::function<NodeOutputs(const TemporalGraph&)>& outputs,
                                    const std::vector<TemporalCorpusItem>& corpus,
                                    std::size_t perms, std::uint64_t seed) {
  return invariance<TemporalGraph>(
      subject, outputs, corpus, perms, seed,
      [](const TemporalGraph& g, const auto& p) { return permute_temporal(g, p); });
}

NodeOutputs oracle_outputs(const Formula& f, const Graph& g) {
  auto vals = evaluate_nodes(f, g);
  NodeOutputs out;
  for (std::size_t v = 0; v < vals.size(); ++v) out[g.node_name(static_cast<NodeId>(v))] = bit(vals[v]);
  return out;
}

NodeOutputs classifier_outputs(const CompiledClassifier& c, const Graph& g) {
  auto h = c.prepare(g);
  return rows_by_name(forward_zo(c.model, h), h.nodes());
}

NodeOutputs zo_outputs(const ZoGnn& m, const Graph& g) {
  return rows_by_name(forward_zo(m, g), g.nodes());
}

NodeOutputs generic_outputs(const GenericGnn& m, const Graph& g) {
  return rows_by_name(forward_generic(m, g, encode_nodes(g)), g.nodes());
}

NodeOutputs tgnn_outputs(const Tgnn& m, const TemporalGraph& tg) {
  return rows_by_name(forward_tgnn(m, tg), tg.nodes());
}

Report check_commutation(const std::vector<TemporalCorpusItem>& corpus) {
  const auto t0 = Clock::now();
  Report rep;
  rep.suite = "commutation";
  rep.subject = "collapse_H . transform_FT = transform_F . collapse_H";
  for (const auto& item : corpus) {
    const auto lhs = canonical_string(collapse_H(transform_FT(item.graph)));
    const auto rhs = canonical_string(transform_F(collapse_H(item.graph)));
    rep.graphs += 1;
    rep.nodes += item.graph.nodes().size();
    if (lhs != rhs) rep.mismatches.push_back({item.id, "", "equal", "different", nullptr});
  }
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

ZoGnn random_zo_gnn(std::uint64_t seed, const std::vector<std::string>& binary_order,
                    std::size_t input_dim, std::size_t output_dim, const RandomModelOptions& opts) {
  Rng rng(seed);
  const auto K = binary_order.size();
  const auto L = static_cast<std::size_t>(rng.range(static_cast<std::int64_t>(opts.min_layers),
                                                    static_cast<std::int64_t>(opts.max_layers)));
  ZoGnn m;
  m.binary_order = binary_order;
  m.input_dim = input_dim;
  std::size_t d = input_dim;
  auto fill = [&](IntMatrix& M) {
    for (std::size_t r = 0; r < M.rows(); ++r)
      for (std::size_t c = 0; c < M.cols(); ++c) {
        if (!rng.chance(opts.density)) continue;
        std::int64_t w = 0;
        while (w == 0) w = rng.range(-opts.weight_range, opts.weight_range);
        M.set(r, c, w);
      }
  };
  for (std::size_t l = 0; l < L; ++l) {
    const auto out = l + 1 == L ? output_dim
                                : static_cast<std::size_t>(
                                      rng.range(1, static_cast<std::int64_t>(opts.max_width)));
    auto layer = zero_layer(out, d, K);
    fill(layer.C);
    for (auto& A : layer.A) fill(A);
    fill(layer.R);
    for (auto& b : layer.b) b = rng.range(-opts.weight_range, opts.weight_range);
    m.layers.push_back(std::move(layer));
    d = out;
  }
  m.validate();
  return m;
}

Tgnn random_tgnn(std::uint64_t seed, const Signature& snapshot_sig, std::size_t timestamps,
                 std::size_t recurrent_dim, const RandomModelOptions& opts) {
  Tgnn m;
  m.recurrent_dim = recurrent_dim;
  for (std::size_t t = 0; t < timestamps; ++t)
    m.steps.emplace_back(random_zo_gnn(derive_seed(seed, t), snapshot_sig.binary(),
                                       snapshot_sig.encoding_dim() + recurrent_dim, recurrent_dim,
                                       opts));
  m.validate(snapshot_sig);
  return m;
}

ZoGnn corrupt_weight(const ZoGnn& m, std::uint64_t seed, std::string* where) {
  struct Entry {
    std::size_t layer;
    int matrix;  // -1 = C, -2 = R, j >= 0 = A_j
    std::size_t r, c;
  };
  std::vector<Entry> entries;
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    const auto& L = m.layers[l];
    auto scan = [&](const IntMatrix& M, int id) {
      for (std::size_t r = 0; r < M.rows(); ++r)
        for (const auto& [c, v] : M.row(r)) entries.push_back({l, id, r, c});
    };
    scan(L.C, -1);
    for (std::size_t j = 0; j < L.A.size(); ++j) scan(L.A[j], static_cast<int>(j));
    scan(L.R, -2);
  }
  if (entries.empty()) throw ValidationError("model has no nonzero weight to corrupt");
  Rng rng(seed);
  const auto e = entries[rng.below(entries.size())];
  ZoGnn out = m;
  auto& L = out.layers[e.layer];
  IntMatrix& M = e.matrix == -1 ? L.C : e.matrix == -2 ? L.R : L.A[static_cast<std::size_t>(e.matrix)];
  M.set(e.r, e.c, -M.at(e.r, e.c));
  if (where) {
    const std::string name = e.matrix == -1   ? "C"
                             : e.matrix == -2 ? "R"
                                              : "A[" + m.binary_order[static_cast<std::size_t>(e.matrix)] + "]";
    *where = "layer " + std::to_string(e.layer) + " " + name + "(" + std::to_string(e.r) + "," +
             std::to_string(e.c) + ")";
  }
  return out;
}

std::vector<Report> run_invariance_battery(std::size_t graphs, std::size_t perms,
                                           std::uint64_t seed) {
  const auto sig = standard_signature();
  auto spec = standard_corpus(derive_seed(seed, 1));
  spec.count = graphs;
  const auto corpus = make_corpus(spec);
  auto simple_spec = spec;
  simple_spec.simple = true;
  const auto simple_corpus = make_corpus(simple_spec);

  std::vector<Report> out;
  const auto f =
      parse_formula("E>=2 y (r(x,y) & E>=1 x (s(x,y) & A(x))) | !E>=1 y (B(y) & !r(y,x))", sig);
  out.push_back(check_permutation_invariance(
      "oracle: " + print_formula(f), [&](const Graph& g) { return oracle_outputs(f, g); }, corpus,
      perms, seed));

  const auto ct = compile_transformed(f, sig);
  out.push_back(check_permutation_invariance(
      "compiled transformed (all nodes of F(g))",
      [&](const Graph& g) { return classifier_outputs(ct, g); }, corpus, perms, seed));

  const auto cs = compile_simple(
      parse_formula("E>=2 y (r(x,y) & E>=1 x (s(y,x) & A(x))) | !E>=1 y (B(y) & !r(x,y))", sig),
      sig);
  out.push_back(check_permutation_invariance(
      "compiled simple", [&](const Graph& g) { return classifier_outputs(cs, g); }, simple_corpus,
      perms, seed));

  const auto zo = random_zo_gnn(derive_seed(seed, 4), sig.binary(), sig.encoding_dim(), 2);
  out.push_back(check_permutation_invariance(
      "0/1-GNN", [&](const Graph& g) { return zo_outputs(zo, g); }, corpus, perms, seed));

  const auto lifted = lift_to_transformed(zo, sig);
  out.push_back(check_permutation_invariance(
      "generic GNN (lifted, on F(g))",
      [&](const Graph& g) { return generic_outputs(lifted, transform_F(g)); }, corpus, perms,
      seed));

  auto mixed = generic_from_zo(random_zo_gnn(derive_seed(seed, 5), sig.binary(),
                                             sig.encoding_dim(), 2));
  for (auto& l : mixed.layers) {
    l.aggregate = {Aggregate::kMax, Aggregate::kMean};
    l.readout = Aggregate::kMean;
  }
  out.push_back(check_permutation_invariance(
      "generic GNN (max/mean)", [&](const Graph& g) { return generic_outputs(mixed, g); }, corpus,
      perms, seed));

  auto tspec = spec;
  tspec.timestamps = 3;
  const auto tcorpus = make_temporal_corpus(tspec);
  const auto tg = random_tgnn(derive_seed(seed, 6), sig, 3, 2);
  out.push_back(check_permutation_invariance(
      "temporal GNN", [&](const TemporalGraph& g) { return tgnn_outputs(tg, g); }, tcorpus, perms,
      seed));
  return out;
}

Report run_commutation_suite(std::size_t count, std::size_t min_t, std::size_t max_t,
                             std::uint64_t seed) {
  if (min_t < 1 || min_t > max_t) throw ValidationError("timestamp range must satisfy 1 <= min <= max");
  std::vector<TemporalCorpusItem> corpus;
  for (std::size_t i = 0; i < count; ++i) {
    const auto child = derive_seed(seed, i);
    Rng rng(child);
    CorpusSpec spec = standard_corpus(derive_seed(child, 1));
    spec.count = 1;
    spec.timestamps = static_cast<std::size_t>(
        rng.range(static_cast<std::int64_t>(min_t), static_cast<std::int64_t>(max_t)));
    auto one = make_temporal_corpus(spec);
    corpus.push_back({item_id("g", i), std::move(one.front().graph)});
  }
  corpus.push_back({"hier1", make_temporal_sep().graph});
  auto rep = check_commutation(corpus);
  rep.seed = seed;
  return rep;
}

MutationResult run_mutation_selftest(std::uint64_t seed) {
  const auto sig = standard_signature();
  const auto f = parse_formula("E>=2 y (r(x,y) & A(y)) & !E>=1 y (s(y,x) & B(y))", sig);
  const auto corpus = make_corpus(standard_corpus(1));
  MutationResult res;
  auto c = compile_transformed(f, sig);
  res.clean = check_equivalence(c, corpus);
  c.model = corrupt_weight(c.model, seed, &res.where);
  res.corrupted = check_equivalence(c, corpus);
  res.corrupted.subject += " [corrupted " + res.where + "]";
  res.corrupted.seed = seed;
  return res;
}

}  // namespace focgnn
