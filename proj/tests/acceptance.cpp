// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>

#include "focgnn/bench.hpp"
#include "focgnn/compiler.hpp"
#include "focgnn/evaluate.hpp"
#include "focgnn/generic_gnn.hpp"
#include "focgnn/tgnn.hpp"
#include "focgnn/transform.hpp"
#include "focgnn/verify.hpp"

using namespace focgnn;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string summary(const Report& r) {
  std::ostringstream os;
  os << r.graphs << " graphs, " << r.nodes << " nodes, " << r.mismatches.size() << " mismatches";
  return os.str();
}

std::vector<Rational> slice(const std::vector<Rational>& row, std::size_t start, std::size_t len) {
  return {row.begin() + static_cast<std::ptrdiff_t>(start), row.begin() + static_cast<std::ptrdiff_t>(start + len)};
}

}  // namespace

int main() {
  criterion(1, "fig1 separation", [] {
    auto f = make_fig1();
    bool ok = evaluate(f.classifier, f.g1, {"a", {}}) && !evaluate(f.classifier, f.g2, {"a", {}});
    auto c = compile_transformed(f.classifier, f.g1.signature());
    auto rep = check_equivalence(c, {{"G1", f.g1}, {"G2", f.g2}});
    ok = ok && rep.pass() && c.classify(f.g1)[0] && !c.classify(f.g2)[0];
    return Outcome{ok, "oracle (G1,a)=1 (G2,a)=0; " + summary(rep)};
  });

  criterion(2, "transformed-backend oracle equivalence", [] {
    EquivalenceSuite s;
    s.backend = Backend::kTransformed;
    auto rep = run_equivalence_suite(s);
    return Outcome{rep.pass() && rep.graphs == 300 * 20, "300 formulas, " + summary(rep)};
  });

  criterion(3, "simple-backend oracle equivalence", [] {
    EquivalenceSuite s;
    s.backend = Backend::kSimple;
    auto rep = run_equivalence_suite(s);
    return Outcome{rep.pass() && rep.graphs == 300 * 20, "300 formulas, " + summary(rep)};
  });

  criterion(4, "relation-specified normalization", [] {
    auto rep = run_normalization_suite(100, standard_corpus(1), 1);
    return Outcome{rep.pass(), "100 formulas, " + summary(rep)};
  });

  criterion(5, "G(n)/H(n) separator and its lift", [] {
    bool ok = true;
    std::ostringstream os;
    for (std::size_t n : {1, 2, 5, 10}) {
      auto f = make_gn_hn(n);
      auto og = forward_zo(f.separator, f.g), oh = forward_zo(f.separator, f.h);
      auto lifted = lift_to_transformed(f.separator, f.g.signature());
      auto fg = transform_F(f.g), fh = transform_F(f.h);
      auto lg = forward_generic(lifted, fg, encode_nodes(fg));
      auto lh = forward_generic(lifted, fh, encode_nodes(fh));
      bool sep = og.rows[0][0] == Rational(1) && oh.rows[0][0] == Rational(0);
      bool same = true;
      for (std::size_t v = 0; v < f.g.node_count(); ++v)
        same = same && lg.rows[v] == og.rows[v] && lh.rows[v] == oh.rows[v];
      ok = ok && sep && same;
      os << "n=" << n << (sep && same ? " ok " : " BAD ");
    }
    return Outcome{ok, os.str()};
  });

  criterion(6, "lift to transformed graphs", [] {
    auto spec = standard_corpus(6);
    spec.max_nodes = 8;
    const auto corpus = make_corpus(spec);
    const auto sig = standard_signature();
    std::size_t bad = 0, nodes = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
      auto m = random_zo_gnn(s, sig.binary(), sig.unary().size(), 2);
      auto lifted = lift_to_transformed(m, sig);
      for (const auto& it : corpus) {
        auto fg = transform_F(it.graph);
        auto a = forward_zo(m, it.graph), b = forward_generic(lifted, fg, encode_nodes(fg));
        for (std::size_t v = 0; v < it.graph.node_count(); ++v, ++nodes)
          if (a.rows[v] != b.rows[v]) ++bad;
      }
    }
    return Outcome{bad == 0, "50 models x 20 graphs, " + std::to_string(nodes) + " primal nodes, " +
                                 std::to_string(bad) + " mismatches"};
  });

  criterion(7, "homogenization", [] {
    const auto sig = standard_signature();
    std::size_t bad = 0, nodes = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
      const std::size_t T = 1 + s % 4;
      RandomModelOptions o;
      o.max_layers = 3;
      auto m = random_tgnn(s, sig, T, 2, o);
      auto h = homogenize(m);
      const std::size_t d = h.recurrent_dim / T;
      auto spec = standard_corpus(1000 + s);
      spec.count = 30;
      spec.timestamps = T;
      for (const auto& it : make_temporal_corpus(spec)) {
        auto a = forward_tgnn(m, it.graph), b = forward_tgnn(h, it.graph);
        for (std::size_t v = 0; v < a.node_count(); ++v, ++nodes)
          if (slice(b.rows[v], (T - 1) * d, m.recurrent_dim) != a.rows[v]) ++bad;
      }
    }
    return Outcome{bad == 0, "50 models (T<=4) x 30 graphs, " + std::to_string(nodes) + " nodes, " +
                                 std::to_string(bad) + " mismatches"};
  });

  criterion(8, "collapse/transform commutation", [] {
    auto rep = run_commutation_suite(100, 2, 4, 1);
    return Outcome{rep.pass() && rep.graphs == 101, summary(rep)};
  });

  criterion(9, "compiled classifiers on generated datasets", [] {
    bool ok = true;
    std::ostringstream os;
    for (const char* id : {"phi1", "phi2", "phi3", "phi4"}) {
      auto setting = builtin_setting(id);
      DatasetParams p;
      p.count = 100;
      p.min_nodes = 30;
      p.max_nodes = 60;
      p.seed = 9;
      auto ds = gen_dataset(setting, p);
      std::size_t right = 0, total = 0;
      for (const auto& it : ds.items) {
        auto out = compile_pipeline(setting.formula, it.graph);
        for (std::size_t v = 0; v < it.labels.size(); ++v, ++total)
          if ((out.rows[v][0] != Rational(0)) == it.labels[v]) ++right;
      }
      ok = ok && right == total;
      char buf[96];
      std::snprintf(buf, sizeof buf, "%s %.2f%% (pos %.1f%%) ", id, 100.0 * right / total, 100.0 * ds.positive_rate());
      os << buf;
    }
    return Outcome{ok, os.str()};
  });

  criterion(10, "positive rates at n=477", [] {
    bool ok = true;
    std::ostringstream os;
    for (auto [id, target] : {std::pair<const char*, double>{"phi1", 50.7}, {"phi3", 25.3}}) {
      DatasetParams p;
      p.count = 20;
      p.min_nodes = p.max_nodes = 477;
      p.seed = 2024;
      auto ds = gen_dataset(builtin_setting(id), p);
      const double rate = 100.0 * ds.positive_rate();
      const bool in = std::fabs(rate - target) <= 15.0;
      ok = ok && in;
      char buf[96];
      std::snprintf(buf, sizeof buf, "%s %.2f%% (target %.1f +-15%s) ", id, rate, target, in ? "" : ", OUT");
      os << buf;
    }
    return Outcome{ok, os.str()};
  });

  criterion(11, "permutation invariance", [] {
    auto reps = run_invariance_battery(20, 10, 1);
    bool ok = !reps.empty();
    std::size_t bad = 0;
    for (const auto& r : reps) {
      ok = ok && r.pass() && r.graphs == 20 * 10;
      bad += r.mismatches.size();
    }
    return Outcome{ok, std::to_string(reps.size()) + " subjects x 20 graphs x 10 perms, " +
                           std::to_string(bad) + " mismatches"};
  });

  criterion(12, "mutation self-test", [] {
    auto m = run_mutation_selftest(1);
    return Outcome{m.clean.pass() && !m.corrupted.pass(),
                   "clean " + std::to_string(m.clean.mismatches.size()) + ", corrupted " +
                       std::to_string(m.corrupted.mismatches.size()) + " mismatches at " + m.where};
  });

  std::printf("%s: %d of 12 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
