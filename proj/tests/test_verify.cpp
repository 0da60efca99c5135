#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "focgnn/bench.hpp"
#include "focgnn/compiler.hpp"
#include "focgnn/error.hpp"
#include "focgnn/evaluate.hpp"
#include "focgnn/parser.hpp"
#include "focgnn/transform.hpp"
#include "focgnn/verify.hpp"

using namespace focgnn;

namespace {

const Signature kSig = standard_signature();

}  // namespace

TEST(Equivalence, Fig1) {
  auto f = make_fig1();
  auto c = compile_transformed(f.classifier, f.g1.signature());
  auto rep = check_equivalence(c, {{"g1", f.g1}, {"g2", f.g2}});
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(rep.graphs, 2u);
  EXPECT_EQ(rep.nodes, 8u);
}

TEST(Equivalence, ConstantTrue) {
  auto c = compile_transformed(make_true(), kSig);
  auto rep = check_equivalence(c, make_corpus(standard_corpus(3)));
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(rep.graphs, 20u);
}

TEST(Equivalence, CorruptedModelGivesMinimizedWitness) {
  auto c = compile_transformed(parse_formula("E>=2 y (r(x,y) & A(y))", kSig), kSig);
  auto corpus = make_corpus(standard_corpus(4));
  ASSERT_TRUE(check_equivalence(c, corpus).pass());
  bool caught = false;
  for (std::uint64_t s = 0; s < 8 && !caught; ++s) {
    auto bad = c;
    bad.model = corrupt_weight(c.model, s);
    auto rep = check_equivalence(bad, corpus);
    if (rep.pass()) continue;
    caught = true;
    const auto& m = rep.mismatches.front();
    ASSERT_FALSE(m.witness.is_null());
    auto w = graph_from_json(m.witness);
    // the witness still disagrees and is no larger than the original graph
    auto out = bad.classify(w);
    auto want = evaluate_nodes(c.source, w);
    EXPECT_NE(out, want);
    const auto it = std::find_if(corpus.begin(), corpus.end(), [&](const auto& ci) { return ci.id == m.graph; });
    ASSERT_NE(it, corpus.end());
    EXPECT_LE(w.node_count(), it->graph.node_count());
  }
  EXPECT_TRUE(caught);
}

TEST(Equivalence, JobsDoNotChangeReport) {
  EquivalenceSuite s;
  s.formulas = 10;
  s.graphs = 5;
  s.seed = 12;
  auto one = run_equivalence_suite(s);
  s.jobs = 3;
  auto three = run_equivalence_suite(s);
  EXPECT_EQ(one.to_json().dump(), three.to_json().dump());
}

TEST(Equivalence, SimpleBackendRejectsNonSimpleGraph) {
  auto c = compile_simple(parse_formula("E>=1 y (r(x,y) & A(y))", kSig), kSig);
  auto g = Graph::from_names(kSig, {"a", "b"}, {}, {{"a", "r", "b"}, {"a", "s", "b"}});
  ASSERT_FALSE(is_simple(g));
  EXPECT_THROW(check_equivalence(c, {{"x", g}}), ValidationError);
}

TEST(Normalization, SmallSuite) {
  auto spec = standard_corpus(7);
  spec.count = 5;
  auto rep = run_normalization_suite(15, spec, 7);
  EXPECT_TRUE(rep.pass());
  EXPECT_GT(rep.nodes, 0u);
}

TEST(Permutation, IsBijection) {
  std::vector<std::string> nodes{"a", "b", "c", "d", "e"};
  auto p = random_permutation(nodes, 3);
  std::set<std::string> image;
  for (const auto& n : nodes) image.insert(p.at(n));
  EXPECT_EQ(image, std::set<std::string>(nodes.begin(), nodes.end()));
  EXPECT_EQ(p, random_permutation(nodes, 3));
}

TEST(Permutation, IdentityAndFig1) {
  auto f = make_fig1();
  auto rep = check_permutation_invariance(
      "oracle", [&](const Graph& g) { return oracle_outputs(f.classifier, g); },
      {{"g1", f.g1}, {"g2", f.g2}}, 5, 1);
  EXPECT_TRUE(rep.pass());
  std::map<std::string, std::string> id;
  for (const auto& n : f.g1.nodes()) id[n] = n;
  EXPECT_EQ(permute(f.g1, id), f.g1);
}

TEST(Permutation, CatchesNameDependentSubject) {
  auto corpus = make_corpus(standard_corpus(5));
  // a subject that looks at node names is not invariant
  auto rep = check_permutation_invariance(
      "names",
      [](const Graph& g) {
        NodeOutputs out;
        for (const auto& n : g.nodes()) out[n] = n == g.nodes().front() ? "1" : "0";
        return out;
      },
      corpus, 3, 2);
  EXPECT_FALSE(rep.pass());
}

TEST(Permutation, CompiledClassifierOverAddedNodes) {
  auto c = compile_transformed(parse_formula("E>=1 y (r(x,y) & E>=1 x (s(y,x) & B(x)))", kSig), kSig);
  auto corpus = make_corpus(standard_corpus(8));
  corpus.resize(5);
  auto rep = check_permutation_invariance(
      "compiled", [&](const Graph& g) { return classifier_outputs(c, g); }, corpus, 3, 4);
  EXPECT_TRUE(rep.pass());
}

TEST(Commutation, HierOneAndSingleSnapshot) {
  auto sep = make_temporal_sep();
  EXPECT_TRUE(check_commutation({{"hier1", sep.graph}}).pass());
  auto spec = standard_corpus(6);
  spec.count = 5;
  spec.timestamps = 1;
  EXPECT_TRUE(check_commutation(make_temporal_corpus(spec)).pass());
}

TEST(Commutation, SmallSuite) {
  auto rep = run_commutation_suite(10, 2, 3, 9);
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(rep.graphs, 11u);
}

TEST(Report, MergeIsOrderIndependent) {
  Report a, b;
  a.suite = b.suite = "equivalence";
  a.graphs = 2;
  a.nodes = 10;
  a.mismatches.push_back({"g1", "v", "1", "0", nullptr});
  b.graphs = 3;
  b.nodes = 7;
  b.mismatches.push_back({"g0", "u", "0", "1", nullptr});
  Report ab = a, ba = b;
  ab.merge(b);
  ba.merge(a);
  ba.suite = ab.suite;
  EXPECT_EQ(ab.graphs, 5u);
  EXPECT_EQ(ab.nodes, 17u);
  EXPECT_EQ(ab.to_json().dump(), ba.to_json().dump());
  EXPECT_FALSE(ab.pass());
  EXPECT_FALSE(ab.table().empty());
}

TEST(Report, TimeOnlyWhenAsked) {
  Report r;
  r.wall_seconds = 1.5;
  EXPECT_FALSE(r.to_json().contains("wall_seconds"));
  EXPECT_TRUE(r.to_json(true).contains("wall_seconds"));
}

TEST(Mutation, SelfTest) {
  auto m = run_mutation_selftest(1);
  EXPECT_TRUE(m.clean.pass());
  EXPECT_FALSE(m.corrupted.pass());
  EXPECT_FALSE(m.where.empty());
}

TEST(Invariance, SmallBattery) {
  auto reps = run_invariance_battery(3, 2, 5);
  EXPECT_GE(reps.size(), 7u);
  for (const auto& r : reps) EXPECT_TRUE(r.pass()) << r.subject;
}

TEST(Corpus, Deterministic) {
  auto a = make_corpus(standard_corpus(11)), b = make_corpus(standard_corpus(11));
  ASSERT_EQ(a.size(), 20u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, b[i].id);
    EXPECT_EQ(a[i].graph, b[i].graph);
    EXPECT_GE(a[i].graph.node_count(), 4u);
    EXPECT_LE(a[i].graph.node_count(), 10u);
  }
  EXPECT_EQ(a[0].id, "g0000");
}
