#include <gtest/gtest.h>

#include "focgnn/bench.hpp"
#include "focgnn/compiler.hpp"
#include "focgnn/error.hpp"
#include "focgnn/evaluate.hpp"
#include "focgnn/parser.hpp"
#include "focgnn/random_formula.hpp"
#include "focgnn/rng.hpp"
#include "focgnn/transform.hpp"
#include "focgnn/verify.hpp"

using namespace focgnn;

namespace {

const Signature kSig = standard_signature();

Formula P(const std::string& text, const Signature& sig = kSig) { return parse_formula(text, sig); }

std::vector<bool> bools(const FeatureAssignment& fa) {
  std::vector<bool> out;
  for (const auto& r : fa.rows) out.push_back(r[0] != Rational(0));
  return out;
}

}  // namespace

TEST(CompileSimple, UnaryAtomCopiesCoordinate) {
  auto c = compile_simple(P("B(x)"), kSig);
  auto g = Graph::from_names(kSig, {"a", "b", "c"}, {{"a", "B"}, {"c", "A"}}, {});
  EXPECT_EQ(c.classify(g), (std::vector<bool>{true, false, false}));
  EXPECT_EQ(c.model.output_dim(), 1u);
}

TEST(CompileSimple, StarCount) {
  auto c = compile_simple(P("E>=2 y (r(x,y) & B(y))"), kSig);
  auto g = Graph::from_names(kSig, {"c", "l1", "l2", "l3", "l4"},
                             {{"l1", "B"}, {"l2", "B"}, {"l3", "B"}},
                             {{"c", "r", "l1"}, {"c", "r", "l2"}, {"c", "r", "l3"}, {"c", "r", "l4"}});
  ASSERT_TRUE(is_simple(g));
  auto out = c.classify(g);
  EXPECT_TRUE(out[0]);
  EXPECT_EQ(out, evaluate_nodes(c.source, g));
}

TEST(CompileSimple, EmptyGuardCountsNonNeighbours) {
  Signature sig({"A", "B"}, {"r"});
  auto f = P("E>=1 y (!r(x,y) & B(y))", sig);
  auto c = compile_simple(f, sig);
  // p's non-neighbours are p itself and d; only d is B
  auto g = Graph::from_names(sig, {"p", "b", "c", "d"}, {{"b", "B"}, {"c", "B"}, {"d", "B"}},
                             {{"p", "r", "b"}, {"p", "r", "c"}});
  auto out = c.classify(g);
  EXPECT_TRUE(evaluate(f, g, {"p", {}}));
  EXPECT_TRUE(out[0]);
  EXPECT_EQ(out, evaluate_nodes(f, g));
  auto h = Graph::from_names(sig, {"p", "b", "c", "d"}, {{"b", "B"}, {"c", "B"}},
                             {{"p", "r", "b"}, {"p", "r", "c"}});
  EXPECT_FALSE(c.classify(h)[0]);
}

TEST(CompileSimple, MultiRelationGuardIsFalse) {
  auto c = compile_simple(P("E>=1 y (r(x,y) & s(x,y))"), kSig);
  auto g = Graph::from_names(kSig, {"a", "b"}, {}, {{"a", "r", "b"}});
  EXPECT_EQ(c.classify(g), (std::vector<bool>{false, false}));
}

TEST(CompileSimple, BackwardLiteralRejected) {
  EXPECT_THROW(compile_simple(P("E>=1 y (r(y,x) & B(y))"), kSig), CompileError);
}

TEST(CompileSimple, RandomForwardFormulas) {
  EquivalenceSuite s;
  s.formulas = 25;
  s.graphs = 10;
  s.backend = Backend::kSimple;
  s.seed = 5;
  auto rep = run_equivalence_suite(s);
  EXPECT_TRUE(rep.pass());
  EXPECT_GT(rep.nodes, 0u);
}

TEST(CompileTransformed, Fig1Separation) {
  auto f = make_fig1();
  auto c = compile_transformed(f.classifier, f.g1.signature());
  EXPECT_TRUE(c.classify(f.g1)[0]);
  EXPECT_FALSE(c.classify(f.g2)[0]);
  EXPECT_EQ(c.classify(f.g1), evaluate_nodes(f.classifier, f.g1));
  EXPECT_EQ(c.classify(f.g2), evaluate_nodes(f.classifier, f.g2));
  EXPECT_TRUE(c.target.is_transformed());
  EXPECT_FALSE(c.inverse_augmented);
}

TEST(CompileTransformed, TrueIsConstantOne) {
  for (auto backend : {Backend::kSimple, Backend::kTransformed}) {
    auto c = compile(make_true(), kSig, backend);
    auto g = random_graph(1, kSig, RandomGraphOptions{6, 1.0, 0.5, 0.5, true});
    for (bool b : c.classify(g)) EXPECT_TRUE(b);
  }
}

TEST(CompileTransformed, PhiThreeOnCollapsedGraph) {
  auto setting = builtin_setting("phi3");
  std::vector<std::string> nodes{"a", "b", "c", "d"};
  auto s1 = Graph::from_names(setting.base, nodes, {}, {{"a", "p1", "b"}, {"a", "p1", "c"}, {"a", "p1", "d"}});
  auto s2 = Graph::from_names(setting.base, nodes, {}, {{"a", "p1", "b"}, {"a", "p1", "c"}});
  auto h = collapse_H(TemporalGraph(setting.base, nodes, {s1, s2}));
  auto c = compile_transformed(setting.formula, h.signature());
  auto out = c.classify(h);
  EXPECT_TRUE(out[0]);
  EXPECT_EQ(out, evaluate_nodes(setting.formula, h));
}

TEST(CompileTransformed, BackwardLiteralsTriggerInverses) {
  auto c = compile_transformed(P("E>=1 y (r(y,x) & B(y)) & !E>=2 y (s(x,y) & s(y,x))"), kSig);
  EXPECT_TRUE(c.inverse_augmented);
  EXPECT_TRUE(c.target.has_binary("r_inv"));
  auto spec = standard_corpus(17);
  auto rep = check_equivalence(c, make_corpus(spec));
  EXPECT_TRUE(rep.pass());
}

TEST(CompileTransformed, RandomFormulas) {
  EquivalenceSuite s;
  s.formulas = 25;
  s.graphs = 10;
  s.seed = 6;
  auto rep = run_equivalence_suite(s);
  EXPECT_TRUE(rep.pass());
}

TEST(CompileTransformed, EmptyGuardCountsProbeItself) {
  auto f = P("E>=1 y (!r(x,y) & !s(x,y) & A(y))");
  auto c = compile_transformed(f, kSig);
  // only a is A; a counts itself
  auto g = Graph::from_names(kSig, {"a", "b"}, {{"a", "A"}}, {{"b", "r", "a"}});
  EXPECT_EQ(c.classify(g), evaluate_nodes(f, g));
  EXPECT_TRUE(c.classify(g)[0]);
}

TEST(Compile, RejectsBadInput) {
  EXPECT_THROW(compile_transformed(make_relation("r", Var::kX, Var::kY), kSig), CompileError);
  EXPECT_THROW(compile_transformed(P("C(x)", Signature({"C"}, {})), kSig), CompileError);
  EXPECT_THROW(backend_from_name("fast"), ValidationError);
  auto c = compile_transformed(P("A(x)"), kSig);
  EXPECT_THROW(c.classify(make_fig1().g1), ValidationError);
}

TEST(Compile, Deterministic) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto f = random_formula(s, kSig);
    EXPECT_EQ(compiled_to_json(compile_transformed(f, kSig)).dump(),
              compiled_to_json(compile_transformed(f, kSig)).dump());
  }
}

TEST(Compile, JsonRoundTripWithMetadata) {
  auto c = compile_transformed(P("E>=2 y (r(y,x) & A(y)) | B(x)"), kSig);
  auto j = compiled_to_json(c);
  ASSERT_TRUE(j.contains("metadata"));
  EXPECT_EQ(j["metadata"]["backend"], "transformed");
  EXPECT_EQ(j["metadata"]["formula"], print_formula(c.source));
  EXPECT_EQ(j["metadata"]["normalized"], print_formula(c.normalized));
  EXPECT_EQ(j["metadata"]["inverse_augmented"], true);
  auto back = compiled_from_json(j);
  EXPECT_EQ(back.model, c.model);
  EXPECT_EQ(back.backend, c.backend);
  EXPECT_TRUE(back.inverse_augmented);
  auto g = make_corpus(standard_corpus(2))[0].graph;
  EXPECT_EQ(back.classify(g), c.classify(g));
}

TEST(Compile, LayersGrowWithNesting) {
  std::string text = "A(x)";
  std::size_t prev = 0;
  for (int depth = 1; depth <= 4; ++depth) {
    text = "E>=1 y (r(x,y) & " + std::string(depth % 2 ? "E>=1 x (r(y,x) & " : "") + "B(y)" +
           (depth % 2 ? ")" : "") + ") & " + text;
    auto c = compile_transformed(P(text), kSig);
    EXPECT_GE(c.model.layers.size(), prev);
    prev = c.model.layers.size();
  }
  EXPECT_LT(prev, 40u);
}

TEST(Pipeline, PhiOneThreeNodes) {
  auto setting = builtin_setting("phi1");
  std::vector<std::string> nodes{"a", "b", "c"};
  auto s1 = Graph::from_names(setting.base, nodes, {{"b", "Red"}, {"c", "Red"}},
                              {{"a", "p1", "b"}, {"a", "p1", "c"}});
  auto s2 = Graph::from_names(setting.base, nodes, {{"c", "Blue"}}, {{"a", "p1", "c"}});
  TemporalGraph tg(setting.base, nodes, {s1, s2});
  auto out = bools(compile_pipeline(setting.formula, tg));
  EXPECT_TRUE(out[0]);
  EXPECT_EQ(out, evaluate_nodes(setting.formula, collapse_H(tg)));
}

TEST(Pipeline, EmptyFirstSnapshot) {
  Signature base({"A"}, {"r"});
  std::vector<std::string> nodes{"a", "b", "c"};
  auto s1 = Graph::from_names(base, nodes, {}, {});
  auto s2 = Graph::from_names(base, nodes, {{"a", "A"}}, {{"a", "r", "b"}, {"b", "r", "c"}});
  TemporalGraph tg(base, nodes, {s1, s2});
  auto f = P("E>=1 y (r@1(x,y))", temporal_signature(base, 2));
  for (bool b : bools(compile_pipeline(f, tg))) EXPECT_FALSE(b);
}

TEST(Pipeline, HierOneSeparation) {
  auto sep = make_temporal_sep();
  auto out = bools(compile_pipeline(sep.classifier, sep.graph));
  EXPECT_EQ(out, (std::vector<bool>{true, false, false, false, false}));
}

TEST(Pipeline, TimestampOutOfRange) {
  auto sep = make_temporal_sep();
  auto f = P("E>=1 y (r@3(x,y))", Signature({}, {"r@3"}));
  EXPECT_THROW(compile_pipeline(f, sep.graph), ValidationError);
}
