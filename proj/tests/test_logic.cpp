#include <gtest/gtest.h>

#include <set>

#include "focgnn/bench.hpp"
#include "focgnn/error.hpp"
#include "focgnn/evaluate.hpp"
#include "focgnn/parser.hpp"
#include "focgnn/random_formula.hpp"
#include "focgnn/rng.hpp"
#include "focgnn/rsfoc.hpp"
#include "focgnn/transform.hpp"
#include "focgnn/verify.hpp"

using namespace focgnn;

namespace {

const Signature kSig = standard_signature();

Formula P(const std::string& text, const Signature& sig = kSig) { return parse_formula(text, sig); }

std::vector<Graph> small_corpus(std::uint64_t seed, std::size_t count = 20) {
  auto spec = standard_corpus(seed);
  spec.count = count;
  spec.max_nodes = 8;
  std::vector<Graph> out;
  for (auto& it : make_corpus(spec)) out.push_back(std::move(it.graph));
  return out;
}

// every graph over nodes {0,1,2} with relation r and any placement of B
std::vector<Graph> all_three_node_graphs() {
  Signature sig({"A", "B"}, {"r"});
  std::vector<std::string> nodes{"0", "1", "2"};
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId a = 0; a < 3; ++a)
    for (NodeId b = 0; b < 3; ++b)
      if (a != b) pairs.emplace_back(a, b);
  std::vector<Graph> out;
  for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask)
    for (unsigned umask = 0; umask < 8; ++umask) {
      std::vector<Triple> tr;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask & (1u << i)) tr.push_back({pairs[i].first, 0, pairs[i].second});
      std::vector<UnaryFact> uf;
      for (NodeId v = 0; v < 3; ++v)
        if (umask & (1u << v)) uf.push_back({v, 1});
      out.emplace_back(sig, nodes, uf, tr);
    }
  return out;
}

}  // namespace

TEST(Parse, Fig1Classifier) {
  auto f = P("E>=1 y (p1(x,y) & p2(x,y))", Signature({}, {"p1", "p2"}));
  ASSERT_EQ(f->kind(), FormulaKind::kExistsGeq);
  EXPECT_EQ(f->threshold(), 1);
  EXPECT_EQ(f->var(), Var::kY);
  const auto& body = f->body();
  ASSERT_EQ(body->kind(), FormulaKind::kAnd);
  ASSERT_EQ(body->children().size(), 2u);
  EXPECT_EQ(body->children()[0]->kind(), FormulaKind::kRelation);
  EXPECT_EQ(body->children()[0]->predicate(), "p1");
  EXPECT_EQ(body->children()[0]->first(), Var::kX);
  EXPECT_EQ(body->children()[0]->second(), Var::kY);
  EXPECT_EQ(body->children()[1]->predicate(), "p2");
}

TEST(Parse, Constants) {
  EXPECT_EQ(P("true")->kind(), FormulaKind::kTrue);
  EXPECT_EQ(P("false")->kind(), FormulaKind::kFalse);
}

TEST(Parse, IntervalSugarForPhiTwo) {
  auto f = builtin_setting("phi2").formula;
  ASSERT_EQ(f->kind(), FormulaKind::kAnd);
  ASSERT_EQ(f->children().size(), 2u);
  const auto& lo = f->children()[0];
  const auto& hi = f->children()[1];
  ASSERT_EQ(lo->kind(), FormulaKind::kExistsGeq);
  EXPECT_EQ(lo->threshold(), 10);
  ASSERT_EQ(hi->kind(), FormulaKind::kNot);
  ASSERT_EQ(hi->child()->kind(), FormulaKind::kExistsGeq);
  EXPECT_EQ(hi->child()->threshold(), 21);
  EXPECT_TRUE(structurally_equal(lo->body(), hi->child()->body()));
}

TEST(Parse, BareExistsMeansAtLeastOne) {
  EXPECT_TRUE(structurally_equal(P("E y (r(x,y))"), P("E>=1 y (r(x,y))")));
  EXPECT_TRUE(structurally_equal(P("E>=1 y r(x,y)"), P("E>=1 y (r(x,y))")));
}

TEST(Parse, Precedence) {
  auto f = P("!A(x) & B(x) | A(x)");
  ASSERT_EQ(f->kind(), FormulaKind::kOr);
  ASSERT_EQ(f->children()[0]->kind(), FormulaKind::kAnd);
  EXPECT_EQ(f->children()[0]->children()[0]->kind(), FormulaKind::kNot);
}

TEST(Parse, Macros) {
  auto f = P("let m(x) = E>=1 y (r(x,y) & B(y));\nE>=1 y (s(x,y) & m(y))");
  auto g = P("E>=1 y (s(x,y) & E>=1 x (r(y,x) & B(x)))");
  EXPECT_TRUE(structurally_equal(f, g));
}

TEST(Parse, Errors) {
  EXPECT_THROW(P(""), ParseError);
  EXPECT_THROW(P("A(x) &"), ParseError);
  EXPECT_THROW(P("C(x)"), ParseError);
  EXPECT_THROW(P("A(z)"), ParseError);
  EXPECT_THROW(P("E>=0 y (A(y))"), ParseError);
  EXPECT_THROW(P("E y (EQ(x,y))"), ParseError);
  EXPECT_THROW(P("r(x)"), ParseError);
  EXPECT_THROW(P("E[3,2] y (A(y))"), ParseError);
  try {
    P("A(x) &\n  & B(x)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 3);
  }
}

TEST(Print, CanonicalForms) {
  EXPECT_EQ(print_formula(make_true()), "true");
  EXPECT_EQ(print_formula(make_fig1().classifier), "E>=1 y (p1(x,y) & p2(x,y))");
  Signature ts({"Red@1"}, {"p1@2"});
  EXPECT_EQ(print_formula(P("E>=2 y (p1@2(x,y) & Red@1(y))", ts)), "E>=2 y (p1@2(x,y) & Red@1(y))");
}

TEST(Print, RandomRoundTrip) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    auto f = random_formula(s, kSig);
    auto back = P(print_formula(f));
    ASSERT_TRUE(structurally_equal(f, back)) << print_formula(f);
  }
}

TEST(Depth, Examples) {
  EXPECT_EQ(quantifier_depth(P("A(x)")), 0);
  EXPECT_EQ(quantifier_depth(builtin_setting("phi1").formula), 1);
  EXPECT_EQ(quantifier_depth(builtin_setting("phi2").formula), 2);
  EXPECT_EQ(quantifier_depth(builtin_setting("phi4").formula), 2);
}

TEST(Evaluate, Fig1) {
  auto f = make_fig1();
  EXPECT_TRUE(evaluate(f.classifier, f.g1, {"a", {}}));
  EXPECT_FALSE(evaluate(f.classifier, f.g2, {"a", {}}));
}

TEST(Evaluate, FalseEverywhere) {
  auto g = make_fig1().g1;
  for (auto v : evaluate_nodes(make_false(), g)) EXPECT_FALSE(v);
  EXPECT_FALSE(evaluate(P("A(x) & false"), small_corpus(1, 1)[0], {"v0", {}}));
}

TEST(Evaluate, PhiThreeHandCount) {
  auto setting = builtin_setting("phi3");
  const auto sig = temporal_signature(setting.base, 2);
  std::vector<std::string> nodes{"a", "b", "c", "d", "e"};
  // b and c carry p1 at both timestamps, d only at 1, e only at 2
  auto g = Graph::from_names(sig, nodes, {},
                             {{"a", "p1@1", "b"}, {"a", "p1@2", "b"}, {"a", "p1@1", "c"},
                              {"a", "p1@2", "c"}, {"a", "p1@1", "d"}, {"a", "p1@2", "e"}});
  EXPECT_TRUE(evaluate(setting.formula, g, {"a", {}}));
  auto h = Graph::from_names(sig, nodes, {},
                             {{"a", "p1@1", "b"}, {"a", "p1@2", "b"}, {"a", "p1@1", "c"},
                              {"a", "p1@2", "d"}});
  EXPECT_FALSE(evaluate(setting.formula, h, {"a", {}}));
}

TEST(Evaluate, QuantifierRangeIncludesOtherVariable) {
  auto g = Graph::from_names(kSig, {"a", "b"}, {{"a", "B"}, {"b", "B"}}, {});
  EXPECT_TRUE(evaluate(P("E>=2 y (B(y))"), g, {"a", {}}));
  EXPECT_FALSE(evaluate(P("E>=3 y (B(y))"), g, {"a", {}}));
}

TEST(Evaluate, AssignmentsAndErrors) {
  auto g = Graph::from_names(kSig, {"a", "b"}, {}, {{"a", "r", "b"}});
  auto rel = make_relation("r", Var::kX, Var::kY);
  EXPECT_TRUE(evaluate(rel, g, {"a", "b"}));
  EXPECT_FALSE(evaluate(rel, g, {"b", "a"}));
  EXPECT_THROW(evaluate(rel, g, {"a", {}}), ValidationError);
  EXPECT_THROW(evaluate(rel, g, {"zz", "a"}), ValidationError);
  EXPECT_THROW(evaluate_nodes(rel, g), ValidationError);
}

TEST(Evaluate, DeMorgan) {
  for (const auto& g : small_corpus(3))
    for (std::uint64_t s = 0; s < 10; ++s) {
      auto a = random_formula(derive_seed(s, 1), kSig);
      auto b = random_formula(derive_seed(s, 2), kSig);
      auto lhs = evaluate_nodes(make_not(make_and(std::vector<Formula>{a, b})), g);
      auto rhs = evaluate_nodes(make_or(std::vector<Formula>{make_not(a), make_not(b)}), g);
      ASSERT_EQ(lhs, rhs);
    }
}

TEST(Evaluate, PermutationInvariant) {
  for (const auto& g : small_corpus(4, 10))
    for (std::uint64_t s = 0; s < 10; ++s) {
      auto f = random_formula(s, kSig);
      auto p = random_permutation(g.nodes(), s);
      auto h = permute(g, p);
      for (const auto& v : g.nodes())
        ASSERT_EQ(evaluate(f, g, {v, {}}), evaluate(f, h, {p.at(v), {}}));
    }
}

TEST(Guards, ExactlyOneFullGuardPerPair) {
  const std::vector<std::string> rel{"r", "s"};
  for (const auto& g : small_corpus(5, 5))
    for (const auto& a : g.nodes())
      for (const auto& b : g.nodes()) {
        int holding = 0;
        for (unsigned S = 0; S < 4; ++S) {
          std::vector<Formula> lits;
          for (std::size_t i = 0; i < rel.size(); ++i) {
            auto atom = make_relation(rel[i], Var::kX, Var::kY);
            lits.push_back((S >> i) & 1 ? atom : make_not(atom));
          }
          holding += evaluate(make_and(lits), g, {a, b}) ? 1 : 0;
        }
        ASSERT_EQ(holding, 1);
      }
}

TEST(Normalize, UnaryUnchanged) {
  auto f = P("A(x)");
  EXPECT_TRUE(structurally_equal(to_rsfoc2(f), f));
  EXPECT_TRUE(is_rsfoc2(f));
}

TEST(Normalize, SingleRelationGuard) {
  Signature sig({"A", "B"}, {"r"});
  auto f = P("E>=1 y r(x,y)", sig);
  EXPECT_FALSE(is_rsfoc2(f));
  auto n = to_rsfoc2(f);
  EXPECT_TRUE(is_rsfoc2(n));
  auto split = split_guarded(n);
  ASSERT_TRUE(split.has_value());
  ASSERT_EQ(split->guard.size(), 1u);
  EXPECT_EQ(split->guard[0].pred, "r");
  EXPECT_TRUE(split->guard[0].positive);
  EXPECT_TRUE(split->guard[0].forward);
  EXPECT_EQ(split->rest->kind(), FormulaKind::kTrue);
  for (const auto& g : all_three_node_graphs()) ASSERT_EQ(evaluate_nodes(f, g), evaluate_nodes(n, g));
}

TEST(Normalize, EmptyGuardSet) {
  Signature sig({"A", "B"}, {"r"});
  auto f = P("E>=2 y (!r(x,y) & B(y))", sig);
  auto n = to_rsfoc2(f);
  EXPECT_TRUE(is_rsfoc2(n));
  auto split = split_guarded(n);
  ASSERT_TRUE(split.has_value());
  ASSERT_EQ(split->guard.size(), 1u);
  EXPECT_FALSE(split->guard[0].positive);
  for (const auto& g : all_three_node_graphs()) ASSERT_EQ(evaluate_nodes(f, g), evaluate_nodes(n, g));
}

TEST(Normalize, MixedBodyExhaustive) {
  Signature sig({"A", "B"}, {"r"});
  auto closed = P("E>=2 y ((r(x,y) | r(y,x)) & (A(x) | B(y)) & !E>=1 x (r(x,y) & B(x)))", sig);
  auto n = to_rsfoc2(closed);
  EXPECT_TRUE(is_rsfoc2(n));
  for (const auto& g : all_three_node_graphs())
    ASSERT_EQ(evaluate_nodes(closed, g), evaluate_nodes(n, g));
}

TEST(Normalize, FuzzPreservesSemanticsAndDepth) {
  const auto corpus = small_corpus(6);
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto f = random_formula(derive_seed(99, s), kSig);
    auto n = to_rsfoc2(f);
    ASSERT_TRUE(is_rsfoc2(n)) << print_formula(f);
    ASSERT_LE(quantifier_depth(n), quantifier_depth(f));
    for (const auto& g : corpus) ASSERT_EQ(evaluate_nodes(f, g), evaluate_nodes(n, g)) << print_formula(f);
  }
}

TEST(Normalize, RejectsTwoFreeVariables) {
  EXPECT_THROW(to_rsfoc2(make_relation("r", Var::kX, Var::kY)), ValidationError);
}

TEST(RandomFormula, DepthZeroIsPropositional) {
  RandomFormulaOptions o;
  o.max_depth = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto f = random_formula(s, kSig, o);
    std::vector<std::string> u, b;
    collect_predicates(f, u, b);
    EXPECT_TRUE(b.empty());
    EXPECT_EQ(quantifier_depth(f), 0);
  }
}

TEST(RandomFormula, DeterministicAndBounded) {
  std::set<int> depths;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    auto f = random_formula(s, kSig);
    ASSERT_TRUE(structurally_equal(f, random_formula(s, kSig)));
    ASSERT_LE(quantifier_depth(f), 2);
    ASSERT_EQ(f->free_vars() & var_bit(Var::kY), 0);
    depths.insert(quantifier_depth(f));
  }
  EXPECT_EQ(depths, (std::set<int>{0, 1, 2}));
}

TEST(RandomFormula, ThresholdBound) {
  RandomFormulaOptions o;
  o.max_threshold = 2;
  std::function<void(const Formula&)> walk = [&](const Formula& f) {
    if (f->kind() == FormulaKind::kExistsGeq) {
      ASSERT_LE(f->threshold(), 2);
    }
    for (const auto& c : f->children()) walk(c);
  };
  for (std::uint64_t s = 0; s < 200; ++s) walk(random_formula(s, kSig, o));
}
