#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "focgnn/bench.hpp"
#include "focgnn/error.hpp"
#include "focgnn/graph.hpp"
#include "focgnn/graph_io.hpp"
#include "focgnn/verify.hpp"

using namespace focgnn;

namespace {

std::vector<Rational> row(std::initializer_list<int> v) {
  std::vector<Rational> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Signature, RejectsBadNames) {
  EXPECT_THROW(Signature({"Red", "Red"}, {}), ValidationError);
  EXPECT_THROW(Signature({"Red"}, {"Red"}), ValidationError);
  EXPECT_THROW(Signature({"1abc"}, {}), ValidationError);
  EXPECT_THROW(Signature({"primal"}, {}), ValidationError);
  EXPECT_THROW(Signature({}, {"aux1"}), ValidationError);
  EXPECT_NO_THROW(Signature({"Red@1", "_x"}, {"p1@2"}));
}

TEST(Signature, ReservedNamesAllowedOnRequest) {
  Signature s({"A", "primal"}, {"r", "aux1", "aux2"}, ReservedNames::kAllow);
  EXPECT_TRUE(s.is_transformed());
  EXPECT_FALSE(Signature({"A"}, {"r"}).is_transformed());
}

TEST(Graph, RejectsSelfLoopsAndBadReferences) {
  Signature sig({"A"}, {"r"});
  EXPECT_THROW(Graph::from_names(sig, {"a", "b"}, {}, {{"a", "r", "a"}}), ValidationError);
  EXPECT_THROW(Graph::from_names(sig, {"a", "b"}, {}, {{"a", "s", "b"}}), ValidationError);
  EXPECT_THROW(Graph::from_names(sig, {"a", "b"}, {{"c", "A"}}, {}), ValidationError);
  EXPECT_THROW(Graph::from_names(sig, {"a", "a"}, {}, {}), ValidationError);
}

TEST(Graph, DeduplicatesFacts) {
  Signature sig({"A"}, {"r"});
  auto g = Graph::from_names(sig, {"a", "b"}, {{"a", "A"}, {"a", "A"}},
                             {{"a", "r", "b"}, {"a", "r", "b"}});
  EXPECT_EQ(g.unary_facts().size(), 1u);
  EXPECT_EQ(g.triples().size(), 1u);
}

TEST(TemporalGraph, SnapshotsMustAgree) {
  Signature sig({}, {"r"});
  auto s1 = Graph::from_names(sig, {"a", "b"}, {}, {});
  auto s2 = Graph::from_names(sig, {"b", "a"}, {}, {});
  EXPECT_THROW(TemporalGraph(sig, {"a", "b"}, {s1, s2}), ValidationError);
  EXPECT_THROW(TemporalGraph(sig, {"a", "b"}, {}), ValidationError);
  auto s3 = Graph::from_names(Signature({}, {"q"}), {"a", "b"}, {}, {});
  EXPECT_THROW(TemporalGraph(sig, {"a", "b"}, {s1, s3}), ValidationError);
}

TEST(EncodeNodes, FollowsSignatureOrder) {
  Signature sig({"Red", "Blue"}, {});
  auto g = Graph::from_names(sig, {"a", "b"}, {{"a", "Red"}}, {});
  auto fa = encode_nodes(g);
  EXPECT_EQ(fa.dim, 2u);
  EXPECT_EQ(fa.rows[0], row({1, 0}));
  EXPECT_EQ(fa.rows[1], row({0, 0}));
}

TEST(EncodeNodes, EmptyUnarySignatureGivesOne) {
  auto fa = encode_nodes(make_fig1().g1);
  EXPECT_EQ(fa.dim, 1u);
  for (const auto& r : fa.rows) EXPECT_EQ(r, row({1}));
}

TEST(EncodeNodes, NoFactsThreePredicates) {
  auto g = Graph::from_names(Signature({"A", "B", "C"}, {}), {"v"}, {}, {});
  EXPECT_EQ(encode_nodes(g).rows[0], row({0, 0, 0}));
}

TEST(Neighbors, OutgoingSemantics) {
  auto f = make_fig1();
  EXPECT_EQ(neighbors(f.g1, "a", "p1"), std::vector<std::string>{"b"});
  EXPECT_TRUE(neighbors(f.g1, "b", "p1").empty());
  auto g1 = make_gn_hn(1).g;
  EXPECT_EQ(as_set(neighbors(g1, "1", "r1")), (std::set<std::string>{"2", "3", "4"}));
  EXPECT_THROW(neighbors(f.g1, "z", "p1"), ValidationError);
  EXPECT_THROW(neighbors(f.g1, "a", "q"), ValidationError);
}

TEST(Neighbors, EmptyTripleSet) {
  auto g = Graph::from_names(Signature({}, {"r"}), {"a", "b"}, {}, {});
  EXPECT_TRUE(neighbors(g, "a", "r").empty());
}

TEST(GraphClasses, Simple) {
  auto f = make_fig1();
  EXPECT_FALSE(is_simple(f.g1));
  EXPECT_TRUE(is_simple(f.g2));
  EXPECT_TRUE(is_simple(Graph::from_names(Signature({}, {"r"}), {"a"}, {}, {})));
  for (std::size_t n : {1, 2, 3}) {
    EXPECT_TRUE(is_simple(make_gn_hn(n).g));
    EXPECT_TRUE(is_simple(make_gn_hn(n).h));
  }
}

TEST(GraphClasses, Bounded) {
  auto f = make_fig1();
  EXPECT_TRUE(is_bounded(f.g1, 4));
  EXPECT_FALSE(is_bounded(f.g1, 0));
  EXPECT_TRUE(is_bounded(Graph(Signature({}, {}), {}, {}, {}), 0));
  EXPECT_FALSE(is_bounded(make_gn_hn(3).g, 13));
  EXPECT_TRUE(is_bounded(make_gn_hn(3).g, 14));
}

TEST(InversePredicates, AddsReversedTriples) {
  Signature sig({}, {"p"});
  auto g = Graph::from_names(sig, {"a", "b"}, {}, {{"a", "p", "b"}});
  auto h = add_inverse_predicates(g);
  EXPECT_EQ(h.signature().binary(), (std::vector<std::string>{"p", "p_inv"}));
  EXPECT_EQ(h.triples().size(), 2u);
  EXPECT_EQ(neighbors(h, "b", "p_inv"), std::vector<std::string>{"a"});
  EXPECT_EQ(neighbors(h, "a", "p"), std::vector<std::string>{"b"});
}

TEST(InversePredicates, NoTriplesOnlySignatureGrows) {
  auto g = Graph::from_names(Signature({"A"}, {"r", "s"}), {"a"}, {{"a", "A"}}, {});
  auto h = add_inverse_predicates(g);
  EXPECT_EQ(h.signature().binary().size(), 4u);
  EXPECT_TRUE(h.triples().empty());
  EXPECT_EQ(h.unary_facts(), g.unary_facts());
}

TEST(InversePredicates, RandomGraphNeighbourSets) {
  auto g = random_graph(5, standard_signature(), RandomGraphOptions{12, 2.0, 0.5, 0.5, false});
  auto h = add_inverse_predicates(g);
  for (const auto& b : g.nodes())
    for (const std::string p : {"r", "s"}) {
      std::set<std::string> expect;
      for (const auto& a : g.nodes())
        for (const auto& w : neighbors(g, a, p))
          if (w == b) expect.insert(a);
      EXPECT_EQ(as_set(neighbors(h, b, p + "_inv")), expect);
    }
}

TEST(InversePredicates, SecondApplicationRejected) {
  auto h = add_inverse_predicates(make_fig1().g1);
  EXPECT_THROW(add_inverse_predicates(h), ValidationError);
}

TEST(Permute, IdentityAndSwap) {
  auto f = make_fig1();
  std::map<std::string, std::string> id;
  for (const auto& v : f.g1.nodes()) id[v] = v;
  EXPECT_EQ(permute(f.g1, id), f.g1);

  auto swapped = permute(f.g1, {{"a", "b"}, {"b", "a"}, {"c", "c"}, {"d", "d"}});
  auto expect = Graph::from_names(
      f.g1.signature(), f.g1.nodes(), {},
      {{"b", "p1", "a"}, {"b", "p2", "a"}, {"c", "p1", "d"}, {"c", "p2", "d"}});
  EXPECT_EQ(swapped, expect);
}

TEST(Permute, InverseRestores) {
  auto g = random_graph(3, standard_signature(), RandomGraphOptions{9, 2.0, 0.5, 0.5, false});
  auto p = random_permutation(g.nodes(), 11);
  std::map<std::string, std::string> inv;
  for (const auto& [a, b] : p) inv[b] = a;
  EXPECT_EQ(permute(permute(g, p), inv), g);
}

TEST(Permute, RejectsNonBijection) {
  auto g = make_fig1().g1;
  EXPECT_THROW(permute(g, {{"a", "b"}, {"b", "b"}, {"c", "c"}, {"d", "d"}}), ValidationError);
  EXPECT_THROW(permute(g, {{"a", "a"}}), ValidationError);
}

TEST(Permute, EncodingAndNeighbourEquivariance) {
  auto g = random_graph(8, standard_signature(), RandomGraphOptions{10, 2.0, 0.5, 0.5, false});
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto p = random_permutation(g.nodes(), s);
    auto h = permute(g, p);
    auto eg = encode_nodes(g), eh = encode_nodes(h);
    for (const auto& v : g.nodes()) {
      EXPECT_EQ(eh.rows[*h.node_index(p[v])], eg.rows[*g.node_index(v)]);
      for (const std::string r : {"r", "s"}) {
        std::set<std::string> mapped;
        for (const auto& w : neighbors(g, v, r)) mapped.insert(p[w]);
        EXPECT_EQ(as_set(neighbors(h, p[v], r)), mapped);
      }
    }
    EXPECT_EQ(is_simple(h), is_simple(g));
  }
}

TEST(GraphJson, RoundTripAndStableOutput) {
  auto g = random_graph(1, Signature({"Red", "Blue"}, {"p1", "p2"}),
                        RandomGraphOptions{8, 2.0, 0.5, 0.5, false});
  auto j = graph_to_json(g);
  EXPECT_EQ(j["format_version"], 1);
  auto back = graph_from_json(j);
  EXPECT_EQ(back, g);
  EXPECT_EQ(graph_to_json(back).dump(), j.dump());
}

TEST(GraphJson, ParsesDocumentedExample) {
  auto j = Json::parse(
      R"({"signature":{"unary":["Red","Blue"],"binary":["p1","p2"]},"nodes":["a","b"],)"
      R"("unary_facts":[["a","Red"]],"triples":[["a","p1","b"]]})");
  auto g = graph_from_json(j);
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_TRUE(g.has_unary(0, 0));
  EXPECT_TRUE(g.has_triple(0, 0, 1));
}

TEST(GraphJson, FactOrderIrrelevant) {
  auto a = Json::parse(
      R"({"signature":{"unary":[],"binary":["r"]},"nodes":["a","b","c"],)"
      R"("unary_facts":[],"triples":[["b","r","c"],["a","r","b"]]})");
  auto b = Json::parse(
      R"({"signature":{"unary":[],"binary":["r"]},"nodes":["a","b","c"],)"
      R"("unary_facts":[],"triples":[["a","r","b"],["b","r","c"]]})");
  EXPECT_EQ(graph_from_json(a), graph_from_json(b));
}

TEST(GraphJson, UnknownKeysAndVersions) {
  auto j = graph_to_json(make_fig1().g1);
  auto bad = j;
  bad["colour"] = "red";
  EXPECT_THROW(graph_from_json(bad), FormatError);
  bad = j;
  bad["format_version"] = 2;
  EXPECT_THROW(graph_from_json(bad), FormatError);
  bad = j;
  bad["signature"]["ternary"] = Json::array();
  EXPECT_THROW(graph_from_json(bad), FormatError);
  bad = j;
  bad.erase("nodes");
  EXPECT_THROW(graph_from_json(bad), FormatError);
}

TEST(GraphJson, TemporalRoundTrip) {
  auto tg = make_temporal_sep().graph;
  auto j = temporal_to_json(tg);
  EXPECT_EQ(temporal_from_json(j), tg);
  EXPECT_EQ(j["snapshots"].size(), 2u);
}

TEST(GraphJson, Rationals) {
  EXPECT_EQ(rational_from_json(rational_to_json(Rational(3, 4))), Rational(3, 4));
  EXPECT_EQ(rational_from_json(Json(5)), Rational(5));
  EXPECT_THROW(rational_from_json(Json("x/y")), FormatError);
}
