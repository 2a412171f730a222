#include <gtest/gtest.h>

#include "altafini/signed_graph.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace altafini;
using fixtures::graph;
using fixtures::signs;

TEST(SignedDigraph, AddsPositiveSelfArcs) {
    const SignedDigraph g(3);
    for (int i = 0; i < 3; ++i) EXPECT_TRUE(g.has_arc(i, i, Sign::positive));
    EXPECT_TRUE(g.proper_arcs().empty());
}

TEST(SignedDigraph, RejectsBadInput) {
    EXPECT_THROW(SignedDigraph(0), InvalidArgument);
    const std::vector<SignedArc> out_of_range{{0, 3, Sign::positive}};
    EXPECT_THROW(SignedDigraph(3, out_of_range), InvalidArgument);
    const std::vector<SignedArc> negative_loop{{1, 1, Sign::negative}};
    EXPECT_THROW(SignedDigraph(3, negative_loop), InvalidArgument);
}

TEST(GraphUnion, SingleGraphIsIdentity) {
    const auto g = graph(3, {{1, 2, '+'}, {2, 3, '-'}});
    const std::vector<SignedDigraph> one{g};
    EXPECT_EQ(graph_union(one), g);
}

TEST(GraphUnion, ExampleUnionIsMultidigraph) {
    const std::vector<SignedDigraph> gs{graph_of(fixtures::odd()), graph_of(fixtures::even())};
    const auto u = graph_union(gs);
    EXPECT_TRUE(u.has_arc(2, 0, Sign::positive));
    EXPECT_TRUE(u.has_arc(2, 0, Sign::negative));
    EXPECT_TRUE(u.is_multidigraph());
}

TEST(GraphUnion, ArcDisjointArcsBothKept) {
    const std::vector<SignedDigraph> gs{graph(3, {{1, 2, '+'}}), graph(3, {{3, 1, '-'}})};
    const auto u = graph_union(gs);
    EXPECT_TRUE(u.has_arc(0, 1, Sign::positive));
    EXPECT_TRUE(u.has_arc(2, 0, Sign::negative));
    EXPECT_EQ(u.proper_arcs().size(), 2u);
}

TEST(Connectivity, Examples) {
    EXPECT_TRUE(is_strongly_connected(graph(3, {{1, 2, '+'}, {2, 3, '+'}, {3, 1, '+'}})));
    EXPECT_TRUE(is_strongly_connected(graph_of(fixtures::odd())));
    EXPECT_FALSE(is_strongly_connected(SignedDigraph(2)));

    EXPECT_TRUE(is_rooted(graph(4, {{1, 2, '+'}, {1, 3, '-'}, {1, 4, '+'}})));
    EXPECT_TRUE(is_rooted(graph_of(fixtures::odd())));
    EXPECT_FALSE(is_rooted(graph(4, {{1, 2, '+'}, {2, 1, '+'}, {3, 4, '+'}, {4, 3, '+'}})));
}

TEST(Connectivity, ChainCondensationIsPath) {
    const auto cond = mutually_reachable_classes(graph(3, {{1, 2, '+'}, {2, 3, '+'}}));
    ASSERT_EQ(cond.count(), 3);
    for (int c = 0; c < 3; ++c) EXPECT_EQ(cond.components[c].size(), 1u);
    EXPECT_EQ(cond.sources().size(), 1u);
    const auto single = mutually_reachable_classes(graph_of(fixtures::odd()));
    EXPECT_EQ(single.count(), 1);
}

TEST(Connectivity, MatchesClosureOracleOnRandomGraphs) {
    oracle::Rng rng(11);
    for (int k = 0; k < 300; ++k) {
        const int n = oracle::uniform_int(rng, 1, 8);
        const auto g = oracle::sign_arcs(n, oracle::random_arc_set(n, rng, 0.2, false), rng, std::nullopt);
        const auto expected = oracle::scc_sets(oracle::adjacency(g));
        auto got = mutually_reachable_classes(g).components;
        for (auto& c : got) std::sort(c.begin(), c.end());
        std::sort(got.begin(), got.end());
        auto want = expected;
        std::sort(want.begin(), want.end());
        EXPECT_EQ(got, want);
        EXPECT_EQ(is_strongly_connected(g), expected.size() == 1);
    }
}

TEST(Balance, AllPositiveGivesUniformClustering) {
    const auto v = check_balance(graph(3, {{1, 2, '+'}, {2, 3, '+'}, {3, 1, '+'}}));
    ASSERT_TRUE(v.balanced());
    EXPECT_TRUE(v.clustering().is_uniform());
}

TEST(Balance, OddExampleClustering) {
    const auto v = check_balance(graph_of(fixtures::odd()));
    ASSERT_TRUE(v.balanced());
    EXPECT_EQ(signs(v.clustering()), (std::vector<int>{1, -1, 1}));
    EXPECT_EQ(oracle::brute_force_balance(graph_of(fixtures::odd())), (std::vector<int>{1, -1, 1}));
}

TEST(Balance, UnionExampleHasLengthTwoCertificate) {
    const std::vector<SignedDigraph> gs{graph_of(fixtures::odd()), graph_of(fixtures::even())};
    const auto u = graph_union(gs);
    EXPECT_FALSE(oracle::brute_force_balance(u).has_value());
    const auto v = check_balance(u);
    ASSERT_FALSE(v.balanced());
    const auto& c = v.certificate();
    EXPECT_TRUE(c.is_valid_in(u));
    EXPECT_EQ(c.length(), 2u);
    EXPECT_EQ(c.negative_count(), 1);
    // Both steps join the same pair with opposite signs.
    EXPECT_NE(c.signs[0], c.signs[1]);
}

TEST(Balance, VerifyBalance) {
    const auto g_even = graph_of(fixtures::even());
    EXPECT_TRUE(verify_balance(g_even, Clustering({1, 1, -1})));
    EXPECT_FALSE(verify_balance(g_even, Clustering({1, -1, 1})));
    EXPECT_TRUE(verify_balance(SignedDigraph(3), Clustering::uniform(3)));
}

TEST(Balance, AgreesWithBruteForce) {
    oracle::Rng rng(12);
    for (int k = 0; k < 400; ++k) {
        const int n = oracle::uniform_int(rng, 1, 8);
        const auto arcs = oracle::random_arc_set(n, rng, 0.25, false);
        const auto g = k % 2 ? oracle::sign_arcs(n, arcs, rng, oracle::random_clustering(n, rng))
                             : oracle::sign_arcs(n, arcs, rng, std::nullopt);
        const auto truth = oracle::brute_force_balance(g);
        const auto v = check_balance(g);
        ASSERT_EQ(truth.has_value(), v.balanced());
        if (v.balanced()) {
            EXPECT_TRUE(verify_balance(g, v.clustering()));
            EXPECT_EQ(v.clustering()[0], 1);
        } else {
            EXPECT_TRUE(v.certificate().is_valid_in(g));
            EXPECT_EQ(v.certificate().negative_count() % 2, 1);
        }
    }
}

// Switching the signs of a vertex set (gauge transform) preserves balance.
TEST(Balance, GaugeInvariance) {
    oracle::Rng rng(13);
    for (int k = 0; k < 200; ++k) {
        const int n = oracle::uniform_int(rng, 2, 7);
        const auto g = oracle::sign_arcs(n, oracle::random_arc_set(n, rng, 0.3, false), rng, std::nullopt);
        const auto d = oracle::random_clustering(n, rng);
        std::vector<SignedArc> switched;
        for (auto a : g.proper_arcs()) {
            if (d[a.from] * d[a.to] < 0) a.sign = a.sign == Sign::positive ? Sign::negative : Sign::positive;
            switched.push_back(a);
        }
        EXPECT_EQ(check_balance(g).balanced(), check_balance(SignedDigraph(n, switched)).balanced());
    }
}

TEST(NegativeCycle, BalancedHasNone) {
    EXPECT_FALSE(find_negative_directed_cycle(graph_of(fixtures::odd())).has_value());
}

TEST(NegativeCycle, MixedTwoCycle) {
    const auto g = graph(2, {{1, 2, '+'}, {2, 1, '-'}});
    const auto c = find_negative_directed_cycle(g);
    ASSERT_TRUE(c.has_value());
    EXPECT_TRUE(c->is_simple_directed_cycle());
    EXPECT_EQ(c->length(), 2u);
    EXPECT_EQ(c->negative_count(), 1);
    EXPECT_TRUE(c->is_valid_in(g));
}

TEST(NegativeCycle, RequiresStrongConnectivity) {
    EXPECT_THROW(find_negative_directed_cycle(graph(2, {{1, 2, '-'}})), InvalidArgument);
}

TEST(NegativeCycle, RandomUnbalancedAgainstEnumeration) {
    oracle::Rng rng(14);
    for (int k = 0; k < 300; ++k) {
        const int n = oracle::uniform_int(rng, 2, 8);
        const auto g = oracle::random_sc_graph(n, rng, oracle::Balance::unbalanced, 0.3);
        const auto c = find_negative_directed_cycle(g);
        ASSERT_TRUE(c.has_value());
        ASSERT_TRUE(c->is_simple_directed_cycle());
        ASSERT_TRUE(c->is_valid_in(g));
        std::vector<int> body(c->vertices.begin(), c->vertices.end() - 1);
        std::rotate(body.begin(), std::min_element(body.begin(), body.end()), body.end());
        EXPECT_EQ(oracle::simple_cycles(g).count(oracle::Cycle{body, c->negative_count()}), 1u);
    }
}

TEST(GraphClass, Labels) {
    EXPECT_EQ(classify_class(graph(2, {{1, 2, '+'}})).label(), "C_1");
    EXPECT_EQ(classify_class(graph_of(fixtures::odd())).label(), "C_(+1,-1,+1)");
    const std::vector<SignedDigraph> gs{graph_of(fixtures::odd()), graph_of(fixtures::even())};
    EXPECT_EQ(classify_class(graph_union(gs)).label(), "C_u");
    EXPECT_THROW(classify_class(SignedDigraph(2)), InvalidArgument);
}

TEST(ClusteringType, Validation) {
    EXPECT_THROW(Clustering({-1, 1}), InvalidArgument);
    EXPECT_THROW(Clustering({1, 0}), InvalidArgument);
    EXPECT_EQ(signs(Clustering::normalized({-1, 1, -1})), (std::vector<int>{1, -1, 1}));
}
