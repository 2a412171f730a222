#include <gtest/gtest.h>

#include "altafini/weight_model.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace altafini;
using fixtures::rows;

TEST(Validate, Identity) {
    const auto a = validate(Matrix::Identity(4, 4));
    EXPECT_DOUBLE_EQ(a.beta(), 1.0);
}

TEST(Validate, OddExample) {
    const auto a = fixtures::odd();
    EXPECT_DOUBLE_EQ(a.beta(), 0.5);
    EXPECT_EQ(a.entries(), fixtures::odd_entries());
}

TEST(Validate, RowSumViolationNamesRow) {
    try {
        validate(rows({{0.5, 0.6}, {0.5, 0.5}}));
        FAIL() << "expected RowSumViolation";
    } catch (const RowSumViolation& e) {
        EXPECT_EQ(e.row(), 0);
        EXPECT_NEAR(e.sum(), 1.1, 1e-15);
        EXPECT_NE(std::string(e.what()).find("row 1 "), std::string::npos);
    }
}

TEST(Validate, OtherViolations) {
    EXPECT_THROW(validate(rows({{0.0, 1.0}, {0.5, 0.5}})), NonPositiveDiagonal);
    EXPECT_THROW(validate(rows({{-0.5, 0.5}, {0.5, 0.5}})), NonPositiveDiagonal);
    EXPECT_THROW(validate(rows({{0.9, 0.1}, {0.5, 0.5}}), 0.2), BetaViolation);
    EXPECT_THROW(validate(rows({{1.0, 0.0, 0.0}, {0.5, 0.5, 0.0}})), InvalidArgument);
    EXPECT_NO_THROW(validate(rows({{0.5, 0.5 + 1e-12}, {0.5, 0.5}})));
}

TEST(GraphOf, Examples) {
    const auto g = graph_of(validate(Matrix::Identity(3, 3)));
    EXPECT_TRUE(g.proper_arcs().empty());

    const auto odd = graph_of(fixtures::odd());
    const auto expected = fixtures::graph(3, {{3, 1, '+'}, {1, 2, '-'}, {2, 3, '-'}});
    EXPECT_EQ(odd, expected);
}

TEST(GraphOf, SelfArcsAlwaysPresent) {
    oracle::Rng rng(21);
    for (int k = 0; k < 50; ++k) {
        const int n = oracle::uniform_int(rng, 1, 7);
        const auto g = graph_of(oracle::random_weight_matrix(oracle::random_sc_graph(n, rng, oracle::Balance::random), rng));
        for (int i = 0; i < n; ++i) EXPECT_TRUE(g.has_arc(i, i, Sign::positive));
    }
}

TEST(Abs, Examples) {
    const Matrix positive = rows({{0.5, 0.5}, {0.25, 0.75}});
    EXPECT_EQ(abs(validate(positive)), positive);
    EXPECT_EQ(abs(fixtures::odd()), rows({{.5, 0, .5}, {.5, .5, 0}, {0, .5, .5}}));
}

TEST(GaugeTransform, Examples) {
    const auto a = fixtures::odd();
    EXPECT_EQ(gauge_transform(a, Clustering::uniform(3)), a.entries());
    EXPECT_EQ(gauge_transform(a, Clustering({1, -1, 1})), abs(a));
}

// For any balanced graph, B A B is stochastic with nonnegative entries.
TEST(GaugeTransform, BalancedGivesStochastic) {
    oracle::Rng rng(22);
    for (int k = 0; k < 100; ++k) {
        const int n = oracle::uniform_int(rng, 1, 7);
        const auto g = oracle::random_sc_graph(n, rng, oracle::Balance::balanced);
        const auto a = oracle::random_weight_matrix(g, rng);
        const Matrix m = gauge_transform(a, Clustering(*oracle::brute_force_balance(g)));
        EXPECT_GE(m.minCoeff(), 0.0);
        EXPECT_NEAR((m.rowwise().sum().array() - 1.0).abs().maxCoeff(), 0.0, 1e-12);
        EXPECT_NEAR(infinity_norm(a.entries()), 1.0, 1e-12);
    }
}

TEST(SwitchingSignal, MatrixAt) {
    const auto s = SwitchingSignal::constant(fixtures::odd());
    EXPECT_EQ(s.matrix_at(99).entries(), fixtures::odd_entries());

    const auto alt = fixtures::alternating();
    EXPECT_EQ(alt.matrix_at(1).entries(), fixtures::odd_entries());
    EXPECT_EQ(alt.matrix_at(2).entries(), fixtures::even_entries());
    EXPECT_EQ(alt.matrix_at(3).entries(), fixtures::odd_entries());

    const auto fin = SwitchingSignal::finite({fixtures::odd(), fixtures::even()});
    EXPECT_EQ(fin.matrix_at(5).entries(), fixtures::even_entries());
    EXPECT_TRUE(fin.extended_by_repetition());
    EXPECT_THROW(alt.matrix_at(0), InvalidArgument);
}

TEST(SwitchingSignal, Validation) {
    EXPECT_THROW(SwitchingSignal::finite({}), InvalidArgument);
    EXPECT_THROW(SwitchingSignal::eventually_periodic({fixtures::odd()}, {}), InvalidArgument);
    EXPECT_THROW(SwitchingSignal::eventually_periodic({}, {fixtures::odd(), validate(Matrix::Identity(2, 2))}),
                 InvalidArgument);
    EXPECT_FALSE(SwitchingSignal::finite({fixtures::odd()}, false).is_decidable());
}

TEST(WindowUnion, Examples) {
    const auto alt = fixtures::alternating();
    EXPECT_EQ(window_union_graph(alt, 1, 1), graph_of(fixtures::odd()));
    const std::vector<SignedDigraph> gs{graph_of(fixtures::odd()), graph_of(fixtures::even())};
    const auto u = window_union_graph(alt, 1, 2);
    EXPECT_EQ(u, graph_union(gs));
    EXPECT_FALSE(check_balance(u).balanced());
    const auto c = SwitchingSignal::constant(fixtures::odd());
    EXPECT_EQ(window_union_graph(c, 7, 5), graph_of(fixtures::odd()));
}
