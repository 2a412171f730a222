#include <gtest/gtest.h>

#include "altafini/lifting.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace altafini;

namespace {

Matrix lift_by_formula(const Matrix& a) {
    const Eigen::Index n = a.rows();
    Matrix out = Matrix::Zero(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const double pos = std::max(0.0, a(i, j)), neg = std::max(0.0, -a(i, j));
            out(i, j) = pos;
            out(i + n, j + n) = pos;
            out(i + n, j) = neg;
            out(i, j + n) = neg;
        }
    return out;
}

}  // namespace

TEST(Lift, AllPositiveIsBlockDiagonal) {
    const Matrix a = fixtures::rows({{0.5, 0.5}, {0.25, 0.75}});
    Matrix expected = Matrix::Zero(4, 4);
    expected.topLeftCorner(2, 2) = a;
    expected.bottomRightCorner(2, 2) = a;
    EXPECT_EQ(lift(validate(a)).entries(), expected);
}

TEST(Lift, OddExampleEntries) {
    const Matrix abar = lift(fixtures::odd()).entries();
    // 1-based (2,1) and (2,4): a_21 = -0.5 moves to the cross block.
    EXPECT_EQ(abar(1, 0), 0.0);
    EXPECT_EQ(abar(1, 3), 0.5);
    EXPECT_EQ(abar, lift_by_formula(fixtures::odd_entries()));
}

TEST(Lift, RandomMatchesFormulaAndIsStochastic) {
    oracle::Rng rng(31);
    for (int k = 0; k < 100; ++k) {
        const int n = oracle::uniform_int(rng, 1, 7);
        const auto a = oracle::random_weight_matrix(oracle::random_sc_graph(n, rng, oracle::Balance::random), rng);
        const Matrix abar = lift(a).entries();
        EXPECT_EQ(abar, lift_by_formula(a.entries()));
        EXPECT_GE(abar.minCoeff(), 0.0);
        EXPECT_NEAR((abar.rowwise().sum().array() - 1.0).abs().maxCoeff(), 0.0, 1e-12);
        // A x = first half of Abar [x; -x].
        const Vector x = Vector::Random(n);
        Vector z(2 * n);
        z << x, -x;
        const Vector lz = abar * z;
        EXPECT_LE((lz.head(n) - a.entries() * x).cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_LE((lz.tail(n) + a.entries() * x).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(LiftedGraph, Examples) {
    const Digraph id = lifted_graph(SignedDigraph(3));
    EXPECT_EQ(id.arc_count(), 6u);
    for (int v = 0; v < 6; ++v) EXPECT_TRUE(id.has_arc(v, v));

    // 1 -> 2 (+), 2 -> 1 (-): lifted arcs 1->2, 2->1-, 1- -> 2-, 2- -> 1 form one 4-cycle.
    const Digraph two = lifted_graph(fixtures::graph(2, {{1, 2, '+'}, {2, 1, '-'}}));
    EXPECT_EQ(two.arc_count(), 8u);
    EXPECT_TRUE(two.has_arc(0, 1));
    EXPECT_TRUE(two.has_arc(1, 2));
    EXPECT_TRUE(two.has_arc(2, 3));
    EXPECT_TRUE(two.has_arc(3, 0));

    const auto positive = fixtures::graph(3, {{1, 2, '+'}, {2, 3, '+'}});
    const Digraph copies = lifted_graph(positive);
    EXPECT_EQ(copies.arc_count(), 2 * positive.arcs().size());
    EXPECT_TRUE(copies.has_arc(0, 1));
    EXPECT_TRUE(copies.has_arc(3, 4));
}

TEST(LiftedGraph, MatrixAndGraphFormsAgree) {
    oracle::Rng rng(32);
    for (int k = 0; k < 100; ++k) {
        const int n = oracle::uniform_int(rng, 1, 7);
        const auto a = oracle::random_weight_matrix(oracle::random_sc_graph(n, rng, oracle::Balance::random), rng);
        EXPECT_EQ(lifted_graph(a), lifted_graph(graph_of(a)));
    }
}

TEST(LiftedStructure, Examples) {
    const auto all_positive = analyze_lifted_structure(fixtures::graph(3, {{1, 2, '+'}, {2, 3, '+'}, {3, 1, '+'}}));
    ASSERT_FALSE(all_positive.strongly_connected());
    EXPECT_EQ(all_positive.components().first, (std::vector<Vertex>{0, 1, 2}));
    EXPECT_EQ(all_positive.components().second, (std::vector<Vertex>{3, 4, 5}));

    const auto odd = analyze_lifted_structure(graph_of(fixtures::odd()));
    ASSERT_FALSE(odd.strongly_connected());
    EXPECT_EQ(odd.components().first, (std::vector<Vertex>{0, 2, 4}));

    EXPECT_TRUE(analyze_lifted_structure(fixtures::graph(2, {{1, 2, '+'}, {2, 1, '-'}})).strongly_connected());
    EXPECT_THROW(analyze_lifted_structure(SignedDigraph(2)), InvalidArgument);
}

TEST(LiftedStructure, JointWindows) {
    const auto constant = SwitchingSignal::constant(fixtures::odd());
    EXPECT_FALSE(joint_lifted_structure(constant, 4, 3).strongly_connected());
    EXPECT_TRUE(joint_lifted_structure(fixtures::alternating(), 1, 2).strongly_connected());
}

TEST(LiftedStructure, VertexNames) {
    EXPECT_EQ(lifted_vertex_name(0, 3), "1");
    EXPECT_EQ(lifted_vertex_name(4, 3), "2⁻");
}
