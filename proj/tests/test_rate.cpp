#include <gtest/gtest.h>

#include <cmath>

#include "altafini/dynamics.hpp"
#include "altafini/lifting.hpp"
#include "altafini/rate.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace altafini;

namespace {

Matrix uniform_complete(int n) { return Matrix::Constant(n, n, 1.0 / n); }

/// Max over roots of the BFS eccentricity, by Floyd-Warshall distances.
int eccentricity_oracle(const std::vector<std::vector<bool>>& adj) {
    const int n = static_cast<int>(adj.size());
    const int inf = 1 << 20;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i == j) d[i][j] = 0;
            else if (adj[i][j]) d[i][j] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    int best = 0;
    for (int i = 0; i < n; ++i) best = std::max(best, *std::max_element(d[i].begin(), d[i].end()));
    return best;
}

}  // namespace

TEST(PerronVector, DoublyStochasticIsUniform) {
    const Vector pi = left_perron_vector(uniform_complete(4));
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(pi(i), 0.25, 1e-14);
}

TEST(PerronVector, OddExampleResidual) {
    const Matrix s = abs(fixtures::odd());
    const Vector pi = left_perron_vector(s);
    EXPECT_NEAR(pi.sum(), 1.0, 1e-14);
    EXPECT_LE((pi.transpose() * s - pi.transpose()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_THROW(left_perron_vector(Matrix::Identity(2, 2)), NotIrreducible);
}

TEST(AbsoluteProbability, ConstantDoublyStochastic) {
    const auto s = SwitchingSignal::constant(validate(uniform_complete(3)));
    const auto seq = absolute_probability_sequence(s, false);
    EXPECT_NEAR(seq.delta, 1.0 / 3, 1e-14);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(seq.at(5)(i), 1.0 / 3, 1e-14);
}

TEST(AbsoluteProbability, PeriodicIdentityAndPerronProperty) {
    const auto s = fixtures::alternating();
    for (bool lifted : {false, true}) {
        const auto seq = absolute_probability_sequence(s, lifted);
        const Matrix s1 = stochastic_at(s, 1, lifted), s2 = stochastic_at(s, 2, lifted);
        // pi(1) is fixed by the period product S(2) S(1).
        EXPECT_LE((seq.at(1).transpose() * s2 * s1 - seq.at(1).transpose()).cwiseAbs().maxCoeff(), 1e-13);
        for (long long t = 1; t <= 6; ++t)
            EXPECT_LE((seq.at(t).transpose() - seq.at(t + 1).transpose() * stochastic_at(s, t, lifted))
                          .cwiseAbs()
                          .maxCoeff(),
                      1e-12);
        EXPECT_GT(seq.delta, 0.0);
    }
}

TEST(PStar, Examples) {
    Digraph complete(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) complete.add_arc(i, j);
    EXPECT_EQ(p_star(complete), 1);
    Digraph cycle(5);
    for (int i = 0; i < 5; ++i) cycle.add_arc(i, (i + 1) % 5);
    EXPECT_EQ(p_star(cycle), 4);
    EXPECT_EQ(p_star(graph_of(fixtures::odd())), 2);
}

TEST(PStar, MatchesShortestPathOracle) {
    oracle::Rng rng(51);
    for (int k = 0; k < 100; ++k) {
        const int n = oracle::uniform_int(rng, 1, 8);
        const auto g = oracle::random_sc_graph(n, rng, oracle::Balance::random, 0.2);
        EXPECT_EQ(p_star(g), eccentricity_oracle(oracle::adjacency(g)));
        EXPECT_LE(p_star_min(g.underlying()), p_star(g));
    }
}

TEST(RateBound, UniformCompleteGraph) {
    for (int n : {2, 3, 5}) {
        const auto bound = rate_bound_balanced(SwitchingSignal::constant(validate(uniform_complete(n))));
        EXPECT_NEAR(bound.delta, 1.0 / n, 1e-14);
        EXPECT_NEAR(bound.beta, 1.0 / n, 1e-15);
        EXPECT_EQ(bound.p_star, 1);
        EXPECT_NEAR(bound.rho, 1.0 - 1.0 / (4.0 * n * n * n), 1e-14);
    }
}

TEST(RateBound, GaugeEquivalentSignalsShareRho) {
    oracle::Rng rng(52);
    for (int k = 0; k < 30; ++k) {
        const int n = oracle::uniform_int(rng, 2, 6);
        const auto g = oracle::random_sc_graph(n, rng, oracle::Balance::balanced);
        const auto a = oracle::random_weight_matrix(g, rng);
        const auto b = Clustering(oracle::random_clustering(n, rng));
        const auto ba = validate(gauge_transform(a, b));
        const double r1 = rate_bound_balanced(SwitchingSignal::constant(a)).rho;
        const double r2 = rate_bound_balanced(SwitchingSignal::constant(ba)).rho;
        EXPECT_DOUBLE_EQ(r1, r2);
        EXPECT_GT(r1, 0.0);
        EXPECT_LT(r1, 1.0);
    }
}

TEST(RateBound, MixedTwoCycleLift) {
    const auto a = validate(fixtures::rows({{0.5, -0.5}, {0.5, 0.5}}));
    const auto bound = rate_bound_unbalanced(SwitchingSignal::constant(a));
    EXPECT_EQ(bound.p_star, 3);
    EXPECT_EQ(bound.p_star, eccentricity_oracle(oracle::adjacency(lifted_graph(a))));
    EXPECT_TRUE(bound.sanity_bound_holds);
    EXPECT_LE(bound.p_star, 2 * bound.base_p_star + bound.c_star);
    EXPECT_GT(bound.rho, 0.0);
    EXPECT_LT(bound.rho, 1.0);
    // The 4x4 lift is doubly stochastic here, so delta is 1/4.
    EXPECT_NEAR(bound.delta, 0.25, 1e-14);
    EXPECT_NEAR(bound.rho, 1.0 - 0.25 * 0.25 / (4 * 3), 1e-14);
}

TEST(RateBound, HypothesisViolations) {
    EXPECT_THROW(rate_bound_balanced(SwitchingSignal::constant(validate(Matrix::Identity(2, 2)))),
                 RateHypothesisViolation);
    EXPECT_THROW(rate_bound_balanced(fixtures::alternating()), RateHypothesisViolation);
    EXPECT_THROW(rate_bound_unbalanced(SwitchingSignal::constant(fixtures::odd())), RateHypothesisViolation);
}

TEST(EmpiricalRate, GeometricSeries) {
    std::vector<double> spread;
    for (int t = 0; t < 60; ++t) spread.push_back(std::pow(0.5, t));
    EXPECT_NEAR(empirical_rate(spread), 0.5, 1e-6);
}

TEST(EmpiricalRate, IdentityIsNonContracting) {
    const auto traj = simulate(SwitchingSignal::constant(validate(Matrix::Identity(3, 3))),
                               (Vector(3) << 1, -2, 0.5).finished(), 50);
    EXPECT_THROW(empirical_rate(traj, SpreadMeasure{std::nullopt}), NonContracting);
}

TEST(EmpiricalRate, AlternatingExampleBelowOne) {
    const auto traj = simulate(fixtures::alternating(), Vector::Ones(3), 200);
    const double rho = empirical_rate(traj, SpreadMeasure{std::nullopt});
    EXPECT_LT(rho, 1.0);
    // Same contraction as the spectral radius of the period product, per step.
    Eigen::EigenSolver<Matrix> es(fixtures::even_entries() * fixtures::odd_entries());
    double radius = 0;
    for (int i = 0; i < 3; ++i) radius = std::max(radius, std::abs(es.eigenvalues()(i)));
    EXPECT_NEAR(rho, std::sqrt(radius), 5e-3);
}

// Soundness for constant signals satisfying the hypotheses.
TEST(RateBound, SoundOnRandomConstantSignals) {
    oracle::Rng rng(53);
    for (int k = 0; k < 60; ++k) {
        const bool balanced = k % 2 == 0;
        const int n = oracle::uniform_int(rng, 2, 6);
        const auto g = oracle::random_sc_graph(n, rng, balanced ? oracle::Balance::balanced : oracle::Balance::unbalanced);
        const auto s = SwitchingSignal::constant(oracle::random_weight_matrix(g, rng));
        const auto bound = balanced ? rate_bound_balanced(s) : rate_bound_unbalanced(s);
        const auto traj = simulate(s, random_unit_vector(n, rng), 4000);
        SpreadMeasure m{std::nullopt};
        if (balanced) m.clustering = check_balance(g).clustering();
        EXPECT_LE(empirical_rate(traj, m), bound.rho);
        EXPECT_LE(bound.rho_min_reading, bound.rho);
    }
}
