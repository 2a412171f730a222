#include "altafini/rate.hpp"

#include <algorithm>
#include <cmath>

#include "altafini/lifting.hpp"

namespace altafini {

namespace {

std::string describe(const std::vector<RateHypothesisViolation::Issue>& issues) {
    std::string s = "rate bound hypotheses violated:";
    for (const auto& i : issues) s += " [t=" + std::to_string(i.t) + ": " + i.reason + "]";
    return s;
}

Digraph graph_of_nonnegative(const Matrix& m) {
    const int n = static_cast<int>(m.rows());
    Digraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m(i, j) > 0.0) g.add_arc(j, i);
    return g;
}

// Longest cycles are found exhaustively; beyond this size c* is replaced by its bound n.
constexpr int kExactCycleSearchLimit = 12;

}  // namespace

RateHypothesisViolation::RateHypothesisViolation(std::vector<Issue> issues)
    : Error(describe(issues)), issues_(std::move(issues)) {}

Vector left_perron_vector(const Matrix& stochastic) {
    const int n = static_cast<int>(stochastic.rows());
    if (!is_strongly_connected(graph_of_nonnegative(stochastic)))
        throw NotIrreducible("stochastic matrix is not irreducible; Perron vector is not unique");
    Eigen::RowVectorXd pi = Eigen::RowVectorXd::Constant(n, 1.0 / n);
    for (int it = 0; it < kPerronMaxIterations; ++it) {
        Eigen::RowVectorXd next = pi * stochastic;
        next /= next.sum();
        const double change = (next - pi).cwiseAbs().sum();
        pi = std::move(next);
        if (change < kPerronTolerance) break;
    }
    return pi.transpose();
}

const Vector& AbsoluteProbabilitySequence::at(long long t) const {
    if (t < 1) throw InvalidArgument("time index must be >= 1");
    const long long stored = static_cast<long long>(pis.size());
    if (t <= stored) return pis[static_cast<std::size_t>(t - 1)];
    const long long period = stored - period_start + 1;
    return pis[static_cast<std::size_t>(period_start - 1 + (t - period_start) % period)];
}

Matrix stochastic_at(const SwitchingSignal& s, long long t, bool lifted) {
    const WeightMatrix& a = s.matrix_at(t);
    return lifted ? lift(a).entries() : abs(a);
}

AbsoluteProbabilitySequence absolute_probability_sequence(const SwitchingSignal& s, bool lifted) {
    const long long L = s.prefix_length();
    const long long P = s.period_length();
    const long long t0 = L + 1;
    const int dim = lifted ? 2 * s.dimension() : s.dimension();

    Digraph joint(dim);
    Matrix cycle = Matrix::Identity(dim, dim);
    for (long long t = t0; t < t0 + P; ++t) {
        const Matrix st = stochastic_at(s, t, lifted);
        joint |= graph_of_nonnegative(st);
        cycle = st * cycle;  // S(t0+P-1) ... S(t0)
    }
    if (!is_strongly_connected(joint))
        throw NotIrreducible("joint graph of the stochastic sequence over one period is not strongly connected");

    AbsoluteProbabilitySequence seq;
    seq.lifted = lifted;
    seq.period_start = t0;
    seq.pis.assign(static_cast<std::size_t>(L + P), Vector());
    seq.pis[static_cast<std::size_t>(t0 - 1)] = left_perron_vector(cycle);

    // Backward through the period from pi(t0 + P) = pi(t0), then through the prefix.
    Eigen::RowVectorXd next = seq.pis[static_cast<std::size_t>(t0 - 1)].transpose();
    for (long long t = t0 + P - 1; t >= 1; --t) {
        if (t == t0) {
            next = seq.pis[static_cast<std::size_t>(t0 - 1)].transpose();
            continue;
        }
        next = next * stochastic_at(s, t, lifted);
        seq.pis[static_cast<std::size_t>(t - 1)] = next.transpose();
    }

    seq.delta = std::numeric_limits<double>::infinity();
    for (long long t = t0; t < t0 + P; ++t)
        seq.delta = std::min(seq.delta, seq.pis[static_cast<std::size_t>(t - 1)].minCoeff());
    seq.prefix_min = seq.delta;
    for (long long t = 1; t < t0; ++t)
        seq.prefix_min = std::min(seq.prefix_min, seq.pis[static_cast<std::size_t>(t - 1)].minCoeff());
    return seq;
}

int p_star(const Digraph& g) { return max_root_eccentricity(g); }
int p_star(const SignedDigraph& g) { return max_root_eccentricity(g.underlying()); }
int p_star_min(const Digraph& g) { return min_root_eccentricity(g); }

const char* to_string(RateKind k) noexcept {
    return k == RateKind::balanced ? "balanced" : "unbalanced";
}

namespace {

double rho_formula(double delta, double beta, int p) { return 1.0 - delta * beta * beta / (4.0 * p); }

}  // namespace

RateBound rate_bound_balanced(const SwitchingSignal& s) {
    const auto matrices = s.one_cycle();
    std::vector<RateHypothesisViolation::Issue> issues;
    std::optional<Clustering> common;
    int p_max = 0, p_min_reading = 0;
    for (std::size_t k = 0; k < matrices.size(); ++k) {
        const long long t = static_cast<long long>(k) + 1;
        const SignedDigraph g = graph_of(matrices[k]);
        if (!is_strongly_connected(g)) {
            issues.push_back({t, "graph is not strongly connected"});
            continue;
        }
        const auto verdict = check_balance(g);
        if (!verdict.balanced()) {
            issues.push_back({t, "graph is structurally unbalanced"});
            continue;
        }
        if (!common) common = verdict.clustering();
        else if (!(*common == verdict.clustering()))
            issues.push_back({t, "graph is balanced w.r.t. a different clustering"});
        const Digraph u = g.underlying();
        p_max = std::max(p_max, p_star(u));
        p_min_reading = std::max(p_min_reading, p_star_min(u));
    }
    if (!issues.empty()) throw RateHypothesisViolation(std::move(issues));

    const auto seq = absolute_probability_sequence(s, false);
    const double delta = std::min(seq.delta, seq.prefix_min);
    RateBound r{RateKind::balanced,
                rho_formula(delta, s.beta(), p_max),
                delta,
                s.beta(),
                p_max,
                p_min_reading,
                rho_formula(delta, s.beta(), p_min_reading)};
    return r;
}

RateBound rate_bound_unbalanced(const SwitchingSignal& s) {
    const auto matrices = s.one_cycle();
    std::vector<RateHypothesisViolation::Issue> issues;
    int lifted_max = 0, lifted_min_reading = 0, base_max = 0, c_star = 0;
    bool exact = true;
    for (std::size_t k = 0; k < matrices.size(); ++k) {
        const long long t = static_cast<long long>(k) + 1;
        const SignedDigraph g = graph_of(matrices[k]);
        if (!is_strongly_connected(g)) {
            issues.push_back({t, "graph is not strongly connected"});
            continue;
        }
        if (check_balance(g).balanced()) {
            issues.push_back({t, "graph is structurally balanced"});
            continue;
        }
        const Digraph lifted = lifted_graph(matrices[k]);
        lifted_max = std::max(lifted_max, p_star(lifted));
        lifted_min_reading = std::max(lifted_min_reading, p_star_min(lifted));
        const Digraph u = g.underlying();
        base_max = std::max(base_max, p_star(u));
        if (u.vertex_count() <= kExactCycleSearchLimit) {
            c_star = std::max(c_star, longest_directed_cycle(u));
        } else {
            c_star = std::max(c_star, u.vertex_count());
            exact = false;
        }
    }
    if (!issues.empty()) throw RateHypothesisViolation(std::move(issues));

    const auto seq = absolute_probability_sequence(s, true);
    const double delta = std::min(seq.delta, seq.prefix_min);
    RateBound r{RateKind::unbalanced,
                rho_formula(delta, s.beta(), lifted_max),
                delta,
                s.beta(),
                lifted_max,
                lifted_min_reading,
                rho_formula(delta, s.beta(), lifted_min_reading)};
    r.base_p_star = base_max;
    r.c_star = c_star;
    r.c_star_exact = exact;
    r.sanity_bound_holds = lifted_max <= 2 * base_max + c_star;
    return r;
}

std::vector<double> spread_series(const Trajectory& traj, const SpreadMeasure& measure) {
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const auto& x : traj.states) {
        if (!measure.clustering) {
            out.push_back(x.cwiseAbs().maxCoeff());
            continue;
        }
        const Clustering& b = *measure.clustering;
        if (b.size() != x.size()) throw InvalidArgument("clustering size does not match trajectory");
        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        for (int i = 0; i < b.size(); ++i) {
            hi = std::max(hi, b[i] * x(i));
            lo = std::min(lo, b[i] * x(i));
        }
        out.push_back(hi - lo);
    }
    return out;
}

double empirical_rate(const std::vector<double>& spread) {
    if (spread.size() < 2) throw NonContracting("trajectory too short to estimate a rate");
    const double peak = *std::max_element(spread.begin(), spread.end());
    if (!(peak > 0.0)) throw NonContracting("spread is identically zero");

    // Points after the spread first falls to round-off level carry no rate information.
    const double floor = 1e-11 * peak;
    std::size_t usable = 0;
    while (usable < spread.size() && spread[usable] > floor) ++usable;
    const bool reached_floor = usable < spread.size();

    std::size_t begin = usable / 2;
    if (usable - begin < 2) begin = 0;
    if (usable - begin < 2) {
        if (reached_floor) return 0.0;
        throw NonContracting("too few informative points");
    }
    const std::size_t end = usable;  // exclusive
    if (!reached_floor && spread[begin] < 10.0 * spread[end - 1])
        throw NonContracting("spread decreased by less than 10x over the fit window");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(end - begin);
    for (std::size_t k = begin; k < end; ++k) {
        const double x = static_cast<double>(k);
        const double y = std::log(spread[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return std::exp(slope);
}

double empirical_rate(const Trajectory& traj, const SpreadMeasure& measure) {
    return empirical_rate(spread_series(traj, measure));
}

}  // namespace altafini
