#include "altafini/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "altafini/lifting.hpp"

namespace altafini {

namespace {

void record_spreads(Trajectory& traj) {
    const Vector& x = traj.states.back();
    const Vector m = x.cwiseAbs();
    traj.modulus_spread.push_back(m.maxCoeff() - m.minCoeff());
    traj.lifted_spread.push_back(2.0 * m.maxCoeff());
}

}  // namespace

Trajectory simulate(const SwitchingSignal& s, const Vector& x1, long long T, bool track_lifted) {
    if (T < 1) throw InvalidArgument("horizon must be >= 1");
    if (x1.size() != s.dimension())
        throw InvalidArgument("initial state has dimension " + std::to_string(x1.size()) +
                              ", signal has " + std::to_string(s.dimension()));
    Trajectory traj;
    traj.states.reserve(static_cast<std::size_t>(T));
    traj.states.push_back(x1);
    record_spreads(traj);
    if (track_lifted) {
        Vector z(2 * x1.size());
        z << x1, -x1;
        traj.lifted.push_back(std::move(z));
    }
    extend(traj, s, T);
    return traj;
}

void extend(Trajectory& traj, const SwitchingSignal& s, long long T) {
    if (traj.states.empty()) throw InvalidArgument("cannot extend an empty trajectory");
    const bool lifted = !traj.lifted.empty();
    for (long long t = traj.horizon(); t < T; ++t) {
        const WeightMatrix& a = s.matrix_at(t);
        traj.states.push_back(a.entries() * traj.states.back());
        record_spreads(traj);
        if (lifted) traj.lifted.push_back(lift(a).entries() * traj.lifted.back());
    }
}

Matrix transition_matrix(const SwitchingSignal& s, long long from, long long to) {
    if (from < 1 || to < from) throw InvalidArgument("transition matrix needs 1 <= j <= k");
    Matrix phi = Matrix::Identity(s.dimension(), s.dimension());
    for (long long t = from; t < to; ++t) phi = s.matrix_at(t).entries() * phi;
    return phi;
}

const char* to_string(LimitKind k) noexcept {
    switch (k) {
        case LimitKind::nonzero_modulus_consensus: return "nonzero_modulus_consensus";
        case LimitKind::zero_consensus: return "zero_consensus";
        case LimitKind::undetermined: return "undetermined";
    }
    return "?";
}

LimitVerdict detect_limit(const Trajectory& traj, double tol) {
    if (traj.horizon() < 2) throw InvalidArgument("limit detection needs at least two states");
    const Vector& x = traj.final();
    const double scale = std::max(1.0, traj.initial().cwiseAbs().maxCoeff());
    const double top = x.cwiseAbs().maxCoeff();

    LimitVerdict v;
    v.residual = traj.modulus_spread.back();
    if (top <= tol * scale) {
        v.kind = LimitKind::zero_consensus;
        return v;
    }
    if (v.residual > tol * top) return v;

    const long long T = traj.horizon();
    const long long from = T - std::max<long long>(1, T / 4);
    std::vector<int> pattern(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) pattern[i] = x(i) > 0 ? 1 : (x(i) < 0 ? -1 : 0);
    if (std::find(pattern.begin(), pattern.end(), 0) != pattern.end()) return v;
    for (long long t = from; t <= T; ++t) {
        const Vector& y = traj.at(t);
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const int sgn = y(i) > 0 ? 1 : (y(i) < 0 ? -1 : 0);
            if (sgn != pattern[i]) return v;
        }
    }
    v.kind = LimitKind::nonzero_modulus_consensus;
    v.clustering = Clustering::normalized(pattern);
    v.level = x.cwiseAbs().mean();
    return v;
}

long long default_horizon(int n, int p) { return 64LL * n * std::max(1, p); }

AdaptiveRun simulate_adaptive(const SwitchingSignal& s, const Vector& x1, long long initial_horizon,
                              long long max_horizon, double tol) {
    long long T = std::max<long long>(2, std::min(initial_horizon, max_horizon));
    AdaptiveRun run{simulate(s, x1, T), {}};
    run.verdict = detect_limit(run.trajectory, tol);
    while (T < max_horizon) {
        const LimitVerdict previous = run.verdict;
        T = std::min(2 * T, max_horizon);
        extend(run.trajectory, s, T);
        run.verdict = detect_limit(run.trajectory, tol);

        const bool decided = run.verdict.kind != LimitKind::undetermined;
        if (decided && run.verdict.kind == previous.kind &&
            run.verdict.clustering == previous.clustering)
            break;
        if (!decided && previous.kind == LimitKind::undetermined &&
            run.verdict.residual >= previous.residual * (1.0 - 1e-12))
            break;
    }
    return run;
}

// ---------------------------------------------------------------------------

NotJointlyStronglyConnected::NotJointlyStronglyConnected(long long start, int length)
    : Error("window starting at t=" + std::to_string(start) + " of length " + std::to_string(length) +
            " is not jointly strongly connected"),
      start_(start),
      length_(length) {}

const char* to_string(BalanceKind k) noexcept {
    switch (k) {
        case BalanceKind::repeatedly_jointly_balanced: return "repeatedly_jointly_balanced";
        case BalanceKind::repeatedly_jointly_unbalanced: return "repeatedly_jointly_unbalanced";
        case BalanceKind::mixed_prefix: return "mixed_prefix";
        case BalanceKind::mixed_windows: return "mixed_windows";
    }
    return "?";
}

namespace {

// Every distinct window q + kp (k >= 0). Windows starting after the prefix are identified by
// their offset into the period, so enumeration stops once an offset repeats.
std::vector<long long> window_starts(const SwitchingSignal& s, int p, long long q) {
    const long long L = s.prefix_length();
    const long long P = s.period_length();
    std::vector<long long> starts;
    std::vector<bool> seen(static_cast<std::size_t>(P), false);
    for (long long start = q;; start += p) {
        if (start > L) {
            const auto offset = static_cast<std::size_t>((start - L - 1) % P);
            if (seen[offset]) break;
            seen[offset] = true;
        }
        starts.push_back(start);
    }
    return starts;
}

SequenceClassification classify_fixed(const SwitchingSignal& s, int p, long long q) {
    const long long L = s.prefix_length();
    SequenceClassification out;
    out.p = p;
    out.q = q;

    for (long long start : window_starts(s, p, q)) {
        const SignedDigraph joint = window_union_graph(s, start, p);
        if (!is_strongly_connected(joint)) throw NotJointlyStronglyConnected(start, p);
        auto verdict = check_balance(joint);
        out.windows.push_back(
            {start, p, verdict.balanced() ? std::optional<Clustering>(verdict.clustering()) : std::nullopt});
    }

    std::vector<const WindowFinding*> tail, head;
    for (const auto& w : out.windows) (w.start > L ? tail : head).push_back(&w);

    const bool all_unbalanced = std::all_of(tail.begin(), tail.end(),
                                            [](const auto* w) { return !w->clustering; });
    const bool common_balanced =
        std::all_of(tail.begin(), tail.end(), [&](const auto* w) {
            return w->clustering && *w->clustering == *tail.front()->clustering;
        });

    if (all_unbalanced) {
        out.balance = BalanceKind::repeatedly_jointly_unbalanced;
        out.prediction = LimitKind::zero_consensus;
    } else if (common_balanced) {
        const Clustering& b = *tail.front()->clustering;
        const bool head_agrees = std::all_of(head.begin(), head.end(), [&](const auto* w) {
            return w->clustering && *w->clustering == b;
        });
        out.balance = head_agrees ? BalanceKind::repeatedly_jointly_balanced : BalanceKind::mixed_prefix;
        out.clustering = b;
        out.prediction = LimitKind::nonzero_modulus_consensus;
        out.almost_all = true;
    } else {
        // Windows balanced w.r.t. different clusterings cannot sustain a nonzero modulus
        // consensus, so the state is driven to zero.
        out.balance = BalanceKind::mixed_windows;
        out.prediction = LimitKind::zero_consensus;
    }
    return out;
}

}  // namespace

SequenceClassification classify_sequence(const SwitchingSignal& s, std::optional<int> p,
                                         std::optional<long long> q) {
    if (!s.is_decidable())
        throw UndecidableSignal("signal tail is unknown (finite trace without extension); "
                                "joint balance cannot be decided from a finite observation");
    if (p && *p < 1) throw InvalidArgument("window length p must be >= 1");
    if (q && *q < 1) throw InvalidArgument("window start q must be >= 1");

    const long long start = q.value_or(s.prefix_length() + 1);
    if (p) return classify_fixed(s, *p, start);

    std::optional<SequenceClassification> fallback;
    std::optional<NotJointlyStronglyConnected> first_failure;
    for (int m = 1; m <= 4; ++m) {
        try {
            auto c = classify_fixed(s, m * s.period_length(), start);
            if (c.balance != BalanceKind::mixed_windows) return c;
            if (!fallback) fallback = std::move(c);
        } catch (const NotJointlyStronglyConnected& e) {
            if (!first_failure) first_failure = e;
        }
    }
    if (fallback) return *fallback;
    throw *first_failure;
}

// ---------------------------------------------------------------------------

Vector random_unit_vector(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(n);
    do {
        for (int i = 0; i < n; ++i) v(i) = normal(rng);
    } while (v.norm() == 0.0);
    return v / v.norm();
}

Vector rank_one_factor(const Matrix& phi, const Clustering& b) {
    Vector c = Vector::Zero(phi.cols());
    for (int i = 0; i < b.size(); ++i) c += b[i] * phi.row(i).transpose();
    return c / b.size();
}

double rank_one_residual(const Matrix& phi, const Clustering& b) {
    const Vector c = rank_one_factor(phi, b);
    Vector bv(b.size());
    for (int i = 0; i < b.size(); ++i) bv(i) = b[i];
    return (phi - bv * c.transpose()).cwiseAbs().maxCoeff();
}

ExceptionalSetProbe exceptional_set_probe(const SwitchingSignal& s, const SequenceClassification& cls,
                                          int trials, std::uint64_t seed) {
    if (!cls.clustering || cls.prediction != LimitKind::nonzero_modulus_consensus)
        throw InvalidArgument("exceptional set probe requires a jointly balanced signal");
    const int n = s.dimension();
    const Clustering& b = *cls.clustering;

    ExceptionalSetProbe probe;
    probe.trials = trials;
    probe.seed = seed;
    std::mt19937_64 rng(seed);
    const long long T0 = default_horizon(n, cls.p);
    for (int k = 0; k < trials; ++k) {
        const Vector x1 = random_unit_vector(n, rng);
        const auto run = simulate_adaptive(s, x1, T0);
        if (run.verdict.kind == LimitKind::nonzero_modulus_consensus) ++probe.nonzero_count;
    }
    probe.fraction = trials > 0 ? static_cast<double>(probe.nonzero_count) / trials : 0.0;

    // Phi(T,1) converges to b c'; iterate until the rank-one residual settles.
    Matrix phi = Matrix::Identity(n, n);
    long long t = 1;
    double previous = std::numeric_limits<double>::infinity();
    for (; t < kMaxHorizon; ++t) {
        phi = s.matrix_at(t).entries() * phi;
        if (t % 64 == 0) {
            const double r = rank_one_residual(phi, b);
            if (r < 1e-14 || (r >= previous && r < 1e-10)) break;
            previous = r;
        }
    }
    probe.phi_horizon = t + 1;
    probe.c = rank_one_factor(phi, b);

    Vector x1 = random_unit_vector(n, rng);
    const double cc = probe.c.squaredNorm();
    if (cc > 0.0) x1 -= (probe.c.dot(x1) / cc) * probe.c;
    const auto traj = simulate(s, x1, probe.phi_horizon);
    probe.exceptional_ratio = traj.final().cwiseAbs().maxCoeff() / x1.cwiseAbs().maxCoeff();
    return probe;
}

}  // namespace altafini
