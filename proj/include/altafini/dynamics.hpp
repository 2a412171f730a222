#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "altafini/errors.hpp"
#include "altafini/signed_graph.hpp"
#include "altafini/weight_model.hpp"

namespace altafini {

/// Relative tolerance for zero detection and for the modulus spread.
inline constexpr double kDetectionTolerance = 1e-8;
inline constexpr long long kMaxHorizon = 1'000'000;

/// States x(1), ..., x(T) of x(t+1) = A(t) x(t), with per-step spreads.
struct Trajectory {
    std::vector<Vector> states;           ///< states[k] holds x(k+1)
    std::vector<Vector> lifted;           ///< z(k+1) from the lifted recursion, when tracked
    std::vector<double> modulus_spread;   ///< max_i |x_i| - min_i |x_i|
    std::vector<double> lifted_spread;    ///< max z - min z with z = [x; -x]

    long long horizon() const noexcept { return static_cast<long long>(states.size()); }
    const Vector& at(long long t) const { return states.at(static_cast<std::size_t>(t - 1)); }
    const Vector& initial() const { return states.front(); }
    const Vector& final() const { return states.back(); }
};

/// Iterates the signal from x(1) = x1 up to time T (T - 1 updates). With `track_lifted` the
/// lifted 2n-state recursion is iterated alongside from z(1) = [x1; -x1].
Trajectory simulate(const SwitchingSignal& s, const Vector& x1, long long T,
                    bool track_lifted = false);

/// Continues `traj` in place up to time T.
void extend(Trajectory& traj, const SwitchingSignal& s, long long T);

/// Phi(k, j) = A(k-1) ... A(j); Phi(j, j) = I.
Matrix transition_matrix(const SwitchingSignal& s, long long from, long long to);

enum class LimitKind { nonzero_modulus_consensus, zero_consensus, undetermined };

struct LimitVerdict {
    LimitKind kind = LimitKind::undetermined;
    std::optional<Clustering> clustering;  ///< sign pattern, for nonzero modulus consensus
    double level = 0.0;                    ///< common modulus, for nonzero modulus consensus
    double residual = 0.0;                 ///< final modulus spread

    /// Nonzero modulus consensus whose clustering is not all-ones.
    bool is_bipartite() const noexcept {
        return kind == LimitKind::nonzero_modulus_consensus && clustering && !clustering->is_uniform();
    }
};

const char* to_string(LimitKind k) noexcept;

/// Zero if max_i |x_i(T)| <= tol * max(1, |x1|_inf). Nonzero modulus consensus if the final
/// modulus spread is <= tol * level and the sign pattern is constant and nonzero over the last
/// quarter of the horizon. Otherwise undetermined.
LimitVerdict detect_limit(const Trajectory& traj, double tol = kDetectionTolerance);

struct AdaptiveRun {
    Trajectory trajectory;
    LimitVerdict verdict;
};

/// Simulates to `initial_horizon`, then doubles the horizon until the verdict is decided and
/// unchanged across a doubling, the residual stops shrinking, or `max_horizon` is reached.
AdaptiveRun simulate_adaptive(const SwitchingSignal& s, const Vector& x1, long long initial_horizon,
                              long long max_horizon = kMaxHorizon, double tol = kDetectionTolerance);

/// Default starting horizon 64 * n * p.
long long default_horizon(int n, int p);

// ---------------------------------------------------------------------------
// Classification of switching signals by joint connectivity and balance.

class UndecidableSignal : public Error {
public:
    using Error::Error;
};

class NotJointlyStronglyConnected : public Error {
public:
    NotJointlyStronglyConnected(long long start, int length);
    long long start() const noexcept { return start_; }
    int length() const noexcept { return length_; }

private:
    long long start_;
    int length_;
};

enum class BalanceKind {
    repeatedly_jointly_balanced,
    repeatedly_jointly_unbalanced,
    /// Windows after the prefix are balanced w.r.t. one clustering; some windows that touch
    /// the prefix are not. The tail decides the limit.
    mixed_prefix,
    /// Windows after the prefix are balanced w.r.t. differing clusterings, or mix balanced
    /// and unbalanced windows.
    mixed_windows,
};

const char* to_string(BalanceKind k) noexcept;

struct WindowFinding {
    long long start;
    int length;
    std::optional<Clustering> clustering;  ///< nullopt when the window union is unbalanced
};

struct SequenceClassification {
    int p = 1;
    long long q = 1;
    BalanceKind balance = BalanceKind::mixed_windows;
    std::optional<Clustering> clustering;
    LimitKind prediction = LimitKind::undetermined;
    /// True when the prediction holds for almost all rather than all initial conditions.
    bool almost_all = false;
    std::vector<WindowFinding> windows;
};

/// Classifies a decidable signal. With p and q given, checks every distinct window
/// q + kp, ..., q + (k+1)p - 1. Without them, tries q = prefix + 1 and p = m * period for
/// m = 1..4, stopping at the first conclusive answer.
SequenceClassification classify_sequence(const SwitchingSignal& s, std::optional<int> p = std::nullopt,
                                         std::optional<long long> q = std::nullopt);

// ---------------------------------------------------------------------------

/// Uniform random point on the unit sphere in R^n.
Vector random_unit_vector(int n, std::mt19937_64& rng);

/// c with Phi ~ b c', taken as the b-weighted row average of Phi.
Vector rank_one_factor(const Matrix& phi, const Clustering& b);
/// max |Phi - b c'| with c from rank_one_factor.
double rank_one_residual(const Matrix& phi, const Clustering& b);

struct ExceptionalSetProbe {
    int trials = 0;
    std::uint64_t seed = 0;
    int nonzero_count = 0;
    double fraction = 0.0;
    Vector c;                    ///< estimated left factor of lim Phi(T,1) = b c'
    long long phi_horizon = 0;   ///< T used for the estimate
    double exceptional_ratio = 0.0;  ///< max_i |x_i(T)| / |x1| for x1 orthogonal to c
};

/// Fraction of random unit initial states reaching nonzero modulus consensus, plus one run from
/// an initial state in the exceptional set c'x = 0. Requires a balanced classification.
ExceptionalSetProbe exceptional_set_probe(const SwitchingSignal& s, const SequenceClassification& cls,
                                          int trials, std::uint64_t seed);

}  // namespace altafini
