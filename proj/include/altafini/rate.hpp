#pragma once

#include <optional>
#include <string>
#include <vector>

#include "altafini/digraph.hpp"
#include "altafini/dynamics.hpp"
#include "altafini/errors.hpp"
#include "altafini/weight_model.hpp"

namespace altafini {

class NotIrreducible : public Error {
public:
    using Error::Error;
};

class NonContracting : public Error {
public:
    using Error::Error;
};

/// A rate bound was requested for a signal that does not meet its graph hypotheses.
class RateHypothesisViolation : public Error {
public:
    struct Issue {
        long long t;
        std::string reason;
    };
    explicit RateHypothesisViolation(std::vector<Issue> issues);
    const std::vector<Issue>& issues() const noexcept { return issues_; }

private:
    std::vector<Issue> issues_;
};

inline constexpr double kPerronTolerance = 1e-14;
inline constexpr int kPerronMaxIterations = 100'000;

/// Left Perron vector of a stochastic matrix with positive diagonal, normalised to sum 1,
/// by power iteration. Throws NotIrreducible if its graph is not strongly connected.
Vector left_perron_vector(const Matrix& stochastic);

/// Stochastic vectors pi(1), ..., pi(L + P) with pi'(t) = pi'(t+1) S(t), where L is the
/// prefix length and P the period of the signal, and pi(L + P + 1) = pi(L + 1).
struct AbsoluteProbabilitySequence {
    std::vector<Vector> pis;       ///< pis[k] holds pi(k+1)
    long long period_start = 1;    ///< L + 1
    double delta = 0.0;            ///< min entry over one period after the prefix
    double prefix_min = 0.0;       ///< min entry over the prefix (equals delta without prefix)
    bool lifted = false;

    const Vector& at(long long t) const;  ///< defined for every t >= 1 by periodicity
};

/// Stochastic matrix S(t): |A(t)|, or the lifted matrix when `lifted`.
Matrix stochastic_at(const SwitchingSignal& s, long long t, bool lifted);

AbsoluteProbabilitySequence absolute_probability_sequence(const SwitchingSignal& s, bool lifted);

/// Longest shortest directed path of spanning trees: the largest BFS eccentricity over roots.
int p_star(const Digraph& g);
int p_star(const SignedDigraph& g);
/// Smallest BFS eccentricity over roots, reported alongside p_star.
int p_star_min(const Digraph& g);

enum class RateKind { balanced, unbalanced };

struct RateBound {
    RateKind kind;
    double rho;
    double delta;
    double beta;
    int p_star;           ///< p* (balanced) or the lifted p-bar* (unbalanced)
    int p_star_min;       ///< same quantity under the min-eccentricity reading
    double rho_min_reading;  ///< rho with p_star_min in place of p_star
    // Unbalanced only: the signed-graph quantities used in the check p-bar* <= 2 p* + c*.
    int base_p_star = 0;
    int c_star = 0;
    bool c_star_exact = true;
    bool sanity_bound_holds = true;
};

const char* to_string(RateKind k) noexcept;

/// rho = 1 - delta beta^2 / (4 p*) for a signal whose graphs are all strongly connected and
/// balanced w.r.t. one clustering.
RateBound rate_bound_balanced(const SwitchingSignal& s);
/// rho-bar = 1 - delta-bar beta^2 / (4 p-bar*) for a signal whose graphs are all strongly
/// connected and unbalanced.
RateBound rate_bound_unbalanced(const SwitchingSignal& s);

/// Which quantity empirical_rate measures.
struct SpreadMeasure {
    /// nullopt: max_i |x_i| (zero regime). Otherwise max(b.x) - min(b.x), the spread within one
    /// lifted component (modulus regime).
    std::optional<Clustering> clustering;
};

std::vector<double> spread_series(const Trajectory& traj, const SpreadMeasure& measure);

/// Per-step contraction factor exp(slope) of a least-squares fit of log(spread) over the last
/// half of the trajectory above the round-off floor. Throws NonContracting if the spread does not
/// drop by at least 10x over that window.
double empirical_rate(const Trajectory& traj, const SpreadMeasure& measure);
double empirical_rate(const std::vector<double>& spread);

}  // namespace altafini
