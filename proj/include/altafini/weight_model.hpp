#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "altafini/errors.hpp"
#include "altafini/signed_graph.hpp"

namespace altafini {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kDefaultRowSumTolerance = 1e-9;
/// Entries with magnitude below this are structural zeros.
inline constexpr double kZeroThreshold = 1e-12;

class NonPositiveDiagonal : public Error {
public:
    NonPositiveDiagonal(int row, double value);
    int row() const noexcept { return row_; }

private:
    int row_;
};

class RowSumViolation : public Error {
public:
    RowSumViolation(int row, double sum);
    int row() const noexcept { return row_; }
    double sum() const noexcept { return sum_; }

private:
    int row_;
    double sum_;
};

class BetaViolation : public Error {
public:
    BetaViolation(int row, int col, double magnitude, double beta);
    int row() const noexcept { return row_; }
    int col() const noexcept { return col_; }

private:
    int row_;
    int col_;
};

/// Signed weight matrix with positive diagonal, absolute row sums equal to one and every
/// nonzero magnitude at least beta. Only obtainable through validate().
class WeightMatrix {
public:
    int dimension() const noexcept { return static_cast<int>(entries_.rows()); }
    const Matrix& entries() const noexcept { return entries_; }
    double operator()(int i, int j) const { return entries_(i, j); }
    double beta() const noexcept { return beta_; }

    friend WeightMatrix validate(const Matrix& entries, std::optional<double> beta_hint,
                                 double tol);

private:
    WeightMatrix(Matrix entries, double beta) : entries_(std::move(entries)), beta_(beta) {}

    Matrix entries_;
    double beta_;
};

/// Checks the weight assumptions and returns the validated matrix. Magnitudes below
/// kZeroThreshold are zeroed first. Without a hint, beta is the smallest nonzero magnitude.
WeightMatrix validate(const Matrix& entries, std::optional<double> beta_hint = std::nullopt,
                      double tol = kDefaultRowSumTolerance);

/// Arc j -> i with the sign of a_ij for every nonzero a_ij.
SignedDigraph graph_of(const WeightMatrix& a);
/// Entrywise absolute value; a stochastic matrix.
Matrix abs(const WeightMatrix& a);
/// B A B with B = diag(b).
Matrix gauge_transform(const WeightMatrix& a, const Clustering& b);
double infinity_norm(const Matrix& m);

/// Time-indexed schedule of weight matrices, t = 1, 2, ...
///
/// All modes reduce to "prefix, then a repeating period": a constant signal has an empty
/// prefix and a one-element period, a finite list repeats its last matrix forever.
class SwitchingSignal {
public:
    enum class Mode { constant, finite, eventually_periodic };

    static SwitchingSignal constant(WeightMatrix a);
    /// `extended` false marks the list as an observed trace: matrix_at still repeats the last
    /// matrix, but the tail is unknown and the limit cannot be classified.
    static SwitchingSignal finite(std::vector<WeightMatrix> list, bool extended = true);
    static SwitchingSignal eventually_periodic(std::vector<WeightMatrix> prefix,
                                               std::vector<WeightMatrix> period);

    Mode mode() const noexcept { return mode_; }
    int dimension() const noexcept { return n_; }
    /// Minimum beta over all matrices.
    double beta() const noexcept { return beta_; }

    const std::vector<WeightMatrix>& prefix() const noexcept { return prefix_; }
    const std::vector<WeightMatrix>& period() const noexcept { return period_; }
    int prefix_length() const noexcept { return static_cast<int>(prefix_.size()); }
    int period_length() const noexcept { return static_cast<int>(period_.size()); }

    /// True for finite signals whose last matrix was repeated to make them infinite.
    bool extended_by_repetition() const noexcept { return mode_ == Mode::finite && extended_; }
    /// Whether the tail of the sequence is actually known (constant, periodic, extended finite).
    bool is_decidable() const noexcept { return mode_ != Mode::finite || extended_; }

    /// Matrix applied at time t >= 1.
    const WeightMatrix& matrix_at(long long t) const;

    /// Distinct matrices at times 1 .. prefix_length + period_length.
    std::vector<WeightMatrix> one_cycle() const;

private:
    SwitchingSignal(Mode mode, std::vector<WeightMatrix> prefix, std::vector<WeightMatrix> period,
                    bool extended);

    Mode mode_;
    std::vector<WeightMatrix> prefix_;
    std::vector<WeightMatrix> period_;
    bool extended_ = true;
    int n_ = 0;
    double beta_ = 1.0;
};

/// Union of graph_of(matrix_at(s, tau)) for tau in [start, start + length - 1].
SignedDigraph window_union_graph(const SwitchingSignal& s, long long start, int length);

}  // namespace altafini
