#include "altafini/weight_model.hpp"

#include <cmath>
#include <sstream>

namespace altafini {

namespace {

std::string describe_row_sum(int row, double sum) {
    std::ostringstream os;
    os.precision(17);
    os << "row " << row + 1 << " has absolute row sum " << sum << ", expected 1";
    return os.str();
}

}  // namespace

NonPositiveDiagonal::NonPositiveDiagonal(int row, double value)
    : Error("diagonal entry of row " + std::to_string(row + 1) + " is not positive (" +
            std::to_string(value) + ")"),
      row_(row) {}

RowSumViolation::RowSumViolation(int row, double sum)
    : Error(describe_row_sum(row, sum)), row_(row), sum_(sum) {}

BetaViolation::BetaViolation(int row, int col, double magnitude, double beta)
    : Error("entry (" + std::to_string(row + 1) + "," + std::to_string(col + 1) +
            ") has magnitude " + std::to_string(magnitude) + " below beta " +
            std::to_string(beta)),
      row_(row),
      col_(col) {}

WeightMatrix validate(const Matrix& entries, std::optional<double> beta_hint, double tol) {
    if (entries.rows() != entries.cols() || entries.rows() == 0)
        throw InvalidArgument("weight matrix must be square and non-empty");
    if (!entries.allFinite()) throw InvalidArgument("weight matrix has non-finite entries");
    if (beta_hint && !(*beta_hint > 0.0)) throw InvalidArgument("beta must be positive");

    Matrix a = entries;
    const int n = static_cast<int>(a.rows());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(a(i, j)) < kZeroThreshold) a(i, j) = 0.0;

    for (int i = 0; i < n; ++i) {
        if (!(a(i, i) > 0.0)) throw NonPositiveDiagonal(i, a(i, i));
        const double sum = a.row(i).cwiseAbs().sum();
        if (std::abs(sum - 1.0) > tol) throw RowSumViolation(i, sum);
    }

    double min_nonzero = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a(i, j) != 0.0) min_nonzero = std::min(min_nonzero, std::abs(a(i, j)));

    double beta = min_nonzero;
    if (beta_hint) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (a(i, j) != 0.0 && std::abs(a(i, j)) < *beta_hint)
                    throw BetaViolation(i, j, std::abs(a(i, j)), *beta_hint);
        beta = *beta_hint;
    }
    return WeightMatrix(std::move(a), beta);
}

SignedDigraph graph_of(const WeightMatrix& a) {
    const int n = a.dimension();
    std::vector<SignedArc> arcs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a(i, j) != 0.0)
                arcs.push_back({j, i, a(i, j) > 0.0 ? Sign::positive : Sign::negative});
    return SignedDigraph(n, arcs);
}

Matrix abs(const WeightMatrix& a) { return a.entries().cwiseAbs(); }

Matrix gauge_transform(const WeightMatrix& a, const Clustering& b) {
    if (b.size() != a.dimension()) throw InvalidArgument("clustering size does not match matrix");
    Vector d(b.size());
    for (int i = 0; i < b.size(); ++i) d(i) = b[i];
    return d.asDiagonal() * a.entries() * d.asDiagonal();
}

double infinity_norm(const Matrix& m) {
    if (m.rows() == 0) return 0.0;
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

// ---------------------------------------------------------------------------

SwitchingSignal::SwitchingSignal(Mode mode, std::vector<WeightMatrix> prefix,
                                 std::vector<WeightMatrix> period, bool extended)
    : mode_(mode), prefix_(std::move(prefix)), period_(std::move(period)), extended_(extended) {
    if (period_.empty()) throw InvalidArgument("switching signal needs at least one matrix");
    n_ = period_.front().dimension();
    beta_ = period_.front().beta();
    for (const auto* list : {&prefix_, &period_}) {
        for (const auto& a : *list) {
            if (a.dimension() != n_) throw InvalidArgument("switching signal matrices differ in size");
            beta_ = std::min(beta_, a.beta());
        }
    }
}

SwitchingSignal SwitchingSignal::constant(WeightMatrix a) {
    return SwitchingSignal(Mode::constant, {}, {std::move(a)}, true);
}

SwitchingSignal SwitchingSignal::finite(std::vector<WeightMatrix> list, bool extended) {
    if (list.empty()) throw InvalidArgument("finite switching signal needs at least one matrix");
    std::vector<WeightMatrix> last{list.back()};
    list.pop_back();
    return SwitchingSignal(Mode::finite, std::move(list), std::move(last), extended);
}

SwitchingSignal SwitchingSignal::eventually_periodic(std::vector<WeightMatrix> prefix,
                                                     std::vector<WeightMatrix> period) {
    if (period.empty()) throw InvalidArgument("periodic part of a switching signal must be non-empty");
    return SwitchingSignal(Mode::eventually_periodic, std::move(prefix), std::move(period), true);
}

const WeightMatrix& SwitchingSignal::matrix_at(long long t) const {
    if (t < 1) throw InvalidArgument("time index must be >= 1");
    const long long L = prefix_length();
    if (t <= L) return prefix_[static_cast<std::size_t>(t - 1)];
    return period_[static_cast<std::size_t>((t - L - 1) % period_length())];
}

std::vector<WeightMatrix> SwitchingSignal::one_cycle() const {
    std::vector<WeightMatrix> out = prefix_;
    out.insert(out.end(), period_.begin(), period_.end());
    return out;
}

SignedDigraph window_union_graph(const SwitchingSignal& s, long long start, int length) {
    if (length < 1) throw InvalidArgument("window length must be >= 1");
    std::vector<SignedDigraph> graphs;
    graphs.reserve(static_cast<std::size_t>(length));
    for (long long t = start; t < start + length; ++t) graphs.push_back(graph_of(s.matrix_at(t)));
    return graph_union(graphs);
}

}  // namespace altafini
