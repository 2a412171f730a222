#pragma once

#include <string>
#include <variant>
#include <vector>

#include "altafini/digraph.hpp"
#include "altafini/signed_graph.hpp"
#include "altafini/weight_model.hpp"

namespace altafini {

/// 2n x 2n nonnegative stochastic matrix acting on z = [x; -x].
/// Blocks: (i,j) and (i+n,j+n) hold max{0, a_ij}; (i+n,j) and (i,j+n) hold max{0, -a_ij}.
class LiftedMatrix {
public:
    explicit LiftedMatrix(Matrix abar) : abar_(std::move(abar)) {}

    const Matrix& entries() const noexcept { return abar_; }
    int dimension() const noexcept { return static_cast<int>(abar_.rows()); }
    /// Size n of the underlying signed system.
    int base_dimension() const noexcept { return dimension() / 2; }

private:
    Matrix abar_;
};

struct TwoComponents {
    std::vector<Vertex> first;   ///< V_b^+ together with the copies j+n of V_b^-
    std::vector<Vertex> second;  ///< the mirror image
};
struct LiftedStronglyConnected {};

struct LiftedGraphStructure {
    std::variant<TwoComponents, LiftedStronglyConnected> verdict;

    bool strongly_connected() const noexcept {
        return std::holds_alternative<LiftedStronglyConnected>(verdict);
    }
    const TwoComponents& components() const { return std::get<TwoComponents>(verdict); }
};

LiftedMatrix lift(const WeightMatrix& a);

/// Graph of the lifted matrix: arc j -> i iff abar_ij > 0.
Digraph lifted_graph(const WeightMatrix& a);
/// Lifted graph built from signs alone: (j->i,+) maps to j->i and j+n->i+n,
/// (j->i,-) maps to j->i+n and j+n->i. Self-loops at all 2n vertices.
Digraph lifted_graph(const SignedDigraph& g);

/// Two components (balanced) or one strongly connected lifted graph (unbalanced).
/// The verdict is derived from check_balance and from the SCCs of the lifted graph;
/// disagreement raises InternalInconsistency. g must be strongly connected.
LiftedGraphStructure analyze_lifted_structure(const SignedDigraph& g);

/// Same dichotomy for the union of lifted graphs over a window of the signal.
LiftedGraphStructure joint_lifted_structure(const SwitchingSignal& s, long long start, int length);

/// Report label of a lifted vertex: "i" for the original copy, "i⁻" for the negated copy (1-based).
std::string lifted_vertex_name(Vertex v, int n);

}  // namespace altafini
