#include "altafini/lifting.hpp"

#include <algorithm>

namespace altafini {

LiftedMatrix lift(const WeightMatrix& a) {
    const int n = a.dimension();
    Matrix abar = Matrix::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double pos = std::max(0.0, a(i, j));
            const double neg = std::max(0.0, -a(i, j));
            abar(i, j) = abar(i + n, j + n) = pos;
            abar(i + n, j) = abar(i, j + n) = neg;
        }
    }
    return LiftedMatrix(std::move(abar));
}

Digraph lifted_graph(const WeightMatrix& a) {
    const Matrix abar = lift(a).entries();
    const int m = static_cast<int>(abar.rows());
    Digraph g(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (abar(i, j) > 0.0) g.add_arc(j, i);
    return g;
}

Digraph lifted_graph(const SignedDigraph& g) {
    const int n = g.vertex_count();
    Digraph out(2 * n);
    for (const auto& arc : g.arcs()) {
        if (arc.sign == Sign::positive) {
            out.add_arc(arc.from, arc.to);
            out.add_arc(arc.from + n, arc.to + n);
        } else {
            out.add_arc(arc.from, arc.to + n);
            out.add_arc(arc.from + n, arc.to);
        }
    }
    return out;
}

namespace {

LiftedGraphStructure predict_and_check(const SignedDigraph& base, const Digraph& lifted) {
    const int n = base.vertex_count();
    const auto verdict = check_balance(base);
    const Condensation scc = strongly_connected_components(lifted);

    if (!verdict.balanced()) {
        if (scc.count() != 1)
            throw InternalInconsistency("unbalanced strongly connected graph has a lifted graph with " +
                                        std::to_string(scc.count()) + " components");
        return {LiftedStronglyConnected{}};
    }

    const Clustering& b = verdict.clustering();
    TwoComponents predicted;
    for (Vertex i = 0; i < n; ++i) {
        if (b[i] == 1) {
            predicted.first.push_back(i);
            predicted.second.push_back(i + n);
        } else {
            predicted.first.push_back(i + n);
            predicted.second.push_back(i);
        }
    }
    std::sort(predicted.first.begin(), predicted.first.end());
    std::sort(predicted.second.begin(), predicted.second.end());

    if (scc.count() != 2)
        throw InternalInconsistency("balanced strongly connected graph has a lifted graph with " +
                                    std::to_string(scc.count()) + " components");
    const auto& direct_first = scc.components[scc.component_of[0]];
    const auto& direct_second = scc.components[1 - scc.component_of[0]];
    if (direct_first != predicted.first || direct_second != predicted.second)
        throw InternalInconsistency("lifted components differ from the clustering prediction");
    return {predicted};
}

}  // namespace

LiftedGraphStructure analyze_lifted_structure(const SignedDigraph& g) {
    if (!is_strongly_connected(g))
        throw InvalidArgument("lifted structure analysis requires a strongly connected graph");
    return predict_and_check(g, lifted_graph(g));
}

LiftedGraphStructure joint_lifted_structure(const SwitchingSignal& s, long long start, int length) {
    const SignedDigraph joint = window_union_graph(s, start, length);
    if (!is_strongly_connected(joint))
        throw InvalidArgument("window union graph is not strongly connected");
    Digraph lifted(2 * s.dimension());
    for (long long t = start; t < start + length; ++t) lifted |= lifted_graph(s.matrix_at(t));
    return predict_and_check(joint, lifted);
}

std::string lifted_vertex_name(Vertex v, int n) {
    if (v < n) return std::to_string(v + 1);
    return std::to_string(v - n + 1) + "⁻";
}

}  // namespace altafini
