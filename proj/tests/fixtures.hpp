#pragma once

#include <initializer_list>
#include <vector>

#include "altafini/signed_graph.hpp"
#include "altafini/weight_model.hpp"

namespace fixtures {

using namespace altafini;

inline Matrix rows(std::initializer_list<std::initializer_list<double>> r) {
    Matrix m(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& row : r) {
        Eigen::Index j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

// The alternating pair from the worked example: odd and even time steps.
inline Matrix odd_entries() { return rows({{0.5, 0, 0.5}, {-0.5, 0.5, 0}, {0, -0.5, 0.5}}); }
inline Matrix even_entries() { return rows({{0.5, 0, -0.5}, {0.5, 0.5, 0}, {0, -0.5, 0.5}}); }
inline WeightMatrix odd() { return validate(odd_entries()); }
inline WeightMatrix even() { return validate(even_entries()); }

inline SwitchingSignal alternating() { return SwitchingSignal::eventually_periodic({}, {odd(), even()}); }

/// 1-based arcs for readability.
inline SignedDigraph graph(int n, std::initializer_list<std::tuple<int, int, char>> arcs) {
    std::vector<SignedArc> out;
    for (const auto& [u, v, s] : arcs) out.push_back({u - 1, v - 1, s == '+' ? Sign::positive : Sign::negative});
    return SignedDigraph(n, out);
}

inline std::vector<int> signs(const Clustering& b) {
    std::vector<int> v;
    for (int i = 0; i < b.size(); ++i) v.push_back(b[i]);
    return v;
}

}  // namespace fixtures
