#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace altafini {

/// Vertex index, 0-based inside the library. Files and reports use 1-based ids.
using Vertex = int;

/// Unsigned simple digraph on vertices 0..n-1 stored as a dense adjacency matrix.
/// Self-loops are allowed; parallel arcs are not representable.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(int n);

    int vertex_count() const noexcept { return n_; }

    void add_arc(Vertex from, Vertex to);
    bool has_arc(Vertex from, Vertex to) const;

    /// Out-neighbours of v in increasing order (self-loop included when present).
    std::vector<Vertex> successors(Vertex v) const;
    std::vector<Vertex> predecessors(Vertex v) const;

    std::vector<std::pair<Vertex, Vertex>> arcs() const;
    std::size_t arc_count() const;

    /// Union of arc sets; both graphs must have the same vertex count.
    Digraph& operator|=(const Digraph& other);

    friend bool operator==(const Digraph&, const Digraph&) = default;

private:
    void check_vertex(Vertex v) const;

    int n_ = 0;
    std::vector<std::uint8_t> adj_;
};

/// Strongly connected components together with the acyclic component graph.
///
/// Components are numbered in a deterministic topological order of the
/// condensation: among the components whose predecessors have all been
/// numbered, the one containing the smallest vertex id comes first.
struct Condensation {
    std::vector<int> component_of;                ///< vertex -> component id
    std::vector<std::vector<Vertex>> components;  ///< sorted vertex lists
    std::vector<std::vector<int>> successors;     ///< component DAG, sorted, no self-edges

    int count() const noexcept { return static_cast<int>(components.size()); }
    /// Components with no incoming edge in the condensation.
    std::vector<int> sources() const;
};

Condensation strongly_connected_components(const Digraph& g);

/// reach[u][v] is true iff v is reachable from u (every vertex reaches itself).
std::vector<std::vector<bool>> reachability(const Digraph& g);

/// BFS hop distances from `source`; unreachable vertices get -1.
std::vector<int> bfs_distances(const Digraph& g, Vertex source);

/// Shortest directed path from `from` to `to` as a vertex sequence, or nullopt.
std::optional<std::vector<Vertex>> shortest_path(const Digraph& g, Vertex from, Vertex to);

bool is_strongly_connected(const Digraph& g);
bool is_rooted(const Digraph& g);
bool is_weakly_connected(const Digraph& g);

/// Vertices from which every other vertex is reachable.
std::vector<Vertex> roots(const Digraph& g);

/// Maximum over roots of the BFS eccentricity (the largest shortest-path tree depth).
/// Requires a strongly connected graph.
int max_root_eccentricity(const Digraph& g);
/// Minimum over roots of the BFS eccentricity. Requires a strongly connected graph.
int min_root_eccentricity(const Digraph& g);

/// Number of vertices in the longest simple directed cycle (self-loops count as length 1,
/// an empty graph gives 0). Exhaustive search; intended for small graphs.
int longest_directed_cycle(const Digraph& g);

}  // namespace altafini
