#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "altafini/digraph.hpp"
#include "altafini/errors.hpp"

namespace altafini {

enum class Sign : std::int8_t { positive = 1, negative = -1 };

constexpr Sign operator*(Sign a, Sign b) noexcept {
    return a == b ? Sign::positive : Sign::negative;
}
constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }
constexpr char to_char(Sign s) noexcept { return s == Sign::positive ? '+' : '-'; }

struct SignedArc {
    Vertex from;
    Vertex to;
    Sign sign;

    friend bool operator==(const SignedArc&, const SignedArc&) = default;
};

/// Signed directed (multi)graph on vertices 0..n-1.
///
/// Every vertex carries a positive self-arc. Each ordered pair (i,j), i != j, holds at most
/// one positive and at most one negative arc, so the arc set is stored as two boolean layers.
/// Values are immutable once constructed.
class SignedDigraph {
public:
    /// Builds the graph from `arcs`; positive self-arcs are added for every vertex.
    /// Throws InvalidArgument on n < 1, out-of-range ids or a negative self-arc.
    SignedDigraph(int n, std::span<const SignedArc> arcs = {});

    int vertex_count() const noexcept { return n_; }

    bool has_arc(Vertex from, Vertex to, Sign sign) const;
    bool has_any_arc(Vertex from, Vertex to) const;
    /// True when some ordered pair carries both signs.
    bool is_multidigraph() const;

    /// All arcs including self-arcs, ordered by (from, to), positive before negative.
    std::vector<SignedArc> arcs() const;
    /// Arcs between distinct vertices, same order as arcs().
    std::vector<SignedArc> proper_arcs() const;

    /// Sign-forgetting view.
    Digraph underlying() const;

    /// Subgraph induced by `vertices` (renumbered 0..k-1 in the given order).
    SignedDigraph induced(std::span<const Vertex> vertices) const;

    friend bool operator==(const SignedDigraph&, const SignedDigraph&) = default;

private:
    std::size_t slot(Vertex from, Vertex to) const {
        return static_cast<std::size_t>(from) * n_ + to;
    }
    void check_vertex(Vertex v) const;

    int n_;
    std::vector<std::uint8_t> positive_;
    std::vector<std::uint8_t> negative_;
};

/// Canonical sign vector b with b[0] = +1. Entry i is the cluster label of agent i.
class Clustering {
public:
    /// Throws InvalidArgument if `signs` is empty, has entries other than +-1, or signs[0] != +1.
    explicit Clustering(std::vector<int> signs);

    /// All-ones clustering of size n.
    static Clustering uniform(int n);
    /// Flips the whole vector if needed so that the first entry is +1.
    static Clustering normalized(std::vector<int> signs);

    int size() const noexcept { return static_cast<int>(b_.size()); }
    int operator[](Vertex i) const { return b_.at(static_cast<std::size_t>(i)); }
    const std::vector<int>& values() const noexcept { return b_; }
    bool is_uniform() const;

    std::vector<Vertex> positive_set() const;
    std::vector<Vertex> negative_set() const;

    friend bool operator==(const Clustering&, const Clustering&) = default;

private:
    std::vector<int> b_;
};

/// Closed walk witnessing structural unbalance. Step k goes from vertices[k] to vertices[k+1]
/// (vertices.back() == vertices.front()); when forward[k] is false the arc used is
/// vertices[k+1] -> vertices[k].
struct NegativeCycleCertificate {
    std::vector<Vertex> vertices;
    std::vector<bool> forward;
    std::vector<Sign> signs;

    std::size_t length() const noexcept { return signs.size(); }
    int negative_count() const;
    bool is_directed() const;
    /// True for a directed walk whose vertices are distinct apart from the closing repeat.
    bool is_simple_directed_cycle() const;
    /// Every step's arc exists in g, the walk is closed and the negative count is odd.
    bool is_valid_in(const SignedDigraph& g) const;
};

struct BalanceVerdict {
    std::variant<Clustering, NegativeCycleCertificate> witness;

    bool balanced() const noexcept { return std::holds_alternative<Clustering>(witness); }
    const Clustering& clustering() const { return std::get<Clustering>(witness); }
    const NegativeCycleCertificate& certificate() const {
        return std::get<NegativeCycleCertificate>(witness);
    }
};

/// Structurally balanced class C_b, or the unbalanced class C_u (nullopt clustering).
struct GraphClass {
    std::optional<Clustering> clustering;

    bool unbalanced() const noexcept { return !clustering.has_value(); }
    std::string label() const;
};

/// Set-union of signed arcs. Throws InvalidArgument on an empty list or mismatched sizes.
SignedDigraph graph_union(std::span<const SignedDigraph> graphs);

bool is_strongly_connected(const SignedDigraph& g);
bool is_rooted(const SignedDigraph& g);
bool is_weakly_connected(const SignedDigraph& g);
Condensation mutually_reachable_classes(const SignedDigraph& g);

/// Two-colouring over undirected signed edges. A balanced graph that is not weakly
/// connected gets +1 on the lowest vertex of every weakly connected component.
BalanceVerdict check_balance(const SignedDigraph& g);

/// Every non-self arc (i,j,s) satisfies s positive <=> b_i == b_j.
bool verify_balance(const SignedDigraph& g, const Clustering& b);

/// Simple directed cycle with an odd number of negative arcs, or nullopt when g is balanced.
/// Throws InvalidArgument if g is not strongly connected.
std::optional<NegativeCycleCertificate> find_negative_directed_cycle(const SignedDigraph& g);

/// Throws InvalidArgument if g is not weakly connected.
GraphClass classify_class(const SignedDigraph& g);

}  // namespace altafini
