#include "altafini/signed_graph.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

namespace altafini {

// ---------------------------------------------------------------------------
// SignedDigraph

SignedDigraph::SignedDigraph(int n, std::span<const SignedArc> arcs)
    : n_(n),
      positive_(static_cast<std::size_t>(n > 0 ? n : 0) * (n > 0 ? n : 0), 0),
      negative_(positive_.size(), 0) {
    if (n < 1) throw InvalidArgument("signed digraph needs at least one vertex");
    for (const auto& a : arcs) {
        check_vertex(a.from);
        check_vertex(a.to);
        if (a.from == a.to && a.sign == Sign::negative) {
            throw InvalidArgument("negative self-arc at vertex " + std::to_string(a.from + 1));
        }
        auto& layer = a.sign == Sign::positive ? positive_ : negative_;
        layer[slot(a.from, a.to)] = 1;
    }
    for (Vertex v = 0; v < n_; ++v) positive_[slot(v, v)] = 1;
}

void SignedDigraph::check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) {
        throw InvalidArgument("vertex id " + std::to_string(v + 1) + " outside [1," +
                              std::to_string(n_) + "]");
    }
}

bool SignedDigraph::has_arc(Vertex from, Vertex to, Sign sign) const {
    check_vertex(from);
    check_vertex(to);
    const auto& layer = sign == Sign::positive ? positive_ : negative_;
    return layer[slot(from, to)] != 0;
}

bool SignedDigraph::has_any_arc(Vertex from, Vertex to) const {
    return has_arc(from, to, Sign::positive) || has_arc(from, to, Sign::negative);
}

bool SignedDigraph::is_multidigraph() const {
    for (std::size_t k = 0; k < positive_.size(); ++k)
        if (positive_[k] && negative_[k]) return true;
    return false;
}

std::vector<SignedArc> SignedDigraph::arcs() const {
    std::vector<SignedArc> out;
    for (Vertex u = 0; u < n_; ++u) {
        for (Vertex v = 0; v < n_; ++v) {
            if (positive_[slot(u, v)]) out.push_back({u, v, Sign::positive});
            if (negative_[slot(u, v)]) out.push_back({u, v, Sign::negative});
        }
    }
    return out;
}

std::vector<SignedArc> SignedDigraph::proper_arcs() const {
    auto all = arcs();
    std::erase_if(all, [](const SignedArc& a) { return a.from == a.to; });
    return all;
}

Digraph SignedDigraph::underlying() const {
    Digraph g(n_);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = 0; v < n_; ++v)
            if (positive_[slot(u, v)] || negative_[slot(u, v)]) g.add_arc(u, v);
    return g;
}

SignedDigraph SignedDigraph::induced(std::span<const Vertex> vertices) const {
    std::vector<int> position(n_, -1);
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        check_vertex(vertices[k]);
        position[vertices[k]] = static_cast<int>(k);
    }
    std::vector<SignedArc> kept;
    for (const auto& a : proper_arcs()) {
        if (position[a.from] >= 0 && position[a.to] >= 0)
            kept.push_back({position[a.from], position[a.to], a.sign});
    }
    return SignedDigraph(static_cast<int>(vertices.size()), kept);
}

// ---------------------------------------------------------------------------
// Clustering

Clustering::Clustering(std::vector<int> signs) : b_(std::move(signs)) {
    if (b_.empty()) throw InvalidArgument("clustering must be non-empty");
    for (int s : b_)
        if (s != 1 && s != -1) throw InvalidArgument("clustering entries must be +1 or -1");
    if (b_.front() != 1) throw InvalidArgument("clustering must have b_1 = +1");
}

Clustering Clustering::uniform(int n) { return Clustering(std::vector<int>(n, 1)); }

Clustering Clustering::normalized(std::vector<int> signs) {
    if (!signs.empty() && signs.front() == -1)
        for (int& s : signs) s = -s;
    return Clustering(std::move(signs));
}

bool Clustering::is_uniform() const {
    return std::all_of(b_.begin(), b_.end(), [](int s) { return s == 1; });
}

std::vector<Vertex> Clustering::positive_set() const {
    std::vector<Vertex> out;
    for (int i = 0; i < size(); ++i)
        if (b_[i] == 1) out.push_back(i);
    return out;
}

std::vector<Vertex> Clustering::negative_set() const {
    std::vector<Vertex> out;
    for (int i = 0; i < size(); ++i)
        if (b_[i] == -1) out.push_back(i);
    return out;
}

std::string GraphClass::label() const {
    if (!clustering) return "C_u";
    if (clustering->is_uniform()) return "C_1";
    std::string s = "C_(";
    for (int i = 0; i < clustering->size(); ++i) {
        if (i) s += ',';
        s += (*clustering)[i] == 1 ? "+1" : "-1";
    }
    return s + ")";
}

// ---------------------------------------------------------------------------
// NegativeCycleCertificate

int NegativeCycleCertificate::negative_count() const {
    return static_cast<int>(std::count(signs.begin(), signs.end(), Sign::negative));
}

bool NegativeCycleCertificate::is_directed() const {
    return std::all_of(forward.begin(), forward.end(), [](bool f) { return f; });
}

bool NegativeCycleCertificate::is_simple_directed_cycle() const {
    if (!is_directed() || vertices.size() < 3) return false;
    std::vector<Vertex> body(vertices.begin(), vertices.end() - 1);
    std::sort(body.begin(), body.end());
    return std::adjacent_find(body.begin(), body.end()) == body.end();
}

bool NegativeCycleCertificate::is_valid_in(const SignedDigraph& g) const {
    if (signs.empty() || vertices.size() != signs.size() + 1 || forward.size() != signs.size())
        return false;
    if (vertices.front() != vertices.back()) return false;
    for (std::size_t k = 0; k < signs.size(); ++k) {
        Vertex a = vertices[k], b = vertices[k + 1];
        if (a < 0 || b < 0 || a >= g.vertex_count() || b >= g.vertex_count()) return false;
        if (a == b) return false;
        bool ok = forward[k] ? g.has_arc(a, b, signs[k]) : g.has_arc(b, a, signs[k]);
        if (!ok) return false;
    }
    return negative_count() % 2 == 1;
}

// ---------------------------------------------------------------------------
// Graph operations

SignedDigraph graph_union(std::span<const SignedDigraph> graphs) {
    if (graphs.empty()) throw InvalidArgument("union of an empty list of graphs");
    const int n = graphs.front().vertex_count();
    std::vector<SignedArc> all;
    for (const auto& g : graphs) {
        if (g.vertex_count() != n) throw InvalidArgument("union: graphs have different vertex counts");
        auto a = g.arcs();
        all.insert(all.end(), a.begin(), a.end());
    }
    return SignedDigraph(n, all);
}

bool is_strongly_connected(const SignedDigraph& g) { return is_strongly_connected(g.underlying()); }
bool is_rooted(const SignedDigraph& g) { return is_rooted(g.underlying()); }
bool is_weakly_connected(const SignedDigraph& g) { return is_weakly_connected(g.underlying()); }

Condensation mutually_reachable_classes(const SignedDigraph& g) {
    return strongly_connected_components(g.underlying());
}

namespace {

struct UndirectedEdge {
    Vertex other;
    Sign sign;
    bool forward;  // the underlying arc points from the owning vertex to `other`
};

std::vector<std::vector<UndirectedEdge>> undirected_adjacency(const SignedDigraph& g) {
    std::vector<std::vector<UndirectedEdge>> adj(g.vertex_count());
    for (const auto& a : g.proper_arcs()) {
        adj[a.from].push_back({a.to, a.sign, true});
        adj[a.to].push_back({a.from, a.sign, false});
    }
    for (auto& list : adj) {
        std::stable_sort(list.begin(), list.end(), [](const auto& x, const auto& y) {
            return x.other < y.other;
        });
    }
    return adj;
}

}  // namespace

BalanceVerdict check_balance(const SignedDigraph& g) {
    const int n = g.vertex_count();
    const auto adj = undirected_adjacency(g);
    std::vector<int> color(n, 0);
    std::vector<Vertex> parent(n, -1);
    std::vector<UndirectedEdge> via(n);  // edge from parent[v] to v, seen from the parent

    auto path_from_root = [&](Vertex v) {
        std::vector<Vertex> p{v};
        while (parent[p.back()] != -1) p.push_back(parent[p.back()]);
        std::reverse(p.begin(), p.end());
        return p;
    };

    for (Vertex root = 0; root < n; ++root) {
        if (color[root] != 0) continue;
        color[root] = 1;
        std::queue<Vertex> q;
        q.push(root);
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            for (const auto& e : adj[u]) {
                const int want = color[u] * to_int(e.sign);
                if (color[e.other] == 0) {
                    color[e.other] = want;
                    parent[e.other] = u;
                    via[e.other] = {e.other, e.sign, e.forward};
                    q.push(e.other);
                    continue;
                }
                if (color[e.other] == want) continue;

                // Conflict: tree path lca->u, edge u-w, tree path w->lca.
                const Vertex w = e.other;
                auto pu = path_from_root(u);
                auto pw = path_from_root(w);
                std::size_t common = 0;
                while (common < pu.size() && common < pw.size() && pu[common] == pw[common])
                    ++common;
                NegativeCycleCertificate cert;
                for (std::size_t k = common - 1; k < pu.size(); ++k) {
                    cert.vertices.push_back(pu[k]);
                    if (k + 1 < pu.size()) {
                        const auto& t = via[pu[k + 1]];
                        cert.forward.push_back(t.forward);
                        cert.signs.push_back(t.sign);
                    }
                }
                cert.forward.push_back(e.forward);
                cert.signs.push_back(e.sign);
                for (std::size_t k = pw.size(); k-- > common - 1;) {
                    cert.vertices.push_back(pw[k]);
                    if (k >= common) {
                        const auto& t = via[pw[k]];
                        cert.forward.push_back(!t.forward);
                        cert.signs.push_back(t.sign);
                    }
                }
                return BalanceVerdict{std::move(cert)};
            }
        }
    }
    return BalanceVerdict{Clustering(std::move(color))};
}

bool verify_balance(const SignedDigraph& g, const Clustering& b) {
    if (b.size() != g.vertex_count()) throw InvalidArgument("clustering size does not match graph");
    for (const auto& a : g.proper_arcs()) {
        const bool same = b[a.from] == b[a.to];
        if (same != (a.sign == Sign::positive)) return false;
    }
    return true;
}

namespace {

struct DirectedWalk {
    std::vector<Vertex> vertices;  // closed: front() == back()
    std::vector<Sign> signs;

    int negatives() const {
        return static_cast<int>(std::count(signs.begin(), signs.end(), Sign::negative));
    }
};

NegativeCycleCertificate to_certificate(DirectedWalk w) {
    NegativeCycleCertificate c;
    c.forward.assign(w.signs.size(), true);
    c.vertices = std::move(w.vertices);
    c.signs = std::move(w.signs);
    return c;
}

Sign some_arc_sign(const SignedDigraph& g, Vertex from, Vertex to) {
    return g.has_arc(from, to, Sign::positive) ? Sign::positive : Sign::negative;
}

// Repeatedly cuts out the first simple cycle closed during a left-to-right scan. A negative
// cut cycle is returned immediately; a positive one is removed, which keeps the walk negative
// and strictly shortens it.
DirectedWalk reduce_to_negative_cycle(DirectedWalk w) {
    for (;;) {
        const std::size_t m = w.signs.size();
        std::unordered_map<Vertex, std::size_t> first_seen;
        std::optional<std::pair<std::size_t, std::size_t>> repeat;
        for (std::size_t i = 0; i < m; ++i) {
            auto [it, inserted] = first_seen.emplace(w.vertices[i], i);
            if (!inserted) {
                repeat = std::make_pair(it->second, i);
                break;
            }
        }
        if (!repeat) return w;

        auto [s, e] = *repeat;
        DirectedWalk cycle;
        cycle.vertices.assign(w.vertices.begin() + s, w.vertices.begin() + e + 1);
        cycle.signs.assign(w.signs.begin() + s, w.signs.begin() + e);
        if (cycle.negatives() % 2 == 1) return cycle;

        w.vertices.erase(w.vertices.begin() + s + 1, w.vertices.begin() + e + 1);
        w.signs.erase(w.signs.begin() + s, w.signs.begin() + e);
    }
}

}  // namespace

std::optional<NegativeCycleCertificate> find_negative_directed_cycle(const SignedDigraph& g) {
    if (!is_strongly_connected(g))
        throw InvalidArgument("negative directed cycle search requires a strongly connected graph");
    auto verdict = check_balance(g);
    if (verdict.balanced()) return std::nullopt;

    // Negative undirected cycle c_0 .. c_{m-1}, c_m = c_0.
    const auto& cert = verdict.certificate();
    const std::size_t m = cert.length();

    if (std::all_of(cert.forward.begin(), cert.forward.end(), [](bool f) { return !f; })) {
        DirectedWalk w;
        w.vertices.assign(cert.vertices.rbegin(), cert.vertices.rend());
        w.signs.assign(cert.signs.rbegin(), cert.signs.rend());
        return to_certificate(reduce_to_negative_cycle(std::move(w)));
    }
    if (cert.is_directed()) {
        return to_certificate(reduce_to_negative_cycle({cert.vertices, cert.signs}));
    }

    // Rotate so that position 0 is a source: the step entering it and the step leaving it
    // both use arcs pointing away from it.
    std::size_t shift = m;
    for (std::size_t k = 0; k < m; ++k) {
        const bool in_step_backward = !cert.forward[(k + m - 1) % m];
        const bool out_step_forward = cert.forward[k];
        if (in_step_backward && out_step_forward) {
            shift = k;
            break;
        }
    }
    if (shift == m) throw InternalInconsistency("mixed-orientation cycle without a source vertex");

    std::vector<Vertex> cv(m);
    std::vector<bool> fw(m);
    std::vector<Sign> sg(m);
    for (std::size_t k = 0; k < m; ++k) {
        cv[k] = cert.vertices[(k + shift) % m];
        fw[k] = cert.forward[(k + shift) % m];
        sg[k] = cert.signs[(k + shift) % m];
    }

    // Around the cycle, maximal runs of forward steps go source -> sink; runs of backward steps
    // go sink -> source and, read in reverse, are directed paths from that source to that sink.
    // Each backward run is swapped for a directed path sink -> source in g. If the swapped-out
    // and swapped-in parts disagree in parity they already close a negative directed walk;
    // otherwise the spliced walk has the parity of the cycle, which is odd.
    const Digraph base = g.underlying();
    DirectedWalk spliced;
    spliced.vertices.push_back(cv[0]);
    std::size_t k = 0;
    while (k < m) {
        if (fw[k]) {
            spliced.vertices.push_back(cv[(k + 1) % m]);
            spliced.signs.push_back(sg[k]);
            ++k;
            continue;
        }
        const std::size_t run_begin = k;
        while (k < m && !fw[k]) ++k;
        const Vertex sink = cv[run_begin];
        const Vertex source = cv[k % m];

        DirectedWalk back_path;  // source -> sink along the cycle's arcs
        for (std::size_t j = k; j-- > run_begin;) {
            if (back_path.vertices.empty()) back_path.vertices.push_back(cv[(j + 1) % m]);
            back_path.vertices.push_back(cv[j]);
            back_path.signs.push_back(sg[j]);
        }

        auto path = shortest_path(base, sink, source);
        if (!path) throw InternalInconsistency("strongly connected graph lacks a directed path");
        DirectedWalk bridge;  // sink -> source in g
        bridge.vertices = *path;
        for (std::size_t j = 0; j + 1 < path->size(); ++j)
            bridge.signs.push_back(some_arc_sign(g, (*path)[j], (*path)[j + 1]));

        if ((back_path.negatives() + bridge.negatives()) % 2 == 1) {
            DirectedWalk closed = back_path;
            closed.vertices.insert(closed.vertices.end(), bridge.vertices.begin() + 1,
                                   bridge.vertices.end());
            closed.signs.insert(closed.signs.end(), bridge.signs.begin(), bridge.signs.end());
            return to_certificate(reduce_to_negative_cycle(std::move(closed)));
        }
        spliced.vertices.insert(spliced.vertices.end(), bridge.vertices.begin() + 1,
                                bridge.vertices.end());
        spliced.signs.insert(spliced.signs.end(), bridge.signs.begin(), bridge.signs.end());
    }
    if (spliced.negatives() % 2 == 0)
        throw InternalInconsistency("spliced directed walk is not negative");
    return to_certificate(reduce_to_negative_cycle(std::move(spliced)));
}

GraphClass classify_class(const SignedDigraph& g) {
    if (!is_weakly_connected(g))
        throw InvalidArgument("class is not unique for a graph that is not weakly connected");
    auto verdict = check_balance(g);
    if (verdict.balanced()) return GraphClass{verdict.clustering()};
    return GraphClass{std::nullopt};
}

}  // namespace altafini
