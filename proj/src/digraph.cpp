#include "altafini/digraph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>

#include "altafini/errors.hpp"

namespace altafini {

Digraph::Digraph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {
    if (n < 0) throw InvalidArgument("digraph vertex count must be non-negative");
}

void Digraph::check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) {
        throw InvalidArgument("vertex " + std::to_string(v) + " out of range [0," +
                              std::to_string(n_) + ")");
    }
}

void Digraph::add_arc(Vertex from, Vertex to) {
    check_vertex(from);
    check_vertex(to);
    adj_[static_cast<std::size_t>(from) * n_ + to] = 1;
}

bool Digraph::has_arc(Vertex from, Vertex to) const {
    check_vertex(from);
    check_vertex(to);
    return adj_[static_cast<std::size_t>(from) * n_ + to] != 0;
}

std::vector<Vertex> Digraph::successors(Vertex v) const {
    check_vertex(v);
    std::vector<Vertex> out;
    for (Vertex w = 0; w < n_; ++w)
        if (adj_[static_cast<std::size_t>(v) * n_ + w]) out.push_back(w);
    return out;
}

std::vector<Vertex> Digraph::predecessors(Vertex v) const {
    check_vertex(v);
    std::vector<Vertex> in;
    for (Vertex u = 0; u < n_; ++u)
        if (adj_[static_cast<std::size_t>(u) * n_ + v]) in.push_back(u);
    return in;
}

std::vector<std::pair<Vertex, Vertex>> Digraph::arcs() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = 0; v < n_; ++v)
            if (adj_[static_cast<std::size_t>(u) * n_ + v]) out.emplace_back(u, v);
    return out;
}

std::size_t Digraph::arc_count() const {
    return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), std::uint8_t{1}));
}

Digraph& Digraph::operator|=(const Digraph& other) {
    if (other.n_ != n_) throw InvalidArgument("digraph union: vertex counts differ");
    for (std::size_t k = 0; k < adj_.size(); ++k) adj_[k] |= other.adj_[k];
    return *this;
}

std::vector<int> Condensation::sources() const {
    std::vector<int> indegree(components.size(), 0);
    for (const auto& succ : successors)
        for (int c : succ) ++indegree[c];
    std::vector<int> out;
    for (int c = 0; c < count(); ++c)
        if (indegree[c] == 0) out.push_back(c);
    return out;
}

namespace {

// Iterative Tarjan; returns raw component labels (arbitrary order).
std::vector<int> tarjan_labels(const Digraph& g, int& label_count) {
    const int n = g.vertex_count();
    std::vector<int> index(n, -1), low(n, 0), label(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<Vertex> stack;
    int counter = 0;
    label_count = 0;

    std::vector<std::vector<Vertex>> succ(n);
    for (Vertex v = 0; v < n; ++v) succ[v] = g.successors(v);

    struct Frame {
        Vertex v;
        std::size_t next;
    };
    for (Vertex root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next < succ[f.v].size()) {
                Vertex w = succ[f.v][f.next++];
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            Vertex v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                Vertex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    label[w] = label_count;
                } while (w != v);
                ++label_count;
            }
        }
    }
    return label;
}

}  // namespace

Condensation strongly_connected_components(const Digraph& g) {
    const int n = g.vertex_count();
    int raw_count = 0;
    const std::vector<int> raw = tarjan_labels(g, raw_count);

    std::vector<Vertex> min_vertex(raw_count, n);
    for (Vertex v = 0; v < n; ++v) min_vertex[raw[v]] = std::min(min_vertex[raw[v]], v);

    std::vector<std::vector<int>> raw_succ(raw_count);
    std::vector<int> indegree(raw_count, 0);
    for (auto [u, v] : g.arcs()) {
        int cu = raw[u], cv = raw[v];
        if (cu == cv) continue;
        auto& s = raw_succ[cu];
        if (std::find(s.begin(), s.end(), cv) == s.end()) {
            s.push_back(cv);
            ++indegree[cv];
        }
    }

    // Kahn's algorithm keyed by the smallest contained vertex.
    using Entry = std::pair<Vertex, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
    for (int c = 0; c < raw_count; ++c)
        if (indegree[c] == 0) ready.emplace(min_vertex[c], c);
    std::vector<int> renumber(raw_count, -1);
    int next = 0;
    while (!ready.empty()) {
        int c = ready.top().second;
        ready.pop();
        renumber[c] = next++;
        for (int d : raw_succ[c])
            if (--indegree[d] == 0) ready.emplace(min_vertex[d], d);
    }

    Condensation out;
    out.component_of.resize(n);
    out.components.assign(raw_count, {});
    out.successors.assign(raw_count, {});
    for (Vertex v = 0; v < n; ++v) {
        out.component_of[v] = renumber[raw[v]];
        out.components[renumber[raw[v]]].push_back(v);
    }
    for (int c = 0; c < raw_count; ++c) {
        auto& s = out.successors[renumber[c]];
        for (int d : raw_succ[c]) s.push_back(renumber[d]);
        std::sort(s.begin(), s.end());
    }
    return out;
}

std::vector<int> bfs_distances(const Digraph& g, Vertex source) {
    const int n = g.vertex_count();
    std::vector<int> dist(n, -1);
    std::queue<Vertex> q;
    dist.at(source) = 0;
    q.push(source);
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        for (Vertex w : g.successors(u)) {
            if (dist[w] == -1) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

std::optional<std::vector<Vertex>> shortest_path(const Digraph& g, Vertex from, Vertex to) {
    const int n = g.vertex_count();
    std::vector<Vertex> parent(n, -1);
    std::vector<bool> seen(n, false);
    std::queue<Vertex> q;
    seen.at(from) = true;
    q.push(from);
    while (!q.empty() && !seen.at(to)) {
        Vertex u = q.front();
        q.pop();
        for (Vertex w : g.successors(u)) {
            if (!seen[w]) {
                seen[w] = true;
                parent[w] = u;
                q.push(w);
            }
        }
    }
    if (!seen[to]) return std::nullopt;
    std::vector<Vertex> path{to};
    while (path.back() != from) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<std::vector<bool>> reachability(const Digraph& g) {
    const int n = g.vertex_count();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (Vertex s = 0; s < n; ++s) {
        auto d = bfs_distances(g, s);
        for (Vertex v = 0; v < n; ++v) reach[s][v] = d[v] >= 0;
    }
    return reach;
}

bool is_strongly_connected(const Digraph& g) {
    if (g.vertex_count() == 0) return false;
    return strongly_connected_components(g).count() == 1;
}

bool is_rooted(const Digraph& g) {
    if (g.vertex_count() == 0) return false;
    return strongly_connected_components(g).sources().size() == 1;
}

bool is_weakly_connected(const Digraph& g) {
    const int n = g.vertex_count();
    if (n == 0) return false;
    Digraph sym(n);
    for (auto [u, v] : g.arcs()) {
        sym.add_arc(u, v);
        sym.add_arc(v, u);
    }
    auto d = bfs_distances(sym, 0);
    return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
}

std::vector<Vertex> roots(const Digraph& g) {
    std::vector<Vertex> out;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        auto d = bfs_distances(g, s);
        if (std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; })) out.push_back(s);
    }
    return out;
}

namespace {

std::vector<int> eccentricities(const Digraph& g) {
    if (!is_strongly_connected(g))
        throw InvalidArgument("eccentricity requires a strongly connected graph");
    std::vector<int> ecc;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        auto d = bfs_distances(g, s);
        ecc.push_back(*std::max_element(d.begin(), d.end()));
    }
    return ecc;
}

}  // namespace

int max_root_eccentricity(const Digraph& g) {
    auto ecc = eccentricities(g);
    return *std::max_element(ecc.begin(), ecc.end());
}

int min_root_eccentricity(const Digraph& g) {
    auto ecc = eccentricities(g);
    return *std::min_element(ecc.begin(), ecc.end());
}

int longest_directed_cycle(const Digraph& g) {
    const int n = g.vertex_count();
    int best = 0;
    for (Vertex v = 0; v < n; ++v)
        if (g.has_arc(v, v)) best = 1;

    // Each cycle is enumerated once, from its smallest vertex.
    std::vector<bool> on_path(n, false);
    std::function<void(Vertex, Vertex, int)> extend = [&](Vertex start, Vertex at, int len) {
        for (Vertex w : g.successors(at)) {
            if (w == start && len >= 2) best = std::max(best, len);
            if (w <= start || on_path[w]) continue;
            on_path[w] = true;
            extend(start, w, len + 1);
            on_path[w] = false;
            if (best == n) return;
        }
    };
    for (Vertex s = 0; s < n && best < n; ++s) {
        on_path[s] = true;
        extend(s, s, 1);
        on_path[s] = false;
    }
    return best;
}

}  // namespace altafini
