#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <queue>
#include <string>
#include <vector>

#include "wcg/common.hpp"
#include "wcg/edges.hpp"
#include "wcg/game.hpp"

namespace wcg {

// Simple undirected graph on a fixed vertex set, adjacency kept as bit rows.
// Built once from a set of claimed edges; all verifier operations are pure.
class GraphView {
public:
    GraphView() = default;
    explicit GraphView(int n) : n_(n), words_((n + 63) / 64), rows_(n, std::vector<std::uint64_t>(words_, 0)) {}

    static GraphView from_edge_ids(int n, const std::vector<ElementId>& edge_ids) {
        GraphView g(n);
        EdgeBoard board(n);
        for (ElementId id : edge_ids) {
            auto [u, v] = board.decode(id);
            g.add_edge(u, v);
        }
        return g;
    }

    static GraphView from_pairs(int n, const std::vector<std::pair<int, int>>& edges) {
        GraphView g(n);
        for (auto [u, v] : edges) g.add_edge(u, v);
        return g;
    }

    // Client's (or Waiter's) graph from a game on the edge board of K_n.
    static GraphView from_state(const GameState& state, Owner who) {
        int n = EdgeBoard::vertices_for(state.board_size);
        GraphView g(n);
        EdgeBoard board(n);
        for (int e = 0; e < state.board_size; ++e)
            if (state.owner[e] == who) {
                auto [u, v] = board.decode(e);
                g.add_edge(u, v);
            }
        return g;
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return m_; }

    void add_edge(int u, int v) {
        if (u == v) throw ParameterError("loops are not allowed");
        if (u < 0 || v < 0 || u >= n_ || v >= n_) throw ParameterError("vertex out of range");
        if (has_edge(u, v)) return;
        rows_[u][v >> 6] |= 1ULL << (v & 63);
        rows_[v][u >> 6] |= 1ULL << (u & 63);
        ++m_;
    }

    bool has_edge(int u, int v) const { return rows_[u][v >> 6] >> (v & 63) & 1; }

    int degree(int u) const {
        int d = 0;
        for (std::uint64_t w : rows_[u]) d += std::popcount(w);
        return d;
    }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    template <typename Fn>
    void for_each_neighbor(int u, Fn&& fn) const {
        for (int w = 0; w < words_; ++w)
            for (std::uint64_t bits = rows_[u][w]; bits != 0; bits &= bits - 1)
                fn((w << 6) + std::countr_zero(bits));
    }

    const std::vector<std::uint64_t>& row(int u) const { return rows_[u]; }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(m_);
        for (int u = 0; u < n_; ++u)
            for_each_neighbor(u, [&](int v) {
                if (u < v) out.emplace_back(u, v);
            });
        return out;
    }

    // Component label per vertex, labels are 0..k-1 in discovery order.
    std::vector<int> components() const {
        std::vector<int> comp(n_, -1);
        int label = 0;
        std::vector<int> stack;
        for (int s = 0; s < n_; ++s) {
            if (comp[s] >= 0) continue;
            comp[s] = label;
            stack.assign(1, s);
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for_each_neighbor(u, [&](int v) {
                    if (comp[v] < 0) {
                        comp[v] = label;
                        stack.push_back(v);
                    }
                });
            }
            ++label;
        }
        return comp;
    }

    int component_count() const {
        auto c = components();
        int k = 0;
        for (int x : c) k = std::max(k, x + 1);
        return k;
    }

    bool is_connected() const { return n_ <= 1 || component_count() == 1; }

private:
    int n_ = 0;
    int words_ = 0;
    int m_ = 0;
    std::vector<std::vector<std::uint64_t>> rows_;
};

// ---------------------------------------------------------------------------
// Elementary properties

inline bool is_forest(const GraphView& g) {
    // forest iff every component has edges = vertices - 1
    return g.edge_count() == g.vertex_count() - g.component_count();
}

// True iff every connected component contains at most one cycle; such a
// graph has no two cycles sharing a vertex.
inline bool no_intersecting_cycles(const GraphView& g) {
    auto comp = g.components();
    int k = 0;
    for (int c : comp) k = std::max(k, c + 1);
    std::vector<int> verts(k, 0), edges(k, 0);
    for (int v = 0; v < g.vertex_count(); ++v) ++verts[comp[v]];
    for (auto [u, v] : g.edges()) ++edges[comp[u]];
    for (int c = 0; c < k; ++c)
        if (edges[c] > verts[c]) return false;
    return true;
}

// Shortest cycle length; nullopt for forests.
inline std::optional<int> girth(const GraphView& g) {
    int n = g.vertex_count();
    int best = INT32_MAX;
    std::vector<int> dist(n), parent(n);
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::queue<int> bfs;
        dist[s] = 0;
        bfs.push(s);
        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop();
            if (2 * dist[u] >= best) continue;
            g.for_each_neighbor(u, [&](int v) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    bfs.push(v);
                } else if (v != parent[u] && dist[v] >= dist[u]) {
                    best = std::min(best, dist[u] + dist[v] + 1);
                }
            });
        }
    }
    if (best == INT32_MAX) return std::nullopt;
    return best;
}

inline bool is_bipartite(const GraphView& g) {
    int n = g.vertex_count();
    std::vector<int> color(n, -1);
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        stack.assign(1, s);
        bool ok = true;
        while (!stack.empty() && ok) {
            int u = stack.back();
            stack.pop_back();
            g.for_each_neighbor(u, [&](int v) {
                if (color[v] < 0) {
                    color[v] = color[u] ^ 1;
                    stack.push_back(v);
                } else if (color[v] == color[u]) {
                    ok = false;
                }
            });
        }
        if (!ok) return false;
    }
    return true;
}

// Every component is a path: max degree <= 2 and acyclic.
inline bool is_linear_forest(const GraphView& g) {
    return g.max_degree() <= 2 && is_forest(g);
}

// Smallest d such that every subgraph has a vertex of degree <= d
// (min-degree peeling order).
inline int degeneracy(const GraphView& g) {
    int n = g.vertex_count();
    std::vector<int> deg(n);
    std::vector<char> gone(n, 0);
    for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
    int best = 0;
    for (int step = 0; step < n; ++step) {
        int u = -1;
        for (int v = 0; v < n; ++v)
            if (!gone[v] && (u < 0 || deg[v] < deg[u])) u = v;
        best = std::max(best, deg[u]);
        gone[u] = 1;
        g.for_each_neighbor(u, [&](int v) {
            if (!gone[v]) --deg[v];
        });
    }
    return best;
}

// ---------------------------------------------------------------------------
// I/O: "u v" per line; DOT export with optional vertex clusters.

inline void write_edge_list(std::ostream& os, const GraphView& g) {
    for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

inline GraphView read_edge_list(std::istream& is, int n = -1) {
    std::vector<std::pair<int, int>> edges;
    int maxv = -1, u, v;
    while (is >> u >> v) {
        edges.emplace_back(u, v);
        maxv = std::max({maxv, u, v});
    }
    return GraphView::from_pairs(n > 0 ? n : maxv + 1, edges);
}

inline void write_dot(std::ostream& os, const GraphView& g,
                      const std::vector<std::vector<int>>& clusters = {}) {
    os << "graph G {\n";
    for (size_t i = 0; i < clusters.size(); ++i) {
        os << "  subgraph cluster_" << i << " {\n    label=\"B" << i + 1 << "\";\n   ";
        for (int v : clusters[i]) os << ' ' << v << ';';
        os << "\n  }\n";
    }
    for (auto [u, v] : g.edges()) os << "  " << u << " -- " << v << ";\n";
    os << "}\n";
}

}  // namespace wcg
