#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "wcg/common.hpp"
#include "wcg/graph.hpp"

namespace wcg {

// Disjoint connected vertex sets B_1..B_t, pairwise joined by edges.
using BranchDecomposition = std::vector<std::vector<int>>;

// Checks (i) each G[B_i] connected, (ii) pairwise disjoint, (iii) a crossing
// edge for every pair. Overlapping or empty sets violate the type invariant.
inline bool verify_branch_sets(const GraphView& g, const BranchDecomposition& sets) {
    int n = g.vertex_count();
    std::vector<char> seen(n, 0);
    for (const auto& b : sets) {
        if (b.empty()) throw ParameterError("branch set must be non-empty");
        for (int v : b) {
            if (v < 0 || v >= n) throw ParameterError("branch set vertex out of range");
            if (seen[v]) throw ParameterError("branch sets overlap");
            seen[v] = 1;
        }
    }
    // (i) connectivity of each induced subgraph
    for (const auto& b : sets) {
        std::vector<char> inb(n, 0), vis(n, 0);
        for (int v : b) inb[v] = 1;
        std::vector<int> stack{b[0]};
        vis[b[0]] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            g.for_each_neighbor(u, [&](int v) {
                if (inb[v] && !vis[v]) {
                    vis[v] = 1;
                    ++reached;
                    stack.push_back(v);
                }
            });
        }
        if (reached != static_cast<int>(b.size())) return false;
    }
    // (iii) crossing edges
    for (size_t i = 0; i < sets.size(); ++i)
        for (size_t j = i + 1; j < sets.size(); ++j) {
            bool crossing = false;
            for (int u : sets[i]) {
                for (int v : sets[j])
                    if (g.has_edge(u, v)) {
                        crossing = true;
                        break;
                    }
                if (crossing) break;
            }
            if (!crossing) return false;
        }
    return true;
}

namespace detail {

// Exhaustive branch-set search on graphs with at most 16 vertices. The
// target is given by its adjacency rows; branch sets are assigned to target
// vertices in index order and each new set must meet every earlier set the
// target joins. For complete targets the sets are interchangeable, so they
// are canonicalized by increasing minimum vertex.
class MinorSearch {
public:
    MinorSearch(const GraphView& g, const std::vector<std::uint32_t>& target_adj, bool symmetric)
        : n_(g.vertex_count()), t_(static_cast<int>(target_adj.size())), target_(target_adj),
          symmetric_(symmetric) {
        adj_.assign(n_, 0);
        for (int u = 0; u < n_; ++u)
            g.for_each_neighbor(u, [&](int v) { adj_[u] |= 1u << v; });
        for (std::uint32_t mask = 1; mask < (1u << n_); ++mask)
            if (connected(mask)) connected_masks_.push_back(mask);
    }

    std::optional<BranchDecomposition> run() {
        chosen_.assign(t_, 0);
        if (search(0, 0)) {
            BranchDecomposition out(t_);
            for (int i = 0; i < t_; ++i)
                for (int v = 0; v < n_; ++v)
                    if (chosen_[i] >> v & 1) out[i].push_back(v);
            return out;
        }
        return std::nullopt;
    }

private:
    bool connected(std::uint32_t mask) const {
        std::uint32_t start = mask & (~mask + 1);
        std::uint32_t reach = start;
        while (true) {
            std::uint32_t frontier = 0;
            for (std::uint32_t m = reach; m != 0; m &= m - 1)
                frontier |= adj_[std::countr_zero(m)];
            std::uint32_t next = (reach | frontier) & mask;
            if (next == reach) break;
            reach = next;
        }
        return reach == mask;
    }

    std::uint32_t neighborhood(std::uint32_t mask) const {
        std::uint32_t nb = 0;
        for (std::uint32_t m = mask; m != 0; m &= m - 1) nb |= adj_[std::countr_zero(m)];
        return nb & ~mask;
    }

    bool search(int level, std::uint32_t used) {
        if (level == t_) return true;
        if (std::popcount(~used & ((1u << n_) - 1)) < t_ - level) return false;
        std::uint32_t min_bound = 0;
        if (symmetric_ && level > 0) min_bound = chosen_[level - 1] & (~chosen_[level - 1] + 1);
        for (std::uint32_t cand : connected_masks_) {
            if (cand & used) continue;
            if (symmetric_ && level > 0 && (cand & (~cand + 1)) < min_bound) continue;
            bool ok = true;
            std::uint32_t nb = neighborhood(cand);
            for (int j = 0; j < level && ok; ++j)
                if (target_[level] >> j & 1)
                    if (!(nb & chosen_[j])) ok = false;
            if (!ok) continue;
            chosen_[level] = cand;
            if (search(level + 1, used | cand)) return true;
        }
        return false;
    }

    int n_, t_;
    std::vector<std::uint32_t> target_;
    bool symmetric_;
    std::vector<std::uint32_t> adj_;
    std::vector<std::uint32_t> connected_masks_;
    std::vector<std::uint32_t> chosen_;
};

// Series-parallel reduction: repeatedly delete isolated and degree-1
// vertices and suppress degree-2 vertices (collapsing parallels). A graph
// reduces to nothing iff it has no K_4 minor; exact at any size.
inline bool k4_minor_free_by_reduction(const GraphView& g) {
    int n = g.vertex_count();
    std::vector<std::set<int>> adj(n);
    for (auto [u, v] : g.edges()) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    std::vector<char> alive(n, 1);
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (adj[v].size() <= 2) queue.push_back(v);
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        if (!alive[v] || adj[v].size() > 2) continue;
        alive[v] = 0;
        if (adj[v].empty()) continue;
        if (adj[v].size() == 1) {
            int u = *adj[v].begin();
            adj[u].erase(v);
            adj[v].clear();
            if (alive[u] && adj[u].size() <= 2) queue.push_back(u);
            continue;
        }
        auto it = adj[v].begin();
        int a = *it++;
        int b = *it;
        adj[a].erase(v);
        adj[b].erase(v);
        adj[v].clear();
        if (adj[a].count(b)) {
            // parallel edge collapses; degrees of a and b both dropped
            if (alive[a] && adj[a].size() <= 2) queue.push_back(a);
            if (alive[b] && adj[b].size() <= 2) queue.push_back(b);
        } else {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    for (int v = 0; v < n; ++v)
        if (alive[v]) return false;
    return true;
}

// Finds some cycle and splits it into three branch sets. Peels the graph to
// its 2-core, then walks never-backtracking until a vertex repeats.
inline std::optional<BranchDecomposition> find_cycle_witness(const GraphView& g) {
    int n = g.vertex_count();
    std::vector<int> deg(n);
    std::vector<char> gone(n, 0);
    std::vector<int> queue;
    for (int v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        if (deg[v] <= 1) queue.push_back(v);
    }
    while (!queue.empty()) {
        int u = queue.back();
        queue.pop_back();
        if (gone[u]) continue;
        gone[u] = 1;
        g.for_each_neighbor(u, [&](int v) {
            if (!gone[v] && --deg[v] == 1) queue.push_back(v);
        });
    }
    int start = -1;
    for (int v = 0; v < n; ++v)
        if (!gone[v]) start = v;
    if (start < 0) return std::nullopt;
    // in the 2-core every vertex has >= 2 alive neighbors: walk until repeat
    std::vector<int> order;
    std::vector<int> pos(n, -1);
    int prev = -1, cur = start;
    while (pos[cur] < 0) {
        pos[cur] = static_cast<int>(order.size());
        order.push_back(cur);
        int next = -1;
        g.for_each_neighbor(cur, [&](int v) {
            if (!gone[v] && v != prev && next < 0) next = v;
        });
        prev = cur;
        cur = next;
    }
    std::vector<int> cycle(order.begin() + pos[cur], order.end());
    BranchDecomposition b(3);
    b[0] = {cycle[0]};
    b[1] = {cycle[1]};
    b[2] = std::vector<int>(cycle.begin() + 2, cycle.end());
    return b;
}

}  // namespace detail

struct MinorResult {
    bool found = false;
    std::optional<BranchDecomposition> witness;  // absent for the large-n t=4 fast path
};

// Exact K_t-minor decision. t <= 4 runs at any size (t = 4 via
// series-parallel reduction; a witness is attached only when the graph also
// fits the exhaustive engine); t >= 5 requires v(G) <= 16 for the
// exhaustive search, or a supplied witness checked with verify_branch_sets.
inline MinorResult has_kt_minor(const GraphView& g, int t) {
    int n = g.vertex_count();
    if (t < 1) throw ParameterError("minor order must be at least 1");
    if (t == 1) {
        if (n >= 1) return {true, BranchDecomposition{{0}}};
        return {false, std::nullopt};
    }
    if (t == 2) {
        auto e = g.edges();
        if (e.empty()) return {false, std::nullopt};
        return {true, BranchDecomposition{{e[0].first}, {e[0].second}}};
    }
    if (n < t || g.edge_count() < t * (t - 1) / 2) return {false, std::nullopt};
    if (t == 3) {
        auto w = detail::find_cycle_witness(g);
        if (w) return {true, *w};
        return {false, std::nullopt};
    }
    if (t == 4) {
        bool free4 = detail::k4_minor_free_by_reduction(g);
        if (free4) return {false, std::nullopt};
        if (n <= 16) {
            std::vector<std::uint32_t> target(4, 0);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    if (i != j) target[i] |= 1u << j;
            detail::MinorSearch search(g, target, true);
            return {true, search.run()};
        }
        return {true, std::nullopt};
    }
    if (n > 16)
        throw CapExceeded("exhaustive minor search limited to 16 vertices; supply a witness");
    std::vector<std::uint32_t> target(t, 0);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j)
            if (i != j) target[i] |= 1u << j;
    detail::MinorSearch search(g, target, true);
    auto w = search.run();
    if (w) return {true, std::move(w)};
    return {false, std::nullopt};
}

// General H-minor decision on small graphs (exhaustive). H is given by
// adjacency rows; pairs H does not join are unconstrained, as minors allow.
inline MinorResult has_minor(const GraphView& g, const std::vector<std::uint32_t>& target_adj) {
    if (g.vertex_count() > 16) throw CapExceeded("exhaustive minor search limited to 16 vertices");
    detail::MinorSearch search(g, target_adj, false);
    auto w = search.run();
    if (w) return {true, std::move(w)};
    return {false, std::nullopt};
}

// Order of the largest complete minor.
inline int ccl(const GraphView& g) {
    if (g.vertex_count() > 16) throw CapExceeded("ccl limited to 16 vertices");
    if (g.vertex_count() == 0) return 0;
    int t = 1;
    while (t < g.vertex_count() && has_kt_minor(g, t + 1).found) ++t;
    return t;
}

}  // namespace wcg
