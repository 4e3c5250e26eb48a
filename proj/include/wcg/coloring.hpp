#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "wcg/common.hpp"
#include "wcg/edges.hpp"
#include "wcg/graph.hpp"

namespace wcg {

constexpr int kExactColoringCap = 60;
constexpr int kExactCliqueCap = 64;

// Greedy DSATUR coloring; returns the number of colors used (an upper bound
// on the chromatic number) and optionally the assignment.
inline int dsatur_coloring(const GraphView& g, std::vector<int>* assignment = nullptr) {
    int n = g.vertex_count();
    std::vector<int> color(n, -1), sat(n, 0);
    std::vector<std::vector<char>> seen(n);
    int used = 0;
    for (int step = 0; step < n; ++step) {
        int u = -1;
        for (int v = 0; v < n; ++v) {
            if (color[v] >= 0) continue;
            if (u < 0 || sat[v] > sat[u] || (sat[v] == sat[u] && g.degree(v) > g.degree(u))) u = v;
        }
        std::vector<char> taken(used + 2, 0);
        g.for_each_neighbor(u, [&](int v) {
            if (color[v] >= 0) taken[std::min(color[v], used + 1)] = 1;
        });
        int c = 0;
        while (taken[c]) ++c;
        color[u] = c;
        used = std::max(used, c + 1);
        g.for_each_neighbor(u, [&](int v) {
            if (color[v] >= 0) return;
            if (seen[v].empty()) seen[v].assign(n + 1, 0);
            if (!seen[v][c]) {
                seen[v][c] = 1;
                ++sat[v];
            }
        });
    }
    if (assignment) *assignment = std::move(color);
    return used;
}

namespace detail {

// Backtracking k-colorability, most-saturated vertex first, fresh colors
// introduced lowest-first to break color symmetry.
class KColorSearch {
public:
    KColorSearch(const GraphView& g, int k) : g_(g), n_(g.vertex_count()), k_(k), color_(n_, -1) {}

    bool run() {
        if (k_ >= n_) return true;
        return place(0, 0);
    }

private:
    std::uint64_t neighbor_colors(int u) const {
        std::uint64_t mask = 0;
        g_.for_each_neighbor(u, [&](int v) {
            if (color_[v] >= 0 && color_[v] < 64) mask |= 1ULL << color_[v];
        });
        return mask;
    }

    bool place(int depth, int maxused) {
        if (depth == n_) return true;
        int u = -1, best_sat = -1;
        for (int v = 0; v < n_; ++v) {
            if (color_[v] >= 0) continue;
            int s = std::popcount(neighbor_colors(v));
            if (u < 0 || s > best_sat || (s == best_sat && g_.degree(v) > g_.degree(u))) {
                u = v;
                best_sat = s;
            }
        }
        std::uint64_t forbidden = neighbor_colors(u);
        int limit = std::min(k_, maxused + 1);
        for (int c = 0; c < limit; ++c) {
            if (forbidden >> c & 1) continue;
            color_[u] = c;
            if (place(depth + 1, std::max(maxused, c + 1))) return true;
        }
        color_[u] = -1;
        return false;
    }

    const GraphView& g_;
    int n_, k_;
    std::vector<int> color_;
};

// Max clique via branch and bound with a greedy coloring bound.
class MaxClique {
public:
    explicit MaxClique(std::vector<std::uint64_t> adj) : n_(static_cast<int>(adj.size())), adj_(std::move(adj)) {}

    int run() {
        std::uint64_t all = n_ == 64 ? ~0ULL : (1ULL << n_) - 1;
        expand(all, 0);
        return best_;
    }

private:
    void expand(std::uint64_t cand, int size) {
        if (cand == 0) {
            best_ = std::max(best_, size);
            return;
        }
        // color classes are pairwise non-adjacent, so a clique takes at most
        // one vertex per class; process high-bound vertices first
        std::vector<std::pair<int, int>> order;  // (vertex, bound)
        std::uint64_t rest = cand;
        int color = 0;
        while (rest) {
            ++color;
            std::uint64_t cls = rest;
            while (cls) {
                int v = std::countr_zero(cls);
                cls &= ~adj_[v];
                cls &= ~(1ULL << v);
                rest &= ~(1ULL << v);
                order.emplace_back(v, color);
            }
        }
        std::uint64_t pool = cand;
        for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
            auto [v, bound] = order[i];
            if (size + bound <= best_) return;
            expand(pool & adj_[v], size + 1);
            pool &= ~(1ULL << v);
        }
    }

    int n_;
    std::vector<std::uint64_t> adj_;
    int best_ = 0;
};

inline std::vector<std::uint64_t> bit_adjacency(const GraphView& g, bool complement) {
    int n = g.vertex_count();
    std::vector<std::uint64_t> adj(n, 0);
    for (int u = 0; u < n; ++u)
        g.for_each_neighbor(u, [&](int v) { adj[u] |= 1ULL << v; });
    if (complement) {
        std::uint64_t all = n == 64 ? ~0ULL : (1ULL << n) - 1;
        for (int u = 0; u < n; ++u) adj[u] = all & ~adj[u] & ~(1ULL << u);
    }
    return adj;
}

}  // namespace detail

inline bool is_k_colorable(const GraphView& g, int k) {
    if (k < 1) throw ParameterError("k must be at least 1");
    if (g.vertex_count() > kExactColoringCap)
        throw CapExceeded("exact colorability limited to 60 vertices");
    return detail::KColorSearch(g, k).run();
}

struct BoundedValue {
    int value = 0;
    bool exact = true;  // false: flagged bound, cap exceeded
};

// Exact chromatic number within the cap; above it the DSATUR upper bound,
// flagged as bound-only.
inline BoundedValue chromatic_number(const GraphView& g) {
    if (g.vertex_count() == 0) return {0, true};
    int ub = dsatur_coloring(g);
    if (g.vertex_count() > kExactColoringCap) return {ub, false};
    int k = 1;
    while (k < ub && !detail::KColorSearch(g, k).run()) ++k;
    return {k, true};
}

inline BoundedValue clique_number(const GraphView& g) {
    if (g.vertex_count() == 0) return {0, true};
    if (g.vertex_count() <= kExactCliqueCap)
        return {detail::MaxClique(detail::bit_adjacency(g, false)).run(), true};
    // greedy lower bound, flagged
    int n = g.vertex_count();
    std::vector<int> verts(n);
    for (int i = 0; i < n; ++i) verts[i] = i;
    std::sort(verts.begin(), verts.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
    std::vector<int> clique;
    for (int v : verts) {
        bool ok = true;
        for (int u : clique)
            if (!g.has_edge(u, v)) {
                ok = false;
                break;
            }
        if (ok) clique.push_back(v);
    }
    return {static_cast<int>(clique.size()), false};
}

inline BoundedValue independence_number(const GraphView& g) {
    if (g.vertex_count() == 0) return {0, true};
    if (g.vertex_count() <= kExactCliqueCap)
        return {detail::MaxClique(detail::bit_adjacency(g, true)).run(), true};
    // greedy maximal independent set by ascending degree, flagged
    int n = g.vertex_count();
    std::vector<int> verts(n);
    for (int i = 0; i < n; ++i) verts[i] = i;
    std::sort(verts.begin(), verts.end(), [&](int a, int b) { return g.degree(a) < g.degree(b); });
    std::vector<char> banned(n, 0);
    int count = 0;
    for (int v : verts) {
        if (banned[v]) continue;
        ++count;
        banned[v] = 1;
        g.for_each_neighbor(v, [&](int u) { banned[u] = 1; });
    }
    return {count, false};
}

// ---------------------------------------------------------------------------
// Structural checks for the colorability strategies

// Free edges whose addition to G_C closes a cycle of length 3 or 4, i.e.
// there is a path of length 2 or 3 between their endpoints in G_C.
inline std::vector<ElementId> dangerous_edges(const GraphView& gc,
                                              const std::vector<ElementId>& free_edges) {
    EdgeBoard board(gc.vertex_count());
    std::vector<ElementId> out;
    for (ElementId id : free_edges) {
        auto [u, v] = board.decode(id);
        bool danger = false;
        // length 2: common neighbor
        const auto& ru = gc.row(u);
        const auto& rv = gc.row(v);
        for (size_t w = 0; w < ru.size() && !danger; ++w)
            if (ru[w] & rv[w]) danger = true;
        // length 3: neighbor x of u and neighbor y of v with edge xy
        if (!danger) {
            gc.for_each_neighbor(u, [&](int x) {
                if (danger || x == v) return;
                const auto& rx = gc.row(x);
                for (size_t w = 0; w < rx.size(); ++w) {
                    std::uint64_t hit = rx[w] & rv[w];
                    if (!hit) continue;
                    // exclude y == u and y == x
                    for (std::uint64_t m = hit; m != 0; m &= m - 1) {
                        int y = static_cast<int>((w << 6) + std::countr_zero(m));
                        if (y != u && y != x) {
                            danger = true;
                            return;
                        }
                    }
                }
            });
        }
        if (danger) out.push_back(id);
    }
    return out;
}

struct ColorabilityReport {
    bool short_cycles_disjoint = true;   // (a)
    bool inner_density_ok = true;        // (b): e(S) <= |S| k log k / 16
    bool expansion_ok = true;            // (c): dense S keep few outgoing edges
    bool exhaustive = true;              // false: sampled, "no counterexample found"
};

namespace detail {

// Enumerates 3- and 4-cycles; aborts early when two distinct short cycles
// share a vertex.
inline bool short_cycles_vertex_disjoint(const GraphView& g) {
    int n = g.vertex_count();
    std::vector<int> owner_cycle(n, -1);
    int next_id = 0;
    auto claim = [&](const std::vector<int>& verts) {
        int id = next_id++;
        for (int v : verts) {
            if (owner_cycle[v] >= 0) return false;
            owner_cycle[v] = id;
        }
        return true;
    };
    // triangles: u < v < w
    for (int u = 0; u < n; ++u) {
        bool bad = false;
        g.for_each_neighbor(u, [&](int v) {
            if (bad || v <= u) return;
            g.for_each_neighbor(v, [&](int w) {
                if (bad || w <= v) return;
                if (g.has_edge(u, w))
                    if (!claim({u, v, w})) bad = true;
            });
        });
        if (bad) return false;
    }
    // quadrilaterals: u = min vertex, v opposite, a < b the other diagonal
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            std::vector<int> common;
            const auto& ru = g.row(u);
            const auto& rv = g.row(v);
            for (size_t w = 0; w < ru.size(); ++w)
                for (std::uint64_t m = ru[w] & rv[w]; m != 0; m &= m - 1)
                    common.push_back(static_cast<int>((w << 6) + std::countr_zero(m)));
            for (size_t i = 0; i < common.size(); ++i)
                for (size_t j = i + 1; j < common.size(); ++j) {
                    if (common[i] < u || common[j] < u) continue;  // u is the cycle minimum
                    if (!claim({u, common[i], v, common[j]})) return false;
                }
        }
    return true;
}

}  // namespace detail

// Verifies the three structural properties behind the k-colorability upper
// bound: (a) short cycles pairwise vertex-disjoint, (b) every vertex subset
// spans at most |S| k log k/16 edges, (c) subsets of density >= |S| k/6 send
// out fewer than |S| k log k/8 edges. Exhaustive over all subsets up to 20
// vertices; sampled otherwise.
inline ColorabilityReport check_colorability_properties(const GraphView& g, int k,
                                                        bool exhaustive = true,
                                                        int samples = 100000,
                                                        std::uint64_t seed = 1) {
    if (k < 2) throw ParameterError("k must be at least 2");
    int n = g.vertex_count();
    if (exhaustive && n > 20) throw CapExceeded("exhaustive subset sweep limited to 20 vertices");
    ColorabilityReport rep;
    rep.exhaustive = exhaustive;
    rep.short_cycles_disjoint = detail::short_cycles_vertex_disjoint(g);

    double logk = std::log(static_cast<double>(k));
    auto test_subset = [&](const std::vector<int>& subset) {
        if (subset.empty()) return;
        std::vector<char> in(n, 0);
        for (int v : subset) in[v] = 1;
        long long inside = 0, outgoing = 0;
        for (int v : subset)
            g.for_each_neighbor(v, [&](int u) {
                if (in[u])
                    ++inside;  // counted twice
                else
                    ++outgoing;
            });
        inside /= 2;
        double s = static_cast<double>(subset.size());
        if (inside > s * k * logk / 16.0) rep.inner_density_ok = false;
        if (inside >= s * k / 6.0 && outgoing >= s * k * logk / 8.0) rep.expansion_ok = false;
    };

    if (exhaustive) {
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> subset;
            for (std::uint32_t m = mask; m != 0; m &= m - 1)
                subset.push_back(std::countr_zero(m));
            test_subset(subset);
            if (!rep.inner_density_ok && !rep.expansion_ok) break;
        }
    } else {
        std::mt19937_64 rng(seed);
        for (int it = 0; it < samples; ++it) {
            std::vector<int> subset;
            for (int v = 0; v < n; ++v)
                if (rng() & 1) subset.push_back(v);
            test_subset(subset);
        }
    }
    return rep;
}

}  // namespace wcg
