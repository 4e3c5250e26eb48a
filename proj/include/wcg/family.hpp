#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wcg/common.hpp"
#include "wcg/edges.hpp"
#include "wcg/game.hpp"

#include "json.hpp"

namespace wcg {

// A finite collection of board subsets. Sets are sorted element-id lists;
// duplicates between sets are allowed (the potential sums treat the family
// as a multiset). Immutable after construction.
struct WinningFamily {
    int n_elements = 0;
    std::string label;
    std::vector<std::vector<ElementId>> sets;

    // element -> indices of sets containing it
    const std::vector<std::vector<int>>& index() const {
        if (index_.empty() && !sets.empty()) {
            index_.assign(n_elements, {});
            for (int i = 0; i < static_cast<int>(sets.size()); ++i)
                for (ElementId e : sets[i]) index_[e].push_back(i);
        }
        return index_;
    }

    void validate() const {
        for (const auto& s : sets) {
            if (s.empty()) throw ParameterError("winning set must be non-empty");
            for (ElementId e : s)
                if (e < 0 || e >= n_elements)
                    throw ParameterError("winning set element out of range");
        }
    }

private:
    mutable std::vector<std::vector<int>> index_;
};

inline WinningFamily make_family(int n_elements, std::vector<std::vector<ElementId>> sets,
                                 std::string label) {
    WinningFamily f;
    f.n_elements = n_elements;
    f.label = std::move(label);
    for (auto& s : sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    f.sets = std::move(sets);
    f.validate();
    return f;
}

// Multiset union: concatenates the set lists; boards must match.
inline WinningFamily union_families(const WinningFamily& a, const WinningFamily& b) {
    if (a.n_elements != b.n_elements)
        throw ParameterError("family union requires matching boards");
    WinningFamily f;
    f.n_elements = a.n_elements;
    f.label = a.label + "+" + b.label;
    f.sets = a.sets;
    f.sets.insert(f.sets.end(), b.sets.begin(), b.sets.end());
    return f;
}

// ---------------------------------------------------------------------------
// Cycle machinery (edge boards of K_n)

struct CycleInfo {
    std::uint32_t vertex_mask = 0;
    std::uint64_t edge_mask = 0;  // boards up to 64 edges (n <= 11)
    std::vector<ElementId> edges;
    int length = 0;
};

// Enumerates every cycle of K_n with lmin <= length <= lmax exactly once
// (canonical form: smallest vertex first, second vertex < last vertex).
inline void for_each_cycle(int n, int lmin, int lmax,
                           const std::function<void(const std::vector<int>&)>& emit) {
    if (lmin < 3) throw ParameterError("cycles have length at least 3");
    lmax = std::min(lmax, n);
    std::vector<int> path;
    std::vector<char> used(n, 0);
    std::function<void(int)> dfs = [&](int start) {
        int len = static_cast<int>(path.size());
        if (len >= lmin && len <= lmax && path[1] < path.back()) emit(path);
        if (len == lmax) return;
        for (int v = start + 1; v < n; ++v) {
            if (used[v]) continue;
            used[v] = 1;
            path.push_back(v);
            dfs(start);
            path.pop_back();
            used[v] = 0;
        }
    };
    for (int s = 0; s + lmin <= n; ++s) {
        std::fill(used.begin(), used.end(), 0);
        used[s] = 1;
        path.assign(1, s);
        for (int a = s + 1; a < n; ++a) {
            used[a] = 1;
            path.push_back(a);
            dfs(s);
            path.pop_back();
            used[a] = 0;
        }
    }
}

inline std::vector<ElementId> cycle_edge_ids(const EdgeBoard& board, const std::vector<int>& cyc) {
    std::vector<ElementId> edges;
    edges.reserve(cyc.size());
    for (size_t i = 0; i < cyc.size(); ++i)
        edges.push_back(board.encode(cyc[i], cyc[(i + 1) % cyc.size()]));
    std::sort(edges.begin(), edges.end());
    return edges;
}

inline std::vector<CycleInfo> enumerate_cycles_detailed(int n, int lmin, int lmax) {
    if (n > 11) throw CapExceeded("cycle-pair enumeration limited to n <= 11");
    EdgeBoard board(n);
    std::vector<CycleInfo> out;
    for_each_cycle(n, lmin, lmax, [&](const std::vector<int>& cyc) {
        CycleInfo ci;
        ci.length = static_cast<int>(cyc.size());
        for (int v : cyc) ci.vertex_mask |= 1u << v;
        ci.edges = cycle_edge_ids(board, cyc);
        for (ElementId e : ci.edges) ci.edge_mask |= 1ULL << e;
        out.push_back(std::move(ci));
    });
    return out;
}

// Closed-form number of cycles of K_n with length in [lmin, lmax]:
// sum over k of C(n,k) (k-1)!/2.
inline double cycles_count(int n, int lmin, int lmax) {
    double total = 0.0;
    for (int k = std::max(3, lmin); k <= std::min(n, lmax); ++k)
        total += std::exp(log_binomial(n, k) + log_factorial(k - 1) - std::log(2.0));
    return total;
}

// True when the shared subgraph of two cycles is a path on s >= 1 vertices
// (s = 1 means a single shared vertex and no shared edge). Each returned
// pair is one unordered {C1, C2}, C1 != C2.
inline bool shared_subgraph_is_path(const CycleInfo& a, const CycleInfo& b, int n) {
    std::uint32_t sv = a.vertex_mask & b.vertex_mask;
    if (sv == 0) return false;
    std::uint64_t se = a.edge_mask & b.edge_mask;
    int nv = std::popcount(sv);
    int ne = std::popcount(se);
    if (nv == 1) return ne == 0;
    if (ne != nv - 1) return false;
    // degrees within the shared edge set; all shared vertices must be covered
    EdgeBoard board(n);
    std::vector<int> deg(n, 0);
    int endpoints = 0;
    std::uint32_t covered = 0;
    for (std::uint64_t m = se; m != 0; m &= m - 1) {
        auto [u, v] = board.decode(std::countr_zero(m));
        ++deg[u];
        ++deg[v];
        covered |= (1u << u) | (1u << v);
    }
    if (covered != sv) return false;
    for (int v = 0; v < n; ++v) {
        if (!(sv >> v & 1)) continue;
        if (deg[v] > 2) return false;
        if (deg[v] == 1) ++endpoints;
    }
    // connected: nv vertices, nv-1 edges, max degree <= 2 and exactly two
    // degree-1 endpoints forces a single path
    return endpoints == 2;
}

// ---------------------------------------------------------------------------
// Family specifications

struct FamilySpec {
    enum class Kind {
        Cycles,                     // Cycles(n, lmin, lmax)
        Cliques,                    // Cliques(n, r): edge sets of r-vertex cliques
        IntersectingShortCyclePairs,  // pairs of 3/4-cycles sharing a vertex
        CyclePairsSharingPath,      // pairs of cycles (len <= lmax) sharing a path
        Explicit,
    };
    Kind kind = Kind::Explicit;
    int n = 0;      // vertices of K_n for the generated kinds
    int lmin = 3;
    int lmax = 3;
    int r = 2;
    std::vector<std::vector<ElementId>> explicit_sets;
    int explicit_elements = 0;

    static FamilySpec cycles(int n, int lmin, int lmax) {
        if (!(3 <= lmin && lmin <= lmax)) throw ParameterError("cycles: need 3 <= lmin <= lmax");
        FamilySpec s;
        s.kind = Kind::Cycles;
        s.n = n;
        s.lmin = lmin;
        s.lmax = std::min(lmax, n);
        return s;
    }
    static FamilySpec cliques(int n, int r) {
        if (!(2 <= r && r <= n)) throw ParameterError("cliques: need 2 <= r <= n");
        FamilySpec s;
        s.kind = Kind::Cliques;
        s.n = n;
        s.r = r;
        return s;
    }
    static FamilySpec intersecting_short_cycle_pairs(int n) {
        FamilySpec s;
        s.kind = Kind::IntersectingShortCyclePairs;
        s.n = n;
        return s;
    }
    static FamilySpec cycle_pairs_sharing_path(int n, int lmax) {
        FamilySpec s;
        s.kind = Kind::CyclePairsSharingPath;
        s.n = n;
        s.lmax = std::min(lmax, n);
        return s;
    }
    static FamilySpec explicit_sets_spec(int n_elements, std::vector<std::vector<ElementId>> sets) {
        FamilySpec s;
        s.kind = Kind::Explicit;
        s.explicit_elements = n_elements;
        s.explicit_sets = std::move(sets);
        return s;
    }
};

constexpr double kDefaultEnumerationCap = 1e7;

namespace detail {

inline void mask_to_edges(std::uint64_t mask, std::vector<ElementId>& out) {
    out.clear();
    for (std::uint64_t m = mask; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
}

template <typename Fn>
void for_each_intersecting_short_pair(int n, Fn&& fn) {
    auto cycles = enumerate_cycles_detailed(n, 3, 4);
    for (size_t i = 0; i < cycles.size(); ++i)
        for (size_t j = i + 1; j < cycles.size(); ++j)
            if (cycles[i].vertex_mask & cycles[j].vertex_mask)
                fn(cycles[i], cycles[j]);
}

template <typename Fn>
void for_each_path_sharing_pair(int n, int lmax, Fn&& fn) {
    auto cycles = enumerate_cycles_detailed(n, 3, lmax);
    for (size_t i = 0; i < cycles.size(); ++i)
        for (size_t j = i + 1; j < cycles.size(); ++j)
            if (shared_subgraph_is_path(cycles[i], cycles[j], n)) fn(cycles[i], cycles[j]);
}

}  // namespace detail

// Exact, duplicate-free enumeration of the requested family. Refuses (with
// the closed-form count when available) above `cap` sets.
inline WinningFamily enumerate_family(const FamilySpec& spec, double cap = kDefaultEnumerationCap) {
    switch (spec.kind) {
        case FamilySpec::Kind::Cycles: {
            double count = cycles_count(spec.n, spec.lmin, spec.lmax);
            if (count > cap)
                throw CapExceeded("infeasible enumeration: " + std::to_string(count) + " cycles",
                                  count);
            EdgeBoard board(spec.n);
            std::vector<std::vector<ElementId>> sets;
            for_each_cycle(spec.n, spec.lmin, spec.lmax, [&](const std::vector<int>& cyc) {
                sets.push_back(cycle_edge_ids(board, cyc));
            });
            return make_family(board.edge_count(), std::move(sets),
                               "cycles(" + std::to_string(spec.n) + "," + std::to_string(spec.lmin) +
                                   "," + std::to_string(spec.lmax) + ")");
        }
        case FamilySpec::Kind::Cliques: {
            double count = std::exp(log_binomial(spec.n, spec.r));
            if (count > cap)
                throw CapExceeded("infeasible enumeration: " + std::to_string(count) + " cliques",
                                  count);
            EdgeBoard board(spec.n);
            std::vector<std::vector<ElementId>> sets;
            std::vector<int> pick;
            std::function<void(int)> rec = [&](int from) {
                if (static_cast<int>(pick.size()) == spec.r) {
                    std::vector<ElementId> edges;
                    for (size_t a = 0; a < pick.size(); ++a)
                        for (size_t b = a + 1; b < pick.size(); ++b)
                            edges.push_back(board.encode(pick[a], pick[b]));
                    std::sort(edges.begin(), edges.end());
                    sets.push_back(std::move(edges));
                    return;
                }
                for (int v = from; v < spec.n; ++v) {
                    pick.push_back(v);
                    rec(v + 1);
                    pick.pop_back();
                }
            };
            rec(0);
            return make_family(board.edge_count(), std::move(sets),
                               "cliques(" + std::to_string(spec.n) + "," + std::to_string(spec.r) + ")");
        }
        case FamilySpec::Kind::IntersectingShortCyclePairs: {
            EdgeBoard board(spec.n);
            std::vector<std::vector<ElementId>> sets;
            std::vector<ElementId> buf;
            detail::for_each_intersecting_short_pair(spec.n, [&](const CycleInfo& a, const CycleInfo& b) {
                detail::mask_to_edges(a.edge_mask | b.edge_mask, buf);
                sets.push_back(buf);
                if (static_cast<double>(sets.size()) > cap)
                    throw CapExceeded("infeasible enumeration of short cycle pairs");
            });
            return make_family(board.edge_count(), std::move(sets),
                               "shortcyclepairs(" + std::to_string(spec.n) + ")");
        }
        case FamilySpec::Kind::CyclePairsSharingPath: {
            EdgeBoard board(spec.n);
            std::vector<std::vector<ElementId>> sets;
            std::vector<ElementId> buf;
            detail::for_each_path_sharing_pair(spec.n, spec.lmax, [&](const CycleInfo& a, const CycleInfo& b) {
                detail::mask_to_edges(a.edge_mask | b.edge_mask, buf);
                sets.push_back(buf);
                if (static_cast<double>(sets.size()) > cap)
                    throw CapExceeded("infeasible enumeration of path-sharing cycle pairs");
            });
            return make_family(board.edge_count(), std::move(sets),
                               "cyclepairspath(" + std::to_string(spec.n) + "," +
                                   std::to_string(spec.lmax) + ")");
        }
        case FamilySpec::Kind::Explicit:
            return make_family(spec.explicit_elements, spec.explicit_sets, "explicit");
    }
    throw ParameterError("unknown family kind");
}

// All spanning trees of K_n via Pruefer sequences (n^(n-2) sets of n-1 edges).
// Client's graph is connected at the end iff it fully contains one of these.
inline WinningFamily spanning_trees_family(int n, double cap = kDefaultEnumerationCap) {
    if (n < 2) throw ParameterError("spanning trees need n >= 2");
    double count = std::pow(static_cast<double>(n), n - 2);
    if (count > cap) throw CapExceeded("infeasible spanning tree enumeration", count);
    EdgeBoard board(n);
    std::vector<std::vector<ElementId>> sets;
    std::vector<int> seq(std::max(0, n - 2), 0);
    auto decode = [&]() {
        std::vector<int> degree(n, 1);
        for (int v : seq) ++degree[v];
        std::vector<ElementId> edges;
        std::vector<char> leaf_used(n, 0);
        int ptr = 0;  // smallest available leaf scan
        int leaf = -1;
        auto next_leaf = [&]() {
            while (ptr < n && (degree[ptr] != 1 || leaf_used[ptr])) ++ptr;
            return ptr;
        };
        leaf = next_leaf();
        for (int i = 0; i < n - 2; ++i) {
            int v = seq[i];
            edges.push_back(board.encode(leaf, v));
            leaf_used[leaf] = 1;
            if (--degree[v] == 1 && v < ptr)
                leaf = v;
            else
                leaf = next_leaf();
        }
        int a = -1, b = -1;
        for (int v = 0; v < n; ++v)
            if (degree[v] == 1 && !leaf_used[v]) (a < 0 ? a : b) = v;
        edges.push_back(board.encode(a, b));
        std::sort(edges.begin(), edges.end());
        return edges;
    };
    while (true) {
        sets.push_back(decode());
        int i = n - 3;
        while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
        if (i < 0) break;
        ++seq[i];
    }
    return make_family(board.edge_count(), std::move(sets),
                       "spanningtrees(" + std::to_string(n) + ")");
}

// ---------------------------------------------------------------------------
// Queries

inline bool is_transversal(const std::vector<ElementId>& elements, const WinningFamily& family) {
    std::vector<char> have(family.n_elements, 0);
    for (ElementId e : elements)
        if (e >= 0 && e < family.n_elements) have[e] = 1;
    for (const auto& set : family.sets) {
        bool hit = false;
        for (ElementId e : set)
            if (have[e]) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

// Indices of family sets fully inside the given element collection.
inline std::vector<int> sets_contained_in(const std::vector<ElementId>& elements,
                                          const WinningFamily& family) {
    std::vector<char> have(family.n_elements, 0);
    for (ElementId e : elements)
        if (e >= 0 && e < family.n_elements) have[e] = 1;
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(family.sets.size()); ++i) {
        bool all = true;
        for (ElementId e : family.sets[i])
            if (!have[e]) {
                all = false;
                break;
            }
        if (all) out.push_back(i);
    }
    return out;
}

// Indices of sets fully claimed by Client; usable mid-game.
inline std::vector<int> client_fully_claims(const GameState& state, const WinningFamily& family) {
    if (family.n_elements != state.board_size)
        throw ParameterError("family board does not match game board");
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(family.sets.size()); ++i) {
        bool all = true;
        for (ElementId e : family.sets[i])
            if (state.owner[e] != Owner::Client) {
                all = false;
                break;
            }
        if (all) out.push_back(i);
    }
    return out;
}

// All inclusion-minimal transversals of the family, as an explicit family on
// the same board. Claiming some member is equivalent to claiming a
// transversal, so this encodes the hitting objective for the exact solver
// without materializing the full (exponential) transversal family.
inline WinningFamily minimal_transversals(const WinningFamily& family, int max_elements = 20) {
    int n = family.n_elements;
    if (n > max_elements) throw CapExceeded("minimal transversal enumeration limited to small boards");
    std::vector<std::uint32_t> set_masks;
    for (const auto& s : family.sets) {
        std::uint32_t m = 0;
        for (ElementId e : s) m |= 1u << e;
        set_masks.push_back(m);
    }
    auto hits_all = [&](std::uint32_t cand) {
        for (std::uint32_t m : set_masks)
            if (!(m & cand)) return false;
        return true;
    };
    std::vector<std::vector<ElementId>> out;
    for (std::uint32_t cand = 0; cand < (1u << n); ++cand) {
        if (!hits_all(cand)) continue;
        bool minimal = true;
        for (std::uint32_t m = cand; m != 0 && minimal; m &= m - 1)
            if (hits_all(cand & ~(m & (~m + 1)))) minimal = false;
        if (minimal) {
            std::vector<ElementId> elems;
            for (std::uint32_t m = cand; m != 0; m &= m - 1) elems.push_back(std::countr_zero(m));
            out.push_back(std::move(elems));
        }
    }
    return make_family(n, std::move(out), family.label + "-min-transversals");
}

// ---------------------------------------------------------------------------
// JSON round trip: {"label":str,"n_elements":int,"sets":[[int]]}

inline nlohmann::ordered_json family_to_json(const WinningFamily& f) {
    nlohmann::ordered_json j;
    j["label"] = f.label;
    j["n_elements"] = f.n_elements;
    j["sets"] = f.sets;
    return j;
}

inline WinningFamily family_from_json(const nlohmann::json& j) {
    WinningFamily f = make_family(j.at("n_elements").get<int>(),
                                  j.at("sets").get<std::vector<std::vector<ElementId>>>(),
                                  j.at("label").get<std::string>());
    return f;
}

}  // namespace wcg
