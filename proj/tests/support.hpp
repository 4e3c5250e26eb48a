#pragma once

#include <random>
#include <vector>

#include "wcg/family.hpp"
#include "wcg/graph.hpp"

namespace testsupport {

inline wcg::GraphView petersen() {
    // outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5
    wcg::GraphView g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
        g.add_edge(i, i + 5);
    }
    return g;
}

inline wcg::GraphView complete(int n) {
    wcg::GraphView g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline wcg::GraphView complete_bipartite(int a, int b) {
    wcg::GraphView g(a + b);
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v) g.add_edge(u, a + v);
    return g;
}

inline wcg::GraphView path(int n) {
    wcg::GraphView g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline wcg::GraphView cycle(int n) {
    wcg::GraphView g = path(n);
    g.add_edge(n - 1, 0);
    return g;
}

inline wcg::GraphView random_graph(int n, double p, std::mt19937_64& rng) {
    wcg::GraphView g(n);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (unif(rng) < p) g.add_edge(u, v);
    return g;
}

// Seeded random abstract family on a board of n elements.
inline wcg::WinningFamily random_family(int n, std::mt19937_64& rng, int max_sets = 12,
                                        int max_size = 5) {
    int nsets = 1 + static_cast<int>(rng() % max_sets);
    std::vector<std::vector<wcg::ElementId>> sets;
    for (int i = 0; i < nsets; ++i) {
        int sz = 1 + static_cast<int>(rng() % std::min(max_size, n));
        std::vector<wcg::ElementId> s;
        while (static_cast<int>(s.size()) < sz) {
            wcg::ElementId e = static_cast<wcg::ElementId>(rng() % n);
            if (std::find(s.begin(), s.end(), e) == s.end()) s.push_back(e);
        }
        sets.push_back(std::move(s));
    }
    return wcg::make_family(n, std::move(sets), "random");
}

}  // namespace testsupport
