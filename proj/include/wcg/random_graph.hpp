#pragma once

#include <random>
#include <unordered_set>
#include <vector>

#include "wcg/common.hpp"
#include "wcg/edges.hpp"
#include "wcg/graph.hpp"

namespace wcg {

// Uniform G(n,m): m distinct edges sampled by Floyd's algorithm.
inline GraphView gnm_random_graph(int n, long long m, std::mt19937_64& rng) {
    EdgeBoard board(n);
    long long total = board.edge_count();
    if (m < 0 || m > total) throw ParameterError("edge count out of range");
    std::unordered_set<long long> chosen;
    chosen.reserve(static_cast<size_t>(m) * 2);
    for (long long j = total - m; j < total; ++j) {
        std::uniform_int_distribution<long long> d(0, j);
        long long t = d(rng);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    GraphView g(n);
    for (long long id : chosen) {
        auto [u, v] = board.decode(static_cast<int>(id));
        g.add_edge(u, v);
    }
    return g;
}

// Binomial G(n,p) via geometric skips over the edge enumeration.
inline GraphView gnp_random_graph(int n, double p, std::mt19937_64& rng) {
    if (p < 0.0 || p > 1.0) throw ParameterError("probability out of range");
    EdgeBoard board(n);
    GraphView g(n);
    if (p <= 0.0) return g;
    long long total = board.edge_count();
    if (p >= 1.0) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
        return g;
    }
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double logq = std::log1p(-p);
    long long id = -1;
    while (true) {
        double r = unif(rng);
        if (r <= 0.0) break;
        double skip = std::floor(std::log(r) / logq);
        if (skip > static_cast<double>(total)) break;
        id += 1 + static_cast<long long>(skip);
        if (id >= total) break;
        auto [u, v] = board.decode(static_cast<int>(id));
        g.add_edge(u, v);
    }
    return g;
}

}  // namespace wcg
