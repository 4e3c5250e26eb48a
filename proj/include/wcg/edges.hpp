#pragma once

#include <cmath>
#include <utility>

#include "wcg/common.hpp"

namespace wcg {

// Canonical numbering of the edges of K_n. Edge {u,v} with u < v gets
// id = v(v-1)/2 + u, so ids ascend as (0,1),(0,2),(1,2),(0,3),...
// All "lexicographically smallest edge" tie-breaking in this project means
// smallest id in this order.
struct EdgeBoard {
    int n = 0;

    explicit EdgeBoard(int vertices) : n(vertices) {
        if (n < 1) throw ParameterError("edge board needs at least one vertex");
    }

    int edge_count() const { return n * (n - 1) / 2; }

    int encode(int u, int v) const {
        if (u > v) std::swap(u, v);
        if (u < 0 || u == v || v >= n) throw ParameterError("edge endpoints out of range");
        return v * (v - 1) / 2 + u;
    }

    std::pair<int, int> decode(int id) const {
        if (id < 0 || id >= edge_count()) throw ParameterError("edge id out of range");
        int v = static_cast<int>((1.0 + std::sqrt(1.0 + 8.0 * id)) / 2.0);
        while (v * (v - 1) / 2 > id) --v;
        while ((v + 1) * v / 2 <= id) ++v;
        return {id - v * (v - 1) / 2, v};
    }

    // Number of vertices for a board of C(n,2) elements; throws when the
    // element count is not triangular.
    static int vertices_for(int board_size) {
        int n = static_cast<int>((1.0 + std::sqrt(1.0 + 8.0 * board_size)) / 2.0);
        for (int c = n - 2; c <= n + 2; ++c) {
            if (c >= 1 && c * (c - 1) / 2 == board_size) return c;
        }
        throw ParameterError("board size is not an edge count of a complete graph");
    }
};

}  // namespace wcg
