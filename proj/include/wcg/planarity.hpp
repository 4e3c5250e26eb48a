#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "wcg/common.hpp"
#include "wcg/graph.hpp"

namespace wcg {
namespace detail {

// Biconnected components as edge lists (Tarjan edge-stack algorithm).
inline std::vector<std::vector<std::pair<int, int>>> biconnected_blocks(const GraphView& g) {
    int n = g.vertex_count();
    std::vector<int> num(n, -1), low(n, 0);
    std::vector<std::pair<int, int>> stack;
    std::vector<std::vector<std::pair<int, int>>> blocks;
    int counter = 0;
    std::function<void(int, int)> dfs = [&](int u, int parent) {
        num[u] = low[u] = counter++;
        g.for_each_neighbor(u, [&](int v) {
            if (v == parent) return;
            if (num[v] < 0) {
                stack.emplace_back(u, v);
                dfs(v, u);
                low[u] = std::min(low[u], low[v]);
                if (low[v] >= num[u]) {
                    std::vector<std::pair<int, int>> block;
                    while (true) {
                        auto e = stack.back();
                        stack.pop_back();
                        block.push_back(e);
                        if (e == std::make_pair(u, v)) break;
                    }
                    blocks.push_back(std::move(block));
                }
            } else if (num[v] < num[u]) {
                stack.emplace_back(u, v);
                low[u] = std::min(low[u], num[v]);
            }
        });
    };
    for (int s = 0; s < n; ++s)
        if (num[s] < 0) dfs(s, -1);
    return blocks;
}

// Planarity of one biconnected block by incremental face embedding: start
// from a cycle, then repeatedly take a fragment with the fewest admissible
// faces and embed one of its paths, splitting that face. A fragment with no
// admissible face certifies non-planarity. Faces of a 2-connected partial
// embedding are simple cycles, so positions within a face are unique.
class BlockEmbedder {
public:
    explicit BlockEmbedder(const GraphView& g) : g_(g), n_(g.vertex_count()) {}

    bool planar() {
        int v = n_, e = g_.edge_count();
        if (v <= 4 || e <= 8) return true;
        if (e > 3 * v - 6) return false;

        std::vector<int> cycle = initial_cycle();
        embedded_v_.assign(n_, 0);
        for (int x : cycle) embedded_v_[x] = 1;
        for (size_t i = 0; i < cycle.size(); ++i)
            mark_embedded(cycle[i], cycle[(i + 1) % cycle.size()]);
        faces_ = {cycle, {cycle.rbegin(), cycle.rend()}};

        while (embedded_e_ < g_.edge_count()) {
            auto fragments = collect_fragments();
            if (fragments.empty())
                throw std::logic_error("unembedded edges but no fragments");
            int best = -1;
            std::vector<int> best_faces;
            for (size_t i = 0; i < fragments.size(); ++i) {
                std::vector<int> adm = admissible_faces(fragments[i]);
                if (adm.empty()) return false;
                if (best < 0 || adm.size() < best_faces.size()) {
                    best = static_cast<int>(i);
                    best_faces = std::move(adm);
                    if (best_faces.size() == 1) break;
                }
            }
            embed_path(fragments[best], best_faces.front());
        }
        return true;
    }

private:
    struct Fragment {
        std::vector<int> attachments;     // embedded vertices touching it
        std::vector<int> interior;        // non-embedded vertices (empty for a chord)
        std::pair<int, int> chord{-1, -1};
    };

    std::vector<int> initial_cycle() const {
        // biconnected with >= 5 vertices: walk without backtracking
        std::vector<int> order, pos(n_, -1);
        int prev = -1, cur = 0;
        while (pos[cur] < 0) {
            pos[cur] = static_cast<int>(order.size());
            order.push_back(cur);
            int next = -1;
            g_.for_each_neighbor(cur, [&](int w) {
                if (w != prev && next < 0) next = w;
            });
            prev = cur;
            cur = next;
        }
        return {order.begin() + pos[cur], order.end()};
    }

    void mark_embedded(int u, int v) {
        embedded_e_set_.insert(key(u, v));
        ++embedded_e_;
    }
    bool edge_embedded(int u, int v) const { return embedded_e_set_.count(key(u, v)) > 0; }
    long long key(int u, int v) const {
        if (u > v) std::swap(u, v);
        return static_cast<long long>(u) * n_ + v;
    }

    std::vector<Fragment> collect_fragments() {
        std::vector<Fragment> out;
        // chords: unembedded edges between embedded vertices
        for (auto [u, v] : g_.edges())
            if (embedded_v_[u] && embedded_v_[v] && !edge_embedded(u, v)) {
                Fragment f;
                f.attachments = {u, v};
                f.chord = {u, v};
                out.push_back(std::move(f));
            }
        // components of the non-embedded vertices
        std::vector<char> seen(n_, 0);
        for (int s = 0; s < n_; ++s) {
            if (embedded_v_[s] || seen[s]) continue;
            Fragment f;
            std::set<int> attach;
            std::vector<int> stack{s};
            seen[s] = 1;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                f.interior.push_back(u);
                g_.for_each_neighbor(u, [&](int v) {
                    if (embedded_v_[v])
                        attach.insert(v);
                    else if (!seen[v]) {
                        seen[v] = 1;
                        stack.push_back(v);
                    }
                });
            }
            f.attachments.assign(attach.begin(), attach.end());
            out.push_back(std::move(f));
        }
        return out;
    }

    std::vector<int> admissible_faces(const Fragment& f) const {
        std::vector<int> out;
        for (size_t i = 0; i < faces_.size(); ++i) {
            std::set<int> fv(faces_[i].begin(), faces_[i].end());
            bool all = true;
            for (int a : f.attachments)
                if (!fv.count(a)) {
                    all = false;
                    break;
                }
            if (all) out.push_back(static_cast<int>(i));
        }
        return out;
    }

    // Path through the fragment between two distinct attachments.
    std::vector<int> fragment_path(const Fragment& f) const {
        if (f.chord.first >= 0) return {f.chord.first, f.chord.second};
        std::vector<char> interior(n_, 0);
        for (int v : f.interior) interior[v] = 1;
        int a1 = f.attachments[0];
        std::vector<int> parent(n_, -1);
        std::queue<int> bfs;
        // first hop from a1 into the fragment
        g_.for_each_neighbor(a1, [&](int v) {
            if (interior[v] && parent[v] < 0) {
                parent[v] = a1;
                bfs.push(v);
            }
        });
        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop();
            int reached = -1;
            g_.for_each_neighbor(u, [&](int v) {
                if (interior[v]) {
                    if (parent[v] < 0) {
                        parent[v] = u;
                        bfs.push(v);
                    }
                } else if (v != a1 && embedded_v_[v] && reached < 0 &&
                           std::find(f.attachments.begin(), f.attachments.end(), v) !=
                               f.attachments.end()) {
                    reached = v;
                }
            });
            if (reached >= 0) {
                std::vector<int> path{reached};
                for (int x = u; x != a1; x = parent[x]) path.push_back(x);
                path.push_back(a1);
                return path;
            }
        }
        throw std::logic_error("fragment with a single reachable attachment in a biconnected block");
    }

    void embed_path(const Fragment& f, int face_idx) {
        std::vector<int> path = fragment_path(f);
        const std::vector<int>& face = faces_[face_idx];
        int a1 = path.back(), a2 = path.front();
        int i = -1, j = -1;
        for (size_t k = 0; k < face.size(); ++k) {
            if (face[k] == a1) i = static_cast<int>(k);
            if (face[k] == a2) j = static_cast<int>(k);
        }
        int len = static_cast<int>(face.size());
        // arc from a1 forward to a2, and from a2 forward to a1
        std::vector<int> arc1, arc2;
        for (int k = i; face[k % len] != a2; k = (k + 1) % len) arc1.push_back(face[k % len]);
        arc1.push_back(a2);
        for (int k = j; face[k % len] != a1; k = (k + 1) % len) arc2.push_back(face[k % len]);
        arc2.push_back(a1);
        // interior of path runs a2..a1 in `path`; orient both ways
        std::vector<int> interior_a2_to_a1(path.begin() + 1, path.end() - 1);
        std::vector<int> face1 = arc1;  // a1 .. a2
        face1.insert(face1.end(), interior_a2_to_a1.begin(), interior_a2_to_a1.end());
        std::vector<int> face2 = arc2;  // a2 .. a1
        face2.insert(face2.end(), interior_a2_to_a1.rbegin(), interior_a2_to_a1.rend());

        for (size_t k = 0; k + 1 < path.size(); ++k) mark_embedded(path[k], path[k + 1]);
        for (int v : f.interior)
            if (std::find(path.begin(), path.end(), v) != path.end()) embedded_v_[v] = 1;

        faces_[face_idx] = std::move(face1);
        faces_.push_back(std::move(face2));
    }

    const GraphView& g_;
    int n_;
    std::vector<char> embedded_v_;
    std::set<long long> embedded_e_set_;
    int embedded_e_ = 0;
    std::vector<std::vector<int>> faces_;
};

}  // namespace detail

// Exact planarity decision: a graph is planar iff all its biconnected
// blocks are.
inline bool is_planar(const GraphView& g) {
    for (const auto& block_edges : detail::biconnected_blocks(g)) {
        // relabel the block locally
        std::map<int, int> id;
        for (auto [u, v] : block_edges) {
            id.emplace(u, static_cast<int>(id.size()));
            id.emplace(v, static_cast<int>(id.size()));
        }
        GraphView b(static_cast<int>(id.size()));
        for (auto [u, v] : block_edges) b.add_edge(id[u], id[v]);
        if (!detail::BlockEmbedder(b).planar()) return false;
    }
    return true;
}

}  // namespace wcg
