#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <vector>

#include "wcg/common.hpp"
#include "wcg/family.hpp"
#include "wcg/game.hpp"

namespace wcg {

// Sum_{A in F} (q+1)^(-|A|): the Waiter-Client avoidance potential. Bounds
// the number of sets Client can be forced to complete.
inline double phi_wc(const WinningFamily& family, int q) {
    if (q < 1) throw ParameterError("bias q must be at least 1");
    KahanSum acc;
    double logb = std::log(static_cast<double>(q + 1));
    for (const auto& set : family.sets) acc.add(std::exp(-logb * static_cast<double>(set.size())));
    return acc.value();
}

// Mid-game version: dead sets (Waiter owns an element) contribute 0, a live
// set A contributes (q+1)^(-u) with u = |A \ Client-owned|. A fully claimed
// set contributes exactly 1; equals phi_wc on a fresh state.
inline double phi_wc_live(const WinningFamily& family, const GameState& state) {
    if (family.n_elements != state.board_size)
        throw ParameterError("family board does not match game board");
    KahanSum acc;
    double logb = std::log(static_cast<double>(state.q + 1));
    for (const auto& set : family.sets) {
        int unclaimed = 0;
        bool dead = false;
        for (ElementId e : set) {
            Owner o = state.owner[e];
            if (o == Owner::Waiter) {
                dead = true;
                break;
            }
            if (o != Owner::Client) ++unclaimed;
        }
        if (!dead) acc.add(std::exp(-logb * unclaimed));
    }
    return acc.value();
}

// Sum_{A in F} (q/(q+1))^|A| < 1 guarantees Client a transversal of F in the
// (1:q) Client-Waiter game.
inline double phi_cw(const WinningFamily& family, int q) {
    if (q < 1) throw ParameterError("bias q must be at least 1");
    KahanSum acc;
    double logr = std::log(static_cast<double>(q)) - std::log(static_cast<double>(q + 1));
    for (const auto& set : family.sets) acc.add(std::exp(logr * static_cast<double>(set.size())));
    return acc.value();
}

// Sum_{A in F} 2^(-|A|/(2q-1)); below 1/2 Waiter wins the Waiter-Client
// transversal game (criterion only, no constructive strategy here).
inline double waiter_criterion_sum(const WinningFamily& family, int q) {
    if (q < 1) throw ParameterError("bias q must be at least 1");
    KahanSum acc;
    double c = std::log(2.0) / (2.0 * q - 1.0);
    for (const auto& set : family.sets) acc.add(std::exp(-c * static_cast<double>(set.size())));
    return acc.value();
}

// ---------------------------------------------------------------------------
// Closed-form evaluators (log-space, no enumeration)

// Sum_{k=lmin}^{n} C(n,k) (k-1)!/2 (q+1)^(-k): the potential of the family
// of cycles of length >= lmin. Empty sum (lmin > n) is 0.
inline double phi_formula_cycles_tail(int n, int q, int lmin) {
    if (q < 1) throw ParameterError("bias q must be at least 1");
    if (lmin < 3) throw ParameterError("cycle lengths start at 3");
    KahanSum acc;
    double logb = std::log(static_cast<double>(q + 1));
    for (int k = lmin; k <= n; ++k)
        acc.add(std::exp(log_binomial(n, k) + log_factorial(k - 1) - std::log(2.0) - k * logb));
    return acc.value();
}

// Upper bound on the potential of the family of cycle pairs sharing a path:
// sum over l1 >= l2, shared path on s vertices, of
//   C(n,l1) (l1-1)!/2 * l1 * (n)_(l2-s) * (q+1)^-(l1+l2-s+1).
// Dominates the enumerated potential for every q (the count factor counts
// each unordered pair at least once).
inline double phi_formula_cycle_pairs(int n, int q, int lmax) {
    if (q < 1) throw ParameterError("bias q must be at least 1");
    lmax = std::min(lmax, n);
    KahanSum acc;
    double logb = std::log(static_cast<double>(q + 1));
    for (int l1 = 3; l1 <= lmax; ++l1)
        for (int l2 = 3; l2 <= l1; ++l2)
            for (int s = 1; s <= l2; ++s) {
                double lg = log_binomial(n, l1) + log_factorial(l1 - 1) - std::log(2.0) +
                            std::log(static_cast<double>(l1)) + log_falling(n, l2 - s) -
                            (l1 + l2 - s + 1) * logb;
                acc.add(std::exp(lg));
            }
    return acc.value();
}

// Exact potentials of the enumerated path-sharing pair family, computed in a
// streaming pass (nothing materialized); one pass serves several biases.
inline std::vector<double> phi_wc_cycle_pairs_streamed(int n, int lmax,
                                                       const std::vector<int>& qs) {
    std::vector<KahanSum> acc(qs.size());
    std::vector<double> logb;
    for (int q : qs) {
        if (q < 1) throw ParameterError("bias q must be at least 1");
        logb.push_back(std::log(static_cast<double>(q + 1)));
    }
    detail::for_each_path_sharing_pair(n, lmax, [&](const CycleInfo& a, const CycleInfo& b) {
        int size = std::popcount(a.edge_mask | b.edge_mask);
        for (size_t i = 0; i < qs.size(); ++i) acc[i].add(std::exp(-logb[i] * size));
    });
    std::vector<double> out;
    for (auto& k : acc) out.push_back(k.value());
    return out;
}

// ---------------------------------------------------------------------------
// Colorability-game families

enum class ColorabilityFamily { F1, F2, F3, SmallK };

struct FormulaResult {
    double value = 0.0;
    bool degenerate = false;  // a required set size evaluated to 0
};

namespace detail {

// Census of unordered pairs of intersecting cycles of length 3 or 4, grouped
// by (spanned vertices v, union edge count e). A pair spans at most 7
// vertices, so brute force on K_4..K_7 pins the counts and
//   #pairs(n) with profile (v,e) = C(n,v) * census[v][e]
// is exact for every n.
inline const std::map<std::pair<int, int>, double>& short_pair_census() {
    static const std::map<std::pair<int, int>, double> census = [] {
        std::map<std::pair<int, int>, double> c;
        for (int v = 4; v <= 7; ++v) {
            for_each_intersecting_short_pair(v, [&](const CycleInfo& a, const CycleInfo& b) {
                if (std::popcount(a.vertex_mask | b.vertex_mask) != v) return;
                int e = std::popcount(a.edge_mask | b.edge_mask);
                c[{v, e}] += 1.0;
            });
        }
        return c;
    }();
    return census;
}

}  // namespace detail

// Potential evaluators for the families used in the colorability games.
// F1 (pairs of intersecting 3/4-cycles) is evaluated exactly via a pattern
// census; F2, F3 and the small-k family evaluate the explicit binomial upper
// bounds with set sizes rounded up (rounding up only shrinks the family).
// A set-size formula that evaluates to 0 degenerates the family; the result
// is then +infinity with the degenerate flag set.
inline FormulaResult phi_formula_colorability(int n, int k, int q, ColorabilityFamily which) {
    if (q < 1) throw ParameterError("bias q must be at least 1");
    if (k < 1) throw ParameterError("chromatic parameter k must be at least 1");
    double logb = std::log(static_cast<double>(q + 1));
    double logk = std::log(static_cast<double>(k));
    KahanSum acc;
    auto ceil_size = [](double x) { return static_cast<long long>(std::ceil(x - 1e-12)); };

    switch (which) {
        case ColorabilityFamily::F1: {
            for (const auto& [profile, count] : detail::short_pair_census()) {
                auto [v, e] = profile;
                if (v > n) continue;
                acc.add(std::exp(std::log(count) + log_binomial(n, v) - e * logb));
            }
            return {acc.value(), false};
        }
        case ColorabilityFamily::F2: {
            for (int t = 1; t <= n; ++t) {
                long long m = ceil_size(t * k * logk / 16.0);
                if (m == 0) return {std::numeric_limits<double>::infinity(), true};
                double pool = t * (t - 1) / 2.0;
                if (pool < m) continue;
                acc.add(std::exp(log_binomial(n, t) + log_binomial(pool, static_cast<double>(m)) -
                                 m * logb));
            }
            return {acc.value(), false};
        }
        case ColorabilityFamily::F3: {
            for (int t = 1; t <= n; ++t) {
                long long m1 = ceil_size(t * k / 6.0);
                long long m2 = ceil_size(t * k * logk / 8.0);
                if (m1 == 0 || m2 == 0) return {std::numeric_limits<double>::infinity(), true};
                double pool1 = t * (t - 1) / 2.0;
                double pool2 = static_cast<double>(t) * (n - t);
                if (pool1 < m1 || pool2 < m2) continue;
                acc.add(std::exp(log_binomial(n, t) + log_binomial(pool1, static_cast<double>(m1)) +
                                 log_binomial(pool2, static_cast<double>(m2)) - (m1 + m2) * logb));
            }
            return {acc.value(), false};
        }
        case ColorabilityFamily::SmallK: {
            for (int t = 1; t <= n; ++t) {
                long long m = ceil_size(t * k / 2.0);
                if (m == 0) return {std::numeric_limits<double>::infinity(), true};
                double pool = t * (t - 1) / 2.0;
                if (pool < m) continue;
                acc.add(std::exp(log_binomial(n, t) + log_binomial(pool, static_cast<double>(m)) -
                                 m * logb));
            }
            return {acc.value(), false};
        }
    }
    throw ParameterError("unknown colorability family");
}

}  // namespace wcg
