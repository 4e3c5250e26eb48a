#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "wcg/common.hpp"

namespace wcg::detail {

// Exact planner for the component-merging endgame of connectivity forcing.
//
// Abstract state: the multiset of free-edge counts from each outsider
// (always a singleton under core-only play) to the core component. One
// round: Waiter covers pairs with c_z <= f_z edges summing exactly to the
// offer size tau; Client merges one covered outsider; every survivor gains
// the free edge it shared with the merged vertex, so f' = f - c + 1.
// Waiter wins when every outsider has merged.
//
// Greedy covers provably fail here (draining the wrong split strands a
// component), so moves come from an exact search with two soundness-
// preserving reductions:
//  - values are capped at tau: larger values only help (pointwise larger
//    states admit every cover of smaller ones and produce pointwise larger
//    successors), so a win in the capped model is a win;
//  - staircase fast path: if the descending values satisfy g_i >= tau-i+1,
//    offering tau edges of the richest pair wins outright, since survivors
//    shift one step up the staircase and the last outsider keeps >= tau.
class MergePlanner {
public:
    explicit MergePlanner(int tau) : tau_(tau) {}

    struct Cover {
        // full[i]: capped value of a fully covered outsider; at most one
        // partial cover of `partial_amount` edges from a `partial_value` pair.
        std::vector<int> full;
        int partial_value = 0;
        int partial_amount = 0;
    };

    // Winning cover for the current value multiset, or nullopt when the
    // position is lost (values are true free-edge counts; capping is
    // internal).
    std::optional<Cover> choose(std::vector<int> values) {
        for (int& v : values) v = std::min(v, tau_);
        std::sort(values.begin(), values.end());
        if (auto fast = staircase_cover(values)) return fast;
        Cover best;
        if (winning_cover(values, &best)) return best;
        return std::nullopt;
    }

    bool won(std::vector<int> values) {
        for (int& v : values) v = std::min(v, tau_);
        std::sort(values.begin(), values.end());
        return above_staircase(values) || winning_cover(values, nullptr);
    }

private:
    // values ascending; g_i (descending) >= tau - i + 1 for all i
    bool above_staircase(const std::vector<int>& values) const {
        int m = static_cast<int>(values.size());
        for (int i = 0; i < std::min(m, tau_); ++i)
            if (values[m - 1 - i] < tau_ - i) return false;
        return true;
    }

    std::optional<Cover> staircase_cover(const std::vector<int>& values) const {
        if (values.empty() || !above_staircase(values)) return std::nullopt;
        Cover c;
        if (values.back() >= tau_) {
            if (values.back() == tau_)
                c.full.push_back(tau_);
            else {
                c.partial_value = values.back();
                c.partial_amount = tau_;
            }
            return c;
        }
        return std::nullopt;  // cannot happen: above_staircase forces g_1 >= tau
    }

    bool solved(const std::vector<int>& sorted_values) {
        if (above_staircase(sorted_values)) return true;
        auto it = memo().find(sorted_values);
        if (it != memo().end()) return it->second;
        return winning_cover(sorted_values, nullptr);
    }

    bool winning_cover(const std::vector<int>& sorted_values, Cover* out) {
        if (sorted_values.empty()) return true;
        auto it = memo().find(sorted_values);
        if (it != memo().end() && out == nullptr) return it->second;

        std::vector<std::pair<int, int>> classes;  // (value, count), descending
        for (int i = static_cast<int>(sorted_values.size()) - 1; i >= 0;) {
            int j = i;
            while (j >= 0 && sorted_values[j] == sorted_values[i]) --j;
            classes.emplace_back(sorted_values[i], i - j);
            i = j;
        }
        Cover cover;
        std::vector<int> take(classes.size(), 0);
        bool result = enumerate_covers(classes, take, 0, tau_, &cover);
        if (result && out) *out = cover;
        memo()[sorted_values] = result;
        return result;
    }

    // DFS over full-cover counts per class, richer classes first and larger
    // takes first, then an optional single partial top-up.
    bool enumerate_covers(const std::vector<std::pair<int, int>>& classes, std::vector<int>& take,
                          size_t idx, int rem, Cover* cover) {
        if (rem == 0 || idx == classes.size()) {
            if (rem == 0) {
                if (cover_wins(classes, take, -1, 0)) {
                    if (cover) fill_cover(classes, take, -1, 0, cover);
                    return true;
                }
                return false;
            }
            for (size_t c = 0; c < classes.size(); ++c) {
                if (take[c] >= classes[c].second || classes[c].first <= rem) continue;
                if (cover_wins(classes, take, static_cast<int>(c), rem)) {
                    if (cover) fill_cover(classes, take, static_cast<int>(c), rem, cover);
                    return true;
                }
            }
            return false;
        }
        auto [value, count] = classes[idx];
        int maxk = value > 0 ? std::min(count, rem / value) : 0;
        for (int k = maxk; k >= 0; --k) {
            take[idx] = k;
            if (enumerate_covers(classes, take, idx + 1, rem - k * value, cover)) return true;
        }
        take[idx] = 0;
        return false;
    }

    // Every Client answer (merging any fully covered member or the partial
    // one) must lead to a won successor.
    bool cover_wins(const std::vector<std::pair<int, int>>& classes, const std::vector<int>& take,
                    int partial_class, int partial_amount) {
        bool any = partial_class >= 0;
        for (size_t c = 0; c < classes.size() && !any; ++c) any = take[c] > 0;
        if (!any) return false;
        for (size_t c = 0; c < classes.size(); ++c) {
            if (take[c] == 0) continue;
            if (!solved(successor(classes, take, partial_class, partial_amount,
                                  static_cast<int>(c), false)))
                return false;
        }
        if (partial_class >= 0) {
            if (!solved(successor(classes, take, partial_class, partial_amount, partial_class, true)))
                return false;
        }
        return true;
    }

    // Value multiset after Client merges one covered outsider; regrowth and
    // the cap are applied here.
    std::vector<int> successor(const std::vector<std::pair<int, int>>& classes,
                               const std::vector<int>& take, int partial_class, int partial_amount,
                               int merged_class, bool merged_partial) {
        std::vector<int> next;
        for (size_t c = 0; c < classes.size(); ++c) {
            auto [value, count] = classes[c];
            int full_here = take[c];
            int untouched = count - full_here;
            bool partial_here = partial_class == static_cast<int>(c);
            if (partial_here) --untouched;
            if (static_cast<int>(c) == merged_class && !merged_partial) --full_here;
            for (int i = 0; i < full_here; ++i) next.push_back(1);
            // the only partial member is the merged one when merged_partial
            if (partial_here && !merged_partial)
                next.push_back(std::min(value - partial_amount + 1, tau_));
            for (int i = 0; i < untouched; ++i) next.push_back(std::min(value + 1, tau_));
        }
        std::sort(next.begin(), next.end());
        return next;
    }

    void fill_cover(const std::vector<std::pair<int, int>>& classes, const std::vector<int>& take,
                    int partial_class, int partial_amount, Cover* cover) {
        cover->full.clear();
        for (size_t c = 0; c < classes.size(); ++c)
            for (int i = 0; i < take[c]; ++i) cover->full.push_back(classes[c].first);
        cover->partial_value = partial_class >= 0 ? classes[partial_class].first : 0;
        cover->partial_amount = partial_class >= 0 ? partial_amount : 0;
    }

    // solved positions are shared per bias across all planner instances in
    // this thread
    std::map<std::vector<int>, bool>& memo() {
        thread_local std::map<int, std::map<std::vector<int>, bool>> cache;
        return cache[tau_];
    }

    int tau_;
};

}  // namespace wcg::detail
