#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "wcg/common.hpp"
#include "wcg/family.hpp"
#include "wcg/game.hpp"
#include "wcg/match.hpp"

namespace wcg {

struct SolveResult {
    Side winner = Side::Waiter;
    std::vector<std::pair<Offer, std::optional<ElementId>>> principal_line;
    long long states_visited = 0;
};

constexpr int kSolverBoardCap = 12;

// Ground-truth minimax for (1:q) games with the objective "Client fully
// claims some set of the family". In Waiter-Client games Waiter wants the
// claim, in Client-Waiter games Client does. Memoization keys the owner map
// with dead elements collapsed to a count: elements outside every live set
// are interchangeable, both for the objective and for move legality.
class ExactSolver {
public:
    ExactSolver(int board_size, WinningFamily family, int q, Convention convention)
        : board_(board_size), q_(q), convention_(convention), family_(std::move(family)) {
        if (board_size > kSolverBoardCap)
            throw CapExceeded("exact solver limited to 12 board elements");
        if (convention == Convention::ClientWaiter && q > 3)
            throw CapExceeded("Client-Waiter solving limited to q <= 3");
        if (family_.n_elements != board_size)
            throw ParameterError("family board does not match game board");
        waiter_wants_claim_ = convention == Convention::WaiterClient;
        set_masks_.reserve(family_.sets.size());
        for (const auto& s : family_.sets) {
            std::uint32_t m = 0;
            for (ElementId e : s) m |= 1u << e;
            set_masks_.push_back(m);
        }
    }

    // Flips which side wants the claim (determinacy experiments).
    void set_waiter_wants_claim(bool v) { waiter_wants_claim_ = v; }

    SolveResult solve() {
        states_visited_ = 0;
        std::vector<Owner> owner(board_, Owner::Free);
        bool claim = claim_outcome(owner);
        SolveResult res;
        res.states_visited = states_visited_;
        bool waiter_wins = claim == waiter_wants_claim_;
        res.winner = waiter_wins ? Side::Waiter : Side::Client;
        res.principal_line = principal_line(owner, claim);
        return res;
    }

    long long states_visited() const { return states_visited_; }

private:
    struct Position {
        std::uint32_t client_mask = 0;
        std::uint32_t waiter_mask = 0;
        std::uint32_t free_mask = 0;
    };

    static Position to_position(const std::vector<Owner>& owner) {
        Position p;
        for (size_t e = 0; e < owner.size(); ++e) {
            if (owner[e] == Owner::Client) p.client_mask |= 1u << e;
            else if (owner[e] == Owner::Waiter) p.waiter_mask |= 1u << e;
            else p.free_mask |= 1u << e;
        }
        return p;
    }

    // claim already forced / refuted, or nullopt when undecided
    std::optional<bool> decided(const Position& p) const {
        bool all_dead = true;
        for (std::uint32_t m : set_masks_) {
            if ((m & p.client_mask) == m) return true;
            if (!(m & p.waiter_mask)) all_dead = false;
        }
        if (all_dead) return false;
        if (p.free_mask == 0) return false;  // no full claim and nothing left
        return std::nullopt;
    }

    std::uint32_t live_elements(const Position& p) const {
        std::uint32_t live = 0;
        for (std::uint32_t m : set_masks_)
            if (!(m & p.waiter_mask)) live |= m;
        return live;
    }

    // canonical key: 2 bits per live element (free=0 client=1) plus the
    // count of dead free elements; dead claimed elements are dropped
    std::uint64_t canonical_key(const Position& p) const {
        std::uint32_t live = live_elements(p);
        std::uint64_t key = 0;
        for (int e = 0; e < board_; ++e) {
            std::uint64_t code = 3;  // dead
            if (live >> e & 1) code = (p.client_mask >> e & 1) ? 1 : 0;
            key = key * 4 + code;
        }
        key = key * 16 + std::popcount(p.free_mask & ~live);
        return key;
    }

    bool claim_outcome(const std::vector<Owner>& owner) {
        return claim_outcome(to_position(owner));
    }

    bool claim_outcome(const Position& p) {
        if (auto d = decided(p)) return *d;
        std::uint64_t key = canonical_key(p);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        ++states_visited_;

        bool waiter_best = !waiter_wants_claim_;
        for_each_offer(p, [&](std::uint32_t live_offer, int dead_units) {
            if (waiter_best == waiter_wants_claim_) return;  // already optimal
            bool value = client_value(p, live_offer, dead_units);
            if (value == waiter_wants_claim_) waiter_best = value;
        });
        memo_.emplace(key, waiter_best);
        return waiter_best;
    }

    // Client's reply value for one offer (or the forced resolution of a
    // short Waiter-Client round).
    bool client_value(const Position& p, std::uint32_t live_offer, int dead_units) {
        int offer_size = std::popcount(live_offer) + dead_units;
        bool pick_expected =
            convention_ == Convention::ClientWaiter || offer_size == q_ + 1;
        std::uint32_t dead_free = p.free_mask & ~live_elements(p);
        if (!pick_expected) {
            Position next = p;
            next.waiter_mask |= live_offer;
            next.free_mask &= ~live_offer;
            std::uint32_t dd = lowest_bits(dead_free, dead_units);
            next.waiter_mask |= dd;
            next.free_mask &= ~dd;
            return claim_outcome(next);
        }
        bool client_best = waiter_wants_claim_;  // worst for client
        auto try_pick = [&](std::uint32_t pick_bit) {
            if (client_best != waiter_wants_claim_) return;
            Position next = p;
            std::uint32_t waiter_take =
                (live_offer & ~pick_bit) | (lowest_bits(dead_free & ~pick_bit, dead_units - ((pick_bit & dead_free) ? 1 : 0)));
            next.client_mask |= pick_bit;
            next.waiter_mask |= waiter_take;
            next.free_mask &= ~(pick_bit | waiter_take);
            bool v = claim_outcome(next);
            if (v != waiter_wants_claim_) client_best = v;
        };
        for (std::uint32_t m = live_offer; m != 0; m &= m - 1) try_pick(m & (~m + 1));
        if (dead_units > 0) try_pick(dead_free & (~dead_free + 1));
        return client_best;
    }

    static std::uint32_t lowest_bits(std::uint32_t mask, int k) {
        std::uint32_t out = 0;
        for (int i = 0; i < k; ++i) {
            std::uint32_t low = mask & (~mask + 1);
            out |= low;
            mask &= ~low;
        }
        return out;
    }

    // Enumerates offers up to dead-element symmetry: a subset of live free
    // elements plus a count of anonymous dead ones. Canonical order: more
    // live elements first, live subsets by ascending bitmask.
    template <typename Fn>
    void for_each_offer(const Position& p, Fn&& fn) {
        std::uint32_t live_free = p.free_mask & live_elements(p);
        int nl = std::popcount(live_free);
        int nd = std::popcount(p.free_mask) - nl;
        int free_total = nl + nd;
        std::vector<int> live_ids;
        for (std::uint32_t m = live_free; m; m &= m - 1) live_ids.push_back(std::countr_zero(m));

        auto sizes_for = [&](std::vector<int>& sizes) {
            if (convention_ == Convention::WaiterClient) {
                sizes.push_back(std::min(q_ + 1, free_total));
            } else {
                for (int s = 1; s <= std::min(q_ + 1, free_total); ++s) sizes.push_back(s);
            }
        };
        std::vector<int> sizes;
        sizes_for(sizes);
        for (int size : sizes) {
            for (int a = std::min(size, nl); a >= std::max(0, size - nd); --a) {
                // subsets of live_ids of size a, ascending lexicographic
                std::vector<int> idx(a);
                for (int i = 0; i < a; ++i) idx[i] = i;
                while (true) {
                    std::uint32_t mask = 0;
                    for (int i : idx) mask |= 1u << live_ids[i];
                    fn(mask, size - a);
                    if (a == 0) break;
                    int i = a - 1;
                    while (i >= 0 && idx[i] == nl - a + i) --i;
                    if (i < 0) break;
                    ++idx[i];
                    for (int j = i + 1; j < a; ++j) idx[j] = idx[j - 1] + 1;
                }
            }
        }
    }

    // Re-walks the solved tree taking the first optimal move in canonical
    // order; anonymous dead elements are concretized as smallest free ids.
    std::vector<std::pair<Offer, std::optional<ElementId>>> principal_line(
        std::vector<Owner> owner, bool root_claim) {
        std::vector<std::pair<Offer, std::optional<ElementId>>> line;
        Position p = to_position(owner);
        while (p.free_mask != 0) {
            bool undecided = !decided(p).has_value();
            std::uint32_t dead_free = p.free_mask & ~live_elements(p);
            std::optional<std::pair<std::uint32_t, int>> chosen;
            if (undecided) {
                for_each_offer(p, [&](std::uint32_t live_offer, int dead_units) {
                    if (chosen) return;
                    if (client_value(p, live_offer, dead_units) == root_claim)
                        chosen = {live_offer, dead_units};
                });
            }
            if (!chosen) {
                // decided tail (or all offers equal): take the first move
                for_each_offer(p, [&](std::uint32_t live_offer, int dead_units) {
                    if (!chosen) chosen = {live_offer, dead_units};
                });
            }
            auto [live_offer, dead_units] = *chosen;
            std::uint32_t dd = lowest_bits(dead_free, dead_units);
            std::uint32_t offer_mask = live_offer | dd;
            std::vector<ElementId> elems;
            for (std::uint32_t m = offer_mask; m; m &= m - 1) elems.push_back(std::countr_zero(m));
            Offer offer(elems);

            int offer_size = offer.size();
            bool pick_expected =
                convention_ == Convention::ClientWaiter || offer_size == q_ + 1;
            std::optional<ElementId> pick;
            if (pick_expected) {
                // client's first optimal pick in ascending order
                bool target = root_claim;
                for (ElementId x : offer.elements) {
                    Position next = p;
                    std::uint32_t pick_bit = 1u << x;
                    std::uint32_t waiter_take = offer_mask & ~pick_bit;
                    next.client_mask |= pick_bit;
                    next.waiter_mask |= waiter_take;
                    next.free_mask &= ~offer_mask;
                    if (claim_outcome(next) == target) {
                        pick = x;
                        break;
                    }
                }
                if (!pick) pick = offer.elements.front();
                std::uint32_t pick_bit = 1u << *pick;
                p.client_mask |= pick_bit;
                p.waiter_mask |= offer_mask & ~pick_bit;
                p.free_mask &= ~offer_mask;
            } else {
                p.waiter_mask |= offer_mask;
                p.free_mask &= ~offer_mask;
            }
            line.emplace_back(std::move(offer), pick);
        }
        return line;
    }

    int board_, q_;
    Convention convention_;
    WinningFamily family_;
    bool waiter_wants_claim_;
    std::vector<std::uint32_t> set_masks_;
    std::unordered_map<std::uint64_t, bool> memo_;
    long long states_visited_ = 0;
};

inline SolveResult solve_game(int board_size, const WinningFamily& family, int q,
                              Convention convention) {
    ExactSolver solver(board_size, family, q, convention);
    return solver.solve();
}

// Exact threshold bias: the unique q at which the winner flips. Waiter-
// Client: smallest q from which Client wins; Client-Waiter: smallest q from
// which Waiter wins. Asserts the flip happens exactly once within the
// sweep.
inline int threshold_bias(int board_size, const WinningFamily& family, Convention convention,
                          int q_max) {
    int threshold = -1;
    bool seen_late_side = false;
    for (int q = 1; q <= q_max; ++q) {
        SolveResult r = solve_game(board_size, family, q, convention);
        bool late_side_wins = convention == Convention::WaiterClient
                                  ? r.winner == Side::Client
                                  : r.winner == Side::Waiter;
        if (late_side_wins && !seen_late_side) {
            seen_late_side = true;
            threshold = q;
        }
        if (!late_side_wins && seen_late_side)
            throw std::logic_error("bias monotonicity violated in threshold sweep");
    }
    if (threshold < 0)
        throw CapExceeded("threshold bias exceeds the swept range");
    return threshold;
}

// ---------------------------------------------------------------------------
// Strategy certification: exhaustive over every opposing line

namespace detail {

// Decides the claim outcome early when possible: a fully claimed set locks
// it to true, all sets dead (or board exhausted) locks it to false.
inline bool client_claims_terminal(const GameState& s, const WinningFamily& family,
                                   std::optional<bool>* decided_out) {
    bool all_dead = true;
    for (const auto& set : family.sets) {
        bool full = true, dead = false;
        for (ElementId e : set) {
            if (s.owner[e] != Owner::Client) full = false;
            if (s.owner[e] == Owner::Waiter) dead = true;
        }
        if (full) {
            *decided_out = true;
            return true;
        }
        if (!dead) all_dead = false;
    }
    if (all_dead || s.is_terminal()) {
        *decided_out = false;
        return true;
    }
    decided_out->reset();
    return false;
}

}  // namespace detail

// True iff the waiter strategy forces its goal against every legal Client
// reply sequence. Strategies are rebuilt from the prototype at each node and
// replay the state's history, so deterministic stateful strategies certify
// correctly.
inline bool certify_waiter_strategy(const WaiterStrategy& proto, int board_size,
                                    const WinningFamily& family, int q, Convention convention) {
    bool waiter_wants_claim = convention == Convention::WaiterClient;
    std::unordered_map<std::uint64_t, bool> memo;
    bool use_memo = proto.stateless();

    std::function<bool(GameState&)> walk = [&](GameState& s) -> bool {
        std::optional<bool> done;
        if (detail::client_claims_terminal(s, family, &done))
            return *done == waiter_wants_claim;
        std::uint64_t key = 0;
        if (use_memo) {
            for (ElementId e = 0; e < s.board_size; ++e)
                key = key * 3 + static_cast<int>(s.owner[e]);
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
        }
        auto strat = proto.clone();
        Offer offer = strat->propose(s);
        OfferCheck chk = validate_offer(s, offer);
        if (!chk.ok) return false;  // illegal offer forfeits
        bool pick_expected =
            convention == Convention::ClientWaiter || offer.size() == s.q + 1;
        bool ok = true;
        if (!pick_expected) {
            GameState next = resolve_round(s, offer, std::nullopt);
            ok = walk(next);
        } else {
            for (ElementId x : offer.elements) {
                GameState next = resolve_round(s, offer, x);
                if (!walk(next)) {
                    ok = false;
                    break;
                }
            }
        }
        if (use_memo) memo.emplace(key, ok);
        return ok;
    };
    GameState root = new_game(board_size, q, convention);
    return walk(root);
}

// True iff the client strategy achieves its goal against every legal Waiter
// offer sequence.
inline bool certify_client_strategy(const ClientStrategy& proto, int board_size,
                                    const WinningFamily& family, int q, Convention convention) {
    bool client_wants_claim = convention == Convention::ClientWaiter;
    std::unordered_map<std::uint64_t, bool> memo;
    bool use_memo = proto.stateless();
    auto strat = proto.clone();

    std::function<bool(GameState&)> walk = [&](GameState& s) -> bool {
        std::optional<bool> done;
        if (detail::client_claims_terminal(s, family, &done))
            return *done == client_wants_claim;
        std::uint64_t key = 0;
        if (use_memo) {
            for (ElementId e = 0; e < s.board_size; ++e)
                key = key * 3 + static_cast<int>(s.owner[e]);
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
        }
        std::vector<ElementId> free;
        for (ElementId e = 0; e < s.board_size; ++e)
            if (s.owner[e] == Owner::Free) free.push_back(e);
        int nf = static_cast<int>(free.size());

        std::vector<int> sizes;
        if (convention == Convention::WaiterClient)
            sizes.push_back(std::min(q + 1, nf));
        else
            for (int t = 1; t <= std::min(q + 1, nf); ++t) sizes.push_back(t);

        bool ok = true;
        for (int size : sizes) {
            if (!ok) break;
            std::vector<int> idx(size);
            for (int i = 0; i < size; ++i) idx[i] = i;
            while (ok) {
                std::vector<ElementId> elems;
                for (int i : idx) elems.push_back(free[i]);
                Offer offer(elems);
                bool pick_expected =
                    convention == Convention::ClientWaiter || offer.size() == s.q + 1;
                if (!pick_expected) {
                    GameState next = resolve_round(s, offer, std::nullopt);
                    if (!walk(next)) ok = false;
                } else {
                    ElementId x = strat->pick(s, offer);
                    if (!offer.contains(x)) {
                        ok = false;  // illegal pick forfeits
                    } else {
                        GameState next = resolve_round(s, offer, x);
                        if (!walk(next)) ok = false;
                    }
                }
                int i = size - 1;
                while (i >= 0 && idx[i] == nf - size + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
        if (use_memo) memo.emplace(key, ok);
        return ok;
    };
    GameState root = new_game(board_size, q, convention);
    return walk(root);
}

}  // namespace wcg
