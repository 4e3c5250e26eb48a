#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wcg/common.hpp"

namespace wcg {

enum class Convention { WaiterClient, ClientWaiter };

enum class Owner : std::uint8_t { Free, Waiter, Client };

inline const char* to_string(Convention c) {
    return c == Convention::WaiterClient ? "WC" : "CW";
}

using ElementId = int;

// A set of free board elements put forward by Waiter. Canonical form:
// sorted ascending, no duplicates.
struct Offer {
    std::vector<ElementId> elements;

    Offer() = default;
    explicit Offer(std::vector<ElementId> elems) : elements(std::move(elems)) {
        std::sort(elements.begin(), elements.end());
        elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    }

    bool contains(ElementId x) const {
        return std::binary_search(elements.begin(), elements.end(), x);
    }
    int size() const { return static_cast<int>(elements.size()); }
    bool operator==(const Offer&) const = default;
};

struct RoundRecord {
    Offer offer;
    std::vector<ElementId> client_take;  // sorted
    std::vector<ElementId> waiter_take;  // sorted
    bool operator==(const RoundRecord&) const = default;
};

// Full position of a biased (1:q) game. Mutated single-threaded within one
// match; plain value otherwise.
struct GameState {
    int board_size = 0;
    int q = 1;
    Convention convention = Convention::WaiterClient;
    std::vector<Owner> owner;
    int round = 0;
    std::vector<RoundRecord> history;

    int free_count = 0;
    int client_count = 0;
    int waiter_count = 0;

    bool is_terminal() const { return free_count == 0; }

    std::vector<ElementId> owned_by(Owner who) const {
        std::vector<ElementId> out;
        for (int i = 0; i < board_size; ++i)
            if (owner[i] == who) out.push_back(i);
        return out;
    }
};

// Only (1:q) games are supported; q is Waiter's bias.
inline GameState new_game(int board_size, int q, Convention convention) {
    if (board_size < 1) throw ParameterError("board size must be at least 1");
    if (q < 1) throw ParameterError("bias q must be at least 1");
    GameState s;
    s.board_size = board_size;
    s.q = q;
    s.convention = convention;
    s.owner.assign(board_size, Owner::Free);
    s.free_count = board_size;
    return s;
}

struct OfferCheck {
    bool ok = true;
    std::string reason;
};

// Waiter-Client demands exactly min(q+1, free) elements; Client-Waiter
// accepts any size in [1, q+1] not exceeding the free count. All offered
// elements must be free.
inline OfferCheck validate_offer(const GameState& state, const Offer& offer) {
    if (state.is_terminal()) return {false, "game is over"};
    if (offer.elements.empty()) return {false, "empty offer"};
    for (ElementId e : offer.elements) {
        if (e < 0 || e >= state.board_size) return {false, "offered element out of range"};
        if (state.owner[e] != Owner::Free) return {false, "offered element is not free"};
    }
    int t = offer.size();
    if (state.convention == Convention::WaiterClient) {
        int required = std::min(state.q + 1, state.free_count);
        if (t != required)
            return {false, "Waiter-Client offer must have exactly " + std::to_string(required) +
                               " elements, got " + std::to_string(t)};
    } else {
        if (t > state.q + 1)
            return {false, "Client-Waiter offer may have at most q+1 elements"};
        if (t > state.free_count) return {false, "offer exceeds free count"};
    }
    return {};
}

namespace detail {
inline void claim(GameState& s, ElementId e, Owner who) {
    s.owner[e] = who;
    --s.free_count;
    if (who == Owner::Client)
        ++s.client_count;
    else
        ++s.waiter_count;
}
}  // namespace detail

// Applies one round in place. Waiter-Client: when the offer has q+1 elements
// Client keeps his pick and Waiter claims the rest; a short final offer of
// t <= q elements goes entirely to Waiter and no pick is accepted.
// Client-Waiter: Client always keeps exactly his pick, Waiter the rest.
inline void apply_round(GameState& state, const Offer& offer,
                        std::optional<ElementId> client_pick) {
    OfferCheck chk = validate_offer(state, offer);
    if (!chk.ok) throw RuleViolation(chk.reason);

    bool pick_expected;
    if (state.convention == Convention::WaiterClient)
        pick_expected = offer.size() == state.q + 1;
    else
        pick_expected = true;

    RoundRecord rec;
    rec.offer = offer;
    if (pick_expected) {
        if (!client_pick) throw RuleViolation("client pick required");
        if (!offer.contains(*client_pick)) throw RuleViolation("pick outside offer");
        detail::claim(state, *client_pick, Owner::Client);
        rec.client_take.push_back(*client_pick);
        for (ElementId e : offer.elements) {
            if (e == *client_pick) continue;
            detail::claim(state, e, Owner::Waiter);
            rec.waiter_take.push_back(e);
        }
    } else {
        if (client_pick) throw RuleViolation("no pick allowed in a short final round");
        for (ElementId e : offer.elements) {
            detail::claim(state, e, Owner::Waiter);
            rec.waiter_take.push_back(e);
        }
    }
    ++state.round;
    state.history.push_back(std::move(rec));
}

inline GameState resolve_round(const GameState& state, const Offer& offer,
                               std::optional<ElementId> client_pick) {
    GameState next = state;
    apply_round(next, offer, client_pick);
    return next;
}

// Replays a history onto a fresh board; used to audit transcripts.
inline GameState replay(int board_size, int q, Convention convention,
                        const std::vector<RoundRecord>& history) {
    GameState s = new_game(board_size, q, convention);
    for (const RoundRecord& rec : history) {
        std::optional<ElementId> pick;
        if (!rec.client_take.empty()) {
            if (rec.client_take.size() != 1) throw RuleViolation("replay: (1:q) game takes one element per round");
            pick = rec.client_take.front();
        }
        apply_round(s, rec.offer, pick);
    }
    return s;
}

}  // namespace wcg
