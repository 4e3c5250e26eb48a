#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wcg/common.hpp"
#include "wcg/game.hpp"

#include "json.hpp"

namespace wcg {

class WaiterStrategy {
public:
    virtual ~WaiterStrategy() = default;
    virtual Offer propose(const GameState& state) = 0;
    virtual void reseed(std::uint64_t) {}
    // True when propose() is a pure function of the current state; such
    // strategies may be certified with owner-map memoization.
    virtual bool stateless() const { return false; }
    virtual std::unique_ptr<WaiterStrategy> clone() const = 0;
    virtual std::string name() const = 0;
};

class ClientStrategy {
public:
    virtual ~ClientStrategy() = default;
    virtual ElementId pick(const GameState& state, const Offer& offer) = 0;
    virtual void reseed(std::uint64_t) {}
    virtual bool stateless() const { return false; }
    virtual std::unique_ptr<ClientStrategy> clone() const = 0;
    virtual std::string name() const = 0;
};

enum class Side { Waiter, Client };

inline const char* to_string(Side s) { return s == Side::Waiter ? "Waiter" : "Client"; }

// A strategy emitted an illegal offer or pick; play stops and the offender
// forfeits.
class Forfeit : public std::runtime_error {
public:
    Forfeit(Side offender, const std::string& why)
        : std::runtime_error(std::string(to_string(offender)) + " forfeits: " + why),
          offender(offender) {}
    Side offender;
};

struct Transcript {
    Convention convention = Convention::WaiterClient;
    int n_elements = 0;
    int q = 1;
    std::uint64_t seed = 0;
    std::vector<RoundRecord> rounds;
    bool operator==(const Transcript&) const = default;
};

struct MatchResult {
    Transcript transcript;
    GameState final_state;
};

// Plays offer/pick/resolve until the board is exhausted. The given seed
// reseeds both strategies (mixed per side), so identical inputs give
// byte-identical transcripts. In Waiter-Client short final rounds the
// client is not consulted.
inline MatchResult play_match(WaiterStrategy& waiter, ClientStrategy& client, GameState state,
                              std::uint64_t seed) {
    waiter.reseed(mix_seed(seed, 0x5741495445525aULL));
    client.reseed(mix_seed(seed, 0x434c49454e545aULL));
    Transcript t;
    t.convention = state.convention;
    t.n_elements = state.board_size;
    t.q = state.q;
    t.seed = seed;
    while (!state.is_terminal()) {
        Offer offer = waiter.propose(state);
        OfferCheck chk = validate_offer(state, offer);
        if (!chk.ok) throw Forfeit(Side::Waiter, chk.reason);
        bool pick_expected = state.convention == Convention::ClientWaiter ||
                             offer.size() == state.q + 1;
        std::optional<ElementId> pick;
        if (pick_expected) {
            ElementId x = client.pick(state, offer);
            if (!offer.contains(x)) throw Forfeit(Side::Client, "pick outside offer");
            pick = x;
        }
        apply_round(state, offer, pick);
        t.rounds.push_back(state.history.back());
    }
    return {std::move(t), std::move(state)};
}

// ---------------------------------------------------------------------------
// Transcript JSON. Field order is fixed and arrays are sorted ascending, so
// equal transcripts serialize to identical bytes.

inline nlohmann::ordered_json transcript_to_json(const Transcript& t) {
    nlohmann::ordered_json j;
    j["convention"] = to_string(t.convention);
    j["n_elements"] = t.n_elements;
    j["q"] = t.q;
    j["seed"] = t.seed;
    nlohmann::ordered_json rounds = nlohmann::ordered_json::array();
    for (const RoundRecord& r : t.rounds) {
        nlohmann::ordered_json jr;
        jr["offer"] = r.offer.elements;
        jr["client"] = r.client_take;
        jr["waiter"] = r.waiter_take;
        rounds.push_back(std::move(jr));
    }
    j["rounds"] = std::move(rounds);
    return j;
}

inline Transcript transcript_from_json(const nlohmann::json& j) {
    Transcript t;
    t.convention = j.at("convention").get<std::string>() == "WC" ? Convention::WaiterClient
                                                                 : Convention::ClientWaiter;
    t.n_elements = j.at("n_elements").get<int>();
    t.q = j.at("q").get<int>();
    t.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& jr : j.at("rounds")) {
        RoundRecord r;
        r.offer = Offer(jr.at("offer").get<std::vector<ElementId>>());
        r.client_take = jr.at("client").get<std::vector<ElementId>>();
        r.waiter_take = jr.at("waiter").get<std::vector<ElementId>>();
        t.rounds.push_back(std::move(r));
    }
    return t;
}

// Replays a transcript through the referee; throws if any recorded round is
// illegal or the takes disagree with the rules.
inline GameState replay_transcript(const Transcript& t) {
    GameState s = replay(t.n_elements, t.q, t.convention, t.rounds);
    for (size_t i = 0; i < t.rounds.size(); ++i)
        if (!(s.history[i] == t.rounds[i]))
            throw RuleViolation("transcript round " + std::to_string(i) + " does not replay");
    return s;
}

}  // namespace wcg
