#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wcg/family.hpp"
#include "wcg/game.hpp"
#include "wcg/match.hpp"

using namespace wcg;

TEST_CASE("new_game constructs fresh boards") {
    auto s = new_game(6, 1, Convention::WaiterClient);
    CHECK(s.free_count == 6);
    CHECK(s.round == 0);
    CHECK(s.history.empty());

    auto cw = new_game(15, 2, Convention::ClientWaiter);
    CHECK(cw.free_count == 15);

    auto k7 = new_game(21, 3, Convention::WaiterClient);  // edge board of K_7
    CHECK(k7.board_size == 21);

    CHECK_THROWS_AS(new_game(0, 1, Convention::WaiterClient), ParameterError);
    CHECK_THROWS_AS(new_game(5, 0, Convention::WaiterClient), ParameterError);
}

TEST_CASE("offer validation follows the convention") {
    auto wc = new_game(10, 2, Convention::WaiterClient);
    CHECK(validate_offer(wc, Offer({0, 1, 2})).ok);
    CHECK_FALSE(validate_offer(wc, Offer({0, 1})).ok);       // WC offers are exact
    CHECK_FALSE(validate_offer(wc, Offer({0, 1, 2, 3})).ok);

    auto cw = new_game(10, 2, Convention::ClientWaiter);
    CHECK(validate_offer(cw, Offer({4})).ok);  // CW may offer fewer than q+1
    CHECK(validate_offer(cw, Offer({4, 5, 6})).ok);
    CHECK_FALSE(validate_offer(cw, Offer({4, 5, 6, 7})).ok);
    CHECK_FALSE(validate_offer(cw, Offer(std::vector<ElementId>{})).ok);

    auto taken = resolve_round(wc, Offer({0, 1, 2}), 0);
    CHECK_FALSE(validate_offer(taken, Offer({0, 3, 4})).ok);  // 0 is no longer free
}

TEST_CASE("resolve_round applies the last-round rules") {
    SECTION("WC short final offer goes entirely to Waiter") {
        auto s = new_game(2, 3, Convention::WaiterClient);
        auto r = resolve_round(s, Offer({0, 1}), std::nullopt);
        CHECK(r.client_count == 0);
        CHECK(r.waiter_count == 2);
        CHECK_THROWS_AS(resolve_round(s, Offer({0, 1}), 0), RuleViolation);
    }
    SECTION("WC full round splits 1 / q") {
        auto s = new_game(2, 1, Convention::WaiterClient);
        auto r = resolve_round(s, Offer({0, 1}), 0);
        CHECK(r.owner[0] == Owner::Client);
        CHECK(r.owner[1] == Owner::Waiter);
        CHECK_THROWS_AS(resolve_round(s, Offer({0, 1}), 5), RuleViolation);
    }
    SECTION("CW single-element offer goes to Client") {
        auto s = new_game(3, 2, Convention::ClientWaiter);
        auto r = resolve_round(s, Offer({1}), 1);
        CHECK(r.owner[1] == Owner::Client);
        CHECK(r.waiter_count == 0);
    }
}

namespace {

class FirstFreeWaiter : public WaiterStrategy {
public:
    Offer propose(const GameState& s) override {
        std::vector<ElementId> elems;
        int want = std::min(s.q + 1, s.free_count);
        for (int e = 0; e < s.board_size && static_cast<int>(elems.size()) < want; ++e)
            if (s.owner[e] == Owner::Free) elems.push_back(e);
        return Offer(std::move(elems));
    }
    bool stateless() const override { return true; }
    std::unique_ptr<WaiterStrategy> clone() const override {
        return std::make_unique<FirstFreeWaiter>(*this);
    }
    std::string name() const override { return "firstfree"; }
};

class RandomPickClient : public ClientStrategy {
public:
    ElementId pick(const GameState&, const Offer& offer) override {
        std::uniform_int_distribution<int> d(0, offer.size() - 1);
        return offer.elements[d(rng_)];
    }
    void reseed(std::uint64_t s) override { rng_.seed(s); }
    std::unique_ptr<ClientStrategy> clone() const override {
        return std::make_unique<RandomPickClient>(*this);
    }
    std::string name() const override { return "random"; }

private:
    std::mt19937_64 rng_{0};
};

}  // namespace

TEST_CASE("play_match round arithmetic and determinism") {
    FirstFreeWaiter w;
    RandomPickClient c;

    auto r6 = play_match(w, c, new_game(6, 1, Convention::WaiterClient), 1);
    CHECK(r6.transcript.rounds.size() == 3);
    CHECK(r6.final_state.client_count == 3);

    auto r7 = play_match(w, c, new_game(7, 1, Convention::WaiterClient), 1);
    CHECK(r7.transcript.rounds.size() == 4);
    CHECK(r7.final_state.client_count == 3);
    CHECK(r7.final_state.waiter_count == 4);

    auto again = play_match(w, c, new_game(7, 1, Convention::WaiterClient), 1);
    CHECK(transcript_to_json(again.transcript).dump() ==
          transcript_to_json(r7.transcript).dump());
    auto other = play_match(w, c, new_game(7, 1, Convention::WaiterClient), 2);
    CHECK_FALSE(other.transcript == r7.transcript);
}

TEST_CASE("WC round arithmetic holds on random playouts") {
    FirstFreeWaiter w;
    RandomPickClient c;
    for (int n : {5, 9, 12, 17}) {
        for (int q : {1, 2, 3, 5}) {
            auto res = play_match(w, c, new_game(n, q, Convention::WaiterClient), 7 * n + q);
            int rounds = (n + q) / (q + 1);  // ceil(n/(q+1))
            CHECK(static_cast<int>(res.transcript.rounds.size()) == rounds);
            CHECK(res.final_state.client_count == n / (q + 1));
            CHECK(res.final_state.client_count + res.final_state.waiter_count == n);
        }
    }
}

TEST_CASE("replay reproduces the final owner map") {
    FirstFreeWaiter w;
    RandomPickClient c;
    auto res = play_match(w, c, new_game(13, 2, Convention::WaiterClient), 99);
    auto replayed = replay(13, 2, Convention::WaiterClient, res.final_state.history);
    CHECK(replayed.owner == res.final_state.owner);

    auto t2 = transcript_from_json(transcript_to_json(res.transcript));
    CHECK(t2 == res.transcript);
    auto from_t = replay_transcript(t2);
    CHECK(from_t.owner == res.final_state.owner);
}

TEST_CASE("CW waiter offering single elements hands Client everything offered") {
    class OneAtATime : public WaiterStrategy {
    public:
        Offer propose(const GameState& s) override {
            for (int e = 0; e < s.board_size; ++e)
                if (s.owner[e] == Owner::Free) return Offer({e});
            throw std::logic_error("no free element");
        }
        std::unique_ptr<WaiterStrategy> clone() const override {
            return std::make_unique<OneAtATime>(*this);
        }
        std::string name() const override { return "one"; }
    } w;
    RandomPickClient c;
    auto res = play_match(w, c, new_game(8, 3, Convention::ClientWaiter), 5);
    CHECK(res.final_state.client_count == 8);
    CHECK(res.final_state.waiter_count == 0);
}

TEST_CASE("client_fully_claims reports exactly the contained sets") {
    auto fam = make_family(6, {{0, 1}}, "pair");
    auto s = new_game(6, 1, Convention::WaiterClient);
    s.owner[0] = Owner::Client;
    s.owner[1] = Owner::Client;
    s.owner[4] = Owner::Client;
    s.client_count = 3;
    s.free_count = 3;
    CHECK(client_fully_claims(s, fam) == std::vector<int>{0});

    auto s2 = new_game(6, 1, Convention::WaiterClient);
    s2.owner[0] = Owner::Client;
    s2.owner[2] = Owner::Client;
    CHECK(client_fully_claims(s2, fam).empty());
}

TEST_CASE("ownership conservation after every round") {
    FirstFreeWaiter w;
    RandomPickClient c;
    GameState s = new_game(11, 2, Convention::WaiterClient);
    w.reseed(1);
    c.reseed(2);
    while (!s.is_terminal()) {
        Offer o = w.propose(s);
        std::optional<ElementId> pick;
        if (o.size() == s.q + 1) pick = c.pick(s, o);
        apply_round(s, o, pick);
        CHECK(s.free_count + s.client_count + s.waiter_count == s.board_size);
    }
}
