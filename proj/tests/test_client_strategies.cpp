#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support.hpp"
#include "wcg/client_strategies.hpp"
#include "wcg/graph.hpp"
#include "wcg/match.hpp"
#include "wcg/minors.hpp"
#include "wcg/potentials.hpp"
#include "wcg/waiter_strategies.hpp"

using namespace wcg;
using namespace testsupport;

TEST_CASE("potential pick keeps the threatened set alive at lower weight") {
    // F = {{a,b}}, q=1, offer {a,c}: keeping c leaves the set dead at weight
    // 0 after Waiter claims a; keeping a would leave it live at 1/2.
    auto fam = make_family(4, {{0, 1}}, "pair");
    PotentialAvoidClient client(fam);
    auto s = new_game(4, 1, Convention::WaiterClient);
    Offer offer({0, 2});
    CHECK(client.pick(s, offer) == 2);

    auto after_bad = resolve_round(s, offer, 0);
    auto after_good = resolve_round(s, offer, 2);
    CHECK(phi_wc_live(fam, after_bad) > phi_wc_live(fam, after_good));
}

TEST_CASE("potential pick tie rule returns the smallest id") {
    // both picks kill every live set: tie
    auto fam = make_family(4, {{0, 1}}, "pair");
    PotentialAvoidClient client(fam);
    auto s = new_game(4, 1, Convention::WaiterClient);
    Offer offer({1, 0});
    CHECK(client.pick(s, offer) == 0);
}

TEST_CASE("live potential never increases under potential play") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 6 + static_cast<int>(rng() % 24);
        int q = 1 + static_cast<int>(rng() % 3);
        auto fam = random_family(n, rng);
        GameState s = new_game(n, q, Convention::WaiterClient);
        PotentialAvoidClient client(fam);
        UniformRandomWaiter waiter(trial);
        waiter.reseed(trial * 77 + 1);
        double before = phi_wc_live(fam, s);
        double initial = before;
        while (!s.is_terminal()) {
            Offer o = waiter.propose(s);
            std::optional<ElementId> pick;
            if (o.size() == q + 1) pick = client.pick(s, o);
            apply_round(s, o, pick);
            double after = phi_wc_live(fam, s);
            CHECK(after <= before + 1e-12);
            before = after;
        }
        int claimed = static_cast<int>(client_fully_claims(s, fam).size());
        CHECK(claimed <= static_cast<int>(initial));
    }
}

TEST_CASE("incremental potential state matches a fresh strategy after replay") {
    std::mt19937_64 rng(55);
    auto fam = random_family(20, rng);
    GameState s = new_game(20, 2, Convention::WaiterClient);
    PotentialAvoidClient incremental(fam);
    UniformRandomWaiter waiter(9);
    waiter.reseed(9);
    while (!s.is_terminal()) {
        Offer o = waiter.propose(s);
        std::optional<ElementId> pick;
        if (o.size() == s.q + 1) {
            ElementId inc = incremental.pick(s, o);
            PotentialAvoidClient fresh(fam);  // rebuilds from the owner map
            CHECK(fresh.pick(s, o) == inc);
            pick = inc;
        }
        apply_round(s, o, pick);
    }
}

TEST_CASE("marking client") {
    SECTION("full offers always mark") {
        RandomMarkingClient c(3);
        c.reseed(1);
        auto s = new_game(12, 2, Convention::ClientWaiter);
        for (int r = 0; r < 4; ++r) {
            Offer o({r * 3, r * 3 + 1, r * 3 + 2});
            ElementId x = c.pick(s, o);
            apply_round(s, o, x);
        }
        CHECK(c.marked().size() == 4);  // |offer| = q+1 marks with probability 1
    }
    SECTION("mean contained sets stays near the potential bound") {
        std::mt19937_64 rng(321);
        auto fam = random_family(15, rng, 8, 4);
        double bound = phi_wc(fam, 2);
        double total = 0.0;
        int trials = 200;
        for (int t = 0; t < trials; ++t) {
            RandomMarkingClient client(0);
            UniformRandomWaiter waiter(0);
            play_match(waiter, client, new_game(15, 2, Convention::ClientWaiter), t);
            total += static_cast<double>(sets_contained_in(client.marked(), fam).size());
        }
        double mean = total / trials;
        // E[contained] <= phi; generous sampling slack
        CHECK(mean <= bound + 3.0 * std::sqrt(bound + 1.0) / std::sqrt(static_cast<double>(trials)) + 0.5);
    }
}

TEST_CASE("hitting client takes the only hitting move") {
    auto fam = make_family(5, {{0}}, "single");
    HittingClient c(fam);
    auto s = new_game(5, 2, Convention::ClientWaiter);
    CHECK(c.pick(s, Offer({0, 1})) == 0);

    // all sets already hit: smallest id
    auto s2 = new_game(5, 2, Convention::ClientWaiter);
    s2.owner[0] = Owner::Client;
    s2.client_count = 1;
    s2.free_count = 4;
    CHECK(c.pick(s2, Offer({3, 1})) == 1);
}

TEST_CASE("hitting client wins when the criterion sum starts below one") {
    std::mt19937_64 rng(777);
    int games = 0;
    for (int trial = 0; trial < 500 && games < 60; ++trial) {
        int n = 8 + static_cast<int>(rng() % 8);
        int q = 1 + static_cast<int>(rng() % 3);
        auto fam = random_family(n, rng, 10, 5);
        if (phi_cw(fam, q) >= 1.0) continue;
        ++games;
        HittingClient client(fam);
        UniformRandomWaiter waiter(trial);
        auto res = play_match(waiter, client, new_game(n, q, Convention::ClientWaiter), trial);
        CHECK(is_transversal(res.final_state.owned_by(Owner::Client), fam));
    }
    CHECK(games == 60);
}

TEST_CASE("cycle avoidance bounds the number of cycles Client completes") {
    auto fam = enumerate_family(FamilySpec::cycles(6, 3, 6));
    for (int q : {2, 3, 5}) {
        double bound = phi_wc(fam, q);
        for (int seed = 0; seed < 40; ++seed) {
            auto client = cycle_avoiding_client(6, q);
            UniformRandomWaiter waiter(seed);
            auto res = play_match(waiter, *client, new_game(15, q, Convention::WaiterClient), seed);
            int cycles_built = static_cast<int>(client_fully_claims(res.final_state, fam).size());
            CHECK(cycles_built <= static_cast<int>(bound));
        }
    }
}

TEST_CASE("minor avoidance family and play") {
    // q large enough that the potential starts below 1
    int n = 6, q = 8;
    auto fam = minor_avoidance_family(n);
    REQUIRE(phi_wc(fam, q) < 1.0);
    for (int seed = 0; seed < 50; ++seed) {
        auto client = minor_avoiding_client(n, q);
        UniformRandomWaiter waiter(seed);
        auto res = play_match(waiter, *client, new_game(15, q, Convention::WaiterClient), seed);
        auto gc = GraphView::from_state(res.final_state, Owner::Client);
        CHECK(no_intersecting_cycles(gc));
        CHECK_FALSE(has_kt_minor(gc, 4).found);
    }
    // single-round game: Client ends with at most one edge
    auto client = minor_avoiding_client(6, 15);
    UniformRandomWaiter waiter(1);
    auto res = play_match(waiter, *client, new_game(15, 15, Convention::WaiterClient), 1);
    auto gc = GraphView::from_state(res.final_state, Owner::Client);
    CHECK(gc.edge_count() <= 1);
    CHECK(no_intersecting_cycles(gc));
}

TEST_CASE("composite potential over several families") {
    auto f1 = enumerate_family(FamilySpec::cliques(5, 3));
    auto f2 = enumerate_family(FamilySpec::cycles(5, 4, 5));
    auto client = make_composite_potential_client({f1, f2});
    UniformRandomWaiter waiter(3);
    auto res = play_match(waiter, *client, new_game(10, 3, Convention::WaiterClient), 3);
    CHECK(res.final_state.is_terminal());
}

TEST_CASE("strategy construction errors") {
    CHECK_THROWS_AS(cycle_avoiding_client(9, 2), CapExceeded);
    CHECK_THROWS_AS(minor_avoiding_client(11, 2), CapExceeded);
    CHECK_THROWS_AS(minor_avoiding_client(6, 0), ParameterError);

    auto fam = make_family(4, {{0, 1}}, "pair");
    PotentialAvoidClient c(fam);
    auto cw = new_game(4, 1, Convention::ClientWaiter);
    CHECK_THROWS_AS(c.pick(cw, Offer({0, 1})), ParameterError);
}
