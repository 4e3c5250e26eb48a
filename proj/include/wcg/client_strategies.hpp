#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "wcg/common.hpp"
#include "wcg/family.hpp"
#include "wcg/match.hpp"
#include "wcg/potentials.hpp"

namespace wcg {

class UniformRandomClient : public ClientStrategy {
public:
    explicit UniformRandomClient(std::uint64_t seed = 0) : base_seed_(seed), rng_(seed) {}

    ElementId pick(const GameState&, const Offer& offer) override {
        std::uniform_int_distribution<int> d(0, offer.size() - 1);
        return offer.elements[d(rng_)];
    }
    void reseed(std::uint64_t s) override { rng_.seed(mix_seed(base_seed_, s)); }
    std::unique_ptr<ClientStrategy> clone() const override {
        return std::make_unique<UniformRandomClient>(*this);
    }
    std::string name() const override { return "random"; }

private:
    std::uint64_t base_seed_;
    std::mt19937_64 rng_;
};

// Deterministic avoidance play for Waiter-Client games: picks the offered
// element minimizing the live potential of the hypothetical post-round state
// (Client keeps the pick, Waiter claims the rest). The live potential never
// increases under this rule, so the number of fully claimed sets at the end
// is at most floor of the starting potential.
class PotentialAvoidClient : public ClientStrategy {
public:
    explicit PotentialAvoidClient(WinningFamily family)
        : family_(std::make_shared<WinningFamily>(std::move(family))) {}

    ElementId pick(const GameState& state, const Offer& offer) override {
        if (state.convention != Convention::WaiterClient)
            throw ParameterError("potential avoidance plays Waiter-Client games");
        if (offer.elements.empty()) throw ParameterError("empty offer");
        sync(state);
        const auto& index = family_->index();
        ++stamp_version_;
        // classify live sets touched by the offer: count of offered elements
        // and, when unique, which one
        for (ElementId y : offer.elements) {
            if (y >= static_cast<int>(index.size())) continue;
            for (int idx : index[y]) {
                if (!alive_[idx] || need_[idx] == 0) continue;
                if (stamp_[idx] != stamp_version_) {
                    stamp_[idx] = stamp_version_;
                    touch_count_[idx] = 1;
                } else {
                    ++touch_count_[idx];
                }
            }
        }
        // a set survives the round iff its only offered element is the pick;
        // every other touched set dies, identically for all picks
        double logb = std::log(static_cast<double>(state.q + 1));
        ElementId best = offer.elements.front();
        double best_delta = std::numeric_limits<double>::infinity();
        for (ElementId x : offer.elements) {
            double delta = 0.0;
            if (x < static_cast<int>(index.size())) {
                for (int idx : index[x]) {
                    if (!alive_[idx] || need_[idx] == 0) continue;
                    if (stamp_[idx] == stamp_version_ && touch_count_[idx] == 1)
                        delta += std::exp(-logb * (need_[idx] - 1));
                }
            }
            if (delta < best_delta - 1e-12) {
                best_delta = delta;
                best = x;
            }
        }
        return best;
    }

    bool stateless() const override { return true; }
    std::unique_ptr<ClientStrategy> clone() const override {
        return std::make_unique<PotentialAvoidClient>(*this);
    }
    std::string name() const override { return "potential(" + family_->label + ")"; }

    const WinningFamily& family() const { return *family_; }

private:
    void rebuild(const GameState& state) {
        if (family_->n_elements != state.board_size)
            throw ParameterError("family board does not match game board");
        size_t m = family_->sets.size();
        alive_.assign(m, 1);
        need_.assign(m, 0);
        stamp_.assign(m, 0);
        touch_count_.assign(m, 0);
        stamp_version_ = 0;
        for (size_t i = 0; i < m; ++i) {
            for (ElementId e : family_->sets[i]) {
                Owner o = state.owner[e];
                if (o == Owner::Waiter) alive_[i] = 0;
                if (o != Owner::Client) ++need_[i];
            }
        }
        synced_rounds_ = state.round;
    }

    void sync(const GameState& state) {
        if (alive_.empty() || state.round < synced_rounds_) {
            rebuild(state);
            return;
        }
        const auto& index = family_->index();
        for (int r = synced_rounds_; r < state.round; ++r) {
            const RoundRecord& rec = state.history[r];
            for (ElementId e : rec.waiter_take)
                if (e < static_cast<int>(index.size()))
                    for (int idx : index[e]) alive_[idx] = 0;
            for (ElementId e : rec.client_take)
                if (e < static_cast<int>(index.size()))
                    for (int idx : index[e]) --need_[idx];
        }
        synced_rounds_ = state.round;
    }

    std::shared_ptr<WinningFamily> family_;
    std::vector<char> alive_;
    std::vector<int> need_;
    std::vector<int> stamp_;
    std::vector<int> touch_count_;
    int stamp_version_ = 0;
    int synced_rounds_ = 0;
};

// Client-Waiter play that claims uniformly and marks each pick with
// probability |offer|/(q+1); the marked set grows to at least
// floor(|X|/(q+1)) elements with probability at least 1/2 while containing
// few full winning sets in expectation.
class RandomMarkingClient : public ClientStrategy {
public:
    explicit RandomMarkingClient(std::uint64_t seed = 0) : base_seed_(seed), rng_(seed) {}

    ElementId pick(const GameState& state, const Offer& offer) override {
        if (state.convention != Convention::ClientWaiter)
            throw ParameterError("marking play is for Client-Waiter games");
        std::uniform_int_distribution<int> d(0, offer.size() - 1);
        ElementId x = offer.elements[d(rng_)];
        double alpha = static_cast<double>(offer.size()) / (state.q + 1);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        if (unif(rng_) < alpha) marked_.push_back(x);
        return x;
    }
    void reseed(std::uint64_t s) override {
        rng_.seed(mix_seed(base_seed_, s));
        marked_.clear();
    }
    std::unique_ptr<ClientStrategy> clone() const override {
        return std::make_unique<RandomMarkingClient>(*this);
    }
    std::string name() const override { return "marking"; }

    // X_C: the marked subset of Client's claims
    const std::vector<ElementId>& marked() const { return marked_; }

private:
    std::uint64_t base_seed_;
    std::mt19937_64 rng_;
    std::vector<ElementId> marked_;
};

// Client-Waiter transversal play: picks the offered element of greatest
// hitting urgency. For an unhit set A the urgency weight is
// (q/(q+1))^(elements Waiter would still need once the rest of this offer
// goes to him); when the sum of (q/(q+1))^|A| starts below 1 this play ends
// with Client owning a transversal.
class HittingClient : public ClientStrategy {
public:
    explicit HittingClient(WinningFamily family)
        : family_(std::make_shared<WinningFamily>(std::move(family))) {}

    ElementId pick(const GameState& state, const Offer& offer) override {
        if (state.convention != Convention::ClientWaiter)
            throw ParameterError("hitting play is for Client-Waiter games");
        if (offer.elements.empty()) throw ParameterError("empty offer");
        if (family_->n_elements != state.board_size)
            throw ParameterError("family board does not match game board");
        double logr =
            std::log(static_cast<double>(state.q)) - std::log(static_cast<double>(state.q + 1));
        std::vector<double> score(offer.size(), 0.0);
        for (const auto& set : family_->sets) {
            bool hit = false;
            int waiter_needs = 0;
            int in_offer = 0;
            for (ElementId e : set) {
                Owner o = state.owner[e];
                if (o == Owner::Client) {
                    hit = true;
                    break;
                }
                if (o != Owner::Waiter) ++waiter_needs;
                if (offer.contains(e)) ++in_offer;
            }
            if (hit || in_offer == 0) continue;
            double w = std::exp(logr * (waiter_needs - in_offer + 1));
            for (int i = 0; i < offer.size(); ++i)
                if (std::binary_search(set.begin(), set.end(), offer.elements[i])) score[i] += w;
        }
        int best = 0;
        for (int i = 1; i < offer.size(); ++i)
            if (score[i] > score[best] + 1e-12) best = i;
        return offer.elements[best];
    }

    bool stateless() const override { return true; }
    std::unique_ptr<ClientStrategy> clone() const override {
        return std::make_unique<HittingClient>(*this);
    }
    std::string name() const override { return "hitting(" + family_->label + ")"; }

private:
    std::shared_ptr<WinningFamily> family_;
};

// ---------------------------------------------------------------------------
// Composite avoidance targets

// Potential play over the multiset union of several families.
inline std::unique_ptr<ClientStrategy> make_composite_potential_client(
    std::vector<WinningFamily> families) {
    if (families.empty()) throw ParameterError("composite needs at least one family");
    WinningFamily all = std::move(families.front());
    for (size_t i = 1; i < families.size(); ++i) all = union_families(all, families[i]);
    return std::make_unique<PotentialAvoidClient>(std::move(all));
}

// Avoidance family for the minor game: long cycles are forbidden outright,
// short-cycle pairs sharing a path cover the rest. The boundary follows the
// cube-root split; at desk scale (n <= 8) the long-cycle part already spans
// every cycle, which keeps the no-two-intersecting-cycles guarantee whenever
// the potential starts below 1.
inline WinningFamily minor_avoidance_family(int n) {
    int boundary = std::max(3, static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n)) / 2.0)));
    WinningFamily cycles = enumerate_family(FamilySpec::cycles(n, boundary, n));
    if (n <= 8) {
        WinningFamily pairs = enumerate_family(FamilySpec::cycle_pairs_sharing_path(n, boundary));
        return union_families(cycles, pairs);
    }
    return cycles;
}

inline std::unique_ptr<ClientStrategy> minor_avoiding_client(int n, int q) {
    if (q < 1) throw ParameterError("bias q must be at least 1");
    if (n > 10) throw CapExceeded("minor avoidance family enumeration limited to n <= 10");
    return std::make_unique<PotentialAvoidClient>(minor_avoidance_family(n));
}

inline std::unique_ptr<ClientStrategy> cycle_avoiding_client(int n, int q) {
    if (q < 1) throw ParameterError("bias q must be at least 1");
    if (n > 8) throw CapExceeded("cycle family enumeration limited to n <= 8");
    return std::make_unique<PotentialAvoidClient>(enumerate_family(FamilySpec::cycles(n, 3, n)));
}

}  // namespace wcg
