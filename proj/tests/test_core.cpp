#include <doctest.h>

#include <numeric>

#include "aoi/action_space.hpp"
#include "aoi/rng.hpp"

using namespace aoi;

namespace {

AoIState state_of(Age t, std::vector<Age> g, std::vector<Age> h)
{
    return AoIState{t, std::move(g), std::move(h)};
}

} // namespace

TEST_CASE("network config validation")
{
    CHECK_NOTHROW(NetworkConfig::symmetric(5, 3, 3, 20).validate());
    CHECK_THROWS_AS(NetworkConfig::symmetric(5, 5, 3, 20).validate(), DomainError);
    CHECK_THROWS_AS(NetworkConfig::symmetric(5, 3, 0, 20).validate(), DomainError);
    CHECK_THROWS_AS(NetworkConfig::symmetric(5, 3, 3, 0).validate(), DomainError);
    CHECK_THROWS_AS(NetworkConfig::symmetric(5, 3, 3, 4, 1.0, 0.0).validate(), DomainError);
    CHECK_THROWS_AS(NetworkConfig::symmetric(5, 3, 3, 4, 0.0, -0.1).validate(), DomainError);

    auto cfg = NetworkConfig::symmetric(3, 1, 1, 4);
    cfg.weights = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.weights = {1.0, 2.0};
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.weights = {0.0, 2.0, 0.0};
    CHECK_NOTHROW(cfg.validate());

    CHECK(NetworkConfig::symmetric(3, 1, 1, 4).errorless());
    CHECK_FALSE(NetworkConfig::symmetric(3, 1, 1, 4, 0.1, 0.0).errorless());
    CHECK(NetworkConfig::symmetric(3, 1, 1, 4, 0.1, 0.2).symmetric_instance());
}

TEST_CASE("initial state is all ones at t=1")
{
    for (int K : {1, 3, 5}) {
        NetworkConfig cfg;
        cfg.K = K;
        const auto s = initial_state(cfg);
        CHECK(s.t == 1);
        CHECK(s.g == std::vector<Age>(K, 1));
        CHECK(s.h == std::vector<Age>(K, 1));
    }
}

TEST_CASE("step reproduces the first slots of the greedy trace")
{
    const auto cfg = NetworkConfig::symmetric(5, 3, 3, 6);
    const auto none = OutageDraws::none(3, 3);
    const auto s1 = initial_state(cfg);
    const auto s2 = step(cfg, s1, Action::make({0, 1, 2}, {0, 1, 2}), none);
    CHECK(s2.t == 2);
    CHECK(s2.g == std::vector<Age>{1, 1, 1, 2, 2});
    CHECK(s2.h == std::vector<Age>{2, 2, 2, 2, 2});
    const auto s3 = step(cfg, s2, Action::make({2, 3, 4}, {2, 3, 4}), none);
    CHECK(s3.g == std::vector<Age>{2, 2, 1, 1, 1});
    CHECK(s3.h == std::vector<Age>{3, 3, 2, 3, 3});
}

TEST_CASE("an all-outage slot ages everything by one")
{
    const auto cfg = NetworkConfig::symmetric(2, 1, 1, 10, 0.5, 0.5);
    OutageDraws all_out{{true}, {true}};
    const auto next = step(cfg, state_of(4, {3, 1}, {4, 2}), Action::make({0}, {0}), all_out);
    CHECK(next.g == std::vector<Age>{4, 2});
    CHECK(next.h == std::vector<Age>{5, 3});
}

TEST_CASE("update delivers the relay age from the start of the slot")
{
    const auto cfg = NetworkConfig::symmetric(3, 1, 1, 10);
    const auto next = step(cfg, state_of(5, {4, 1, 2}, {5, 3, 5}), Action::make({0}, {0}), OutageDraws::none(1, 1));
    CHECK(next.g[0] == 1);
    CHECK(next.h[0] == 5);
}

TEST_CASE("outages attach by rank inside the sorted set")
{
    const auto cfg = NetworkConfig::symmetric(4, 2, 2, 10, 0.5, 0.5);
    const auto s = state_of(5, {1, 2, 3, 4}, {5, 5, 5, 5});
    // Sample {2,4}: rank 0 is sensor 2 (success), rank 1 is sensor 4 (outage).
    // Update {1,3}: rank 0 is destination 1 (outage), rank 1 destination 3.
    OutageDraws d{{false, true}, {true, false}};
    const auto next = step(cfg, s, Action::make({3, 1}, {2, 0}), d);
    CHECK(next.g == std::vector<Age>{2, 1, 4, 5});
    CHECK(next.h == std::vector<Age>{6, 6, 4, 6});
}

TEST_CASE("step rejects infeasible actions with a named constraint")
{
    const auto cfg = NetworkConfig::symmetric(5, 3, 3, 6);
    const auto s = initial_state(cfg);
    const auto none = OutageDraws::none(3, 3);
    CHECK_THROWS_WITH_AS(step(cfg, s, Action::make({0, 1}, {0, 1, 2}), none), doctest::Contains("S=3"),
                         InfeasibleAction);
    CHECK_THROWS_WITH_AS(step(cfg, s, Action::make({0, 1, 2}, {0, 1, 2, 3}), none), doctest::Contains("U=3"),
                         InfeasibleAction);
    CHECK_THROWS_AS(step(cfg, s, Action::make({0, 1, 5}, {0, 1, 2}), none), InfeasibleAction);
    CHECK_THROWS_AS(step(cfg, s, Action::make({0, 1, 1}, {0, 1, 2}), none), InfeasibleAction);
    CHECK_THROWS_AS(step(cfg, s, Action::make({0, 1, -1}, {0, 1, 2}), none), InfeasibleAction);
    CHECK_THROWS(step(cfg, state_of(7, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}), Action::make({0, 1, 2}, {0, 1, 2}), none));
}

TEST_CASE("step is a pure function")
{
    const auto cfg = NetworkConfig::symmetric(4, 2, 1, 10, 0.3, 0.3);
    const auto s = state_of(3, {2, 3, 1, 3}, {3, 3, 2, 3});
    const auto a = Action::make({1, 3}, {0});
    OutageDraws d{{true, false}, {false}};
    const auto copy = s;
    CHECK(step(cfg, s, a, d) == step(cfg, s, a, d));
    CHECK(s == copy);
}

TEST_CASE("aging bound: every component either grows by one or resets")
{
    const auto cfg = NetworkConfig::symmetric(5, 2, 2, 30, 0.3, 0.3);
    const ActionSpace space(cfg);
    CounterRng rng(mix_key({7}));
    AoIState s = initial_state(cfg);
    for (int t = 1; t < cfg.T; ++t) {
        const auto a = space.at(rng.below(space.size()));
        OutageDraws d{{rng.uniform() < 0.3, rng.uniform() < 0.3}, {rng.uniform() < 0.3, rng.uniform() < 0.3}};
        const auto next = step(cfg, s, a, d);
        for (int k = 0; k < cfg.K; ++k) {
            CHECK((next.g[k] == s.g[k] + 1 || next.g[k] == 1));
            CHECK((next.h[k] == s.h[k] + 1 || next.h[k] == s.g[k] + 1));
            CHECK(next.h[k] >= next.g[k]);
            CHECK(next.h[k] <= next.t);
        }
        s = next;
    }
}

TEST_CASE("sampling and update reductions")
{
    CHECK(sampling_reduction(state_of(1, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}), std::vector<int>{0, 1, 2}) == 3);
    CHECK(sampling_reduction(state_of(2, {1, 1, 1, 2, 2}, {2, 2, 2, 2, 2}), std::vector<int>{2, 3, 4}) == 5);
    CHECK(sampling_reduction(state_of(2, {1, 1, 1, 2, 2}, {2, 2, 2, 2, 2}), std::vector<int>{}) == 0);
    CHECK(update_reduction(state_of(2, {1, 1, 1, 2, 2}, {2, 2, 2, 2, 2}), std::vector<int>{0, 1, 2}) == 3);
    CHECK(update_reduction(state_of(1, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}), std::vector<int>{3, 4}) == 0);
    CHECK(update_reduction(state_of(3, {1, 1, 1, 2, 2}, {2, 2, 2, 3, 3}), std::vector<int>{3, 4}) == 2);
    CHECK_THROWS_AS(sampling_reduction(state_of(1, {1, 1}, {1, 1}), std::vector<int>{2}), InfeasibleAction);
    CHECK_THROWS_AS(update_reduction(state_of(1, {1, 1}, {1, 1}), std::vector<int>{-1}), InfeasibleAction);
}

TEST_CASE("weighted sums")
{
    const std::vector<double> uniform(5, 0.2);
    CHECK(weighted_sum(state_of(2, {1, 1, 1, 2, 2}, {2, 2, 2, 2, 2}), uniform, Node::destination) ==
          doctest::Approx(2.0).epsilon(1e-15));
    const std::vector<double> w{0.5, 0.3, 0.2, 0.05, 0.05};
    CHECK(weighted_sum(state_of(3, {1, 1, 1, 1, 1}, {3, 3, 2, 2, 2}), w, Node::destination) ==
          doctest::Approx(3.0).epsilon(1e-15));
    CHECK(weighted_sum(state_of(3, {2, 1, 1}, {3, 3, 2}), std::vector<double>(3, 0.0), Node::relay) == 0.0);
    CHECK(weighted_sum(state_of(3, {2, 1, 1}, {3, 3, 2}), std::vector<double>{1, 2, 3}, Node::relay) == 7.0);
    CHECK(total_age(state_of(3, {2, 1, 1}, {3, 3, 2}), Node::destination) == 8);
}

TEST_CASE("feasible actions in canonical order")
{
    const auto a33 = feasible_actions(NetworkConfig::symmetric(3, 1, 1, 4));
    REQUIRE(a33.size() == 9);
    CHECK(a33.front() == Action::make({0}, {0}));
    CHECK(a33[1] == Action::make({0}, {1}));
    CHECK(a33.back() == Action::make({2}, {2}));
    CHECK(feasible_actions(NetworkConfig::symmetric(5, 3, 3, 4)).size() == 100);
    CHECK(feasible_actions(NetworkConfig::symmetric(2, 1, 1, 4)).size() == 4);

    const auto cfg = NetworkConfig::symmetric(6, 2, 4, 3);
    const ActionSpace space(cfg);
    REQUIRE(space.size() == binomial(6, 2) * binomial(6, 4));
    const auto all = feasible_actions(cfg);
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(space.at(i) == all[i]);
        CHECK(space.index_of(all[i]) == i);
        if (i > 0)
            CHECK(all[i - 1] < all[i]);
    }
    CHECK_THROWS(space.index_of(Action::make({0}, {0, 1, 2, 3})));
}

TEST_CASE("combinations and binomials")
{
    CHECK(binomial(5, 3) == 10);
    CHECK(binomial(8, 0) == 1);
    CHECK(binomial(3, 4) == 0);
    const auto c = combinations(4, 2);
    REQUIRE(c.size() == 6);
    CHECK(c.front() == std::vector<int>{0, 1});
    CHECK(c[1] == std::vector<int>{0, 2});
    CHECK(c.back() == std::vector<int>{2, 3});
}

TEST_CASE("outage outcomes are a probability distribution")
{
    const auto cfg = NetworkConfig::symmetric(4, 2, 1, 5, 0.1, 0.3);
    const auto outcomes = outage_outcomes(cfg, Action::make({0, 2}, {3}));
    CHECK(outcomes.size() == 8);
    double total = 0.0;
    for (const auto &o : outcomes)
        total += o.probability;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(outcomes.front().probability == doctest::Approx(0.9 * 0.9 * 0.7));

    const auto errorless = outage_outcomes(NetworkConfig::symmetric(4, 2, 1, 5), Action::make({0, 2}, {3}));
    REQUIRE(errorless.size() == 1);
    CHECK(errorless.front().probability == 1.0);
}

TEST_CASE("formatting sets and actions uses 1-based indices")
{
    CHECK(format_set(std::vector<int>{0, 3, 4}) == "{1,4,5}");
    CHECK(format_set(std::vector<int>{}) == "{}");
    CHECK(format_action(Action::make({1}, {0, 2})) == "S={2} U={1,3}");
}
