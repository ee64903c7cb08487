#include <doctest.h>

#include "aoi/exhaustive.hpp"
#include "aoi/theory.hpp"

using namespace aoi;

namespace {

Trajectory greedy_errorless(int K, int S, int U, int T)
{
    const auto cfg = NetworkConfig::symmetric(K, S, U, T);
    return run_episode(cfg, PolicySpec::greedy(), OutageTape::derive(0, 0, T, S, U));
}

} // namespace

TEST_CASE("minimum sum ages at the relay")
{
    CHECK(min_sum_g(5, 3, 6) == 7);
    CHECK(min_sum_g(5, 3, 1) == 5);
    CHECK(min_sum_g(4, 2, 10) == 6);
    CHECK_THROWS_AS(min_sum_g(5, 5, 3), DomainError);
    CHECK_THROWS_AS(min_sum_g(5, 3, 0), DomainError);
}

TEST_CASE("minimum sum ages at the destinations")
{
    CHECK(min_sum_h(5, 3, 6) == 12);
    CHECK(min_sum_h(5, 3, 2) == 10);
    CHECK(min_sum_h(4, 2, 10) == 10);
    CHECK_THROWS_AS(min_sum_h(5, 0, 3), DomainError);
}

TEST_CASE("closed forms agree with the accumulation form and settle")
{
    for (int K = 2; K <= 10; ++K) {
        for (int S = 1; S < K; ++S) {
            const Age t1 = (K + S - 1) / S;
            const Age t2 = t1 + 1;
            for (Age t = 1; t <= 4 * t2; ++t) {
                CHECK(min_sum_g(K, S, t) == accumulated_min_sum_g(K, S, t));
                CHECK(min_sum_h(K, S, t) == accumulated_min_sum_h(K, S, t));
                Age acc = 0;
                for (Age tau = 1; tau < t; ++tau)
                    acc += std::min<Age>(tau * S, K);
                CHECK(min_sum_g(K, S, t) == t * K - acc);
                if (t > t2)
                    CHECK(min_sum_h(K, S, t) == min_sum_h(K, S, t2));
                if (t >= t1)
                    CHECK(printed_min_sum_g(K, S, t) == min_sum_g(K, S, t));
                if (t >= t2)
                    CHECK(printed_min_sum_h(K, S, t) == min_sum_h(K, S, t));
            }
            CHECK(min_sum_g(K, S, t1) == t1 * K - t1 * (t1 - 1) * S / 2);
            CHECK(min_sum_h(K, S, t2) == t2 * K - (t2 - 1) * (t2 - 2) * S / 2);
        }
    }
}

TEST_CASE("printed closed forms produce notes, never failures")
{
    const auto notes = printed_form_notes(5, 1, 1, 20);
    CHECK_FALSE(notes.empty());
    for (const auto &n : notes) {
        CHECK(n.verdict == Verdict::note);
        CHECK(n.passed());
        REQUIRE(n.violation);
        CHECK(n.violation->t < 7);
    }
}

TEST_CASE("greedy reduction formulas")
{
    CHECK(greedy_reduction_formulas(5, 3, 3, 1) == std::pair<Age, Age>{3, 0});
    CHECK(greedy_reduction_formulas(5, 3, 3, 2) == std::pair<Age, Age>{5, 3});
    CHECK(greedy_reduction_formulas(5, 3, 3, 4) == std::pair<Age, Age>{5, 5});
}

TEST_CASE("closed forms match greedy simulation for K <= 8")
{
    for (int K = 2; K <= 8; ++K)
        for (int S = 1; S < K; ++S) {
            const auto r = check_closed_forms(K, S, S, 3 * ((K + S - 1) / S + 1));
            CHECK_MESSAGE(r.passed(), r.to_line());
        }
}

TEST_CASE("destination lower bound")
{
    auto traj = greedy_errorless(5, 3, 3, 6);
    CHECK(check_destination_bound(traj).verdict == Verdict::pass);

    // Corrupt h_1(3) below g_1(2) + 1.
    traj.slots[1].state.g[0] = 2;
    traj.slots[2].state.h[0] = 2;
    const auto r = check_destination_bound(traj);
    CHECK(r.verdict == Verdict::fail);
    REQUIRE(r.violation);
    CHECK(r.violation->t == 3);
    CHECK(r.violation->k == 0);
    CHECK(r.to_line().find("t=3,k=1") != std::string::npos);

    auto short_traj = greedy_errorless(5, 3, 3, 1);
    CHECK_THROWS(check_destination_bound(short_traj));
}

TEST_CASE("destination lower bound holds for random error-prone trajectories")
{
    const auto cfg = NetworkConfig::symmetric(5, 2, 3, 12, 0.3, 0.4);
    for (std::uint64_t run = 0; run < 1000; ++run) {
        const auto traj = run_episode(cfg, PolicySpec::random(), OutageTape::derive(17, run, 12, 2, 3));
        const auto r = check_destination_bound(traj);
        REQUIRE_MESSAGE(r.passed(), r.to_line());
    }
}

TEST_CASE("age-sum identity")
{
    const auto traj = greedy_errorless(5, 3, 3, 6);
    CHECK(check_age_sum_identity(traj).verdict == Verdict::pass);
    // Third slot: 15 - (3 + 5) = 7.
    CHECK(total_age(traj.slots[2].state, Node::relay) == 15 - (3 + 5));
    CHECK(total_age(traj.slots[0].state, Node::relay) == 5);

    const auto noisy = NetworkConfig::symmetric(5, 3, 3, 6, 0.1, 0.1);
    const auto noisy_traj = run_episode(noisy, PolicySpec::greedy(), OutageTape::derive(0, 0, 6, 3, 3));
    CHECK_THROWS_AS(check_age_sum_identity(noisy_traj), std::invalid_argument);
    CHECK_THROWS_AS(check_reduction_order(noisy_traj), std::invalid_argument);

    for (std::uint64_t run = 0; run < 500; ++run) {
        const int K = 2 + static_cast<int>(run % 5);
        const auto cfg = NetworkConfig::symmetric(K, 1 + static_cast<int>(run % (K - 1)), 1, 9);
        const auto t = run_episode(cfg, PolicySpec::random(), OutageTape::derive(3, run, 9, cfg.S, cfg.U));
        REQUIRE(check_age_sum_identity(t).passed());
        REQUIRE(check_reduction_order(t).passed());
    }
}

TEST_CASE("reduction ordering and balance")
{
    const auto traj = greedy_errorless(5, 3, 3, 12);
    CHECK(check_reduction_order(traj).verdict == Verdict::pass);
    CHECK(check_reduction_balance(traj).verdict == Verdict::pass);
    CHECK(check_greedy_reductions(traj).verdict == Verdict::pass);

    // Updating one fixed destination lets sampling run ahead of updating.
    const auto cfg = NetworkConfig::symmetric(3, 1, 1, 5);
    std::vector<Action> lazy;
    for (int t = 0; t < 5; ++t)
        lazy.push_back(Action::make({t % 3}, {2}));
    const auto t = run_episode(cfg, PolicySpec::fixed_sequence(lazy), OutageTape::derive(0, 0, 5, 1, 1));
    CHECK(check_reduction_order(t).verdict == Verdict::pass);
    const auto bal = check_reduction_balance(t);
    CHECK(bal.verdict == Verdict::fail);
    REQUIRE(bal.violation);
    CHECK(bal.violation->lhs > bal.violation->rhs);
}

TEST_CASE("optimality condition")
{
    for (auto [K, S, T] : {std::tuple{3, 1, 4}, {4, 2, 4}}) {
        const auto cfg = NetworkConfig::symmetric(K, S, S, T);
        const auto r = check_optimality_condition(cfg, greedy_errorless(K, S, S, T), kDefaultSearchBudget);
        CHECK_MESSAGE(r.verdict == Verdict::pass, r.to_line());
    }

    // A sequence that never samples the last sensor loses sampling reduction.
    const auto cfg = NetworkConfig::symmetric(3, 1, 1, 5);
    std::vector<Action> starving;
    for (int t = 0; t < 5; ++t)
        starving.push_back(Action::make({t % 2}, {t % 2}));
    const auto traj = run_episode(cfg, PolicySpec::fixed_sequence(starving), OutageTape::derive(0, 0, 5, 1, 1));
    const auto r = check_optimality_condition(cfg, traj, kDefaultSearchBudget);
    CHECK(r.verdict == Verdict::fail);
    CHECK(r.detail.find("condition (a)") != std::string::npos);
    REQUIRE(r.violation);
    CHECK(r.violation->lhs < r.violation->rhs);

    CHECK_THROWS_AS(check_optimality_condition(NetworkConfig::symmetric(6, 3, 3, 8),
                                               greedy_errorless(6, 3, 3, 8), 1000),
                    BudgetExceeded);
}

TEST_CASE("greedy matches the exhaustive and DP oracles")
{
    CHECK(check_greedy_vs_exhaustive(NetworkConfig::symmetric(3, 1, 1, 4), kDefaultSearchBudget).passed());
    CHECK(check_greedy_vs_exhaustive(NetworkConfig::symmetric(4, 1, 1, 4), kDefaultSearchBudget).passed());
    CHECK_THROWS_AS(check_greedy_vs_exhaustive(NetworkConfig::symmetric(5, 2, 2, 4), kDefaultSearchBudget),
                    BudgetExceeded);
    CHECK(check_greedy_vs_dp(NetworkConfig::symmetric(3, 1, 1, 4, 0.1, 0.1)).passed());
    CHECK(check_greedy_vs_dp(NetworkConfig::symmetric(3, 1, 1, 4, 0.3, 0.3)).passed());
}

TEST_CASE("report lines")
{
    CheckReport ok{"x", "inst", Verdict::pass, std::nullopt, ""};
    CHECK(ok.to_line() == "x\tinst\tpass\t-");
    CheckReport bad{"y", "inst", Verdict::fail, Violation{4, -1, 3.5, 4}, "why"};
    CHECK(bad.to_line() == "y\tinst\tfail\tt=4,k=-,lhs=3.5,rhs=4\twhy");
    CHECK_FALSE(bad.passed());
}
