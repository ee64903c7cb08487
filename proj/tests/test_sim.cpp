#include <doctest.h>

#include <cmath>

#include "aoi/sim.hpp"

using namespace aoi;

TEST_CASE("greedy episode on the errorless K=5 network")
{
    const auto cfg = NetworkConfig::symmetric(5, 3, 3, 6);
    const auto traj = run_episode(cfg, PolicySpec::greedy(), OutageTape::derive(1, 0, 6, 3, 3));
    REQUIRE(traj.slots.size() == 6);
    std::vector<Age> sum_h, sum_g;
    for (const auto &rec : traj.slots) {
        sum_h.push_back(total_age(rec.state, Node::destination));
        sum_g.push_back(total_age(rec.state, Node::relay));
        CHECK(rec.r_sample == sampling_reduction(rec.state, rec.action.sample));
        CHECK(rec.r_update == update_reduction(rec.state, rec.action.update));
        CHECK(rec.weighted_sum_h == weighted_sum(rec.state, cfg.weights, Node::destination));
    }
    CHECK(sum_h == std::vector<Age>{5, 10, 12, 12, 12, 12});
    CHECK(sum_g == std::vector<Age>{5, 7, 7, 7, 7, 7});
    for (std::size_t i = 1; i < traj.slots.size(); ++i)
        CHECK(traj.slots[i].state ==
              step(cfg, traj.slots[i - 1].state, traj.slots[i - 1].action, traj.slots[i - 1].outage));
}

TEST_CASE("variates above every outage probability reproduce the errorless rollout")
{
    const auto noisy = NetworkConfig::symmetric(4, 2, 2, 8, 0.4, 0.3);
    const auto clean = NetworkConfig::symmetric(4, 2, 2, 8);
    const std::vector<std::vector<double>> high(8, std::vector<double>(2, 0.95));
    const auto tape = OutageTape::from_variates(high, high);
    for (const auto &policy : {PolicySpec::greedy(), PolicySpec::random()}) {
        const auto a = run_episode(noisy, policy, tape);
        const auto b = run_episode(clean, policy, tape);
        for (std::size_t i = 0; i < a.slots.size(); ++i)
            CHECK(a.slots[i].state == b.slots[i].state);
    }
}

TEST_CASE("episodes are deterministic")
{
    const auto cfg = NetworkConfig::symmetric(5, 2, 3, 15, 0.2, 0.2);
    const auto tape = OutageTape::derive(77, 3, 15, 2, 3);
    const auto a = run_episode(cfg, PolicySpec::random(), tape);
    const auto b = run_episode(cfg, PolicySpec::random(), tape);
    for (std::size_t i = 0; i < a.slots.size(); ++i) {
        CHECK(a.slots[i].state == b.slots[i].state);
        CHECK(a.slots[i].action == b.slots[i].action);
        CHECK(a.slots[i].outage.sample == b.slots[i].outage.sample);
    }
    CHECK(a.average_cost() == b.average_cost());
    const auto c = run_episode(cfg, PolicySpec::random(1), tape);
    bool differs = false;
    for (std::size_t i = 0; i < a.slots.size(); ++i)
        differs = differs || !(a.slots[i].action == c.slots[i].action);
    CHECK(differs);
}

TEST_CASE("tapes are pure functions of their coordinates")
{
    const auto a = OutageTape::derive(5, 2, 10, 3, 2);
    const auto b = OutageTape::derive(5, 2, 12, 4, 2);
    for (Age t = 1; t <= 10; ++t) {
        for (int i = 0; i < 3; ++i) {
            CHECK(a.sample_variates(t)[i] == b.sample_variates(t)[i]);
            CHECK(a.sample_variates(t)[i] == tape_variate(5, 2, t, Channel::sampling, i));
            CHECK(a.sample_variates(t)[i] >= 0.0);
            CHECK(a.sample_variates(t)[i] < 1.0);
        }
        for (int i = 0; i < 2; ++i)
            CHECK(a.update_variates(t)[i] == tape_variate(5, 2, t, Channel::updating, i));
    }
    CHECK(OutageTape::derive(5, 3, 10, 3, 2).sample_variates(1)[0] != a.sample_variates(1)[0]);
    CHECK_THROWS(run_episode(NetworkConfig::symmetric(5, 3, 3, 12), PolicySpec::greedy(), a));
}

TEST_CASE("outage draws compare variates with the selected link's probability")
{
    auto cfg = NetworkConfig::symmetric(3, 2, 1, 2);
    cfg.p = {0.1, 0.5, 0.9};
    cfg.q = {0.0, 0.0, 0.6};
    const auto tape = OutageTape::from_variates({{0.3, 0.3}, {0.3, 0.3}}, {{0.3}, {0.3}});
    const auto d = tape.draws(cfg, Action::make({0, 2}, {2}), 1);
    CHECK(d.sample == std::vector<bool>{false, true});
    CHECK(d.update == std::vector<bool>{true});
}

TEST_CASE("infeasible policy output aborts the episode")
{
    const auto cfg = NetworkConfig::symmetric(3, 1, 1, 3);
    const auto bad = PolicySpec::fixed_sequence(std::vector<Action>(3, Action::make({0, 1}, {0})));
    CHECK_THROWS_AS(run_episode(cfg, bad, OutageTape::derive(0, 0, 3, 1, 1)), InfeasibleAction);
}

TEST_CASE("Monte Carlo summaries")
{
    SUBCASE("errorless deterministic policies have zero variance")
    {
        const auto s = run_monte_carlo(NetworkConfig::symmetric(5, 3, 3, 20), PolicySpec::greedy(), 50, 1);
        CHECK(s.std_dev == 0.0);
        CHECK(s.mean_value == doctest::Approx(2.31).epsilon(1e-14));
        CHECK(s.n_runs == 50);
    }
    SUBCASE("the mean is the mean of per-run averages")
    {
        const auto cfg = NetworkConfig::symmetric(4, 2, 1, 9, 0.3, 0.2);
        const auto s = run_monte_carlo(cfg, PolicySpec::random(), 40, 8);
        double sum = 0.0, reversed = 0.0;
        std::vector<double> values;
        for (std::uint64_t run = 0; run < 40; ++run)
            values.push_back(run_episode(cfg, PolicySpec::random(), OutageTape::derive(8, run, 9, 2, 1)).average_cost());
        for (double v : values)
            sum += v;
        for (auto it = values.rbegin(); it != values.rend(); ++it)
            reversed += *it;
        CHECK(s.mean_value == doctest::Approx(sum / 40).epsilon(1e-14));
        CHECK(s.mean_value == doctest::Approx(reversed / 40).epsilon(1e-12));
        double running = 0.0;
        for (double x : s.mean_weighted_sum_h)
            running += x;
        CHECK(running / 9 == doctest::Approx(s.mean_value).epsilon(1e-12));
        CHECK(s.half_width == doctest::Approx(1.96 * s.std_dev / std::sqrt(40.0)));
    }
    SUBCASE("error-prone greedy exceeds the errorless value and beats random")
    {
        const auto cfg = NetworkConfig::symmetric(5, 3, 3, 20, 0.1, 0.1);
        const auto greedy = run_monte_carlo(cfg, PolicySpec::greedy(), 10'000, 1);
        const auto random = run_monte_carlo(cfg, PolicySpec::random(), 10'000, 1);
        CHECK(greedy.mean_value > 2.31);
        CHECK(greedy.mean_value + greedy.half_width < random.mean_value - random.half_width);
    }
    CHECK_THROWS(run_monte_carlo(NetworkConfig::symmetric(3, 1, 1, 3), PolicySpec::greedy(), 0, 1));
}

TEST_CASE("Monte Carlo agrees with the exact value")
{
    const auto cfg = NetworkConfig::symmetric(3, 1, 1, 4, 0.1, 0.1);
    for (const auto &policy : {PolicySpec::greedy(), PolicySpec::random()}) {
        const auto s = run_monte_carlo(cfg, policy, 100'000, 11);
        CHECK(std::abs(s.mean_value - exact_expected_value(cfg, policy)) <= 4.0 * s.std_error);
    }
}

TEST_CASE("coupled runs")
{
    SUBCASE("greedy against itself is identical")
    {
        const auto cfg = NetworkConfig::symmetric(5, 3, 3, 20, 0.1, 0.1);
        const std::vector<PolicySpec> both{PolicySpec::greedy(), PolicySpec::greedy()};
        const auto r = run_coupled(cfg, both, 3, 200);
        CHECK(r.sum_h.size() == 200);
        for (const auto &run : r.sum_h)
            CHECK(run[0] == run[1]);
        for (const auto &d : r.paired_difference)
            CHECK(d[1] == 0.0);
        CHECK(r.dominance_violations(1) == 0);
        CHECK(r.warnings.empty());
    }
    SUBCASE("errorless coupling is a deterministic comparison")
    {
        const auto cfg = NetworkConfig::symmetric(4, 2, 2, 10);
        const std::vector<PolicySpec> ps{PolicySpec::greedy(), PolicySpec::random()};
        const auto r = run_coupled(cfg, ps, 9, 100);
        CHECK(r.summaries[0].std_dev == 0.0);
        CHECK(r.dominance_violations(1) == 0);
        for (const auto &d : r.paired_difference)
            CHECK(d[1] >= 0.0);
    }
    SUBCASE("every policy reads the same variates")
    {
        const auto cfg = NetworkConfig::symmetric(5, 3, 3, 10, 0.2, 0.2);
        const auto tape = OutageTape::derive(21, 4, 10, 3, 3);
        const auto a = run_episode(cfg, PolicySpec::greedy(), tape);
        const auto b = run_episode(cfg, PolicySpec::random(), tape);
        for (std::size_t i = 0; i < a.slots.size(); ++i) {
            CHECK(a.slots[i].sample_variates == b.slots[i].sample_variates);
            CHECK(a.slots[i].update_variates == b.slots[i].update_variates);
        }
        // The coupled summaries equal independent Monte Carlo on the same seed.
        const std::vector<PolicySpec> ps{PolicySpec::greedy(), PolicySpec::random()};
        const auto r = run_coupled(cfg, ps, 21, 30);
        CHECK(r.summaries[1].mean_value == run_monte_carlo(cfg, PolicySpec::random(), 30, 21).mean_value);
    }
    SUBCASE("asymmetric instances carry a warning")
    {
        auto cfg = NetworkConfig::symmetric(3, 1, 1, 5, 0.1, 0.1);
        cfg.p = {0.1, 0.2, 0.3};
        const std::vector<PolicySpec> ps{PolicySpec::greedy()};
        CHECK(run_coupled(cfg, ps, 1, 2).warnings.size() == 1);
    }
}
