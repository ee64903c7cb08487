#include "aoi/sim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace aoi {

double tape_variate(std::uint64_t master_seed, std::uint64_t run, Age t, Channel channel, int slot)
{
    return to_unit(mix_key({master_seed, run, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(channel),
                            static_cast<std::uint64_t>(slot)}));
}

OutageTape OutageTape::derive(std::uint64_t master_seed, std::uint64_t run, int T, int S, int U)
{
    OutageTape tape;
    tape.seed_ = master_seed;
    tape.run_ = run;
    tape.sample_.resize(T);
    tape.update_.resize(T);
    for (int t = 1; t <= T; ++t) {
        for (int i = 0; i < S; ++i)
            tape.sample_[t - 1].push_back(tape_variate(master_seed, run, t, Channel::sampling, i));
        for (int i = 0; i < U; ++i)
            tape.update_[t - 1].push_back(tape_variate(master_seed, run, t, Channel::updating, i));
    }
    return tape;
}

OutageTape OutageTape::from_variates(std::vector<std::vector<double>> sample, std::vector<std::vector<double>> update,
                                     std::uint64_t master_seed, std::uint64_t run)
{
    if (sample.size() != update.size())
        throw std::invalid_argument("sample and update variates cover different horizons");
    OutageTape tape;
    tape.seed_ = master_seed;
    tape.run_ = run;
    tape.sample_ = std::move(sample);
    tape.update_ = std::move(update);
    return tape;
}

std::span<const double> OutageTape::sample_variates(Age t) const
{
    return sample_.at(t - 1);
}

std::span<const double> OutageTape::update_variates(Age t) const
{
    return update_.at(t - 1);
}

OutageDraws OutageTape::draws(const NetworkConfig &cfg, const Action &action, Age t) const
{
    const auto su = sample_variates(t);
    const auto uu = update_variates(t);
    if (su.size() < action.sample.size() || uu.size() < action.update.size())
        throw std::invalid_argument("tape has too few variates at slot " + std::to_string(t));
    OutageDraws d;
    for (std::size_t i = 0; i < action.sample.size(); ++i)
        d.sample.push_back(su[i] < cfg.p[action.sample[i]]);
    for (std::size_t i = 0; i < action.update.size(); ++i)
        d.update.push_back(uu[i] < cfg.q[action.update[i]]);
    return d;
}

double Trajectory::average_cost() const
{
    double sum = 0.0;
    for (const auto &s : slots)
        sum += s.weighted_sum_h;
    return slots.empty() ? 0.0 : sum / static_cast<double>(slots.size());
}

Trajectory run_episode(const NetworkConfig &cfg, const PolicySpec &policy, const OutageTape &tape)
{
    if (tape.horizon() < cfg.T)
        throw std::invalid_argument("tape covers " + std::to_string(tape.horizon()) + " slots, horizon is " +
                                    std::to_string(cfg.T));
    const ActionSpace space(cfg);
    Trajectory traj{cfg, policy.name(), {}};
    traj.slots.reserve(cfg.T);
    AoIState state = initial_state(cfg);
    for (Age t = 1; t <= cfg.T; ++t) {
        CounterRng rng(mix_key({tape.master_seed(), tape.run(), static_cast<std::uint64_t>(t),
                                static_cast<std::uint64_t>(Channel::policy), policy.stream_id}));
        Action action = decide(policy, cfg, space, state, rng);
        try {
            check_feasible(cfg, action);
        } catch (const InfeasibleAction &e) {
            throw InfeasibleAction("policy " + policy.name() + " at slot " + std::to_string(t) + ": " + e.what());
        }
        SlotRecord rec;
        rec.outage = tape.draws(cfg, action, t);
        const auto su = tape.sample_variates(t);
        const auto uu = tape.update_variates(t);
        rec.sample_variates.assign(su.begin(), su.begin() + cfg.S);
        rec.update_variates.assign(uu.begin(), uu.begin() + cfg.U);
        rec.r_sample = sampling_reduction(state, action.sample);
        rec.r_update = update_reduction(state, action.update);
        rec.weighted_sum_g = weighted_sum(state, cfg.weights, Node::relay);
        rec.weighted_sum_h = weighted_sum(state, cfg.weights, Node::destination);
        AoIState next = t < cfg.T ? step(cfg, state, action, rec.outage) : AoIState{};
        rec.state = std::move(state);
        rec.action = std::move(action);
        traj.slots.push_back(std::move(rec));
        state = std::move(next);
    }
    return traj;
}

namespace {

// Neumaier compensated sum, so long runs of identical costs average back to
// that cost instead of drifting in the last digits.
class CompensatedSum {
  public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

  private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

// Order-stable accumulation of per-slot means and per-run averages.
class SummaryBuilder {
  public:
    SummaryBuilder(std::string policy, int T, std::uint64_t seed) : sum_h_(T), sum_g_(T)
    {
        summary_.policy = std::move(policy);
        summary_.master_seed = seed;
    }

    void add(const Trajectory &traj)
    {
        for (std::size_t t = 0; t < traj.slots.size(); ++t) {
            sum_h_[t].add(traj.slots[t].weighted_sum_h);
            sum_g_[t].add(traj.slots[t].weighted_sum_g);
        }
        values_.push_back(traj.average_cost());
    }

    RunSummary finish()
    {
        const auto n = static_cast<double>(values_.size());
        summary_.n_runs = values_.size();
        for (const auto &s : sum_h_)
            summary_.mean_weighted_sum_h.push_back(s.value() / n);
        for (const auto &s : sum_g_)
            summary_.mean_weighted_sum_g.push_back(s.value() / n);
        CompensatedSum total;
        for (double v : values_)
            total.add(v);
        summary_.mean_value = total.value() / n;
        // Shifting by the first value keeps the variance exactly zero when
        // every run produced the same cost.
        double shifted = 0.0, ss = 0.0;
        for (double v : values_) {
            shifted += v - values_.front();
            ss += (v - values_.front()) * (v - values_.front());
        }
        ss = std::max(ss - shifted * shifted / n, 0.0);
        summary_.std_dev = values_.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        summary_.std_error = summary_.std_dev / std::sqrt(n);
        summary_.half_width = 1.96 * summary_.std_error;
        return summary_;
    }

  private:
    RunSummary summary_;
    std::vector<CompensatedSum> sum_h_, sum_g_;
    std::vector<double> values_;
};

} // namespace

RunSummary run_monte_carlo(const NetworkConfig &cfg, const PolicySpec &policy, std::uint64_t n_runs,
                           std::uint64_t master_seed)
{
    cfg.validate();
    if (n_runs < 1)
        throw std::invalid_argument("n_runs must be at least 1");
    SummaryBuilder builder(policy.name(), cfg.T, master_seed);
    for (std::uint64_t run = 0; run < n_runs; ++run)
        builder.add(run_episode(cfg, policy, OutageTape::derive(master_seed, run, cfg.T, cfg.S, cfg.U)));
    return builder.finish();
}

std::uint64_t CoupledResult::dominance_violations(std::size_t policy) const
{
    std::uint64_t n = 0;
    for (const auto &run : sum_h)
        for (std::size_t t = 0; t < run[policy].size(); ++t)
            if (run[policy][t] < run[reference][t])
                ++n;
    return n;
}

CoupledResult run_coupled(const NetworkConfig &cfg, std::span<const PolicySpec> policies, std::uint64_t master_seed,
                          std::uint64_t n_runs, std::size_t reference)
{
    cfg.validate();
    if (n_runs < 1)
        throw std::invalid_argument("n_runs must be at least 1");
    if (reference >= policies.size())
        throw std::invalid_argument("reference policy index out of range");
    CoupledResult result;
    result.reference = reference;
    if (!cfg.symmetric_instance())
        result.warnings.push_back("asymmetric instance: positional coupling does not preserve per-sensor outage "
                                  "marginals; pathwise dominance is not expected");
    std::vector<SummaryBuilder> builders;
    for (const auto &p : policies)
        builders.emplace_back(p.name(), cfg.T, master_seed);
    for (std::uint64_t run = 0; run < n_runs; ++run) {
        const auto tape = OutageTape::derive(master_seed, run, cfg.T, cfg.S, cfg.U);
        std::vector<std::vector<Age>> sums;
        std::vector<double> values;
        for (std::size_t i = 0; i < policies.size(); ++i) {
            const auto traj = run_episode(cfg, policies[i], tape);
            builders[i].add(traj);
            std::vector<Age> s;
            for (const auto &rec : traj.slots)
                s.push_back(total_age(rec.state, Node::destination));
            sums.push_back(std::move(s));
            values.push_back(traj.average_cost());
        }
        std::vector<double> diff;
        for (double v : values)
            diff.push_back(v - values[reference]);
        result.sum_h.push_back(std::move(sums));
        result.paired_difference.push_back(std::move(diff));
    }
    for (auto &b : builders)
        result.summaries.push_back(b.finish());
    return result;
}

double exact_expected_value(const NetworkConfig &cfg, const PolicySpec &policy, std::uint64_t path_cap)
{
    cfg.validate();
    const ActionSpace space(cfg);
    std::vector<std::vector<Outcome>> outcomes(space.size());
    std::size_t max_outcomes = 1;
    for (std::size_t a = 0; a < space.size(); ++a) {
        outcomes[a] = outage_outcomes(cfg, space.at(a));
        max_outcomes = std::max(max_outcomes, outcomes[a].size());
    }
    const std::uint64_t per_slot =
        (policy.kind == PolicyKind::random ? space.size() : std::size_t{1}) * max_outcomes;
    std::uint64_t paths = 1;
    for (int t = 1; t < cfg.T; ++t) {
        if (per_slot != 0 && paths > path_cap / per_slot)
            throw BudgetExceeded("exact evaluation needs more than " + std::to_string(path_cap) +
                                 " outcome paths (cap)");
        paths *= per_slot;
    }

    double total = 0.0;
    std::function<void(const AoIState &, double)> walk = [&](const AoIState &state, double prob) {
        total += prob * weighted_sum(state, cfg.weights, Node::destination);
        if (state.t == cfg.T)
            return;
        for (const auto &[a, pa] : action_distribution(policy, cfg, space, state)) {
            const Action action = space.at(a);
            for (const auto &o : outcomes[a])
                walk(step(cfg, state, action, o.draws), prob * pa * o.probability);
        }
    };
    walk(initial_state(cfg), 1.0);
    return total / static_cast<double>(cfg.T);
}

} // namespace aoi
