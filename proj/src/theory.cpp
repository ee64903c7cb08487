#include "aoi/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "aoi/dp.hpp"
#include "aoi/exhaustive.hpp"
#include "aoi/format.hpp"

namespace aoi {

namespace {

void check_domain(int K, int budget, Age t, const char *name)
{
    if (K < 2 || budget < 1 || budget >= K)
        throw DomainError(std::string("closed form needs 1 <= ") + name + " < K, got K=" + std::to_string(K) +
                          " " + name + "=" + std::to_string(budget));
    if (t < 1)
        throw DomainError("closed form needs t >= 1, got t=" + std::to_string(t));
}

Age ceil_div(Age a, Age b)
{
    return (a + b - 1) / b;
}

std::string describe(const Trajectory &traj)
{
    return traj.config.describe() + " policy=" + traj.policy;
}

void require_errorless(const Trajectory &traj, const char *check)
{
    if (!traj.config.errorless())
        throw std::invalid_argument(std::string(check) +
                                    " holds only for errorless instances; trajectory has nonzero outage probability");
}

CheckReport failed(std::string check, std::string instance, Violation v, std::string detail = {})
{
    return CheckReport{std::move(check), std::move(instance), Verdict::fail, v, std::move(detail)};
}

CheckReport passed(std::string check, std::string instance, std::string detail = {})
{
    return CheckReport{std::move(check), std::move(instance), Verdict::pass, std::nullopt, std::move(detail)};
}

Trajectory errorless_greedy(const NetworkConfig &cfg)
{
    return run_episode(cfg, PolicySpec::greedy(), OutageTape::derive(0, 0, cfg.T, cfg.S, cfg.U));
}

} // namespace

Age min_sum_g(int K, int S, Age t)
{
    check_domain(K, S, t, "S");
    const Age tp = ceil_div(K, S);
    const Age m = std::min(t, tp);
    return m * K - S * m * (m - 1) / 2;
}

Age min_sum_h(int K, int U, Age t)
{
    check_domain(K, U, t, "U");
    const Age tpp = ceil_div(K, U) + 1;
    const Age m = std::min(t, tpp);
    return m * K - U * (m - 1) * (m - 2) / 2;
}

Age accumulated_min_sum_g(int K, int S, Age t)
{
    check_domain(K, S, t, "S");
    Age sum = t * K;
    for (Age tau = 1; tau < t; ++tau)
        sum -= std::min<Age>(tau * S, K);
    return sum;
}

Age accumulated_min_sum_h(int K, int U, Age t)
{
    check_domain(K, U, t, "U");
    Age sum = t * K;
    for (Age tau = 1; tau < t; ++tau)
        sum -= std::min<Age>((tau - 1) * U, K);
    return sum;
}

Age printed_min_sum_g(int K, int S, Age t)
{
    check_domain(K, S, t, "S");
    const Age tp = ceil_div(K, S);
    const Age ind = t >= tp + 1 ? 1 : 0;
    return (1 - ind) * t * K + ind * tp * K - tp * (tp - 1) * S / 2;
}

Age printed_min_sum_h(int K, int U, Age t)
{
    check_domain(K, U, t, "U");
    const Age tpp = ceil_div(K, U) + 1;
    const Age ind = t >= tpp + 1 ? 1 : 0;
    return (1 - ind) * t * K + ind * tpp * K - (tpp - 1) * (tpp - 2) * U / 2;
}

std::pair<Age, Age> greedy_reduction_formulas(int K, int S, int U, Age t)
{
    check_domain(K, S, t, "S");
    check_domain(K, U, t, "U");
    return {std::min<Age>(t * S, K), std::min<Age>((t - 1) * U, K)};
}

std::string CheckReport::to_line() const
{
    std::ostringstream out;
    out << check << '\t' << instance << '\t'
        << (verdict == Verdict::pass ? "pass" : verdict == Verdict::fail ? "fail" : "note") << '\t';
    if (violation) {
        out << "t=" << violation->t << ",k=" << (violation->k >= 0 ? std::to_string(violation->k + 1) : "-")
            << ",lhs=" << format_double(violation->lhs) << ",rhs=" << format_double(violation->rhs);
    } else {
        out << '-';
    }
    if (!detail.empty())
        out << '\t' << detail;
    return out.str();
}

CheckReport check_destination_bound(const Trajectory &traj)
{
    if (traj.slots.size() < 2)
        throw std::invalid_argument("destination_bound check needs a trajectory of at least two slots");
    for (std::size_t i = 1; i < traj.slots.size(); ++i) {
        const auto &prev = traj.slots[i - 1].state;
        const auto &cur = traj.slots[i].state;
        for (std::size_t k = 0; k < cur.h.size(); ++k) {
            if (cur.h[k] < prev.g[k] + 1)
                return failed("destination_bound", describe(traj),
                              {cur.t, static_cast<int>(k), double(cur.h[k]), double(prev.g[k] + 1)},
                              "h_k(t) >= g_k(t-1)+1");
            if (cur.h[k] < cur.g[k])
                return failed("destination_bound", describe(traj), {cur.t, static_cast<int>(k), double(cur.h[k]), double(cur.g[k])},
                              "h_k(t) >= g_k(t)");
        }
    }
    return passed("destination_bound", describe(traj));
}

CheckReport check_age_sum_identity(const Trajectory &traj)
{
    require_errorless(traj, "age_sum_identity");
    const Age K = traj.config.K;
    Age acc_s = 0, acc_u = 0;
    for (const auto &rec : traj.slots) {
        const Age t = rec.state.t;
        const Age sg = total_age(rec.state, Node::relay);
        const Age sh = total_age(rec.state, Node::destination);
        if (sg != t * K - acc_s)
            return failed("age_sum_identity", describe(traj), {t, -1, double(sg), double(t * K - acc_s)},
                          "sum g(t) = tK - sum R_S");
        if (sh != t * K - acc_u)
            return failed("age_sum_identity", describe(traj), {t, -1, double(sh), double(t * K - acc_u)},
                          "sum h(t) = tK - sum R_U");
        acc_s += rec.r_sample;
        acc_u += rec.r_update;
    }
    return passed("age_sum_identity", describe(traj));
}

namespace {

// Compares sum_{tau<=t-1} R_S with sum_{tau<=t} R_U at every t.
CheckReport compare_reductions(const Trajectory &traj, const char *name, bool equality)
{
    require_errorless(traj, name);
    Age acc_s = 0, acc_u = 0;
    for (const auto &rec : traj.slots) {
        acc_u += rec.r_update;
        const bool ok = equality ? acc_s == acc_u : acc_s >= acc_u;
        if (!ok)
            return failed(name, describe(traj), {rec.state.t, -1, double(acc_s), double(acc_u)},
                          equality ? "sum R_S(..t-1) = sum R_U(..t)" : "sum R_S(..t-1) >= sum R_U(..t)");
        acc_s += rec.r_sample;
    }
    return passed(name, describe(traj));
}

} // namespace

CheckReport check_reduction_order(const Trajectory &traj)
{
    return compare_reductions(traj, "reduction_order", false);
}

CheckReport check_reduction_balance(const Trajectory &traj)
{
    return compare_reductions(traj, "reduction_balance", true);
}

CheckReport check_greedy_reductions(const Trajectory &traj)
{
    const auto &cfg = traj.config;
    for (const auto &rec : traj.slots) {
        const auto [rs, ru] = greedy_reduction_formulas(cfg.K, cfg.S, cfg.U, rec.state.t);
        if (rec.r_sample != rs)
            return failed("greedy_reductions", describe(traj), {rec.state.t, -1, double(rec.r_sample), double(rs)},
                          "R_S(t) = min{tS,K}");
        if (rec.r_update != ru)
            return failed("greedy_reductions", describe(traj), {rec.state.t, -1, double(rec.r_update), double(ru)},
                          "R_U(t) = min{(t-1)U,K}");
    }
    return passed("greedy_reductions", describe(traj));
}

Age double_accumulated_sampling(const Trajectory &traj)
{
    const Age T = static_cast<Age>(traj.slots.size());
    Age total = 0;
    for (Age tau = 1; tau <= T - 2; ++tau)
        total += (T - 1 - tau) * traj.slots[tau - 1].r_sample;
    return total;
}

SamplingSearch max_double_accumulated_sampling(const NetworkConfig &cfg, std::uint64_t budget)
{
    cfg.validate();
    if (!cfg.errorless())
        throw std::invalid_argument("sampling search requires an errorless instance");
    const auto sets = combinations(cfg.K, cfg.S);
    const int depth = std::max(cfg.T - 2, 0);
    std::uint64_t count = 1;
    for (int i = 0; i < depth; ++i) {
        if (count > budget / sets.size())
            throw BudgetExceeded("sampling search needs " + std::to_string(sets.size()) + "^" +
                                 std::to_string(depth) + " sequences, above the budget of " + std::to_string(budget));
        count *= sets.size();
    }
    if (count > budget)
        throw BudgetExceeded("sampling search above the budget of " + std::to_string(budget));

    SamplingSearch result{0, count};
    const Age T = cfg.T;
    // g evolves under sampling alone when transmissions never fail.
    auto visit = [&](auto &&self, const std::vector<Age> &g, Age tau, Age acc) -> void {
        if (tau > T - 2) {
            result.best = std::max(result.best, acc);
            return;
        }
        for (const auto &set : sets) {
            Age r = 0;
            std::vector<Age> next(g);
            for (auto &x : next)
                ++x;
            for (int k : set) {
                r += g[k];
                next[k] = 1;
            }
            self(self, next, tau + 1, acc + (T - 1 - tau) * r);
        }
    };
    visit(visit, std::vector<Age>(cfg.K, 1), 1, 0);
    return result;
}

CheckReport check_optimality_condition(const NetworkConfig &cfg, const Trajectory &traj, std::uint64_t search_budget)
{
    if (static_cast<int>(traj.slots.size()) != cfg.T)
        throw std::invalid_argument("trajectory length does not match horizon");
    const auto search = max_double_accumulated_sampling(cfg, search_budget);
    const Age own = double_accumulated_sampling(traj);
    if (own != search.best)
        return failed("optimality_condition", describe(traj), {cfg.T, -1, double(own), double(search.best)},
                      "condition (a): double-accumulated sampling reduction below exhaustive maximum");
    auto eq = check_reduction_balance(traj);
    if (!eq.passed()) {
        eq.check = "optimality_condition";
        eq.detail = "condition (b): " + eq.detail;
        return eq;
    }
    return passed("optimality_condition", describe(traj),
                  "searched " + std::to_string(search.sequences) + " sampling sequences");
}

CheckReport check_greedy_vs_exhaustive(const NetworkConfig &cfg, std::uint64_t search_budget)
{
    const auto search = exhaustive_min_cost(cfg, search_budget);
    const auto traj = errorless_greedy(cfg);
    std::vector<Action> seq;
    for (const auto &rec : traj.slots)
        seq.push_back(rec.action);
    const auto ev = evaluate_fixed_sequence(cfg, seq);
    const std::string instance = cfg.describe() + " policy=greedy";
    if (ev.total_age != search.min_total_age)
        return failed("greedy_vs_exhaustive", instance, {cfg.T, -1, double(ev.total_age), double(search.min_total_age)},
                      "greedy total age vs exhaustive minimum");
    if (std::abs(ev.total_cost - search.min_cost) > 1e-12 * std::max(1.0, search.min_cost))
        return failed("greedy_vs_exhaustive", instance, {cfg.T, -1, ev.total_cost, search.min_cost},
                      "greedy weighted cost vs exhaustive minimum");
    return passed("greedy_vs_exhaustive", instance, "searched " + std::to_string(search.sequences) + " sequences");
}

CheckReport check_greedy_vs_dp(const NetworkConfig &cfg, double tol)
{
    const auto table = std::make_shared<const DPTable>(solve_backward_induction(cfg));
    const double optimum = table->optimal_value();
    const double greedy = exact_expected_value(cfg, PolicySpec::greedy());
    const std::string instance = cfg.describe() + " policy=greedy";
    if (greedy > optimum + tol)
        return failed("greedy_vs_dp", instance, {cfg.T, -1, greedy, optimum}, "exact greedy V vs DP optimum");
    return passed("greedy_vs_dp", instance, "V=" + format_double(greedy));
}

CheckReport check_closed_forms(int K, int S, int U, Age horizon)
{
    const auto cfg = NetworkConfig::symmetric(K, S, U, static_cast<int>(horizon));
    const auto traj = errorless_greedy(cfg);
    for (const auto &rec : traj.slots) {
        const Age t = rec.state.t;
        const Age sg = total_age(rec.state, Node::relay);
        const Age sh = total_age(rec.state, Node::destination);
        if (sg != min_sum_g(K, S, t))
            return failed("closed_form_min_sum", describe(traj), {t, -1, double(sg), double(min_sum_g(K, S, t))}, "sum g");
        if (sh != min_sum_h(K, U, t))
            return failed("closed_form_min_sum", describe(traj), {t, -1, double(sh), double(min_sum_h(K, U, t))}, "sum h");
    }
    return passed("closed_form_min_sum", describe(traj));
}

std::vector<CheckReport> printed_form_notes(int K, int S, int U, Age horizon)
{
    std::vector<CheckReport> notes;
    const std::string instance = "K=" + std::to_string(K) + " S=" + std::to_string(S) + " U=" + std::to_string(U);
    for (Age t = 1; t <= horizon; ++t) {
        if (printed_min_sum_g(K, S, t) != min_sum_g(K, S, t))
            notes.push_back({"printed_form_g", instance, Verdict::note,
                             Violation{t, -1, double(printed_min_sum_g(K, S, t)), double(min_sum_g(K, S, t))},
                             "printed indicator form differs from the accumulated minimum"});
        if (printed_min_sum_h(K, U, t) != min_sum_h(K, U, t))
            notes.push_back({"printed_form_h", instance, Verdict::note,
                             Violation{t, -1, double(printed_min_sum_h(K, U, t)), double(min_sum_h(K, U, t))},
                             "printed indicator form differs from the accumulated minimum"});
    }
    return notes;
}

} // namespace aoi
