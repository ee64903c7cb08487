#include "aoi/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace aoi {

NetworkConfig NetworkConfig::symmetric(int K, int S, int U, int T, double p, double q)
{
    NetworkConfig cfg;
    cfg.K = K;
    cfg.S = S;
    cfg.U = U;
    cfg.T = T;
    if (K > 0) {
        cfg.weights.assign(K, 1.0 / K);
        cfg.p.assign(K, p);
        cfg.q.assign(K, q);
    }
    return cfg;
}

void NetworkConfig::validate() const
{
    auto fail = [](const std::string &msg) { throw DomainError(msg); };
    if (K < 1)
        fail("K must be positive, got " + std::to_string(K));
    if (S < 1 || S >= K)
        fail("S must satisfy 1 <= S < K, got S=" + std::to_string(S) + " K=" + std::to_string(K));
    if (U < 1 || U >= K)
        fail("U must satisfy 1 <= U < K, got U=" + std::to_string(U) + " K=" + std::to_string(K));
    if (T < 1)
        fail("T must be positive, got " + std::to_string(T));
    auto check_len = [&](const std::vector<double> &v, const char *name) {
        if (static_cast<int>(v.size()) != K)
            fail(std::string(name) + " has length " + std::to_string(v.size()) + ", expected K=" +
                 std::to_string(K));
    };
    check_len(weights, "weights");
    check_len(p, "p");
    check_len(q, "q");
    for (double w : weights)
        if (!(w >= 0.0) || !std::isfinite(w))
            fail("weights must be finite and nonnegative");
    if (!(std::accumulate(weights.begin(), weights.end(), 0.0) > 0.0))
        fail("weights must sum to a positive value");
    auto check_prob = [&](const std::vector<double> &v, const char *name) {
        for (double x : v)
            if (!(x >= 0.0 && x < 1.0))
                fail(std::string(name) + " entries must lie in [0,1)");
    };
    check_prob(p, "p");
    check_prob(q, "q");
}

bool NetworkConfig::errorless() const
{
    auto zero = [](double x) { return x == 0.0; };
    return std::all_of(p.begin(), p.end(), zero) && std::all_of(q.begin(), q.end(), zero);
}

bool NetworkConfig::uniform_weights() const
{
    return std::adjacent_find(weights.begin(), weights.end(), std::not_equal_to<>()) == weights.end();
}

bool NetworkConfig::symmetric_instance() const
{
    auto constant = [](const std::vector<double> &v) {
        return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
    };
    return uniform_weights() && constant(p) && constant(q);
}

std::string NetworkConfig::describe() const
{
    std::ostringstream out;
    out << "K=" << K << " S=" << S << " U=" << U << " T=" << T;
    auto list = [&](const char *name, const std::vector<double> &v) {
        out << ' ' << name << '=';
        if (!v.empty() && std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end()) {
            out << v.front();
            return;
        }
        for (std::size_t i = 0; i < v.size(); ++i)
            out << (i ? "," : "") << v[i];
    };
    if (uniform_weights())
        out << " weights=uniform";
    else
        list("weights", weights);
    list("p", p);
    list("q", q);
    return out.str();
}

} // namespace aoi
