#include "aoi/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <sstream>

#include "aoi/format.hpp"

namespace aoi {

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

double parse_number(const std::string &tok, const Entry &e, const std::string &key)
{
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
        throw ConfigError(e.line, key + ": '" + tok + "' is not a number");
    return x;
}

std::uint64_t parse_count(const Entry &e, const std::string &key)
{
    std::uint64_t x = 0;
    const auto &s = e.value;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError(e.line, key + ": '" + s + "' is not a nonnegative integer");
    return x;
}

std::vector<double> parse_list(const Entry &e, const std::string &key, int K, bool allow_scalar)
{
    std::vector<double> v;
    for (const auto &tok : split(e.value, ','))
        v.push_back(parse_number(tok, e, key));
    if (allow_scalar && v.size() == 1)
        return std::vector<double>(K, v.front());
    if (static_cast<int>(v.size()) != K)
        throw ConfigError(e.line, key + " has " + std::to_string(v.size()) + " entries, expected K=" + std::to_string(K));
    return v;
}

// Folds "key = value" and "key= value" into "key=value" tokens.
std::vector<std::string> tokens(const std::string &line)
{
    std::vector<std::string> raw;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok)
        raw.push_back(tok);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        std::string t = raw[i];
        while (i + 1 < raw.size() && (t.back() == '=' || raw[i + 1].front() == '='))
            t += raw[++i];
        out.push_back(t);
    }
    return out;
}

} // namespace

ExperimentConfig parse_config(std::string_view text)
{
    static const std::vector<std::string> known = {"K", "S", "U", "T", "weights", "p", "q", "policies",
                                                   "n_runs", "seed", "coupled", "out", "preset"};
    std::map<std::string, Entry> entries;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    int last_line = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        for (const auto &tok : tokens(line)) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos || eq == 0)
                throw ConfigError(line_no, "expected key=value, got '" + tok + "'");
            std::string key = tok.substr(0, eq);
            if (std::find(known.begin(), known.end(), key) == known.end())
                throw ConfigError(line_no, "unknown key '" + key + "'");
            if (entries.count(key))
                throw ConfigError(line_no, "duplicate key '" + key + "'");
            entries[key] = Entry{tok.substr(eq + 1), line_no};
            last_line = line_no;
        }
    }

    auto required = [&](const std::string &key) -> const Entry & {
        auto it = entries.find(key);
        if (it == entries.end())
            throw ConfigError(last_line, "missing required key '" + key + "'");
        return it->second;
    };
    ExperimentConfig cfg;
    auto &net = cfg.network;
    auto int_key = [&](const std::string &key) {
        const auto &e = required(key);
        const auto v = parse_count(e, key);
        if (v < 1 || v > 1'000'000)
            throw ConfigError(e.line, key + " must be a positive integer, got " + e.value);
        return static_cast<int>(v);
    };
    net.K = int_key("K");
    net.S = int_key("S");
    net.U = int_key("U");
    net.T = int_key("T");
    if (net.S >= net.K)
        throw ConfigError(entries["S"].line, "S must be smaller than K");
    if (net.U >= net.K)
        throw ConfigError(entries["U"].line, "U must be smaller than K");

    if (auto it = entries.find("weights"); it != entries.end() && it->second.value != "uniform") {
        net.weights = parse_list(it->second, "weights", net.K, false);
        double total = 0.0;
        for (double w : net.weights) {
            if (!(w >= 0.0))
                throw ConfigError(it->second.line, "weights must be nonnegative");
            total += w;
        }
        if (!(total > 0.0))
            throw ConfigError(it->second.line, "weights must sum to a positive value");
    } else {
        net.weights.assign(net.K, 1.0 / net.K);
    }
    for (const char *key : {"p", "q"}) {
        auto &target = key[0] == 'p' ? net.p : net.q;
        if (auto it = entries.find(key); it != entries.end()) {
            target = parse_list(it->second, key, net.K, true);
            for (double x : target)
                if (!(x >= 0.0 && x < 1.0))
                    throw ConfigError(it->second.line, std::string(key) + " entries must lie in [0,1)");
        } else {
            target.assign(net.K, 0.0);
        }
    }
    if (auto it = entries.find("policies"); it != entries.end()) {
        cfg.policies.clear();
        for (const auto &name : split(it->second.value, ',')) {
            try {
                cfg.policies.push_back(parse_policy_kind(name));
            } catch (const std::invalid_argument &e) {
                throw ConfigError(it->second.line, e.what());
            }
        }
    }
    if (auto it = entries.find("n_runs"); it != entries.end()) {
        cfg.n_runs = parse_count(it->second, "n_runs");
        if (cfg.n_runs < 1)
            throw ConfigError(it->second.line, "n_runs must be at least 1");
    }
    if (auto it = entries.find("seed"); it != entries.end())
        cfg.seed = parse_count(it->second, "seed");
    if (auto it = entries.find("coupled"); it != entries.end()) {
        const auto &v = it->second.value;
        if (v == "true" || v == "1")
            cfg.coupled = true;
        else if (v == "false" || v == "0")
            cfg.coupled = false;
        else
            throw ConfigError(it->second.line, "coupled must be true or false, got '" + v + "'");
    }
    if (auto it = entries.find("out"); it != entries.end())
        cfg.out = it->second.value;
    if (auto it = entries.find("preset"); it != entries.end())
        cfg.preset = it->second.value;

    try {
        net.validate();
    } catch (const DomainError &e) {
        throw ConfigError(last_line, e.what());
    }
    return cfg;
}

std::string render_config(const ExperimentConfig &config)
{
    const auto &net = config.network;
    std::ostringstream out;
    out << "K=" << net.K << "\nS=" << net.S << "\nU=" << net.U << "\nT=" << net.T << '\n';
    auto list = [&](const std::vector<double> &v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + format_double(v[i]);
        return s;
    };
    bool uniform = true;
    for (double w : net.weights)
        uniform = uniform && w == 1.0 / net.K;
    out << "weights=" << (uniform ? std::string("uniform") : list(net.weights)) << '\n';
    for (const auto *v : {&net.p, &net.q}) {
        const bool constant = std::adjacent_find(v->begin(), v->end(), std::not_equal_to<>()) == v->end();
        out << (v == &net.p ? "p=" : "q=") << (constant && !v->empty() ? format_double(v->front()) : list(*v))
            << '\n';
    }
    out << "policies=";
    for (std::size_t i = 0; i < config.policies.size(); ++i)
        out << (i ? "," : "") << to_string(config.policies[i]);
    out << "\nn_runs=" << config.n_runs << "\nseed=" << config.seed
        << "\ncoupled=" << (config.coupled ? "true" : "false") << '\n';
    if (!config.out.empty())
        out << "out=" << config.out << '\n';
    if (!config.preset.empty())
        out << "preset=" << config.preset << '\n';
    return out.str();
}

} // namespace aoi
