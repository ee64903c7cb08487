#include "aoi/format.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace aoi {

std::string format_double(double value)
{
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc())
        throw std::runtime_error("could not format double");
    return std::string(buf.data(), end);
}

void write_instance(std::ostream &out, const NetworkConfig &cfg)
{
    out << "instance " << cfg.K << ' ' << cfg.S << ' ' << cfg.U << ' ' << cfg.T << '\n';
    auto row = [&](const char *name, const std::vector<double> &v) {
        out << name;
        for (double x : v)
            out << ' ' << format_double(x);
        out << '\n';
    };
    row("weights", cfg.weights);
    row("p", cfg.p);
    row("q", cfg.q);
}

namespace {

std::istringstream expect_line(std::istream &in, const std::string &tag)
{
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream fields(line);
        std::string head;
        fields >> head;
        if (head != tag)
            throw std::runtime_error("expected '" + tag + "' line, got '" + line + "'");
        return fields;
    }
    throw std::runtime_error("missing '" + tag + "' line");
}

std::vector<double> read_row(std::istream &in, const std::string &tag, int K)
{
    auto fields = expect_line(in, tag);
    std::vector<double> v;
    std::string tok;
    while (fields >> tok) {
        double x = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw std::runtime_error("bad number '" + tok + "' in '" + tag + "' line");
        v.push_back(x);
    }
    if (static_cast<int>(v.size()) != K)
        throw std::runtime_error("'" + tag + "' line has " + std::to_string(v.size()) + " values, expected " +
                                 std::to_string(K));
    return v;
}

} // namespace

NetworkConfig read_instance(std::istream &in)
{
    NetworkConfig cfg;
    auto head = expect_line(in, "instance");
    if (!(head >> cfg.K >> cfg.S >> cfg.U >> cfg.T))
        throw std::runtime_error("malformed 'instance' line");
    cfg.weights = read_row(in, "weights", cfg.K);
    cfg.p = read_row(in, "p", cfg.K);
    cfg.q = read_row(in, "q", cfg.K);
    cfg.validate();
    return cfg;
}

} // namespace aoi
