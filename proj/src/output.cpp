#include "aoi/output.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "aoi/format.hpp"

namespace aoi {

std::string summary_csv(std::span<const RunSummary> summaries)
{
    std::ostringstream out;
    out << "policy,t,mean_weighted_sum_h,mean_weighted_sum_g,n_runs,seed\n";
    for (const auto &s : summaries)
        for (std::size_t i = 0; i < s.mean_weighted_sum_h.size(); ++i)
            out << csv_field(s.policy) << ',' << i + 1 << ',' << format_double(s.mean_weighted_sum_h[i]) << ','
                << format_double(s.mean_weighted_sum_g[i]) << ',' << s.n_runs << ',' << s.master_seed << '\n';
    return out.str();
}

std::string trajectory_csv(std::span<const Trajectory> runs)
{
    std::ostringstream out;
    out << "run,t,k,g_k,h_k,sampled,updated,sample_outage,update_outage\n";
    for (std::size_t run = 0; run < runs.size(); ++run) {
        for (const auto &slot : runs[run].slots) {
            const auto K = slot.state.g.size();
            std::vector<int> sampled(K, 0), updated(K, 0), s_out(K, 0), u_out(K, 0);
            for (std::size_t i = 0; i < slot.action.sample.size(); ++i) {
                sampled[slot.action.sample[i]] = 1;
                s_out[slot.action.sample[i]] = slot.outage.sample[i] ? 1 : 0;
            }
            for (std::size_t i = 0; i < slot.action.update.size(); ++i) {
                updated[slot.action.update[i]] = 1;
                u_out[slot.action.update[i]] = slot.outage.update[i] ? 1 : 0;
            }
            for (std::size_t k = 0; k < K; ++k)
                out << run << ',' << slot.state.t << ',' << k + 1 << ',' << slot.state.g[k] << ','
                    << slot.state.h[k] << ',' << sampled[k] << ',' << updated[k] << ',' << s_out[k] << ','
                    << u_out[k] << '\n';
        }
    }
    return out.str();
}

std::string window_average_csv(std::span<const RunSummary> summaries)
{
    std::ostringstream out;
    out << "policy,window,mean_average_weighted_sum_h,n_runs,seed\n";
    for (const auto &s : summaries) {
        double running = 0.0;
        for (std::size_t i = 0; i < s.mean_weighted_sum_h.size(); ++i) {
            running += s.mean_weighted_sum_h[i];
            out << csv_field(s.policy) << ',' << i + 1 << ','
                << format_double(running / static_cast<double>(i + 1)) << ',' << s.n_runs << ','
                << s.master_seed << '\n';
        }
    }
    return out.str();
}

std::string curve_csv(std::span<const CurvePoint> curve)
{
    std::ostringstream out;
    out << "episode,value\n";
    for (const auto &p : curve)
        out << p.episode << ',' << format_double(p.value) << '\n';
    return out.str();
}

std::string csv_field(const std::string &text)
{
    if (text.find_first_of(",\"\n") == std::string::npos)
        return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

void write_atomically(const std::filesystem::path &path, const std::string &content)
{
    namespace fs = std::filesystem;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp);
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

void commit(std::span<const Artifact> artifacts)
{
    for (const auto &a : artifacts)
        write_atomically(a.path, a.content);
}

} // namespace aoi
