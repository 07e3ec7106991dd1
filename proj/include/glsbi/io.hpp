#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "glsbi/distfit.hpp"
#include "glsbi/error.hpp"
#include "glsbi/stats.hpp"

namespace glsbi {

inline constexpr std::string_view kTableFormat = "glsbi-table";
inline constexpr int kTableFormatVersion = 1;

/// 17 significant digits: the decimal text parses back to the identical double.
inline std::string fmt_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline double parse_real(std::string_view s) {
    std::string tmp(s);
    char* end = nullptr;
    const double v = std::strtod(tmp.c_str(), &end);
    if (tmp.empty() || end != tmp.c_str() + tmp.size())
        throw Error(Errc::format, "not a number: '" + tmp + "'");
    return v;
}

template <class Int>
Int parse_integer(std::string_view s) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw Error(Errc::format, "not an integer: '" + std::string(s) + "'");
    return v;
}

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

/**
 * Writes `content` to `path` through a sibling temporary file and a rename,
 * so readers never observe a partial file.
 */
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec)
            throw Error(Errc::io, "cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw Error(Errc::io, "cannot open " + tmp.string() + " for writing");
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        os.flush();
        if (!os)
            throw Error(Errc::io, "write failed for " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec)
        throw Error(Errc::io, "cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw Error(Errc::io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// Table file
//
//   # glsbi-table 1
//   # kind <spikefreq|alpha>
//   # n <int>  T <int>  K <int>  w <real>  v0 <real>  seed <u64>  (one key per line)
//   # remove_reciprocal <0|1>
//   # columns p,m,excluded,mu,sigma,bin_count,edge_0..edge_B,dens_0..dens_{B-1}
//   <one comma-separated record per grid point>

inline std::string serialize_table(const SamplingDistributionTable& t) {
    std::ostringstream os;
    const auto& m = t.meta;
    os << "# " << kTableFormat << ' ' << kTableFormatVersion << '\n';
    os << "# kind " << to_string(m.kind) << '\n';
    os << "# n " << m.n << '\n';
    os << "# T " << m.T << '\n';
    os << "# K " << m.K << '\n';
    os << "# w " << fmt_real(m.w) << '\n';
    os << "# v0 " << fmt_real(m.v0) << '\n';
    os << "# seed " << m.seed << '\n';
    os << "# remove_reciprocal " << (m.remove_reciprocal ? 1 : 0) << '\n';
    os << "# columns p,m,excluded,mu,sigma,bin_count,edge_0..edge_B,dens_0..dens_{B-1}\n";
    for (const auto& pt : t.points) {
        os << fmt_real(pt.p) << ',' << pt.m << ',' << pt.excluded << ',' << fmt_real(pt.gaussian.mu) << ','
           << fmt_real(pt.gaussian.sigma) << ',' << pt.histogram.bins();
        for (double e : pt.histogram.edges)
            os << ',' << fmt_real(e);
        for (double d : pt.histogram.densities)
            os << ',' << fmt_real(d);
        os << '\n';
    }
    return os.str();
}

inline SamplingDistributionTable parse_table(std::string_view text) {
    SamplingDistributionTable t;
    bool saw_format = false;
    std::size_t line_no = 0;
    for (std::string_view rest = text; !rest.empty();) {
        const auto nl = rest.find('\n');
        std::string_view line = trim(rest.substr(0, nl));
        rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
        ++line_no;
        if (line.empty())
            continue;
        const auto where = " (line " + std::to_string(line_no) + ")";
        if (line.front() == '#') {
            const auto body = trim(line.substr(1));
            const auto sp = body.find(' ');
            const auto key = body.substr(0, sp);
            const auto val = sp == std::string_view::npos ? std::string_view{} : trim(body.substr(sp + 1));
            if (key == kTableFormat) {
                if (parse_integer<int>(val) != kTableFormatVersion)
                    throw Error(Errc::format, "unsupported table format version " + std::string(val));
                saw_format = true;
            } else if (key == "kind") {
                t.meta.kind = parse_statistic_kind(val);
            } else if (key == "n") {
                t.meta.n = parse_integer<std::size_t>(val);
            } else if (key == "T") {
                t.meta.T = parse_integer<TimeStep>(val);
            } else if (key == "K") {
                t.meta.K = parse_integer<std::size_t>(val);
            } else if (key == "w") {
                t.meta.w = parse_real(val);
            } else if (key == "v0") {
                t.meta.v0 = parse_real(val);
            } else if (key == "seed") {
                t.meta.seed = parse_integer<std::uint64_t>(val);
            } else if (key == "remove_reciprocal") {
                t.meta.remove_reciprocal = parse_integer<int>(val) != 0;
            }
            continue;
        }
        if (!saw_format)
            throw Error(Errc::format, "missing '# glsbi-table' header" + where);
        const auto f = split(line, ',');
        if (f.size() < 6)
            throw Error(Errc::format, "short table record" + where);
        TablePoint pt;
        pt.p = parse_real(f[0]);
        pt.m = parse_integer<std::size_t>(f[1]);
        pt.excluded = parse_integer<std::size_t>(f[2]);
        pt.gaussian = {parse_real(f[3]), parse_real(f[4]), pt.m};
        const auto bins = parse_integer<std::size_t>(f[5]);
        if (bins < 1 || f.size() != 6 + (bins + 1) + bins)
            throw Error(Errc::format, "table record has the wrong field count" + where);
        pt.histogram.m = pt.m;
        for (std::size_t b = 0; b <= bins; ++b)
            pt.histogram.edges.push_back(parse_real(f[6 + b]));
        for (std::size_t b = 0; b < bins; ++b)
            pt.histogram.densities.push_back(parse_real(f[7 + bins + b]));
        t.points.push_back(std::move(pt));
    }
    if (!saw_format)
        throw Error(Errc::format, "missing '# glsbi-table' header");
    t.validate();
    return t;
}

inline void write_table(const std::filesystem::path& path, const SamplingDistributionTable& t) {
    write_file_atomic(path, serialize_table(t));
}

inline SamplingDistributionTable read_table(const std::filesystem::path& path) {
    return parse_table(read_file(path));
}

/// Statistic dump: `p,graph_id,neuron_id,kind,value,excluded_reason`.
inline std::string serialize_statistics(StatisticKind kind, std::span<const double> grid,
                                        const std::vector<std::vector<ReplicateStatistics>>& samples) {
    struct Row {
        NeuronIndex neuron;
        std::string value;
        std::string reason;
    };
    std::ostringstream os;
    os << "p,graph_id,neuron_id,kind,value,excluded_reason\n";
    for (std::size_t gi = 0; gi < samples.size(); ++gi) {
        for (std::size_t k = 0; k < samples[gi].size(); ++k) {
            const auto& r = samples[gi][k];
            std::vector<Row> rows;
            for (std::size_t v = 0; v < r.values.size(); ++v)
                rows.push_back({r.neurons[v], fmt_real(r.values[v]), ""});
            for (const auto& [neuron, why] : r.excluded)
                rows.push_back({neuron, "NA", to_string(why)});
            std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.neuron < b.neuron; });
            for (const auto& row : rows)
                os << fmt_real(grid[gi]) << ',' << k << ',' << row.neuron << ',' << to_string(kind) << ','
                   << row.value << ',' << row.reason << '\n';
        }
    }
    return os.str();
}

} // namespace glsbi
