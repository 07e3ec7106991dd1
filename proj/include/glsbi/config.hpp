#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "glsbi/error.hpp"
#include "glsbi/inference.hpp"
#include "glsbi/io.hpp"
#include "glsbi/stats.hpp"

namespace glsbi {

/// Arithmetic grid start + step * i, i = 0..count-1.
struct GridSpec {
    double start = 0.005;
    double step = 0.001;
    std::size_t count = 96;

    std::vector<double> values() const {
        std::vector<double> v(count);
        for (std::size_t i = 0; i < count; ++i)
            v[i] = start + step * static_cast<double>(i);
        return v;
    }
};

/**
 * Flat key=value campaign configuration. Files hold one `key = value` per
 * line with `#` comments; command-line overrides are applied afterwards with
 * the same keys, so the CLI always wins.
 */
struct CampaignConfig {
    // network and simulation
    std::size_t n = 200;
    double w = 0.01;
    double v0 = 0.01;
    std::uint32_t T = 100'000;
    std::size_t K = 20;
    GridSpec grid{0.005, 0.002, 21};
    bool remove_reciprocal = false;

    // statistic and estimation
    StatisticKind kind = StatisticKind::SpikeFreq;
    Estimator estimator = Estimator::Gaussian;
    Interpolation interpolation = Interpolation::Likelihood;
    std::size_t bins = 0; // 0: Freedman-Diaconis
    double level = 0.95;

    // evaluation
    GridSpec eval_grid{0.008, 0.0035, 10};
    std::vector<double> eval_values; // overrides eval_grid when set
    std::size_t s = 10;
    std::size_t n_e = 200;

    // diagnostics
    std::vector<double> diag_p{0.012};
    std::size_t diag_graphs = 4;
    std::size_t diag_pairs = 2000;
    std::size_t diag_vectors = 2000;

    // baseline
    std::vector<std::size_t> s_list{5, 10, 15, 20};

    // run control
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::string out = "run";
    std::string table;       // table path for evaluate / estimate / diagnostics
    std::string observation; // observation path for estimate

    std::vector<double> truth_values() const { return eval_values.empty() ? eval_grid.values() : eval_values; }

    std::filesystem::path out_dir() const { return std::filesystem::path(out); }

    std::filesystem::path table_path() const {
        if (!table.empty())
            return table;
        return out_dir() / ("table_" + std::string(to_string(kind)) + ".csv");
    }

    void set(std::string_view key, std::string_view value);

    void validate_common() const {
        if (n < 2)
            throw Error(Errc::config, "n must be >= 2");
        if (!(w > 0.0))
            throw Error(Errc::config, "w must be positive");
        if (!(v0 >= 0.0))
            throw Error(Errc::config, "v0 must be non-negative");
        if (T < 1)
            throw Error(Errc::config, "T must be >= 1");
        if (workers < 1)
            throw Error(Errc::config, "workers must be >= 1");
    }

    /// Echo as loadable `key = value` lines.
    std::string to_text() const;
};

namespace detail {

template <class T>
std::vector<T> parse_list(std::string_view v, T (*conv)(std::string_view)) {
    std::vector<T> out;
    for (auto item : split(v, ','))
        if (!item.empty())
            out.push_back(conv(item));
    return out;
}

inline double real_value(std::string_view v) { return parse_real(v); }
inline std::size_t size_value(std::string_view v) { return parse_integer<std::size_t>(v); }

inline bool bool_value(std::string_view v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on")
        return true;
    if (v == "0" || v == "false" || v == "no" || v == "off")
        return false;
    throw Error(Errc::config, "not a boolean: '" + std::string(v) + "'");
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            os << ',';
        if constexpr (std::is_floating_point_v<T>)
            os << fmt_real(v[i]);
        else
            os << v[i];
    }
    return os.str();
}

} // namespace detail

inline void CampaignConfig::set(std::string_view key, std::string_view value) {
    using namespace detail;
    try {
        if (key == "n") n = size_value(value);
        else if (key == "w") w = real_value(value);
        else if (key == "v0") v0 = real_value(value);
        else if (key == "T") T = parse_integer<std::uint32_t>(value);
        else if (key == "K") K = size_value(value);
        else if (key == "grid_start") grid.start = real_value(value);
        else if (key == "grid_step") grid.step = real_value(value);
        else if (key == "grid_count") grid.count = size_value(value);
        else if (key == "remove_reciprocal") remove_reciprocal = bool_value(value);
        else if (key == "kind") kind = parse_statistic_kind(value);
        else if (key == "estimator") estimator = parse_estimator(value);
        else if (key == "interpolation") {
            if (value == "likelihood") interpolation = Interpolation::Likelihood;
            else if (value == "loglikelihood") interpolation = Interpolation::LogLikelihood;
            else throw Error(Errc::config, "interpolation must be likelihood|loglikelihood");
        }
        else if (key == "bins") bins = size_value(value);
        else if (key == "level") level = real_value(value);
        else if (key == "eval_start") eval_grid.start = real_value(value);
        else if (key == "eval_step") eval_grid.step = real_value(value);
        else if (key == "eval_count") eval_grid.count = size_value(value);
        else if (key == "eval_values") eval_values = parse_list<double>(value, &real_value);
        else if (key == "s") s = size_value(value);
        else if (key == "n_e" || key == "Ne") n_e = size_value(value);
        else if (key == "diag_p") diag_p = parse_list<double>(value, &real_value);
        else if (key == "diag_graphs") diag_graphs = size_value(value);
        else if (key == "diag_pairs") diag_pairs = size_value(value);
        else if (key == "diag_vectors") diag_vectors = size_value(value);
        else if (key == "s_list") s_list = parse_list<std::size_t>(value, &size_value);
        else if (key == "seed") seed = parse_integer<std::uint64_t>(value);
        else if (key == "workers") workers = parse_integer<unsigned>(value);
        else if (key == "out") out = std::string(value);
        else if (key == "table") table = std::string(value);
        else if (key == "observation") observation = std::string(value);
        else throw Error(Errc::config, "unknown configuration key '" + std::string(key) + "'");
    } catch (const Error& e) {
        if (e.code() == Errc::config)
            throw;
        throw Error(Errc::config, "bad value for '" + std::string(key) + "': " + e.what());
    }
}

inline std::string CampaignConfig::to_text() const {
    using detail::join;
    std::ostringstream os;
    os << "n = " << n << '\n'
       << "w = " << fmt_real(w) << '\n'
       << "v0 = " << fmt_real(v0) << '\n'
       << "T = " << T << '\n'
       << "K = " << K << '\n'
       << "grid_start = " << fmt_real(grid.start) << '\n'
       << "grid_step = " << fmt_real(grid.step) << '\n'
       << "grid_count = " << grid.count << '\n'
       << "remove_reciprocal = " << (remove_reciprocal ? 1 : 0) << '\n'
       << "kind = " << to_string(kind) << '\n'
       << "estimator = " << to_string(estimator) << '\n'
       << "interpolation = " << (interpolation == Interpolation::Likelihood ? "likelihood" : "loglikelihood") << '\n'
       << "bins = " << bins << '\n'
       << "level = " << fmt_real(level) << '\n'
       << "eval_start = " << fmt_real(eval_grid.start) << '\n'
       << "eval_step = " << fmt_real(eval_grid.step) << '\n'
       << "eval_count = " << eval_grid.count << '\n';
    if (!eval_values.empty())
        os << "eval_values = " << join(eval_values) << '\n';
    os << "s = " << s << '\n'
       << "n_e = " << n_e << '\n'
       << "diag_p = " << join(diag_p) << '\n'
       << "diag_graphs = " << diag_graphs << '\n'
       << "diag_pairs = " << diag_pairs << '\n'
       << "diag_vectors = " << diag_vectors << '\n'
       << "s_list = " << join(s_list) << '\n'
       << "seed = " << seed << '\n'
       << "workers = " << workers << '\n'
       << "out = " << out << '\n';
    if (!table.empty())
        os << "table = " << table << '\n';
    if (!observation.empty())
        os << "observation = " << observation << '\n';
    return os.str();
}

/// Applies `key = value` lines of a config text; `#` starts a comment.
inline void apply_config_text(CampaignConfig& cfg, std::string_view text) {
    std::size_t line_no = 0;
    for (std::string_view rest = text; !rest.empty();) {
        const auto nl = rest.find('\n');
        std::string_view line = rest.substr(0, nl);
        rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw Error(Errc::config, "line " + std::to_string(line_no) + ": expected key = value");
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

inline void load_config_file(CampaignConfig& cfg, const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const Error& e) {
        throw Error(Errc::config, std::string("cannot read config: ") + e.what());
    }
    apply_config_text(cfg, text);
}

} // namespace glsbi
