// glsbi: build sampling-distribution tables, estimate p, run evaluation
// sweeps, diagnostics and the reconstruction baseline.
//
// Exit codes: 0 success, 2 configuration error, 3 numeric/degenerate failure, 4 I/O.

#include <cstdio>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "glsbi/campaign.hpp"

namespace {

struct CommonFlags {
    std::string config;
    std::vector<std::pair<std::string, std::string>> overrides;
    std::vector<std::string> sets;
    bool dump_statistics = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config, "key = value configuration file");
    auto keyed = [&f, cmd](const char* flag, const char* key, const char* help) {
        cmd->add_option_function<std::string>(
            flag, [&f, key](const std::string& v) { f.overrides.emplace_back(key, v); }, help);
    };
    keyed("--seed", "seed", "root seed (decimal 64-bit unsigned)");
    keyed("--workers", "workers", "worker threads; results do not depend on it");
    keyed("--out", "out", "output directory");
    keyed("--kind", "kind", "statistic: spikefreq|alpha");
    keyed("--estimator", "estimator", "sampling-distribution estimator: gaussian|histogram");
    keyed("--level", "level", "confidence level of likelihood-ratio intervals");
    keyed("--table", "table", "table file (default <out>/table_<kind>.csv)");
    keyed("--obs", "observation", "observation file for estimate");
    cmd->add_flag_callback(
        "--remove-reciprocal", [&f] { f.overrides.emplace_back("remove_reciprocal", "1"); },
        "drop one edge of every reciprocal pair");
    cmd->add_option("--set", f.sets, "override any configuration key: --set key=value");
}

glsbi::CampaignConfig resolve(const CommonFlags& f) {
    glsbi::CampaignConfig cfg;
    if (!f.config.empty())
        glsbi::load_config_file(cfg, f.config);
    for (const auto& kv : f.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw glsbi::Error(glsbi::Errc::config, "--set expects key=value, got '" + kv + "'");
        cfg.set(glsbi::trim(std::string_view(kv).substr(0, eq)), glsbi::trim(std::string_view(kv).substr(eq + 1)));
    }
    for (const auto& [k, v] : f.overrides)
        cfg.set(k, v);
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Connection-probability inference for Galves-Loecherbach networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("glsbi ") + GLSBI_VERSION);

    CommonFlags flags;
    auto* build = app.add_subcommand("build-table", "simulate the grid and write the sampling-distribution table");
    auto* estimate = app.add_subcommand("estimate", "estimate p and a confidence interval from one observation file");
    auto* evaluate = app.add_subcommand("evaluate", "error sweep over truth values of p against a table");
    auto* diag = app.add_subcommand("diagnostics", "independence, Gaussianity and likelihood-ratio diagnostics");
    auto* baseline = app.add_subcommand("baseline", "optimal graph-reconstruction error over s and the eval grid");
    for (auto* cmd : {build, estimate, evaluate, diag, baseline})
        add_common(cmd, flags);
    build->add_flag("--dump-statistics", flags.dump_statistics, "also write per-neuron statistics CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const auto cfg = resolve(flags);
        if (build->parsed()) {
            const auto t = glsbi::cmd_build_table(cfg, flags.dump_statistics);
            std::cout << "wrote " << cfg.table_path().string() << " (" << t.size() << " grid points)\n";
        } else if (estimate->parsed()) {
            const auto e = glsbi::cmd_estimate(cfg);
            std::cout << "p_tilde=" << glsbi::fmt_real(e.p_tilde) << " p_hat=" << glsbi::fmt_real(e.p_hat)
                      << " ci=[" << glsbi::fmt_real(e.ci->lo) << ", " << glsbi::fmt_real(e.ci->hi) << "]"
                      << " flags=" << glsbi::flags_to_string(e.flags) << '\n';
        } else if (evaluate->parsed()) {
            const auto r = glsbi::cmd_evaluate(cfg);
            std::cout << "p_true,p_target,rel_mae,rel_se,ci_noncoverage,baseline_rel_mae\n";
            for (const auto& s : r.summaries)
                std::printf("%.6g,%.6g,%.4f,%.4f,%.3f,%.4f\n", s.p_true, s.p_target, s.rel_mae, s.rel_se,
                            s.ci_noncoverage, s.baseline_rel_mae);
        } else if (diag->parsed()) {
            const auto r = glsbi::cmd_diagnostics(cfg);
            for (const auto& c : r.correlations)
                std::printf("p=%.6g mode=%s r=%.4f\n", c.p, std::string(glsbi::to_string(c.mode)).c_str(), c.r);
        } else if (baseline->parsed()) {
            const auto rows = glsbi::cmd_baseline(cfg);
            std::cout << "wrote " << (cfg.out_dir() / "baseline.csv").string() << " (" << rows.size() << " rows)\n";
        }
    } catch (const glsbi::Error& e) {
        std::cerr << "glsbi: " << e.what() << '\n';
        return glsbi::exit_code(e.code());
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "glsbi: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "glsbi: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
