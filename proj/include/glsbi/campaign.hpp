#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "glsbi/config.hpp"
#include "glsbi/diagnostics.hpp"
#include "glsbi/distfit.hpp"
#include "glsbi/dynamics.hpp"
#include "glsbi/graph.hpp"
#include "glsbi/inference.hpp"
#include "glsbi/io.hpp"
#include "glsbi/parallel.hpp"
#include "glsbi/rng.hpp"
#include "glsbi/stats.hpp"

#ifndef GLSBI_VERSION
#define GLSBI_VERSION "0.0.0"
#endif

namespace glsbi {

inline constexpr int kEstimatesFormatVersion = 1;

inline std::string variant_label(StatisticKind k, Estimator e) {
    return std::string(to_string(k)) + "_" + std::string(to_string(e));
}

/// Effective connection probability once one edge of every reciprocal pair is dropped.
inline double reciprocal_removed_density(double p) { return p - p * p / 2.0; }

namespace detail {

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline GraphParams graph_params(const CampaignConfig& cfg, double p) { return {cfg.n, p, cfg.w}; }

inline SimConfig sim_config(const CampaignConfig& cfg) { return {cfg.T, cfg.v0, {}}; }

} // namespace detail

/**
 * Run manifest: the configuration echo as loadable `key = value` lines plus
 * `#` metadata (command, versions, timestamps, stream policy, outputs).
 * Feeding the file back through --config re-runs the command identically.
 */
struct RunManifest {
    std::string command;
    std::string config_text;
    std::string started;
    std::string finished;
    std::string stream_policy;
    std::vector<std::string> outputs;
    std::vector<std::string> notes;

    std::string render() const {
        std::ostringstream os;
        os << "# glsbi manifest 1\n"
           << "# command " << command << '\n'
           << "# software glsbi " << GLSBI_VERSION << '\n'
           << "# table_format " << kTableFormatVersion << '\n'
           << "# estimates_format " << kEstimatesFormatVersion << '\n'
           << "# started " << started << '\n'
           << "# finished " << finished << '\n'
           << "# streams " << stream_policy << '\n';
        for (const auto& o : outputs)
            os << "# output " << o << '\n';
        for (const auto& n : notes)
            os << "# note " << n << '\n';
        os << config_text;
        return os.str();
    }
};

inline void write_manifest(const CampaignConfig& cfg, RunManifest m) {
    m.config_text = cfg.to_text();
    m.finished = detail::utc_timestamp();
    write_file_atomic(cfg.out_dir() / ("manifest_" + m.command + ".txt"), m.render());
}

// --------------------------------------------------------------------------
// build-table

inline SamplingDistributionTable cmd_build_table(const CampaignConfig& cfg, bool dump_statistics = false) {
    cfg.validate_common();
    if (cfg.grid.count < 1)
        throw Error(Errc::config, "grid_count must be >= 1");
    RunManifest man{"build-table", {}, detail::utc_timestamp(), {}, {}, {}, {}};
    const auto grid = cfg.grid.values();
    man.stream_policy = "family build_table (0 long jumps); task (grid index g, replicate k) uses stream g*K+k, "
                        "streams 0.." + std::to_string(grid.size() * cfg.K - 1);
    BuildOptions opts;
    opts.workers = cfg.workers;
    opts.fixed_bins = cfg.bins;
    opts.remove_reciprocal = cfg.remove_reciprocal;
    opts.keep_samples = dump_statistics;
    BuildResult res =
        build_table(cfg.kind, grid, cfg.K, detail::graph_params(cfg, grid.front()), detail::sim_config(cfg), cfg.seed, opts);
    const auto path = cfg.table_path();
    write_table(path, res.table);
    man.outputs.push_back(path.string());
    if (dump_statistics) {
        const auto spath = cfg.out_dir() / ("statistics_" + std::string(to_string(cfg.kind)) + ".csv");
        write_file_atomic(spath, serialize_statistics(cfg.kind, grid, res.samples));
        man.outputs.push_back(spath.string());
    }
    for (const auto& pt : res.table.points)
        if (pt.excluded > 0)
            man.notes.push_back("p=" + fmt_real(pt.p) + " excluded " + std::to_string(pt.excluded) + " neurons");
    write_manifest(cfg, man);
    return res.table;
}

// --------------------------------------------------------------------------
// evaluate

struct EstimateRow {
    double p_true = 0.0;
    double p_tilde = 0.0;
    double p_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    unsigned flags = 0;
};

struct TruthSummary {
    double p_true = 0.0;
    double p_target = 0.0; // p, or p - p^2/2 with reciprocal removal
    std::size_t count = 0;
    double mean_p_hat = 0.0;
    double rel_mae = 0.0;
    double rel_se = 0.0;
    double ci_noncoverage = 0.0;
    double baseline_rel_mae = 0.0;
    double baseline_rel_se = 0.0;
};

struct EvaluationResult {
    std::string variant;
    std::size_t s = 0;
    std::vector<EstimateRow> rows;
    std::vector<TruthSummary> summaries;
};

inline TruthSummary summarize_truth(double p_true, double p_target, std::size_t s, std::span<const EstimateRow> rows) {
    TruthSummary t;
    t.p_true = p_true;
    t.p_target = p_target;
    t.count = rows.size();
    if (rows.empty())
        return t;
    double sum = 0.0, abs_err = 0.0, missed = 0.0;
    for (const auto& r : rows) {
        sum += r.p_hat;
        abs_err += std::abs(r.p_hat - p_target);
        if (p_target < r.ci_lo || p_target > r.ci_hi)
            missed += 1.0;
    }
    const double m = static_cast<double>(rows.size());
    t.mean_p_hat = sum / m;
    double ss = 0.0;
    for (const auto& r : rows)
        ss += (r.p_hat - t.mean_p_hat) * (r.p_hat - t.mean_p_hat);
    t.rel_mae = abs_err / m / p_target;
    t.rel_se = rows.size() > 1 ? std::sqrt(ss / (m - 1.0)) / p_target : 0.0;
    t.ci_noncoverage = missed / m;
    t.baseline_rel_mae = optimal_reconstruction_mae(s, p_target) / p_target;
    t.baseline_rel_se = optimal_reconstruction_se(s, p_target) / p_target;
    return t;
}

/**
 * For each truth p (task index t, evaluate family): one fresh graph
 * (optionally without reciprocal edges), one simulation, then N_e estimates
 * from random samples of s neurons whose statistic is computable.
 */
inline EvaluationResult evaluate(const CampaignConfig& cfg, const SamplingDistributionTable& table) {
    cfg.validate_common();
    if (table.meta.kind != cfg.kind)
        throw Error(Errc::kind_mismatch, "table statistic '" + std::string(to_string(table.meta.kind)) +
                                             "' differs from configured kind '" + std::string(to_string(cfg.kind)) + "'");
    if (table.size() < 3)
        throw Error(Errc::config, "evaluation needs a table with at least 3 grid points");
    if (table.meta.n != cfg.n || table.meta.T != cfg.T || table.meta.w != cfg.w || table.meta.v0 != cfg.v0)
        throw Error(Errc::config, "table was built for different network settings (n, T, w, v0) than the configuration");
    if (cfg.s < 2)
        throw Error(Errc::config, "sample size s must be >= 2");
    const auto truths = cfg.truth_values();
    if (truths.empty())
        throw Error(Errc::config, "evaluation grid is empty");
    for (double p : truths)
        detail::graph_params(cfg, p).validate();

    std::vector<Xoshiro256pp> streams;
    StreamFactory factory(cfg.seed, StreamFamily::evaluate);
    for (std::size_t t = 0; t < truths.size(); ++t)
        streams.push_back(factory.stream(t));

    std::vector<std::vector<EstimateRow>> per_truth(truths.size());
    parallel_for(truths.size(), cfg.workers, [&](std::size_t t) {
        auto& rng = streams[t];
        const double p = truths[t];
        const auto rep =
            simulate_replicate(cfg.kind, detail::graph_params(cfg, p), detail::sim_config(cfg), cfg.remove_reciprocal, rng);
        if (rep.values.size() < cfg.s)
            throw Error(Errc::insufficient_spikes, "p=" + fmt_real(p) + ": only " + std::to_string(rep.values.size()) +
                                                       " neurons have a computable statistic, need s=" +
                                                       std::to_string(cfg.s));
        auto& rows = per_truth[t];
        rows.reserve(cfg.n_e);
        Observation obs{cfg.kind, std::vector<double>(cfg.s)};
        for (std::size_t e = 0; e < cfg.n_e; ++e) {
            const auto picks = sample_neurons(rep.values.size(), cfg.s, rng);
            for (std::size_t k = 0; k < cfg.s; ++k)
                obs.values[k] = rep.values[picks[k]];
            const Estimate est = estimate_with_ci(table, obs, cfg.estimator, cfg.level, cfg.interpolation);
            rows.push_back({p, est.p_tilde, est.p_hat, est.ci->lo, est.ci->hi, est.flags});
        }
    });

    EvaluationResult res;
    res.variant = variant_label(cfg.kind, cfg.estimator);
    res.s = cfg.s;
    for (std::size_t t = 0; t < truths.size(); ++t) {
        const double target = cfg.remove_reciprocal ? reciprocal_removed_density(truths[t]) : truths[t];
        res.summaries.push_back(summarize_truth(truths[t], target, cfg.s, per_truth[t]));
        res.rows.insert(res.rows.end(), per_truth[t].begin(), per_truth[t].end());
    }
    return res;
}

inline std::string serialize_estimates(const EvaluationResult& r) {
    std::ostringstream os;
    os << "p_true,variant,s,p_tilde,p_hat,ci_lo,ci_hi,flags\n";
    for (const auto& row : r.rows)
        os << fmt_real(row.p_true) << ',' << r.variant << ',' << r.s << ',' << fmt_real(row.p_tilde) << ','
           << fmt_real(row.p_hat) << ',' << fmt_real(row.ci_lo) << ',' << fmt_real(row.ci_hi) << ','
           << flags_to_string(row.flags) << '\n';
    return os.str();
}

inline std::string serialize_summary(const EvaluationResult& r) {
    std::ostringstream os;
    os << "p_true,p_target,variant,s,n_estimates,mean_p_hat,rel_mae,rel_se,ci_noncoverage,baseline_rel_mae,"
          "baseline_rel_se\n";
    for (const auto& t : r.summaries)
        os << fmt_real(t.p_true) << ',' << fmt_real(t.p_target) << ',' << r.variant << ',' << r.s << ',' << t.count
           << ',' << fmt_real(t.mean_p_hat) << ',' << fmt_real(t.rel_mae) << ',' << fmt_real(t.rel_se) << ','
           << fmt_real(t.ci_noncoverage) << ',' << fmt_real(t.baseline_rel_mae) << ',' << fmt_real(t.baseline_rel_se)
           << '\n';
    return os.str();
}

inline EvaluationResult cmd_evaluate(const CampaignConfig& cfg) {
    RunManifest man{"evaluate", {}, detail::utc_timestamp(), {}, {}, {}, {}};
    const auto table = read_table(cfg.table_path());
    man.stream_policy = "family evaluate (1 long jump); truth point t uses stream t";
    auto res = evaluate(cfg, table);
    const std::string stem = std::string(to_string(cfg.kind)) + "_" + std::string(to_string(cfg.estimator)) +
                             (cfg.remove_reciprocal ? "_rrc" : "");
    const auto epath = cfg.out_dir() / ("estimates_" + stem + ".csv");
    const auto spath = cfg.out_dir() / ("summary_" + stem + ".csv");
    write_file_atomic(epath, serialize_estimates(res));
    write_file_atomic(spath, serialize_summary(res));
    man.outputs = {cfg.table_path().string(), epath.string(), spath.string()};
    man.notes.push_back("table input " + cfg.table_path().string());
    write_manifest(cfg, man);
    return res;
}

// --------------------------------------------------------------------------
// estimate (single observation)

/// Observation file: values separated by commas, whitespace or newlines; `# kind <k>` optional.
inline Observation parse_observation(std::string_view text, StatisticKind default_kind) {
    Observation obs{default_kind, {}};
    for (std::string_view rest = text; !rest.empty();) {
        const auto nl = rest.find('\n');
        std::string_view line = trim(rest.substr(0, nl));
        rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
        if (line.empty())
            continue;
        if (line.front() == '#') {
            const auto body = trim(line.substr(1));
            if (body.substr(0, 4) == "kind")
                obs.kind = parse_statistic_kind(trim(body.substr(4)));
            continue;
        }
        std::string buf(line);
        std::replace(buf.begin(), buf.end(), ',', ' ');
        std::istringstream is(buf);
        std::string tok;
        while (is >> tok)
            obs.values.push_back(parse_real(tok));
    }
    obs.validate();
    return obs;
}

inline Estimate cmd_estimate(const CampaignConfig& cfg) {
    if (cfg.observation.empty())
        throw Error(Errc::config, "estimate needs an observation file (--obs)");
    const auto table = read_table(cfg.table_path());
    const auto obs = parse_observation(read_file(cfg.observation), cfg.kind);
    const Estimate e = estimate_with_ci(table, obs, cfg.estimator, cfg.level, cfg.interpolation);
    std::ostringstream os;
    os << "variant,s,p_tilde,p_hat,ci_lo,ci_hi,level,flags\n"
       << variant_label(obs.kind, cfg.estimator) << ',' << obs.values.size() << ',' << fmt_real(e.p_tilde) << ','
       << fmt_real(e.p_hat) << ',' << fmt_real(e.ci->lo) << ',' << fmt_real(e.ci->hi) << ',' << fmt_real(cfg.level)
       << ',' << flags_to_string(e.flags) << '\n';
    std::ostringstream ll;
    ll << "p,loglik\n";
    for (std::size_t i = 0; i < e.grid.size(); ++i)
        ll << fmt_real(e.grid[i]) << ',' << fmt_real(e.loglik[i]) << '\n';
    write_file_atomic(cfg.out_dir() / "estimate.csv", os.str());
    write_file_atomic(cfg.out_dir() / "loglik.csv", ll.str());
    return e;
}

// --------------------------------------------------------------------------
// baseline

struct BaselineRow {
    std::size_t s;
    double p;
    double mae;
    double se;
};

inline std::vector<BaselineRow> baseline_rows(std::vector<std::size_t> s_list, std::vector<double> p_grid) {
    std::sort(s_list.begin(), s_list.end());
    std::sort(p_grid.begin(), p_grid.end());
    std::vector<BaselineRow> rows;
    for (std::size_t s : s_list)
        for (double p : p_grid)
            rows.push_back({s, p, optimal_reconstruction_mae(s, p), optimal_reconstruction_se(s, p)});
    return rows;
}

inline std::string serialize_baseline(std::span<const BaselineRow> rows) {
    std::ostringstream os;
    os << "s,p,optimal_mae,optimal_se\n";
    for (const auto& r : rows)
        os << r.s << ',' << fmt_real(r.p) << ',' << fmt_real(r.mae) << ',' << fmt_real(r.se) << '\n';
    return os.str();
}

inline std::vector<BaselineRow> cmd_baseline(const CampaignConfig& cfg) {
    for (std::size_t s : cfg.s_list)
        if (s < 2)
            throw Error(Errc::config, "baseline needs every s >= 2");
    RunManifest man{"baseline", {}, detail::utc_timestamp(), "none (deterministic closed form)", {}, {}, {}};
    const auto rows = baseline_rows(cfg.s_list, cfg.truth_values());
    const auto path = cfg.out_dir() / "baseline.csv";
    write_file_atomic(path, serialize_baseline(rows));
    man.outputs.push_back(path.string());
    write_manifest(cfg, man);
    return rows;
}

// --------------------------------------------------------------------------
// diagnostics

struct DiagnosticsResult {
    struct Corr {
        double p;
        PairSampleMode mode;
        double r;
    };
    std::vector<Corr> correlations;
    std::vector<std::tuple<double, PairSampleMode, double, double>> pairs;
    std::vector<std::pair<double, double>> mahalanobis; // (p, d2)
    std::vector<std::tuple<double, std::size_t, std::size_t, double, double>> distances; // p, m, bins, tv, w1
    std::vector<std::pair<double, QqData>> mahalanobis_qq;
    std::vector<std::pair<double, QqData>> deviance_qq;
};

/**
 * For each diagnostic p: diag_graphs simulated graphs (stream p_index *
 * diag_graphs + g in the diagnostics family). From each graph: pair samples
 * in both modes, s-dimensional statistic vectors for Mahalanobis distances,
 * and, when a table is given, deviance values of N_e/diag_graphs estimates.
 */
inline DiagnosticsResult diagnostics(const CampaignConfig& cfg, const SamplingDistributionTable* table) {
    cfg.validate_common();
    if (cfg.diag_graphs < 1)
        throw Error(Errc::config, "diag_graphs must be >= 1");
    if (table && table->meta.kind != cfg.kind)
        throw Error(Errc::kind_mismatch, "table statistic differs from configured kind");
    const std::size_t G = cfg.diag_graphs;
    const std::size_t tasks = cfg.diag_p.size() * G;
    std::vector<Xoshiro256pp> streams;
    StreamFactory factory(cfg.seed, StreamFamily::diagnostics);
    for (std::size_t t = 0; t < tasks; ++t)
        streams.push_back(factory.stream(t));

    auto share = [G](std::size_t total, std::size_t g) { return total / G + (g < total % G ? 1 : 0); };

    struct TaskOut {
        std::vector<std::pair<double, double>> random_pairs, post_pairs;
        std::vector<std::vector<double>> vectors;
        std::vector<double> values;
        std::vector<double> deviances;
    };
    std::vector<TaskOut> outs(tasks);
    parallel_for(tasks, cfg.workers, [&](std::size_t t) {
        auto& rng = streams[t];
        const std::size_t g = t % G;
        const double p = cfg.diag_p[t / G];
        DirectedGraph graph = generate_er(detail::graph_params(cfg, p), rng);
        if (cfg.remove_reciprocal)
            graph = remove_reciprocal(graph, rng);
        const auto rec = simulate(graph, detail::sim_config(cfg), rng);
        auto stats = neuron_statistics(rec, cfg.kind, graph.size());
        auto& o = outs[t];
        std::vector<double> computable;
        for (const auto& st : stats)
            if (!st.excluded)
                computable.push_back(st.value);
        o.values = computable;
        PairSampler sampler(graph, std::move(stats));
        const std::size_t npairs = share(cfg.diag_pairs, g);
        for (std::size_t k = 0; k < npairs; ++k)
            o.random_pairs.push_back(sampler.sample(PairSampleMode::Random, rng));
        for (std::size_t k = 0; k < npairs && graph.edge_count() > 0; ++k)
            o.post_pairs.push_back(sampler.sample(PairSampleMode::PostSynaptic, rng));
        if (computable.size() >= cfg.s) {
            const std::size_t nvec = share(cfg.diag_vectors, g);
            for (std::size_t k = 0; k < nvec; ++k) {
                const auto picks = sample_neurons(computable.size(), cfg.s, rng);
                std::vector<double> v(cfg.s);
                for (std::size_t c = 0; c < cfg.s; ++c)
                    v[c] = computable[picks[c]];
                o.vectors.push_back(std::move(v));
            }
            if (table) {
                const double target = cfg.remove_reciprocal ? reciprocal_removed_density(p) : p;
                const std::size_t nest = share(cfg.n_e, g);
                Observation obs{cfg.kind, std::vector<double>(cfg.s)};
                for (std::size_t k = 0; k < nest; ++k) {
                    const auto picks = sample_neurons(computable.size(), cfg.s, rng);
                    for (std::size_t c = 0; c < cfg.s; ++c)
                        obs.values[c] = computable[picks[c]];
                    const auto e = estimate_p(*table, obs, cfg.estimator, cfg.interpolation);
                    o.deviances.push_back(deviance(e, target));
                }
            }
        }
    });

    DiagnosticsResult res;
    for (std::size_t pi = 0; pi < cfg.diag_p.size(); ++pi) {
        const double p = cfg.diag_p[pi];
        std::vector<std::pair<double, double>> rnd, post;
        std::vector<std::vector<double>> vecs;
        std::vector<double> pooled, dev;
        for (std::size_t g = 0; g < G; ++g) {
            const auto& o = outs[pi * G + g];
            rnd.insert(rnd.end(), o.random_pairs.begin(), o.random_pairs.end());
            post.insert(post.end(), o.post_pairs.begin(), o.post_pairs.end());
            vecs.insert(vecs.end(), o.vectors.begin(), o.vectors.end());
            pooled.insert(pooled.end(), o.values.begin(), o.values.end());
            dev.insert(dev.end(), o.deviances.begin(), o.deviances.end());
        }
        for (const auto& [x, y] : rnd)
            res.pairs.emplace_back(p, PairSampleMode::Random, x, y);
        for (const auto& [x, y] : post)
            res.pairs.emplace_back(p, PairSampleMode::PostSynaptic, x, y);
        if (rnd.size() >= 2)
            res.correlations.push_back({p, PairSampleMode::Random, correlation(rnd)});
        if (post.size() >= 2)
            res.correlations.push_back({p, PairSampleMode::PostSynaptic, correlation(post)});
        if (vecs.size() >= cfg.s + 2) {
            const auto d2 = mahalanobis_sq(vecs);
            for (double d : d2)
                res.mahalanobis.emplace_back(p, d);
            const double dof = static_cast<double>(cfg.s);
            res.mahalanobis_qq.emplace_back(p, qq_data(d2, [dof](double q) { return chi_squared_quantile(q, dof); }));
        }
        if (pooled.size() >= 2) {
            const auto fit = fit_gaussian(pooled);
            const std::size_t bins = cfg.bins > 0 ? cfg.bins : freedman_diaconis_bins(pooled);
            res.distances.emplace_back(p, pooled.size(), bins, tv_distance(pooled, fit, bins),
                                       wasserstein_distance(pooled, fit));
        }
        if (dev.size() >= 2)
            res.deviance_qq.emplace_back(p, qq_data(dev, [](double q) { return chi_squared_quantile(q, 1.0); }));
    }
    return res;
}

inline DiagnosticsResult cmd_diagnostics(const CampaignConfig& cfg) {
    RunManifest man{"diagnostics", {}, detail::utc_timestamp(), {}, {}, {}, {}};
    man.stream_policy = "family diagnostics (2 long jumps); (diag p index i, graph g) uses stream i*diag_graphs+g";
    std::optional<SamplingDistributionTable> table;
    if (std::filesystem::exists(cfg.table_path()))
        table = read_table(cfg.table_path());
    else
        man.notes.push_back("no table at " + cfg.table_path().string() + "; deviance Q-Q skipped");
    const auto res = diagnostics(cfg, table ? &*table : nullptr);
    const std::string kind(to_string(cfg.kind));
    const auto dir = cfg.out_dir();

    std::ostringstream corr, pairs, maha, mqq, dist, lqq;
    corr << "p,mode,kind,r\n";
    for (const auto& c : res.correlations)
        corr << fmt_real(c.p) << ',' << to_string(c.mode) << ',' << kind << ',' << fmt_real(c.r) << '\n';
    pairs << "p,mode,kind,x,y\n";
    for (const auto& [p, mode, x, y] : res.pairs)
        pairs << fmt_real(p) << ',' << to_string(mode) << ',' << kind << ',' << fmt_real(x) << ',' << fmt_real(y) << '\n';
    maha << "p,d2\n";
    for (const auto& [p, d] : res.mahalanobis)
        maha << fmt_real(p) << ',' << fmt_real(d) << '\n';
    auto qq_rows = [](std::ostringstream& os, const std::vector<std::pair<double, QqData>>& sets) {
        os << "p,empirical_q,theoretical_q\n";
        for (const auto& [p, q] : sets)
            for (std::size_t k = 0; k < q.size(); ++k)
                os << fmt_real(p) << ',' << fmt_real(q.empirical[k]) << ',' << fmt_real(q.theoretical[k]) << '\n';
    };
    qq_rows(mqq, res.mahalanobis_qq);
    qq_rows(lqq, res.deviance_qq);
    dist << "p,kind,m,bins,tv,wasserstein\n";
    for (const auto& [p, m, bins, tv, w1] : res.distances)
        dist << fmt_real(p) << ',' << kind << ',' << m << ',' << bins << ',' << fmt_real(tv) << ',' << fmt_real(w1)
             << '\n';

    const std::vector<std::pair<std::string, std::string>> files = {
        {"correlations.csv", corr.str()},     {"pairs.csv", pairs.str()},
        {"mahalanobis.csv", maha.str()},      {"mahalanobis_qq.csv", mqq.str()},
        {"gaussian_distance.csv", dist.str()}, {"lr_qq.csv", lqq.str()},
    };
    for (const auto& [name, content] : files) {
        write_file_atomic(dir / name, content);
        man.outputs.push_back((dir / name).string());
    }
    write_manifest(cfg, man);
    return res;
}

} // namespace glsbi
