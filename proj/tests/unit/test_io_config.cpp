#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "glsbi/config.hpp"
#include "glsbi/io.hpp"

using namespace glsbi;
namespace fs = std::filesystem;

namespace {

SamplingDistributionTable random_table(std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    SamplingDistributionTable t;
    t.meta = {StatisticKind::GammaAlpha, 123, 4567, 8, U(gen), U(gen), gen(), true};
    double p = U(gen) * 1e-3;
    for (int i = 0; i < 5; ++i) {
        p += 1e-3 * (0.1 + U(gen));
        std::vector<double> v(40);
        for (auto& x : v)
            x = p * (1.0 + U(gen)) + std::ldexp(U(gen), -40);
        t.points.push_back(fit_table_point(p, v, i, 3 + i));
    }
    return t;
}

fs::path scratch(const std::string& name) {
    auto d = fs::temp_directory_path() / ("glsbi_unit_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

} // namespace

TEST(Io, RealFormattingRoundTrips) {
    std::mt19937_64 gen(1);
    for (int k = 0; k < 10'000; ++k) {
        const double x = std::ldexp(static_cast<double>(gen()), -static_cast<int>(gen() % 120));
        EXPECT_EQ(parse_real(fmt_real(x)), x);
    }
    EXPECT_EQ(fmt_real(0.1), "0.10000000000000001");
    EXPECT_THROW(parse_real("1.5x"), Error);
    EXPECT_THROW(parse_real(""), Error);
    EXPECT_EQ(parse_integer<int>("42"), 42);
    EXPECT_THROW(parse_integer<int>("4.2"), Error);
    EXPECT_THROW(parse_integer<unsigned>("-1"), Error);
}

TEST(Io, SplitAndTrim) {
    EXPECT_EQ(trim("  a b \t\n"), "a b");
    const auto f = split("a, b,,c ", ',');
    ASSERT_EQ(f.size(), 4u);
    EXPECT_EQ(f[1], "b");
    EXPECT_EQ(f[2], "");
    EXPECT_EQ(f[3], "c");
}

TEST(Io, TableRoundTripIsExact) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto t = random_table(seed);
        const auto text = serialize_table(t);
        const auto back = parse_table(text);
        EXPECT_EQ(back.meta.kind, t.meta.kind);
        EXPECT_EQ(back.meta.n, t.meta.n);
        EXPECT_EQ(back.meta.T, t.meta.T);
        EXPECT_EQ(back.meta.K, t.meta.K);
        EXPECT_EQ(back.meta.w, t.meta.w);
        EXPECT_EQ(back.meta.v0, t.meta.v0);
        EXPECT_EQ(back.meta.seed, t.meta.seed);
        EXPECT_EQ(back.meta.remove_reciprocal, t.meta.remove_reciprocal);
        ASSERT_EQ(back.size(), t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            EXPECT_EQ(back.points[i].p, t.points[i].p);
            EXPECT_EQ(back.points[i].m, t.points[i].m);
            EXPECT_EQ(back.points[i].excluded, t.points[i].excluded);
            EXPECT_EQ(back.points[i].gaussian.mu, t.points[i].gaussian.mu);
            EXPECT_EQ(back.points[i].gaussian.sigma, t.points[i].gaussian.sigma);
            EXPECT_EQ(back.points[i].histogram.edges, t.points[i].histogram.edges);
            EXPECT_EQ(back.points[i].histogram.densities, t.points[i].histogram.densities);
        }
        EXPECT_EQ(serialize_table(back), text);
    }
}

TEST(Io, TableParseErrors) {
    const auto good = serialize_table(random_table(3));
    auto expect_format = [](const std::string& text) {
        try {
            parse_table(text);
            FAIL() << "accepted:\n" << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::format);
        }
    };
    expect_format("");
    expect_format("0.1,5,0,1,1,1,0,1,1\n");                                      // no header
    expect_format("# glsbi-table 2\n");                                          // version
    expect_format("# glsbi-table 1\n0.1,5,0,1,1\n");                            // short
    expect_format("# glsbi-table 1\n0.1,5,0,1,1,2,0,1,2,0.5\n");                // field count
    expect_format("# glsbi-table 1\n0.2,5,0,1,1,1,0,1,1\n0.1,5,0,1,1,1,0,1,1\n"); // not ascending
    expect_format("# glsbi-table 1\n");                                         // no points
    auto corrupted = good;
    corrupted[corrupted.size() - 3] = 'x';
    expect_format(corrupted);
}

TEST(Io, AtomicWriteAndRead) {
    const auto dir = scratch("atomic");
    const auto path = dir / "sub" / "file.txt";
    write_file_atomic(path, "hello\n");
    EXPECT_EQ(read_file(path), "hello\n");
    write_file_atomic(path, "second");
    EXPECT_EQ(read_file(path), "second");
    EXPECT_FALSE(fs::exists(dir / "sub" / "file.txt.tmp"));
    try {
        read_file(dir / "missing");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::io);
    }
    write_table(dir / "t.csv", random_table(4));
    EXPECT_EQ(serialize_table(read_table(dir / "t.csv")), serialize_table(random_table(4)));
}

TEST(Io, StatisticsDump) {
    std::vector<std::vector<ReplicateStatistics>> samples(1);
    ReplicateStatistics r;
    r.values = {0.5, 0.25};
    r.neurons = {0, 2};
    r.excluded = {{1, Errc::insufficient_spikes}};
    samples[0].push_back(r);
    const std::vector<double> grid{0.01};
    EXPECT_EQ(serialize_statistics(StatisticKind::SpikeFreq, grid, samples),
              "p,graph_id,neuron_id,kind,value,excluded_reason\n"
              "0.01,0,0,spikefreq,0.5,\n"
              "0.01,0,1,spikefreq,NA,InsufficientSpikes\n"
              "0.01,0,2,spikefreq,0.25,\n");
}

TEST(Config, ParsesAndEchoes) {
    CampaignConfig c;
    apply_config_text(c, "# comment\n n = 300 \nT=5000 # trailing\nkind = alpha\neval_values = 0.01, 0.02\n"
                         "remove_reciprocal = yes\nestimator = histogram\ninterpolation = loglikelihood\n");
    EXPECT_EQ(c.n, 300u);
    EXPECT_EQ(c.T, 5000u);
    EXPECT_EQ(c.kind, StatisticKind::GammaAlpha);
    EXPECT_EQ(c.truth_values(), (std::vector<double>{0.01, 0.02}));
    EXPECT_TRUE(c.remove_reciprocal);
    EXPECT_EQ(c.estimator, Estimator::Histogram);
    EXPECT_EQ(c.interpolation, Interpolation::LogLikelihood);
    EXPECT_EQ(c.table_path(), fs::path("run") / "table_alpha.csv");

    CampaignConfig d;
    apply_config_text(d, c.to_text());
    EXPECT_EQ(d.to_text(), c.to_text());
}

TEST(Config, Errors) {
    CampaignConfig c;
    auto expect_config = [&](std::string_view text) {
        try {
            apply_config_text(c, text);
            FAIL() << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::config);
        }
    };
    expect_config("bogus = 1");
    expect_config("n = ten");
    expect_config("just a line");
    expect_config("kind = rate");
    expect_config("remove_reciprocal = maybe");
    try {
        load_config_file(c, "/nonexistent/cfg");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::config);
    }
}

TEST(Config, GridValues) {
    const GridSpec g{0.005, 0.002, 21};
    const auto v = g.values();
    ASSERT_EQ(v.size(), 21u);
    EXPECT_EQ(v.front(), 0.005);
    EXPECT_NEAR(v.back(), 0.045, 1e-15);
    CampaignConfig c;
    EXPECT_EQ(c.truth_values().size(), 10u);
}
