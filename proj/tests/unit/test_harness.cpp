#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "gbpwalk/errors.hpp"
#include "harness/config.hpp"
#include "harness/convergence.hpp"
#include "harness/manifest.hpp"
#include "harness/svg.hpp"
#include "harness/verbs.hpp"

using namespace gbp;
using namespace gbp::harness;
namespace fs = std::filesystem;

namespace {

const char* kSampleIni = R"([run]
seed = 12

[kernel]
variant = tempered_power
c = 0.5
alpha = 0.6
lambda = 1

[window]
n = 50

[sample]
source = window
grid = linspace(0.2, 1, 5)
count = 2000
)";

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("gbpwalk_test_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST(Config, ParsesTypedValues) {
    const auto cfg = ExperimentConfig::from_string(kSampleIni);
    EXPECT_EQ(cfg.get_int("window", "n"), 50);
    EXPECT_EQ(cfg.get_u64("run", "seed"), 12u);
    EXPECT_DOUBLE_EQ(cfg.get_double("window", "T", 1.0), 1.0);
    EXPECT_EQ(cfg.get_string("sample", "source"), "window");
    EXPECT_EQ(cfg.get_list("sample", "grid"), (std::vector<double>{0.2, 0.4, 0.6000000000000001, 0.8, 1.0}));
    EXPECT_FALSE(cfg.get_bool("sample", "absent", false));
    EXPECT_TRUE(cfg.has_section("kernel"));
    EXPECT_FALSE(cfg.has("kernel", "p"));
}

TEST(Config, ListForms) {
    EXPECT_EQ(parse_list("1, 2,3", "x"), (std::vector<double>{1, 2, 3}));
    const auto g = parse_list("geomspace(1, 100, 3)", "x");
    ASSERT_EQ(g.size(), 3u);
    EXPECT_NEAR(g[1], 10.0, 1e-12);
    EXPECT_THROW(parse_list("linspace(0, 1)", "x"), ConfigError);
    EXPECT_THROW(parse_number("1.5x", "x"), ConfigError);
}

TEST(Config, TypeErrorsAreConfigErrors) {
    auto cfg = ExperimentConfig::from_string(kSampleIni);
    cfg.apply_override("window.n=abc");
    EXPECT_THROW(cfg.get_int("window", "n"), ConfigError);
    EXPECT_THROW(cfg.get_double("sample", "missing"), ConfigError);
    EXPECT_THROW(cfg.apply_override("no_dot=1"), ConfigError);
    EXPECT_THROW(ExperimentConfig::from_string("[a\nb = 1"), ConfigError);
    EXPECT_THROW(cfg.require_keys_within("sample", {"source", "grid"}), ConfigError);
}

TEST(Config, KernelAndLevySections) {
    const auto cfg = ExperimentConfig::from_string(kSampleIni);
    const KernelSpec k = parse_kernel(cfg);
    ASSERT_TRUE(std::holds_alternative<TemperedPower>(k.variant));
    EXPECT_EQ(std::get<TemperedPower>(k.variant).alpha, 0.6);
    auto bad = cfg;
    bad.set("kernel", "c", "0.9");
    EXPECT_THROW(parse_kernel(bad), ConfigError);
    bad.set("kernel", "variant", "cubic");
    EXPECT_THROW(parse_kernel(bad), ConfigError);
    const auto levy = parse_levy(ExperimentConfig::from_string("[levy]\nvariant = stable\nbeta = 1.2\nC = 1\n"));
    EXPECT_EQ(std::get<StableLevy>(levy).beta, 1.2);
}

TEST(Config, HashIsCanonical) {
    const auto a = ExperimentConfig::from_string("[x]\nb = 2\na = 1\n[w]\nk = v\n");
    const auto b = ExperimentConfig::from_string("[w]\nk = v\n[x]\na = 1\nb = 2\n");
    EXPECT_EQ(a.canonical(), b.canonical());
    EXPECT_EQ(a.content_hash(), b.content_hash());
    auto c = a;
    c.apply_override("x.a=3");
    EXPECT_NE(a.content_hash(), c.content_hash());
    EXPECT_EQ(sha1_hex("abc"), "a9993e364706816aba3e25717850c26c9cd0d89d");
}

TEST(Manifest, RoundTrip) {
    RunManifest m;
    m.version = "1.2.3";
    m.verb = "moments";
    m.content_hash = "abc";
    m.seed = 77;
    m.threads = 3;
    m.config_echo = "[a]\nb = 1\n";
    m.artifacts = {"moments.csv"};
    m.add(make_check("err", 1e-12, Relation::le, 1e-10));
    m.add(make_check("nan", std::nan(""), Relation::le, 1.0));
    m.add(make_flag("ok", true));
    std::stringstream ss;
    m.write(ss);
    const RunManifest r = RunManifest::read(ss);
    EXPECT_EQ(r.verb, "moments");
    EXPECT_EQ(r.seed, std::optional<std::uint64_t>(77));
    EXPECT_EQ(r.threads, 3u);
    EXPECT_EQ(r.artifacts, m.artifacts);
    ASSERT_EQ(r.checks.size(), 3u);
    EXPECT_EQ(r.checks[0].measured, 1e-12);
    EXPECT_TRUE(r.checks[0].pass);
    EXPECT_TRUE(std::isnan(r.checks[1].measured));
    EXPECT_FALSE(r.checks[1].pass);
    EXPECT_FALSE(r.all_pass());
    EXPECT_EQ(r.config_echo, m.config_echo);
}

TEST(Manifest, Relations) {
    EXPECT_TRUE(make_check("a", 1.0, Relation::le, 1.0).pass);
    EXPECT_FALSE(make_check("a", 1.0, Relation::lt, 1.0).pass);
    EXPECT_TRUE(make_check("a", 2.0, Relation::gt, 1.0).pass);
    EXPECT_FALSE(make_flag("f", false).pass);
}

TEST(Convergence, TrendRule) {
    std::vector<TrendPoint> p{{10, 0, 0, 0.1, 0}, {100, 0, 0, 0.05, 0}, {1000, 0, 0, 0.01, 0}};
    EXPECT_TRUE(decreasing_trend(p));
    p[2].error = 0.06;
    EXPECT_FALSE(decreasing_trend(p));
    p[2].slack = 0.02;
    EXPECT_TRUE(decreasing_trend(p));
    std::vector<TrendPoint> exact{{10, 0, 0, 1e-16, 0}, {100, 0, 0, 5e-16, 0}, {1000, 0, 0, 0, 0}};
    EXPECT_TRUE(decreasing_trend(exact));
}

TEST(Convergence, KolmogorovDistanceOfUniformSample) {
    const auto cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
    EXPECT_NEAR(kolmogorov_distance({0.25, 0.75}, cdf, cdf, {}), 0.25, 1e-15);
    const auto step = [](double x) { return x >= 0.5 ? 1.0 : 0.0; };
    const auto step_left = [](double x) { return x > 0.5 ? 1.0 : 0.0; };
    EXPECT_NEAR(kolmogorov_distance({0.5, 0.5}, step, step_left, {0.5}), 0.0, 1e-15);
}

TEST(Convergence, ExactIncrementCovarianceMatchesPairSum) {
    const Window w(WindowSpec{PurePower{0.5, 0.5}, 20, 1.0, 0.5});
    // Increments over positions 3..4 and 9..10, i.e. t1 = 0.2, t2 = 0.5, delta = 0.1.
    const double bf = w.bfT();
    double e12 = 0.0;
    for (int i = 3; i <= 4; ++i)
        for (int j = 9; j <= 10; ++j) e12 += bf * w.f(j - i);
    const double expected = (e12 - 4.0 * bf * bf) / 20.0;
    EXPECT_NEAR(exact_increment_covariance(w, 0.2, 0.5, 0.1), expected, 1e-15);
}

TEST(Convergence, LimitParamsRejectShiftedKernels) {
    EXPECT_THROW(limit_params(ShiftedExponential{0.2, 0.3}, 0.5, 1.0), PreconditionError);
    const EmlParams p = limit_params(Exponential{0.7, 2.0}, 0.5, 1.0);
    EXPECT_EQ(p.alpha, 1.0);
    EXPECT_EQ(p.c_value(), 0.7);
}

TEST(Svg, WritesPolyline) {
    std::ostringstream os;
    write_line_svg(os, {{"a", {1, 10, 100}, {1, 0.1, 0.01}}}, {"t", "n", "err", true, true});
    EXPECT_NE(os.str().find("<svg"), std::string::npos);
    EXPECT_NE(os.str().find("polyline"), std::string::npos);
}

TEST(Verbs, SampleArtifactsAreThreadIndependent) {
    const auto cfg = ExperimentConfig::from_string(kSampleIni);
    const fs::path a = scratch("a"), b = scratch("b");
    RunOptions oa{a.string(), std::nullopt, 1, false}, ob{b.string(), std::nullopt, 3, false};
    const RunManifest ma = run_verb("sample", cfg, oa);
    const RunManifest mb = run_verb("sample", cfg, ob);
    EXPECT_EQ(exit_status(ma), 0);
    EXPECT_EQ(ma.content_hash, mb.content_hash);
    EXPECT_EQ(slurp(a / "paths.csv"), slurp(b / "paths.csv"));
    EXPECT_TRUE(fs::exists(a / "manifest.txt"));
    std::ifstream in(a / "manifest.txt");
    const RunManifest back = RunManifest::read(in);
    EXPECT_EQ(back.checks.size(), ma.checks.size());
}

TEST(Verbs, SeedFlagEntersHash) {
    const auto cfg = ExperimentConfig::from_string(kSampleIni);
    RunOptions o{scratch("seed").string(), 99, 1, false};
    const RunManifest m = run_verb("sample", cfg, o);
    EXPECT_EQ(m.seed, std::optional<std::uint64_t>(99));
    EXPECT_NE(m.content_hash, cfg.content_hash());
    EXPECT_NE(m.config_echo.find("seed = 99"), std::string::npos);
}

TEST(Verbs, ConfigurationProblemsEscape) {
    const auto cfg = ExperimentConfig::from_string(kSampleIni);
    const auto noseed = ExperimentConfig::from_string(std::string(kSampleIni).replace(0, 16, ""));
    RunOptions o{scratch("bad").string(), std::nullopt, 1, false};
    EXPECT_THROW(run_verb("sample", noseed, o), ConfigError);
    EXPECT_THROW(run_verb("nonesuch", cfg, o), ConfigError);
    auto typo = ExperimentConfig::from_string(kSampleIni);
    typo.set("sample", "cuont", "5");
    EXPECT_THROW(run_verb("sample", typo, o), ConfigError);
}

TEST(Verbs, FailedChecksGiveExitOne) {
    const auto cfg = ExperimentConfig::from_string(R"([eml]
alpha = 0.5
lambda = 0
b = 0.5
T = 1

[pde]
case = ml_star
x = 0.5
t_min = 0.5
t_max = 1
step = 0.05
levels = 2
max_final = 1e-30
)");
    const RunManifest m = run_verb("pde-check", cfg, RunOptions{scratch("fail").string(), std::nullopt, 1, false});
    EXPECT_FALSE(m.all_pass());
    EXPECT_EQ(exit_status(m), 1);
}

TEST(Verbs, EnumerateAndReport) {
    const auto cfg = ExperimentConfig::from_string(R"([kernel]
variant = exponential
c = 0.9
lambda = 1

[window]
n = 10
)");
    const fs::path d = scratch("enum");
    const RunManifest m = run_verb("enumerate", cfg, RunOptions{d.string(), std::nullopt, 1, false});
    EXPECT_EQ(exit_status(m), 0);
    const std::string csv = slurp(d / "enumeration.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1025);
    const auto rep = ExperimentConfig::from_string("[report]\ninputs = " + d.string() + "\n");
    const fs::path r = scratch("report");
    const RunManifest mr = run_verb("report", rep, RunOptions{r.string(), std::nullopt, 1, false});
    EXPECT_EQ(mr.checks.size(), m.checks.size());
    EXPECT_TRUE(mr.all_pass());
}
