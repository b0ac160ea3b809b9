#include "harness/verbs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "gbpwalk/csv.hpp"
#include "gbpwalk/densities.hpp"
#include "gbpwalk/eml.hpp"
#include "gbpwalk/exact.hpp"
#include "gbpwalk/kernel.hpp"
#include "gbpwalk/paths.hpp"
#include "gbpwalk/pde.hpp"
#include "gbpwalk/subordination.hpp"
#include "harness/convergence.hpp"
#include "harness/svg.hpp"

#ifndef GBPWALK_VERSION
#define GBPWALK_VERSION "0.0.0"
#endif

namespace gbp::harness {

namespace fs = std::filesystem;

namespace {

struct Context {
    const ExperimentConfig& cfg;
    const RunOptions& opt;
    RunManifest& manifest;

    std::ofstream open(const std::string& name) const {
        const fs::path p = fs::path(opt.out_dir) / name;
        std::ofstream os(p);
        if (!os) throw ConfigError("cannot write '" + p.string() + "'");
        manifest.artifacts.push_back(name);
        return os;
    }
    std::uint64_t seed() const { return cfg.get_u64("run", "seed"); }
};

std::vector<std::string> split_strings(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

void svg_table(const Context& ctx, const std::string& name, const std::vector<PlotSeries>& series, PlotOptions opt) {
    if (!ctx.opt.svg) return;
    auto os = ctx.open(name);
    write_line_svg(os, series, opt);
}

// kernel-check: assumption report over [1, max_x]
void verb_kernel_check(const Context& ctx) {
    const auto& cfg = ctx.cfg;
    cfg.require_keys_within("check", {"max_x"});
    const KernelSpec k = parse_kernel(cfg);
    const std::int64_t n = cfg.get_int("window", "n");
    const double T = cfg.get_double("window", "T", 1.0);
    const std::int64_t max_x = cfg.get_int("check", "max_x", default_check_length(n, T));
    const AssumptionReport r = check_assumption(k, n, max_x);
    {
        auto os = ctx.open("kernel.csv");
        os << "x,f\n";
        for (std::int64_t x = 1; x <= max_x; ++x) os << x << ',' << fmt17(eval_kernel_unchecked(k, double(x), double(n))) << '\n';
    }
    ctx.manifest.add(make_flag("decreasing", r.decreasing));
    ctx.manifest.add(make_flag("ratio_nondecreasing", r.ratio_nondecreasing));
    ctx.manifest.add(make_check("two_point_margin", r.f2 - r.f1 * r.f1, Relation::gt, 0.0));
    ctx.manifest.add(make_flag("in_unit_interval", r.in_unit_interval));
}

// enumerate: full law of a small window
void verb_enumerate(const Context& ctx) {
    const Window w(parse_window(ctx.cfg));
    const DistributionTable t = enumerate_distribution(w);
    {
        auto os = ctx.open("enumeration.csv");
        t.write_csv(os);
    }
    const int N = t.N;
    double sum = 0.0, min = 1.0;
    for (double p : t.prob) {
        sum += p;
        min = std::min(min, p);
    }
    const double bf = w.bfT();
    std::vector<double> marginal(static_cast<std::size_t>(N), 0.0), pair(static_cast<std::size_t>(N), 0.0);
    for (std::uint32_t mask = 0; mask < t.prob.size(); ++mask) {
        for (int i = 0; i < N; ++i)
            if (mask >> i & 1u) marginal[static_cast<std::size_t>(i)] += t.prob[mask];
        if (mask & 1u)
            for (int k = 1; k < N; ++k)
                if (mask >> k & 1u) pair[static_cast<std::size_t>(k)] += t.prob[mask];
    }
    double marg_err = 0.0, corr_err = 0.0;
    for (double m : marginal) marg_err = std::max(marg_err, std::abs(m - bf));
    for (int k = 1; k < N; ++k) {
        const double corr = (pair[static_cast<std::size_t>(k)] - bf * bf) / (bf * (1.0 - bf));
        corr_err = std::max(corr_err, std::abs(corr - pair_correlation(w, k)));
    }
    ctx.manifest.add(make_check("total_probability_error", std::abs(sum - 1.0), Relation::le, 1e-12));
    ctx.manifest.add(make_check("min_probability", min, Relation::ge, 0.0));
    ctx.manifest.add(make_check("marginal_error", marg_err, Relation::le, 1e-12));
    ctx.manifest.add(make_check("correlation_error", corr_err, Relation::le, 1e-12));
}

// sample: scaled walk ensemble
void verb_sample(const Context& ctx) {
    const auto& cfg = ctx.cfg;
    cfg.require_keys_within("sample", {"source", "grid", "count", "n", "horizon"});
    const std::string source = cfg.get_string("sample", "source", "window");
    const std::vector<double> grid = cfg.get_list("sample", "grid");
    const std::int64_t count = cfg.get_int("sample", "count");
    PathEnsemble e;
    double exact_mean = 0.0;
    const double t_last = grid.back();
    if (source == "window") {
        const Window w(parse_window(cfg));
        e = scaled_walk_paths(w, grid, count, ctx.seed(), ctx.opt.threads);
        exact_mean = exact_walk_moment(w, t_last, 1);
    } else if (source == "star") {
        const KernelSpec k = parse_kernel(cfg);
        const std::int64_t n = cfg.get_int("sample", "n");
        const double horizon = cfg.get_double("sample", "horizon", t_last);
        e = scaled_walk_paths(StarSource{k, n, horizon}, grid, count, ctx.seed(), ctx.opt.threads);
        const auto m = static_cast<std::int64_t>(std::floor(static_cast<double>(n) * t_last));
        for (std::int64_t i = 1; i <= m; ++i) exact_mean += eval_kernel(k, i, n);
        exact_mean /= std::pow(static_cast<double>(n), kernel_alpha(k));
    } else {
        throw ConfigError("[sample] source: expected window or star");
    }
    {
        auto os = ctx.open("paths.csv");
        write_ensemble_csv(os, e);
    }
    {
        auto os = ctx.open("paths_meta.txt");
        write_ensemble_metadata(os, e, cfg.canonical(), cfg.content_hash());
    }
    bool monotone = true;
    for (std::int64_t i = 0; i < e.count && monotone; ++i)
        for (std::size_t g = 0; g < grid.size(); ++g)
            if (e.at(i, g) < (g ? e.at(i, g - 1) : 0.0)) monotone = false;
    const Estimate est = empirical_statistics(e, {{0.0, t_last, 1}});
    ctx.manifest.add(make_flag("paths_nondecreasing", monotone));
    ctx.manifest.add(make_check("mean_z_score", std::abs(est.mean - exact_mean) / est.stderr_, Relation::le, 4.0));
}

// converge: finite-n versus limit trends
void verb_converge(const Context& ctx) {
    const auto& cfg = ctx.cfg;
    cfg.require_keys_within("converge", {"n", "t", "kmax", "cov_t1", "cov_t2", "delta", "star_cdf", "cdf_t", "count",
                                         "final_tol"});
    ConvergenceSpec s;
    s.kernel = parse_kernel(cfg);
    s.T = cfg.get_double("window", "T", 1.0);
    s.b = cfg.get_double("window", "b", 0.5);
    s.n_values = cfg.get_int_list("converge", "n");
    s.t = cfg.get_double("converge", "t", s.T);
    s.kmax = static_cast<int>(cfg.get_int("converge", "kmax", 3));
    if (cfg.has("converge", "cov_t1"))
        s.cov_times = std::pair{cfg.get_double("converge", "cov_t1"), cfg.get_double("converge", "cov_t2")};
    s.delta = cfg.get_double("converge", "delta", 0.1);
    s.star_cdf = cfg.get_bool("converge", "star_cdf", false);
    if (s.star_cdf) {
        s.cdf_t = cfg.get_double("converge", "cdf_t", 1.0);
        s.mc_count = cfg.get_int("converge", "count");
        s.seed = ctx.seed();
        s.threads = ctx.opt.threads;
    }
    const ConvergenceReport r = convergence_study(s);
    {
        auto os = ctx.open("convergence.csv");
        r.write_csv(os);
    }
    std::vector<PlotSeries> plot;
    for (const auto& series : r.series) {
        PlotSeries ps{series.target, {}, {}};
        for (const auto& p : series.points) {
            ps.x.push_back(static_cast<double>(p.n));
            ps.y.push_back(p.error);
        }
        plot.push_back(ps);
        ctx.manifest.add(make_flag(series.target + "_decreasing", series.monotone));
        if (cfg.has("converge", "final_tol"))
            ctx.manifest.add(make_check(series.target + "_final_error", series.final_error(), Relation::lt,
                                        cfg.get_double("converge", "final_tol")));
    }
    svg_table(ctx, "convergence.svg", plot, {"convergence", "n", "error", true, true});
}

// moments: marginal moment tables with internal consistency checks
void verb_moments(const Context& ctx) {
    const auto& cfg = ctx.cfg;
    cfg.require_keys_within("moments", {"t", "kmax"});
    const EmlParams p = parse_eml(cfg);
    const std::vector<double> ts = cfg.get_list("moments", "t");
    const int kmax = static_cast<int>(cfg.get_int("moments", "kmax", 3));
    auto os = ctx.open("moments.csv");
    os << "process,t,k,value,closed,mgf_coefficient\n";
    double coef_err = 0.0, closed_err = 0.0;
    bool have_closed = false;
    for (double t : ts) {
        for (int k = 1; k <= kmax; ++k) {
            const double fact = std::tgamma(k + 1.0);
            for (bool star : {true, false}) {
                if (!star && t > p.T) continue;
                const double v = star ? moment_Xstar(p, k, t) : moment_X(p, k, t);
                const double coef = mgf_coefficient(p, k, t, star);
                coef_err = std::max(coef_err, std::abs(fact * coef / v - 1.0));
                double closed = std::nan("");
                if (p.lambda == 0.0) closed = star ? closed::ml_moment_Xstar(p, k, t) : closed::ml_moment_X(p, k, t);
                else if (p.alpha == 1.0 && star) closed = closed::exp_moment_Xstar(p, k, t);
                if (!std::isnan(closed)) {
                    have_closed = true;
                    closed_err = std::max(closed_err, std::abs(closed / v - 1.0));
                }
                os << (star ? "Xstar" : "X") << ',' << fmt17(t) << ',' << k << ',' << fmt17(v) << ',' << fmt17(closed)
                   << ',' << fmt17(coef) << '\n';
            }
        }
    }
    ctx.manifest.add(make_check("mgf_coefficient_rel_error", coef_err, Relation::le, 1e-8));
    if (have_closed) ctx.manifest.add(make_check("closed_form_rel_error", closed_err, Relation::le, 1e-10));
}

// mixed-moment: one ordered-chain moment
void verb_mixed_moment(const Context& ctx) {
    const auto& cfg = ctx.cfg;
    cfg.require_keys_within("mixed", {"times", "C", "k", "star", "delta"});
    const EmlParams p = parse_eml(cfg);
    MixedMomentSpec s;
    const bool star = cfg.get_bool("mixed", "star", false);
    if (cfg.has("mixed", "delta")) {
        std::vector<int> k;
        for (auto v : cfg.get_int_list("mixed", "k")) k.push_back(static_cast<int>(v));
        s = increment_spec(cfg.get_list("mixed", "times"), cfg.get_double("mixed", "delta"), k, star);
    } else {
        s.times = cfg.get_list("mixed", "times");
        for (auto v : cfg.get_int_list("mixed", "C")) s.C.push_back(static_cast<int>(v));
        for (auto v : cfg.get_int_list("mixed", "k")) s.k.push_back(static_cast<int>(v));
        s.star = star;
    }
    const MixedMomentResult r = mixed_moment(p, s);
    auto os = ctx.open("mixed_moment.csv");
    os << "value,A,dimension\n" << fmt17(r.value) << ',' << fmt17(r.A) << ',' << r.dimension << '\n';
    ctx.manifest.add(make_flag("value_finite_nonnegative", std::isfinite(r.value) && r.value >= 0.0));
}

// density: law of X*_t or X_t on a grid
void verb_density(const Context& ctx) {
    const auto& cfg = ctx.cfg;
    cfg.require_keys_within("density", {"which", "t", "x_max", "points", "mass_tol"});
    const EmlParams p = parse_eml(cfg);
    const std::string which = cfg.get_string("density", "which", "star");
    const double t = cfg.get_double("density", "t");
    const std::int64_t points = cfg.get_int("density", "points", 2001);
    if (points < 3) throw ConfigError("[density] points: need at least 3");
    double x_max = cfg.get_double("density", "x_max", 0.0);
    if (which == "star" && x_max <= 0.0) x_max = truncate_star_support(p, t).x_max;
    if (which == "X" && x_max <= 0.0) x_max = p.nu() * t;
    if (!(x_max > 0.0)) throw ConfigError("[density] x_max must be > 0");
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (std::int64_t i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = x_max * double(i) / double(points - 1);
    MixtureDensity d;
    double mean = 0.0;
    if (which == "star") {
        d = pdf_star_mixture(p, grid, t);
        mean = moment_Xstar(p, 1, t);
    } else if (which == "X") {
        d = pdf_X(p, grid, t);
        mean = moment_X(p, 1, t);
    } else {
        throw ConfigError("[density] which: expected star or X");
    }
    {
        auto os = ctx.open("density.csv");
        d.write_csv(os);
    }
    {
        auto os = ctx.open("atoms.csv");
        d.write_atoms_csv(os);
    }
    const double tol = cfg.get_double("density", "mass_tol", 1e-3);
    ctx.manifest.add(make_check("total_mass_error", std::abs(d.total_mass() - 1.0), Relation::le, tol));
    ctx.manifest.add(make_check("mean_rel_error", std::abs(d.moment(1) / mean - 1.0), Relation::le, tol));
    svg_table(ctx, "density.svg", {{"density", d.grid, d.values}}, {"density at t = " + fmt17(t), "x", "p", false, false});
}

PdeCase parse_pde_case(const std::string& s) {
    if (s == "star") return PdeCase::star;
    if (s == "X") return PdeCase::X;
    if (s == "ml_star") return PdeCase::ml_star;
    if (s == "exp_star") return PdeCase::exp_star;
    throw ConfigError("[pde] case: expected star, X, ml_star or exp_star");
}

// pde-check: residual table across step halvings
void verb_pde_check(const Context& ctx) {
    const auto& cfg = ctx.cfg;
    cfg.require_keys_within("pde", {"case", "x", "t_min", "t_max", "step", "levels", "dx", "min_order", "max_final",
                                    "analytic_tol"});
    const EmlParams p = parse_eml(cfg);
    PdeCheckSpec s;
    s.which = parse_pde_case(cfg.get_string("pde", "case"));
    s.x_grid = cfg.get_list("pde", "x");
    s.t_min = cfg.get_double("pde", "t_min", s.t_min);
    s.t_max = cfg.get_double("pde", "t_max", s.t_max);
    s.step = cfg.get_double("pde", "step", s.step);
    s.levels = static_cast<int>(cfg.get_int("pde", "levels", s.levels));
    s.dx = cfg.get_double("pde", "dx", s.dx);
    const PdeReport r = pde_residual(p, s);
    {
        auto os = ctx.open("pde_levels.csv");
        os << "step,max_abs,mean_abs\n";
        for (const auto& l : r.levels) os << fmt17(l.step) << ',' << fmt17(l.max_abs) << ',' << fmt17(l.mean_abs) << '\n';
    }
    {
        auto os = ctx.open("pde_field.csv");
        r.write_csv(os);
    }
    ctx.manifest.add(make_flag("residual_decreasing", r.decreasing()));
    if (cfg.has("pde", "min_order") && !r.observed_order.empty())
        ctx.manifest.add(make_check("min_observed_order",
                                    *std::min_element(r.observed_order.begin(), r.observed_order.end()), Relation::ge,
                                    cfg.get_double("pde", "min_order")));
    if (cfg.has("pde", "max_final"))
        ctx.manifest.add(make_check("final_max_residual", r.levels.back().max_abs, Relation::lt,
                                    cfg.get_double("pde", "max_final")));
    if (s.which == PdeCase::exp_star)
        ctx.manifest.add(make_check("analytic_residual", r.analytic_max_abs, Relation::lt,
                                    cfg.get_double("pde", "analytic_tol", 1e-10)));
    PlotSeries ps{"max residual", {}, {}};
    for (const auto& l : r.levels) {
        ps.x.push_back(l.step);
        ps.y.push_back(l.max_abs);
    }
    svg_table(ctx, "pde_levels.svg", {ps}, {"PDE residual", "step", "max |residual|", true, true});
}

// subordinate: characteristic functions, Monte Carlo composition and Fourier residuals
void verb_subordinate(const Context& ctx) {
    const auto& cfg = ctx.cfg;
    cfg.require_keys_within("subordinate", {"t", "s", "count", "star", "grid", "step", "levels", "t_min", "t_max",
                                            "z_score"});
    const EmlParams p = parse_eml(cfg);
    const LevySpec levy = parse_levy(cfg);
    const bool star = cfg.get_bool("subordinate", "star", true);
    const std::vector<double> ts = cfg.get_list("subordinate", "t");
    const std::vector<double> ss = cfg.get_list("subordinate", "s");
    const double zmax = cfg.get_double("subordinate", "z_score", 4.0);
    {
        auto os = ctx.open("charfn.csv");
        os << "s,t,re,im\n";
        for (double t : ts)
            for (double s : ss) {
                const auto v = char_fn_Z(p, levy, {s}, {t}, star);
                os << fmt17(s) << ',' << fmt17(t) << ',' << fmt17(v.real()) << ',' << fmt17(v.imag()) << '\n';
            }
    }
    if (star && cfg.has("subordinate", "count")) {
        const std::int64_t count = cfg.get_int("subordinate", "count");
        const std::uint64_t seed = ctx.seed();
        auto os = ctx.open("ecf.csv");
        os << "s,t,re,im,stderr_re,stderr_im,model_re,model_im\n";
        double worst = 0.0, worst_mean = 0.0;
        const auto mean = levy_mean(levy);
        for (std::size_t ti = 0; ti < ts.size(); ++ti) {
            const double t = ts[ti];
            const auto x = sample_star_marginal(p, t, count, seed + ti);
            std::vector<double> z(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                CounterRng rng = substream(seed + ti, i, StreamDomain::levy);
                z[i] = sample_levy_increment(levy, x[i], rng);
            }
            for (double s : ss) {
                const auto e = empirical_char_fn(z, s);
                const auto m = char_fn_Z(p, levy, {s}, {t}, true);
                worst = std::max({worst, std::abs(e.value.real() - m.real()) / std::max(e.stderr_re, 1e-300),
                                  std::abs(e.value.imag() - m.imag()) / std::max(e.stderr_im, 1e-300)});
                os << fmt17(s) << ',' << fmt17(t) << ',' << fmt17(e.value.real()) << ',' << fmt17(e.value.imag()) << ','
                   << fmt17(e.stderr_re) << ',' << fmt17(e.stderr_im) << ',' << fmt17(m.real()) << ','
                   << fmt17(m.imag()) << '\n';
            }
            if (mean) {
                double sz = 0.0, sz2 = 0.0;
                for (double v : z) {
                    sz += v;
                    sz2 += v * v;
                }
                const double n = static_cast<double>(z.size());
                const double mz = sz / n, se = std::sqrt(std::max(0.0, sz2 / n - mz * mz) / (n - 1.0));
                worst_mean = std::max(worst_mean, std::abs(mz - *mean * moment_Xstar(p, 1, t)) / se);
            }
        }
        ctx.manifest.add(make_check("ecf_max_z", worst, Relation::le, zmax));
        if (mean) ctx.manifest.add(make_check("mean_identity_max_z", worst_mean, Relation::le, zmax));
    }
    FourierCheckSpec fc;
    fc.star = star;
    fc.s_grid = cfg.get_list("subordinate", "grid", ss);
    fc.step = cfg.get_double("subordinate", "step", fc.step);
    fc.levels = static_cast<int>(cfg.get_int("subordinate", "levels", fc.levels));
    fc.t_min = cfg.get_double("subordinate", "t_min", star ? fc.t_min : 0.25 * p.T);
    fc.t_max = cfg.get_double("subordinate", "t_max", star ? fc.t_max : p.T);
    const FourierReport fr = governing_check_fourier(p, levy, fc);
    {
        auto os = ctx.open("fourier.csv");
        fr.write_csv(os);
    }
    ctx.manifest.add(make_flag("fourier_residual_decreasing", fr.decreasing()));
    if (p.alpha == 1.0) ctx.manifest.add(make_check("fourier_analytic_residual", fr.analytic_max_abs, Relation::lt, 1e-10));
}

// report: merge manifests of earlier runs
void verb_report(const Context& ctx) {
    const auto& cfg = ctx.cfg;
    cfg.require_keys_within("report", {"inputs"});
    const auto dirs = split_strings(cfg.get_string("report", "inputs"));
    if (dirs.empty()) throw ConfigError("[report] inputs: empty");
    auto csv = ctx.open("report.csv");
    auto txt = ctx.open("report.txt");
    csv << "input,verb,check,measured,relation,threshold,status\n";
    for (const auto& d : dirs) {
        const fs::path mp = fs::path(d) / "manifest.txt";
        std::ifstream in(mp);
        if (!in) throw ConfigError("[report] cannot read '" + mp.string() + "'");
        const RunManifest m = RunManifest::read(in);
        txt << d << ": " << m.verb << ' ' << (m.all_pass() ? "pass" : "fail") << " (" << m.checks.size() << " checks, "
            << fmt17(m.wall_seconds) << " s)\n";
        if (!m.error.empty()) {
            txt << "  error: " << m.error << '\n';
            ctx.manifest.add(make_flag(d + ":completed", false));
        }
        for (const auto& c : m.checks) {
            csv << d << ',' << m.verb << ',' << c.name << ',' << fmt17(c.measured) << ',' << relation_symbol(c.relation)
                << ',' << fmt17(c.threshold) << ',' << (c.pass ? "pass" : "fail") << '\n';
            txt << "  " << (c.pass ? "pass " : "FAIL ") << c.name << " = " << fmt17(c.measured) << ' '
                << relation_symbol(c.relation) << ' ' << fmt17(c.threshold) << '\n';
            CheckRecord copy = c;
            copy.name = d + ":" + c.name;
            ctx.manifest.add(copy);
        }
    }
}

using VerbFn = void (*)(const Context&);

const std::map<std::string, VerbFn>& verb_table() {
    static const std::map<std::string, VerbFn> table{
        {"kernel-check", verb_kernel_check}, {"enumerate", verb_enumerate}, {"sample", verb_sample},
        {"converge", verb_converge},         {"moments", verb_moments},     {"mixed-moment", verb_mixed_moment},
        {"density", verb_density},           {"pde-check", verb_pde_check}, {"subordinate", verb_subordinate},
        {"report", verb_report},
    };
    return table;
}

}  // namespace

std::string tool_version() { return GBPWALK_VERSION; }

const std::vector<std::string>& verb_names() {
    static const std::vector<std::string> names{"kernel-check", "enumerate", "sample",    "converge",    "moments",
                                                "mixed-moment", "density",   "pde-check", "subordinate", "report"};
    return names;
}

bool is_stochastic(const std::string& verb, const ExperimentConfig& cfg) {
    if (verb == "sample") return true;
    if (verb == "converge") return cfg.get_bool("converge", "star_cdf", false);
    if (verb == "subordinate") return cfg.get_bool("subordinate", "star", true) && cfg.has("subordinate", "count");
    return false;
}

RunManifest run_verb(const std::string& verb, ExperimentConfig cfg, const RunOptions& opt) {
    const auto it = verb_table().find(verb);
    if (it == verb_table().end()) throw ConfigError("unknown verb '" + verb + "'");
    if (opt.seed) cfg.set("run", "seed", std::to_string(*opt.seed));
    cfg.require_keys_within("run", {"seed"});
    if (is_stochastic(verb, cfg)) {
        if (!cfg.has("run", "seed")) throw ConfigError(verb + ": a seed is required ([run] seed or --seed)");
        cfg.get_u64("run", "seed");
    }
    fs::create_directories(opt.out_dir);

    RunManifest m;
    m.version = tool_version();
    m.verb = verb;
    m.content_hash = cfg.content_hash();
    if (cfg.has("run", "seed")) m.seed = cfg.get_u64("run", "seed");
    m.threads = opt.threads;
    m.config_echo = cfg.canonical();
    const auto start = std::chrono::steady_clock::now();
    const Context ctx{cfg, opt, m};
    try {
        it->second(ctx);
    } catch (const ConfigError&) {
        throw;
    } catch (const InvalidKernel& e) {
        throw ConfigError(e.what());
    } catch (const PreconditionError& e) {
        throw ConfigError(e.what());
    } catch (const Refusal& e) {
        throw ConfigError(e.what());
    } catch (const Error& e) {
        m.error = e.what();
    }
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ofstream os(fs::path(opt.out_dir) / "manifest.txt");
    if (!os) throw ConfigError("cannot write manifest in '" + opt.out_dir + "'");
    m.write(os);
    return m;
}

int exit_status(const RunManifest& m) { return m.all_pass() ? 0 : 1; }

}  // namespace gbp::harness
