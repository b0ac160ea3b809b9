#include "gbpwalk/subordination.hpp"

#include <cmath>
#include <limits>

#include "gbpwalk/csv.hpp"
#include "gbpwalk/errors.hpp"
#include "gbpwalk/fracderiv.hpp"
#include "gbpwalk/parallel.hpp"

namespace gbp {

namespace {

using cd = std::complex<double>;

// e^(-lambda t) RL derivative of e^(lambda s) s^j at t, j = 0 or 1, alpha < 1.
double tempered_rl_of_power(double alpha, double lambda, double t, int j) {
    const double z = lambda * t;
    double term = 1.0 / std::tgamma(j + 1.0 - alpha);
    double sum = term;
    for (int k = 1; k < 2000; ++k) {
        term *= z / (k + j - alpha);
        const double add = j == 0 ? term : (k + 1.0) * term;
        sum += add;
        if (add < 1e-17 * sum) break;
    }
    return std::exp(-z) * std::pow(t, j - alpha) * sum;
}

struct ExpForms {
    cd phi, dphi;
};

// alpha = 1 transforms at unit c and their exact time derivatives.
ExpForms exp_transform(double lambda, double a1, cd theta, double t, bool star) {
    const cd kappa = theta - lambda;
    if (std::abs(kappa) == 0.0) throw DomainError("governing_check_fourier: theta = lambda");
    const cd E = std::exp(kappa * t);
    if (star) return {lambda * (E - 1.0) / kappa + E, theta * E};
    const cd I0 = (E - 1.0) / kappa;
    const cd I1 = t * E / kappa - (E - 1.0) / (kappa * kappa);
    const cd phi = 1.0 - a1 * (1.0 + lambda * t) + a1 * lambda * ((2.0 + lambda * t) * I0 - lambda * I1) + a1 * E;
    const cd dphi = -a1 * lambda + a1 * lambda * lambda * I0 + a1 * (lambda + theta) * E;
    return {phi, dphi};
}

}  // namespace

std::complex<double> char_fn_Z(const EmlParams& p, const LevySpec& spec, const std::vector<double>& s,
                               const std::vector<double>& t, bool star, const FddControl& ctl) {
    validate_eml(p);
    validate_levy(spec);
    const std::size_t m = s.size();
    if (m == 0 || t.size() != m) throw PreconditionError("char_fn_Z: need one s per time");
    if (m > static_cast<std::size_t>(kMaxCharFnDimension)) throw Refusal("char_fn_Z: dimension above 3");
    std::vector<cd> theta(m);
    double acc = 0.0;
    bool all_zero = true;
    for (std::size_t i = m; i-- > 0;) {
        acc += s[i];
        theta[i] = levy_exponent(spec, acc);
        all_zero = all_zero && s[i] == 0.0;
    }
    if (all_zero) return 1.0;
    if (m == 1) return star ? mgf_star(p, theta[0], t[0]) : mgf_marginal(p, theta[0], t[0]);
    return mgf_fdd(p, theta, t, star, ctl);
}

PathEnsemble subordinate_paths(const LevySpec& levy, const PathEnsemble& ensemble, std::uint64_t seed,
                               unsigned threads) {
    validate_levy(levy);
    PathEnsemble z = ensemble;
    z.seed = seed;
    z.variant = "Z/" + ensemble.variant;
    z.source = ensemble.source + ";" + describe(levy);
    const std::size_t G = ensemble.grid.size();
    parallel_for(static_cast<std::size_t>(ensemble.count), threads, [&](std::size_t i) {
        CounterRng rng = substream(seed, i, StreamDomain::levy);
        const auto path = static_cast<std::int64_t>(i);
        double prev = 0.0, acc = 0.0;
        for (std::size_t g = 0; g < G; ++g) {
            const double x = ensemble.at(path, g);
            const double d = x - prev;
            if (d < 0.0) throw DataError("subordinate_paths: time change decreases on path " + std::to_string(i));
            acc += sample_levy_increment(levy, d, rng);
            z.at(path, g) = acc;
            prev = x;
        }
    });
    return z;
}

std::vector<double> sample_star_marginal(const EmlParams& p, double t, std::int64_t count, std::uint64_t seed) {
    validate_eml(p);
    if (!(t > 0.0)) throw PreconditionError("sample_star_marginal: t must be > 0");
    if (count < 1) throw PreconditionError("sample_star_marginal: count must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(count));
    const double nu = p.nu();
    for (std::int64_t i = 0; i < count; ++i) {
        CounterRng rng = substream(seed, static_cast<std::uint64_t>(i), StreamDomain::misc);
        const double e = rng.exponential();
        const double tau = p.lambda > 0.0 ? e / p.lambda : std::numeric_limits<double>::infinity();
        const double y = std::min(tau, t);
        const double S = sample_positive_stable(p.alpha, rng);
        out[static_cast<std::size_t>(i)] = nu * std::pow(y / S, p.alpha);
    }
    return out;
}

EcfEstimate empirical_char_fn(const std::vector<double>& samples, double s) {
    if (samples.size() < 2) throw PreconditionError("empirical_char_fn: need at least 2 samples");
    double sc = 0.0, ss = 0.0, sc2 = 0.0, ss2 = 0.0;
    for (double x : samples) {
        const double c = std::cos(s * x), d = std::sin(s * x);
        sc += c;
        ss += d;
        sc2 += c * c;
        ss2 += d * d;
    }
    const double n = static_cast<double>(samples.size());
    const double mc = sc / n, ms = ss / n;
    EcfEstimate r;
    r.value = {mc, ms};
    r.stderr_re = std::sqrt(std::max(0.0, sc2 / n - mc * mc) / (n - 1.0));
    r.stderr_im = std::sqrt(std::max(0.0, ss2 / n - ms * ms) / (n - 1.0));
    return r;
}

bool FourierReport::decreasing() const {
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (!(levels[i].max_abs < levels[i - 1].max_abs)) return false;
    return levels.size() >= 2;
}

void FourierReport::write_csv(std::ostream& os) const {
    os << "step,max_abs,mean_abs\n";
    for (const auto& l : levels) os << fmt17(l.step) << ',' << fmt17(l.max_abs) << ',' << fmt17(l.mean_abs) << '\n';
}

FourierReport governing_check_fourier(const EmlParams& p, const LevySpec& spec, const FourierCheckSpec& check) {
    validate_eml(p);
    validate_levy(spec);
    if (check.s_grid.empty()) throw PreconditionError("governing_check_fourier: empty s grid");
    if (!(check.t_max > check.t_min && check.t_min > 0.0))
        throw PreconditionError("governing_check_fourier: need 0 < t_min < t_max");
    if (!(check.step > 0.0) || check.levels < 1) throw PreconditionError("governing_check_fourier: bad step data");
    if (!check.star && check.t_max > p.T * (1.0 + 1e-12))
        throw PreconditionError("governing_check_fourier: t_max must not exceed T");
    const double a = p.alpha, lam = p.lambda, nu = p.nu(), a1 = p.aT() / nu;
    const bool star = check.star;
    FourierReport report;
    for (int level = 0; level < check.levels; ++level) {
        const double h = check.step / std::pow(2.0, level);
        const auto n = static_cast<std::size_t>(std::llround(check.t_max / h)) + 1;
        const FracOperator op{FracKind::tempered_RL, a, lam, h};
        double mx = 0.0, sum = 0.0;
        std::size_t cnt = 0;
        for (double s : check.s_grid) {
            const cd theta = nu * levy_exponent(spec, s);
            std::vector<cd> phi(n, 1.0);
            for (std::size_t j = 1; j < n; ++j) {
                const double t = h * static_cast<double>(j);
                phi[j] = a == 1.0 ? exp_transform(lam, a1, theta, t, star).phi : char_fn_Z(p, spec, {s}, {t}, star);
            }
            const auto Dphi = apply_frac_derivative(op, phi);
            for (std::size_t j = 0; j < n; ++j) {
                const double t = h * static_cast<double>(j);
                if (t < check.t_min * (1.0 - 1e-12)) continue;
                const double D1 = a == 1.0 ? lam : tempered_rl_of_power(a, lam, t, 0);
                cd r = Dphi[j] - theta * phi[j] - D1;
                if (!star) {
                    const double Dt = a == 1.0 ? 1.0 + lam * t : tempered_rl_of_power(a, lam, t, 1);
                    r += theta * (1.0 - a1 * Dt);
                }
                mx = std::max(mx, std::abs(r));
                sum += std::abs(r);
                ++cnt;
            }
        }
        report.levels.push_back({h, mx, cnt ? sum / static_cast<double>(cnt) : 0.0});
    }
    for (std::size_t i = 1; i < report.levels.size(); ++i)
        report.observed_order.push_back(std::log2(report.levels[i - 1].max_abs / report.levels[i].max_abs));
    if (a == 1.0) {
        double mx = 0.0;
        for (double s : check.s_grid) {
            const cd theta = nu * levy_exponent(spec, s);
            for (double t = check.t_min; t <= check.t_max * (1.0 + 1e-12); t += check.step) {
                const ExpForms f = exp_transform(lam, a1, theta, t, star);
                cd r = f.dphi + lam * f.phi - theta * f.phi - lam;
                if (!star) r += theta * (1.0 - a1 * (1.0 + lam * t));
                mx = std::max(mx, std::abs(r));
            }
        }
        report.analytic_max_abs = mx;
    }
    return report;
}

IncrementDependenceReport increment_dependence_Z(const EmlParams& p, const LevySpec& spec, const PathEnsemble& X,
                                                 const std::vector<double>& times, double delta, std::uint64_t seed,
                                                 unsigned threads) {
    validate_eml(p);
    const auto mean = levy_mean(spec);
    if (!mean) throw PreconditionError("increment_dependence_Z: Levy law needs a finite mean");
    if (times.empty() || !(delta > 0.0)) throw PreconditionError("increment_dependence_Z: need times and delta > 0");
    std::vector<IncrementPower> q;
    for (double t : times) q.push_back({t - delta, t, 1});
    const PathEnsemble Z = subordinate_paths(spec, X, seed, threads);
    const Estimate ez = empirical_statistics(Z, q);
    const Estimate ex = empirical_statistics(X, q);
    IncrementDependenceReport r;
    r.mc = ez.mean;
    r.mc_stderr = ez.stderr_;
    r.mean_power = std::pow(*mean, static_cast<double>(times.size()));
    r.mc_X = ex.mean;
    r.mc_X_stderr = ex.stderr_;
    r.analytic_X = mixed_moment(p, increment_spec(times, delta, std::vector<int>(times.size(), 1), false)).value;
    r.ratio_to_paths = r.mc / (r.mean_power * r.mc_X);
    r.ratio_to_analytic = r.mc / (r.mean_power * r.analytic_X);
    r.ratio_stderr = r.mc_stderr / std::abs(r.mean_power * r.mc_X);
    return r;
}

}  // namespace gbp
