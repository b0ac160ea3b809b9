#include "harness/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "gbpwalk/csv.hpp"
#include "gbpwalk/errors.hpp"
#include "gbpwalk/paths.hpp"

namespace gbp::harness {

bool ConvergenceReport::all_monotone() const {
    return std::all_of(series.begin(), series.end(), [](const TrendSeries& s) { return s.monotone; });
}

void ConvergenceReport::write_csv(std::ostream& os) const {
    os << "target,n,finite,limit,error,slack\n";
    for (const auto& s : series)
        for (const auto& p : s.points)
            os << s.target << ',' << p.n << ',' << fmt17(p.finite) << ',' << fmt17(p.limit) << ',' << fmt17(p.error)
               << ',' << fmt17(p.slack) << '\n';
}

bool decreasing_trend(const std::vector<TrendPoint>& points) {
    if (points.size() < 2) return false;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double prev = points[i - 1].error, cur = points[i].error;
        if (prev <= kRoundingFloor && cur <= kRoundingFloor) continue;
        if (!(cur < prev + points[i].slack)) return false;
    }
    return true;
}

EmlParams limit_params(const KernelSpec& kernel, double b, double T) {
    EmlParams p;
    p.b = b;
    p.T = T;
    if (const auto* k = std::get_if<TemperedPower>(&kernel.variant)) {
        p.alpha = k->alpha;
        p.lambda = k->lambda;
        p.c = k->c;
    } else if (const auto* k = std::get_if<PurePower>(&kernel.variant)) {
        p.alpha = k->alpha;
        p.lambda = 0.0;
        p.c = k->c;
    } else if (const auto* k = std::get_if<Exponential>(&kernel.variant)) {
        p.alpha = 1.0;
        p.lambda = k->lambda;
        p.c = k->c;
    } else {
        throw PreconditionError("limit_params: no limit process for " + kernel_name(kernel));
    }
    validate_eml(p);
    return p;
}

double exact_increment_covariance(const Window& w, double t1, double t2, double delta) {
    const double n = static_cast<double>(w.n());
    if (!(delta > 0.0 && t1 - delta >= 0.0 && t2 - delta >= t1 && t2 <= w.spec().T))
        throw PreconditionError("exact_increment_covariance: need 0 <= t1 - delta, t1 <= t2 - delta, t2 <= T");
    const auto lo1 = static_cast<std::int64_t>(std::floor(n * (t1 - delta))) + 1;
    const auto hi1 = static_cast<std::int64_t>(std::floor(n * t1));
    const auto lo2 = static_cast<std::int64_t>(std::floor(n * (t2 - delta))) + 1;
    const auto hi2 = static_cast<std::int64_t>(std::floor(n * t2));
    const double bf = w.bfT();
    double acc = 0.0;
    for (std::int64_t i = lo1; i <= hi1; ++i)
        for (std::int64_t j = std::max(lo2, i + 1); j <= hi2; ++j) acc += bf * w.f(j - i) - bf * bf;
    return acc / std::pow(n, 2.0 * w.alpha());
}

double kolmogorov_distance(std::vector<double> samples, const std::function<double(double)>& cdf,
                           const std::function<double(double)>& cdf_left, const std::vector<double>& jumps) {
    if (samples.empty()) throw PreconditionError("kolmogorov_distance: no samples");
    std::sort(samples.begin(), samples.end());
    std::vector<double> points = samples;
    points.insert(points.end(), jumps.begin(), jumps.end());
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    const double N = static_cast<double>(samples.size());
    double d = 0.0;
    for (double v : points) {
        const double below = static_cast<double>(std::lower_bound(samples.begin(), samples.end(), v) - samples.begin());
        const double upto = static_cast<double>(std::upper_bound(samples.begin(), samples.end(), v) - samples.begin());
        d = std::max({d, std::abs(upto / N - cdf(v)), std::abs(below / N - cdf_left(v))});
    }
    return d;
}

ConvergenceReport convergence_study(const ConvergenceSpec& spec) {
    if (spec.n_values.size() < 3 || !std::is_sorted(spec.n_values.begin(), spec.n_values.end()) ||
        std::adjacent_find(spec.n_values.begin(), spec.n_values.end()) != spec.n_values.end())
        throw PreconditionError("convergence_study: need at least 3 increasing n values");
    ConvergenceReport report;
    const bool window_targets = spec.kmax > 0 || spec.cov_times.has_value();
    if (window_targets) {
        const EmlParams p = limit_params(spec.kernel, spec.b, spec.T);
        std::vector<TrendSeries> moments(static_cast<std::size_t>(std::max(spec.kmax, 0)));
        for (int k = 1; k <= spec.kmax; ++k) moments[static_cast<std::size_t>(k - 1)].target = "moment_k" + std::to_string(k);
        TrendSeries cov;
        cov.target = "increment_covariance";
        std::vector<double> limit_moment;
        for (int k = 1; k <= spec.kmax; ++k) limit_moment.push_back(moment_X(p, k, spec.t));
        double limit_cov = 0.0;
        if (spec.cov_times) {
            const auto [t1, t2] = *spec.cov_times;
            const double m = mixed_moment(p, increment_spec({t1, t2}, spec.delta, {1, 1}, false)).value;
            limit_cov = m - std::pow(spec.delta * p.aT(), 2.0);
        }
        for (std::int64_t n : spec.n_values) {
            const Window w(WindowSpec{spec.kernel, n, spec.T, spec.b});
            for (int k = 1; k <= spec.kmax; ++k) {
                const double f = exact_walk_moment(w, spec.t, k);
                const double l = limit_moment[static_cast<std::size_t>(k - 1)];
                moments[static_cast<std::size_t>(k - 1)].points.push_back({n, f, l, std::abs(f / l - 1.0), 0.0});
            }
            if (spec.cov_times) {
                const double f = exact_increment_covariance(w, spec.cov_times->first, spec.cov_times->second, spec.delta);
                cov.points.push_back({n, f, limit_cov, std::abs(f / limit_cov - 1.0), 0.0});
            }
        }
        for (auto& s : moments) {
            s.monotone = decreasing_trend(s.points);
            report.series.push_back(std::move(s));
        }
        if (spec.cov_times) {
            cov.monotone = decreasing_trend(cov.points);
            report.series.push_back(std::move(cov));
        }
    }
    if (spec.star_cdf) {
        const auto* k = std::get_if<Exponential>(&spec.kernel.variant);
        if (!k || k->c != 1.0) throw PreconditionError("convergence_study: star CDF target needs an exponential kernel with c = 1");
        if (spec.mc_count < 100) throw PreconditionError("convergence_study: star CDF target needs mc_count >= 100");
        const double lam = k->lambda, t = spec.cdf_t;
        auto cdf = [&](double x) { return x < 0.0 ? 0.0 : x >= t ? 1.0 : 1.0 - std::exp(-lam * x); };
        auto left = [&](double x) { return x <= 0.0 ? 0.0 : x > t ? 1.0 : 1.0 - std::exp(-lam * x); };
        TrendSeries s;
        s.target = "star_kolmogorov";
        // 99% quantile of the Kolmogorov statistic.
        const double slack = 1.63 / std::sqrt(static_cast<double>(spec.mc_count));
        for (std::int64_t n : spec.n_values) {
            const double nt = static_cast<double>(n) * t;
            if (nt != std::floor(nt)) throw PreconditionError("convergence_study: n * cdf_t must be an integer");
            const PathEnsemble e =
                scaled_walk_paths(StarSource{spec.kernel, n, t}, {t}, spec.mc_count, spec.seed, spec.threads);
            const double d = kolmogorov_distance(e.values, cdf, left, {t});
            s.points.push_back({n, d, 0.0, d, slack});
        }
        s.monotone = decreasing_trend(s.points);
        report.series.push_back(std::move(s));
    }
    if (report.series.empty()) throw PreconditionError("convergence_study: no targets enabled");
    return report;
}

}  // namespace gbp::harness
