#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gbpwalk/eml.hpp"
#include "gbpwalk/exact.hpp"

namespace gbp::harness {

struct ConvergenceSpec {
    KernelSpec kernel;  // evaluated at each n of the sweep
    std::vector<std::int64_t> n_values;
    double T = 1.0;
    double b = 0.5;
    double t = 1.0;
    int kmax = 3;  // exact moments k = 1..kmax; 0 disables

    // Exact covariance of the increments over (t1 - delta, t1] and (t2 - delta, t2].
    std::optional<std::pair<double, double>> cov_times;
    double delta = 0.1;

    // Monte Carlo Kolmogorov distance of the star walk at cdf_t; needs an exponential kernel with c = 1.
    bool star_cdf = false;
    double cdf_t = 1.0;
    std::int64_t mc_count = 0;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct TrendPoint {
    std::int64_t n = 0;
    double finite = 0.0;
    double limit = 0.0;
    double error = 0.0;  // relative error, or the distance itself for CDF targets
    double slack = 0.0;  // Monte Carlo allowance used in the trend test
};

struct TrendSeries {
    std::string target;
    std::vector<TrendPoint> points;
    bool monotone = false;
    double final_error() const { return points.empty() ? 0.0 : points.back().error; }
};

struct ConvergenceReport {
    std::vector<TrendSeries> series;
    bool all_monotone() const;
    void write_csv(std::ostream& os) const;
};

// Relative errors at or below this are treated as exact in trend tests.
inline constexpr double kRoundingFloor = 1e-13;

// Each error below the previous one (plus slack), or both at the rounding floor.
bool decreasing_trend(const std::vector<TrendPoint>& points);

// Limit parameters of the window family; shifted kernels have none.
EmlParams limit_params(const KernelSpec& kernel, double b, double T);

// Exact cov of walk increments over (t1 - delta, t1] and (t2 - delta, t2], t2 - delta >= t1.
double exact_increment_covariance(const Window& w, double t1, double t2, double delta);

// sup |F_n - F| with F continuous except at the listed jump points.
double kolmogorov_distance(std::vector<double> samples, const std::function<double(double)>& cdf,
                           const std::function<double(double)>& cdf_left, const std::vector<double>& jumps);

ConvergenceReport convergence_study(const ConvergenceSpec& spec);

}  // namespace gbp::harness
