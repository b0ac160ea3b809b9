#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <vector>

#include "gbpwalk/eml.hpp"
#include "gbpwalk/levy.hpp"
#include "gbpwalk/paths.hpp"
#include "gbpwalk/pde.hpp"

namespace gbp {

inline constexpr int kMaxCharFnDimension = 3;

// E exp(i sum s_j Z_{t_j}) for Z = Y(X) (or Y(X*) when star).
std::complex<double> char_fn_Z(const EmlParams& p, const LevySpec& spec, const std::vector<double>& s,
                               const std::vector<double>& t, bool star, const FddControl& ctl = {});

// Z paths on the ensemble grid; path i uses Levy substream i of seed.
PathEnsemble subordinate_paths(const LevySpec& levy, const PathEnsemble& ensemble, std::uint64_t seed,
                               unsigned threads = 1);

// Draws of X*_t from the limit law, X*_t = nu E(min(tau, t)) with E the inverse
// alpha-stable subordinator and tau ~ Exp(lambda) independent (tau = inf at lambda = 0).
std::vector<double> sample_star_marginal(const EmlParams& p, double t, std::int64_t count, std::uint64_t seed);

struct EcfEstimate {
    std::complex<double> value;
    double stderr_re = 0.0;
    double stderr_im = 0.0;
};
EcfEstimate empirical_char_fn(const std::vector<double>& samples, double s);

struct FourierCheckSpec {
    bool star = true;
    std::vector<double> s_grid;
    double t_min = 0.5;
    double t_max = 2.0;
    double step = 0.02;
    int levels = 4;
};

struct FourierReport {
    std::vector<PdeLevel> levels;
    std::vector<double> observed_order;
    // alpha = 1: residual of the ordinary equation with exact time derivatives.
    double analytic_max_abs = 0.0;
    bool decreasing() const;
    void write_csv(std::ostream& os) const;
};

// Residual of D_t^(alpha,lambda) phi - theta phi - D_t(1) (+ theta (1 - a1 D_t(t)) for X), with
// phi(t) = char_fn_Z(s, t), theta = nu psi(s) and a1 = a_T / nu.
FourierReport governing_check_fourier(const EmlParams& p, const LevySpec& spec, const FourierCheckSpec& check);

struct IncrementDependenceReport {
    double mc = 0.0;  // E prod grad Z
    double mc_stderr = 0.0;
    double mean_power = 0.0;           // E(Y)^k with k the total order
    double mc_X = 0.0;                 // E prod grad X from the same paths
    double mc_X_stderr = 0.0;
    double analytic_X = 0.0;           // mixed_moment of the limit
    double ratio_to_paths = 0.0;       // mc / (E(Y)^k mc_X)
    double ratio_to_analytic = 0.0;    // mc / (E(Y)^k analytic_X)
    double ratio_stderr = 0.0;
};

// Unit increments grad_i = V(t_i) - V(t_i - delta) over a walk ensemble of X (window source).
IncrementDependenceReport increment_dependence_Z(const EmlParams& p, const LevySpec& spec, const PathEnsemble& X,
                                                 const std::vector<double>& times, double delta, std::uint64_t seed,
                                                 unsigned threads = 1);

}  // namespace gbp
