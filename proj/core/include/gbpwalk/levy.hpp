#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>

#include "gbpwalk/rng.hpp"

namespace gbp {

// psi(s) = i drift s - sigma^2 s^2 / 2
struct BrownianLevy {
    double drift = 0.0;
    double sigma = 1.0;
};

// psi(s) = C (p (i s)^beta + q (-i s)^beta) + i drift s, principal branches.
// C > 0 for beta in (1, 2], C < 0 for beta in (0, 1).
struct StableLevy {
    double beta = 1.5;
    double C = 1.0;
    double p = 0.5;
    double q = 0.5;
    double drift = 0.0;
};

// psi(s) = -C ((mu + i s)^beta - mu^beta), beta in (0, 1). The law sits on (-inf, 0].
struct TemperedStableLevy {
    double beta = 0.5;
    double mu = 1.0;
    double C = 1.0;
};

using LevySpec = std::variant<BrownianLevy, StableLevy, TemperedStableLevy>;

void validate_levy(const LevySpec& spec);
std::string describe(const LevySpec& spec);

std::complex<double> levy_exponent(const LevySpec& spec, double s);

// E Y(1) when finite.
std::optional<double> levy_mean(const LevySpec& spec);
// Var Y(1) when finite.
std::optional<double> levy_variance(const LevySpec& spec);

// Simulation parameters of a stable law in the S(beta, skew, scale, shift) form with
// characteristic exponent -scale^beta |s|^beta (1 - i skew sgn(s) tan(pi beta / 2)) + i shift s.
struct StableSimParams {
    double beta = 1.5;
    double skew = 0.0;
    double scale = 1.0;
    double shift = 0.0;
};
StableSimParams stable_sim_params(const StableLevy& s);

// Positive stable variate with E exp(-u S) = exp(-u^beta), beta in (0, 1].
double sample_positive_stable(double beta, CounterRng& rng);

// Y(duration) for duration >= 0.
double sample_levy_increment(const LevySpec& spec, double duration, CounterRng& rng);

inline constexpr long kTemperedRejectionCap = 1000000;

}  // namespace gbp
