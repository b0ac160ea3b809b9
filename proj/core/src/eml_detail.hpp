#pragma once

#include <cmath>
#include <limits>

#include "gbpwalk/specfun.hpp"

namespace gbp::detail {

// log of int_0^t e^(-lambda y) y^(a-1) / Gamma(a) dy
inline double log_J0(double a, double lambda, double t) {
    if (t <= 0.0) return -std::numeric_limits<double>::infinity();
    return a * std::log(t) + log_lower_gamma_scaled(a, lambda * t);
}

// log of int_0^t (t - y) e^(-lambda y) y^(a-1) / Gamma(a) dy
inline double log_J1(double a, double lambda, double t) {
    if (t <= 0.0) return -std::numeric_limits<double>::infinity();
    const double x = lambda * t;
    if (x < a + 2.0) {
        // t^(a+1) e^(-x) / Gamma(a+2) * sum_j (j+1) x^j / (a+2)_j
        double term = 1.0, sum = 1.0;
        for (int j = 0; j < 100000; ++j) {
            term *= x * (j + 2.0) / ((j + 1.0) * (a + 2.0 + j));
            sum += term;
            if (term < sum * 1e-17) break;
        }
        return (a + 1.0) * std::log(t) - x - std::lgamma(a + 2.0) + std::log(sum);
    }
    const double l0 = log_J0(a, lambda, t);
    const double l1 = log_J0(a + 1.0, lambda, t);
    return std::log(t) + l0 + std::log1p(-a * std::exp(l1 - l0 - std::log(t)));
}

inline double J0(double a, double lambda, double t) { return t <= 0.0 ? 0.0 : std::exp(log_J0(a, lambda, t)); }
inline double J1(double a, double lambda, double t) { return t <= 0.0 ? 0.0 : std::exp(log_J1(a, lambda, t)); }

}  // namespace gbp::detail
