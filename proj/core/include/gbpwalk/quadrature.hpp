#pragma once

#include <functional>

namespace gbp {

struct QuadControl {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_intervals = 4000;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

using Integrand = std::function<double(double)>;

// Globally adaptive 21-point Gauss-Kronrod with bisection of the worst interval.
QuadResult integrate_adaptive(const Integrand& f, double a, double b, const QuadControl& ctl = {});

// As integrate_adaptive but throws AccuracyError when the tolerance is not met.
double integrate(const Integrand& f, double a, double b, const QuadControl& ctl = {});

// Integral over [a, inf) via x = a + u / (1 - u).
double integrate_to_infinity(const Integrand& f, double a, const QuadControl& ctl = {});

// Integral of f against (x - a)^(beta - 1) on [a, b], beta > 0, with the
// endpoint singularity removed by w = (x - a)^beta.
double integrate_left_power(const Integrand& f, double a, double b, double beta, const QuadControl& ctl = {});

// Integral of f against (b - x)^(beta - 1) on [a, b].
double integrate_right_power(const Integrand& f, double a, double b, double beta, const QuadControl& ctl = {});

}  // namespace gbp
