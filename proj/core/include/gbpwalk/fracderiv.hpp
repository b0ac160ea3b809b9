#pragma once

#include <complex>
#include <vector>

namespace gbp {

enum class FracKind { tempered_RL, caputo, RL };

struct FracOperator {
    FracKind kind = FracKind::tempered_RL;
    double alpha = 0.5;
    double lambda = 0.0;
    double step = 0.01;
};

void validate_frac(const FracOperator& op);

// Grunwald-Letnikov weights (-1)^k binom(alpha, k), k = 0..n-1.
std::vector<double> gl_weights(double alpha, std::size_t n);

// f sampled at t_j = j * step, j = 0..n-1. Tempered RL is e^(-lambda t) GL[e^(lambda s) f(s)];
// Caputo applies the same to f - f(0); RL forces lambda = 0.
std::vector<double> apply_frac_derivative(const FracOperator& op, const std::vector<double>& f);
std::vector<std::complex<double>> apply_frac_derivative(const FracOperator& op,
                                                        const std::vector<std::complex<double>>& f);
// Same with an explicit grid, which must start at 0 and be uniform with spacing op.step.
std::vector<double> apply_frac_derivative(const FracOperator& op, const std::vector<double>& grid,
                                          const std::vector<double>& f);

}  // namespace gbp
