#include "gbpwalk/fracderiv.hpp"

#include <cmath>

#include "gbpwalk/errors.hpp"

namespace gbp {

namespace {

template <class V>
std::vector<V> apply_gl(const FracOperator& op, const std::vector<V>& f) {
    validate_frac(op);
    const std::size_t n = f.size();
    const double lam = op.kind == FracKind::RL ? 0.0 : op.lambda;
    // e^(-lambda t_j) e^(lambda t_{j-k}) = e^(-lambda k step) folds the tempering into the weights.
    std::vector<double> w = gl_weights(op.alpha, n);
    for (std::size_t k = 0; k < n; ++k) w[k] *= std::exp(-lam * op.step * static_cast<double>(k));
    const V f0 = n ? f[0] : V{};
    std::vector<V> g(f);
    if (op.kind == FracKind::caputo)
        for (auto& v : g) v -= f0;
    const double scale = std::pow(op.step, -op.alpha);
    std::vector<V> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        V acc{};
        for (std::size_t k = 0; k <= j; ++k) acc += w[k] * g[j - k];
        out[j] = scale * acc;
    }
    return out;
}

}  // namespace

void validate_frac(const FracOperator& op) {
    if (!(op.alpha > 0.0 && op.alpha <= 1.0)) throw DomainError("FracOperator: alpha must be in (0, 1]");
    if (!(op.step > 0.0) || !std::isfinite(op.step)) throw DomainError("FracOperator: step must be > 0");
    if (!(op.lambda >= 0.0)) throw DomainError("FracOperator: lambda must be >= 0");
}

std::vector<double> gl_weights(double alpha, std::size_t n) {
    std::vector<double> w(n);
    if (n) w[0] = 1.0;
    for (std::size_t k = 1; k < n; ++k) w[k] = w[k - 1] * (1.0 - (alpha + 1.0) / static_cast<double>(k));
    return w;
}

std::vector<double> apply_frac_derivative(const FracOperator& op, const std::vector<double>& f) { return apply_gl(op, f); }

std::vector<std::complex<double>> apply_frac_derivative(const FracOperator& op,
                                                        const std::vector<std::complex<double>>& f) {
    return apply_gl(op, f);
}

std::vector<double> apply_frac_derivative(const FracOperator& op, const std::vector<double>& grid,
                                          const std::vector<double>& f) {
    if (grid.size() != f.size()) throw PreconditionError("apply_frac_derivative: grid and values differ in length");
    if (!grid.empty() && grid[0] != 0.0) throw PreconditionError("apply_frac_derivative: grid must start at 0");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs(grid[i] - grid[i - 1] - op.step) > 1e-9 * op.step)
            throw PreconditionError("apply_frac_derivative: grid is not uniform with the operator step");
    return apply_gl(op, f);
}

}  // namespace gbp
