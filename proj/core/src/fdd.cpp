#include <cmath>
#include <string>

#include "gbpwalk/eml.hpp"
#include "gbpwalk/errors.hpp"

namespace gbp {

namespace {

constexpr double kGLx[8] = {0.019855071751231912, 0.10166676129318664, 0.2372337950418355, 0.4082826787521751,
                            0.5917173212478248,   0.7627662049581645,  0.8983332387068134, 0.9801449282487681};
constexpr double kGLw[8] = {0.050614268145188344, 0.11119051722668717, 0.15685332293894352, 0.18134189168918088,
                            0.18134189168918088,  0.15685332293894352, 0.11119051722668717, 0.050614268145188344};

// Product-integration weights of u(d) = c d^(alpha-1) e^(-lambda d) against the
// two hat functions of the panel d in [d0, d1], integrated in v = d^alpha.
struct PanelWeights {
    double a, b;
};

PanelWeights panel_weights(double c, double alpha, double lambda, double d0, double d1) {
    const double v0 = std::pow(d0, alpha), v1 = std::pow(d1, alpha);
    const double dv = v1 - v0, h = d1 - d0, inv = 1.0 / alpha;
    double A = 0.0, B = 0.0;
    for (int q = 0; q < 8; ++q) {
        const double d = std::pow(v0 + dv * kGLx[q], inv);
        const double e = kGLw[q] * std::exp(-lambda * d);
        A += e * (d1 - d);
        B += e * (d - d0);
    }
    const double scale = c * dv / (alpha * h);
    return {A * scale, B * scale};
}

}  // namespace

std::complex<double> mgf_fdd(const EmlParams& p, const std::vector<std::complex<double>>& S,
                             const std::vector<double>& times, bool star, const FddControl& ctl) {
    validate_eml(p);
    const std::size_t m = times.size();
    if (m == 0 || S.size() != m) throw PreconditionError("mgf_fdd: need one weight per time");
    for (std::size_t i = 0; i < m; ++i) {
        if (!(times[i] > 0.0) || (i && !(times[i] > times[i - 1])))
            throw PreconditionError("mgf_fdd: times must be positive and increasing");
    }
    if (!star && times.back() > p.T * (1.0 + 1e-12)) throw PreconditionError("mgf_fdd: times must lie in (0, T]");
    if (ctl.steps < 16) throw PreconditionError("mgf_fdd: steps must be >= 16");
    if (m == 1) return star ? mgf_star(p, S[0], times[0]) : mgf_marginal(p, S[0], times[0]);

    // Grid aligned with the times; theta is constant on each panel.
    std::vector<double> w{0.0};
    std::vector<std::complex<double>> theta;
    const double tm = times.back();
    for (std::size_t i = 0; i < m; ++i) {
        const double lo = i ? times[i - 1] : 0.0, len = times[i] - lo;
        const int n = std::max(8, static_cast<int>(std::lround(ctl.steps * len / tm)));
        for (int q = 1; q <= n; ++q) {
            w.push_back(q == n ? times[i] : lo + len * q / n);
            theta.push_back(S[i]);
        }
    }
    const std::size_t N = w.size() - 1;
    const double c = p.c_value(), a = p.alpha, lam = p.lambda;

    // phi(z) = 1 + int_z^tm u(x - z) theta(x) phi(x) dx, solved backwards from phi(tm) = 1.
    std::vector<std::complex<double>> phi(N + 1, 1.0);
    for (std::size_t j = N; j-- > 0;) {
        std::complex<double> rhs = 1.0, diag = 0.0;
        for (std::size_t q = j; q < N; ++q) {
            const PanelWeights pw = panel_weights(c, a, lam, w[q] - w[j], w[q + 1] - w[j]);
            if (q == j)
                diag = theta[q] * pw.a;
            else
                rhs += theta[q] * pw.a * phi[q];
            rhs += theta[q] * pw.b * phi[q + 1];
        }
        phi[j] = rhs / (1.0 - diag);
    }
    if (star) return phi[0];
    std::complex<double> acc = 0.0;
    for (std::size_t q = 0; q < N; ++q) acc += theta[q] * (w[q + 1] - w[q]) * 0.5 * (phi[q] + phi[q + 1]);
    return 1.0 + p.aT() * acc;
}

std::complex<double> mgf_fdd_s(const EmlParams& p, const std::vector<std::complex<double>>& s,
                               const std::vector<double>& times, bool star, const FddControl& ctl) {
    std::vector<std::complex<double>> S(s.size());
    std::complex<double> acc = 0.0;
    for (std::size_t i = s.size(); i-- > 0;) {
        acc += s[i];
        S[i] = acc;
    }
    return mgf_fdd(p, S, times, star, ctl);
}

}  // namespace gbp
