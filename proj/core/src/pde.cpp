#include "gbpwalk/pde.hpp"

#include <cmath>
#include <numeric>

#include "gbpwalk/csv.hpp"
#include "gbpwalk/errors.hpp"
#include "gbpwalk/fracderiv.hpp"
#include "gbpwalk/specfun.hpp"

namespace gbp {

namespace {

// Running integrals I0(t) = int_0^t e^(-lambda y) h(x, y) dy and I1 = int_0^t y e^(-lambda y) h dy
// on the grid t_j = j * step, at unit c. x > 0, so the integrand vanishes smoothly at y = 0.
struct RunningIntegrals {
    std::vector<double> h, I0, I1;
};

RunningIntegrals running_integrals(double alpha, double lambda, double x, double step, std::size_t n, bool need_I1) {
    RunningIntegrals r;
    r.h.assign(n, 0.0);
    r.I0.assign(n, 0.0);
    r.I1.assign(n, 0.0);
    QuadControl q;
    q.rel_tol = 1e-12;
    q.abs_tol = 1e-300;
    auto hx = [&](double y) { return y > 0.0 ? inverse_stable_pdf_h(alpha, x, y) : 0.0; };
    for (std::size_t j = 1; j < n; ++j) {
        const double a = step * static_cast<double>(j - 1), b = step * static_cast<double>(j);
        r.h[j] = hx(b);
        if (lambda == 0.0 && !need_I1) continue;
        r.I0[j] = r.I0[j - 1] + integrate([&](double y) { return std::exp(-lambda * y) * hx(y); }, a, b, q);
        if (need_I1)
            r.I1[j] = r.I1[j - 1] + integrate([&](double y) { return y * std::exp(-lambda * y) * hx(y); }, a, b, q);
    }
    return r;
}

// p*(x, t_j) at unit c.
std::vector<double> star_column(double alpha, double lambda, double x, double step, std::size_t n) {
    const RunningIntegrals r = running_integrals(alpha, lambda, x, step, n, false);
    std::vector<double> v(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        const double t = step * static_cast<double>(j);
        v[j] = std::exp(-lambda * t) * r.h[j] + lambda * r.I0[j];
    }
    return v;
}

// int_0^t p*(x, y) dy = (1 + lambda t) I0 - lambda I1 at unit c.
std::vector<double> potential_column(double alpha, double lambda, double x, double step, std::size_t n) {
    const RunningIntegrals r = running_integrals(alpha, lambda, x, step, n, true);
    std::vector<double> v(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        const double t = step * static_cast<double>(j);
        v[j] = (1.0 + lambda * t) * r.I0[j] - lambda * r.I1[j];
    }
    return v;
}

double exp_star_density(double lambda, double x, double t) { return x < t ? lambda * std::exp(-lambda * x) : 0.0; }

}  // namespace

bool PdeReport::decreasing() const {
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (!(levels[i].max_abs < levels[i - 1].max_abs)) return false;
    return levels.size() >= 2;
}

void PdeReport::write_csv(std::ostream& os) const {
    os << "x,t,value\n";
    for (std::size_t i = 0; i < field_value.size(); ++i)
        os << fmt17(field_x[i]) << ',' << fmt17(field_t[i]) << ',' << fmt17(field_value[i]) << '\n';
}

PdeReport pde_residual(const EmlParams& p, const PdeCheckSpec& spec) {
    validate_eml(p);
    if (spec.x_grid.empty()) throw PreconditionError("pde_residual: empty x grid");
    for (double x : spec.x_grid)
        if (!(x > 0.0)) throw PreconditionError("pde_residual: x grid must be interior (x > 0)");
    if (!(spec.t_max > spec.t_min && spec.t_min > 0.0)) throw PreconditionError("pde_residual: need 0 < t_min < t_max");
    if (!(spec.step > 0.0) || spec.levels < 1 || !(spec.dx > 0.0)) throw PreconditionError("pde_residual: bad step data");
    const double a = p.alpha, lam = p.lambda, nu = p.nu();
    switch (spec.which) {
        case PdeCase::ml_star:
            if (lam != 0.0 || a >= 1.0) throw PreconditionError("pde_residual: ml_star needs lambda = 0, alpha < 1");
            break;
        case PdeCase::star:
        case PdeCase::X:
            if (a >= 1.0) throw PreconditionError("pde_residual: star and X cases need alpha < 1");
            break;
        case PdeCase::exp_star:
            if (a != 1.0 || !(lam > 0.0)) throw PreconditionError("pde_residual: exp_star needs alpha = 1, lambda > 0");
            for (double x : spec.x_grid)
                if (!(x / nu < spec.t_min - 2.0 * spec.step))
                    throw PreconditionError("pde_residual: exp_star x grid must stay two cells below t_min");
            break;
    }
    const double a1 = p.aT() / nu;
    // Residuals are computed at unit c on x / nu and mapped back by the density scaling 1 / nu.
    PdeReport report;
    const FracKind kind = spec.which == PdeCase::ml_star ? FracKind::caputo : FracKind::tempered_RL;
    const double dx = spec.dx;
    for (int level = 0; level < spec.levels; ++level) {
        const double h = spec.step / std::pow(2.0, level);
        const auto n = static_cast<std::size_t>(std::llround(spec.t_max / h)) + 1;
        const FracOperator op{kind, a, lam, h};
        double mx = 0.0, sum = 0.0;
        std::size_t cnt = 0;
        const bool finest = level + 1 == spec.levels;
        for (double xg : spec.x_grid) {
            const double x = xg / nu;
            std::vector<double> u(n), ux(n);
            if (spec.which == PdeCase::exp_star) {
                for (std::size_t j = 0; j < n; ++j) {
                    const double t = h * static_cast<double>(j);
                    u[j] = exp_star_density(lam, x, t);
                    ux[j] = (exp_star_density(lam, x + dx, t) - exp_star_density(lam, x - dx, t)) / (2.0 * dx);
                }
            } else if (spec.which == PdeCase::X) {
                const auto qm = potential_column(a, lam, x - dx, h, n);
                const auto q0 = potential_column(a, lam, x, h, n);
                const auto qp = potential_column(a, lam, x + dx, h, n);
                for (std::size_t j = 0; j < n; ++j) {
                    u[j] = -a1 * (qp[j] - qm[j]) / (2.0 * dx);
                    ux[j] = -a1 * (qp[j] - 2.0 * q0[j] + qm[j]) / (dx * dx);
                }
            } else {
                const double lam_eff = spec.which == PdeCase::ml_star ? 0.0 : lam;
                u = star_column(a, lam_eff, x, h, n);
                const auto um = star_column(a, lam_eff, x - dx, h, n);
                const auto up = star_column(a, lam_eff, x + dx, h, n);
                for (std::size_t j = 0; j < n; ++j) ux[j] = (up[j] - um[j]) / (2.0 * dx);
            }
            const auto Du = apply_frac_derivative(op, u);
            for (std::size_t j = 0; j < n; ++j) {
                const double t = h * static_cast<double>(j);
                if (t < spec.t_min * (1.0 - 1e-12)) continue;
                const double r = (Du[j] + ux[j]) / nu;
                mx = std::max(mx, std::abs(r));
                sum += std::abs(r);
                ++cnt;
                if (finest) {
                    report.field_x.push_back(xg);
                    report.field_t.push_back(t);
                    report.field_value.push_back(r);
                }
            }
        }
        report.levels.push_back({h, mx, cnt ? sum / static_cast<double>(cnt) : 0.0});
    }
    for (std::size_t i = 1; i < report.levels.size(); ++i)
        report.observed_order.push_back(std::log2(report.levels[i - 1].max_abs / report.levels[i].max_abs));
    if (spec.which == PdeCase::exp_star) {
        // d/dt p* = 0 on x < t, so the residual is lambda p* + d/dx p* with d/dx p* = -lambda^2 e^(-lambda x).
        double mx = 0.0;
        for (double xg : spec.x_grid) {
            const double x = xg / nu;
            const double pst = lam * std::exp(-lam * x);
            const double dpx = -lam * lam * std::exp(-lam * x);
            mx = std::max(mx, std::abs(lam * pst + dpx) / nu);
        }
        report.analytic_max_abs = mx;
    }
    return report;
}

}  // namespace gbp
