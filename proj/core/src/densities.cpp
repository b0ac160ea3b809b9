#include "gbpwalk/densities.hpp"

#include <cmath>

#include "gbpwalk/csv.hpp"
#include "gbpwalk/errors.hpp"
#include "gbpwalk/specfun.hpp"

namespace gbp {

namespace {

QuadControl density_quad() {
    QuadControl q;
    q.rel_tol = 1e-11;
    q.abs_tol = 1e-300;
    return q;
}

// int_0^t w(y) h(x, y) dy with y^alpha h(x, y) = M(x y^-alpha) bounded, so the
// y^-alpha singularity at x = 0 is taken out by the power substitution.
template <class Weight>
double integrate_h(double alpha, double x, double t, Weight weight) {
    auto f = [&](double y) {
        if (y <= 0.0) return x > 0.0 ? 0.0 : weight(0.0) * wright_m(alpha, 0.0);
        return weight(y) * wright_m(alpha, x * std::pow(y, -alpha));
    };
    return integrate_left_power(f, 0.0, t, 1.0 - alpha, density_quad());
}

double pstar_unit(double alpha, double lambda, double x, double t) {
    const double direct = std::exp(-lambda * t) * inverse_stable_pdf_h(alpha, x, t);
    if (lambda == 0.0) return direct;
    return direct + lambda * integrate_h(alpha, x, t, [&](double y) { return std::exp(-lambda * y); });
}

double potential_unit(double alpha, double lambda, double x, double t) {
    return integrate_h(alpha, x, t, [&](double y) { return (1.0 + lambda * (t - y)) * std::exp(-lambda * y); });
}

void check_uniform_from_zero(const std::vector<double>& g, const char* who) {
    if (g.size() < 3) throw PreconditionError(std::string(who) + ": grid needs at least 3 points");
    const double h = g[1] - g[0];
    if (g[0] != 0.0 || !(h > 0.0)) throw PreconditionError(std::string(who) + ": grid must start at 0 and increase");
    for (std::size_t i = 1; i < g.size(); ++i)
        if (std::abs(g[i] - g[i - 1] - h) > 1e-9 * h) throw PreconditionError(std::string(who) + ": grid must be uniform");
}

}  // namespace

double MixtureDensity::atom_mass() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.mass;
    return m;
}

double MixtureDensity::continuous_mass() const {
    double m = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) m += 0.5 * (grid[i] - grid[i - 1]) * (values[i] + values[i - 1]);
    return m;
}

double MixtureDensity::moment(int k) const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.mass * std::pow(a.location, k);
    for (std::size_t i = 1; i < grid.size(); ++i)
        m += 0.5 * (grid[i] - grid[i - 1]) *
             (std::pow(grid[i], k) * values[i] + std::pow(grid[i - 1], k) * values[i - 1]);
    return m;
}

void MixtureDensity::write_csv(std::ostream& os) const {
    os << "x,value\n";
    for (std::size_t i = 0; i < grid.size(); ++i) os << fmt17(grid[i]) << ',' << fmt17(values[i]) << '\n';
}

void MixtureDensity::write_atoms_csv(std::ostream& os) const {
    os << "location,mass\n";
    for (const auto& a : atoms) os << fmt17(a.location) << ',' << fmt17(a.mass) << '\n';
}

double pdf_star(const EmlParams& p, double x, double t) {
    validate_eml(p);
    if (!(t > 0.0)) throw DomainError("pdf_star: t must be > 0");
    if (x < 0.0) return 0.0;
    const double nu = p.nu(), xu = x / nu;
    if (p.alpha == 1.0) return (xu <= t) ? p.lambda * std::exp(-p.lambda * xu) / nu : 0.0;
    return pstar_unit(p.alpha, p.lambda, xu, t) / nu;
}

MixtureDensity pdf_star_mixture(const EmlParams& p, const std::vector<double>& grid, double t) {
    MixtureDensity d;
    d.grid = grid;
    d.values.reserve(grid.size());
    for (double x : grid) d.values.push_back(pdf_star(p, x, t));
    if (p.alpha == 1.0) d.atoms.push_back({p.nu() * t, std::exp(-p.lambda * t)});
    return d;
}

double star_potential(const EmlParams& p, double x, double t) {
    validate_eml(p);
    if (p.alpha == 1.0) {
        const double lam = p.lambda;
        return x < t ? (1.0 + lam * (t - x)) * std::exp(-lam * x) : 0.0;
    }
    return potential_unit(p.alpha, p.lambda, x, t);
}

MixtureDensity pdf_X(const EmlParams& p, const std::vector<double>& grid, double t) {
    validate_eml(p);
    if (!(t > 0.0 && t <= p.T * (1.0 + 1e-12))) throw DomainError("pdf_X: t must lie in (0, T]");
    check_uniform_from_zero(grid, "pdf_X");
    const double nu = p.nu(), a1 = p.aT() / nu, lam = p.lambda;
    const std::size_t n = grid.size();
    const double hu = (grid[1] - grid[0]) / nu;
    const bool exp_case = p.alpha == 1.0;

    std::vector<double> Q(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xu = grid[i] / nu;
        // Smooth continuation of the alpha = 1 potential; points beyond t are masked below.
        Q[i] = exp_case ? (1.0 + lam * (t - xu)) * std::exp(-lam * xu) : potential_unit(p.alpha, lam, xu, t);
    }
    MixtureDensity d;
    d.grid = grid;
    d.values.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double dq = i == 0 ? (Q[1] - Q[0]) / hu
                          : i + 1 == n ? (Q[n - 1] - Q[n - 2]) / hu
                                       : (Q[i + 1] - Q[i - 1]) / (2.0 * hu);
        d.values[i] = -a1 * dq / nu;
        if (exp_case && grid[i] / nu > t * (1.0 + 1e-12)) d.values[i] = 0.0;
        if (d.values[i] < -1e-6) throw DataError("pdf_X: negative density at x = " + fmt17(grid[i]));
    }
    const double q0 = exp_case ? 1.0 + lam * t : Q[0];
    d.atoms.push_back({0.0, 1.0 - a1 * q0});
    if (exp_case) d.atoms.push_back({nu * t, a1 * std::exp(-lam * t)});
    return d;
}

ExpClosedForms exp_closed_forms(const EmlParams& p, double x, double t) {
    validate_eml(p);
    if (p.alpha != 1.0 || !(p.lambda > 0.0)) throw PreconditionError("exp_closed_forms: needs alpha = 1, lambda > 0");
    const double nu = p.nu(), lam = p.lambda, a1 = p.aT() / nu, xu = x / nu;
    ExpClosedForms r;
    const bool inside = xu > 0.0 && xu <= t;
    r.star_density = inside ? lam * std::exp(-lam * xu) / nu : 0.0;
    r.star_atom_t = std::exp(-lam * t);
    r.X_density = inside ? a1 * lam * (2.0 + lam * t - lam * xu) * std::exp(-lam * xu) / nu : 0.0;
    r.X_atom_0 = 1.0 - a1 - t * lam * a1;
    r.X_atom_t = a1 * std::exp(-lam * t);
    return r;
}

TruncationAudit truncate_star_support(const EmlParams& p, double t) {
    validate_eml(p);
    TruncationAudit a;
    if (p.alpha == 1.0) {
        a.x_max = p.nu() * t;
        return a;
    }
    double x = p.nu() * std::pow(t, p.alpha);
    while (pdf_star(p, x, t) >= 1e-12) x *= 2.0;
    a.x_max = x;
    QuadControl q = density_quad();
    q.rel_tol = 1e-8;
    a.lost_mass = integrate_to_infinity([&](double y) { return pdf_star(p, y, t); }, x, q);
    return a;
}

}  // namespace gbp
