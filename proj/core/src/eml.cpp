#include "gbpwalk/eml.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "eml_detail.hpp"
#include "gbpwalk/errors.hpp"

namespace gbp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_time(const EmlParams& p, double t, bool star, const char* who) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(who) + ": t must be > 0");
    if (!star && t > p.T * (1.0 + 1e-12)) throw DomainError(std::string(who) + ": t must lie in (0, T]");
}

void check_k(int k, const char* who) {
    if (k < 1 || k > 12) throw PreconditionError(std::string(who) + ": k must be in [1, 12]");
}

double factorial(int k) { return std::tgamma(k + 1.0); }

// sum_k s^k w_k for w_k = exp(logw(k)), k >= 1, at unit c.
template <class LogWeight>
std::complex<double> power_series(std::complex<double> s, LogWeight logw, const SeriesControl& ctl, const char* who) {
    if (s == 0.0) return 0.0;
    const double ls = std::log(std::abs(s));
    const double arg = std::arg(s);
    std::complex<double> sum = 0.0;
    double sumabs = 0.0, prev = std::numeric_limits<double>::infinity();
    for (long k = 1; k <= ctl.max_terms; ++k) {
        const double lw = logw(static_cast<int>(k));
        const double mag = std::exp(k * ls + lw);
        if (!std::isfinite(mag)) throw DomainError(std::string(who) + ": series overflow");
        const std::complex<double> term = std::polar(mag, k * arg);
        sum += term;
        sumabs += mag;
        if (mag < prev && mag <= ctl.tol * std::abs(sum)) {
            constexpr double eps = std::numeric_limits<double>::epsilon();
            if (8.0 * eps * sumabs > 1e-9 * std::abs(1.0 + sum))
                throw DomainError(std::string(who) + ": series cancellation exceeds the accuracy guard");
            return sum;
        }
        prev = mag;
    }
    throw DomainError(std::string(who) + ": series did not converge");
}

}  // namespace

double EmlParams::c_value() const { return c ? *c : 1.0 / std::tgamma(alpha); }
double EmlParams::nu() const { return c_value() * std::tgamma(alpha); }
double EmlParams::aT() const { return c_value() * b * std::exp(-lambda * T) * std::pow(T, alpha - 1.0); }

EmlParams EmlParams::unit() const {
    EmlParams q = *this;
    q.c.reset();
    return q;
}

void validate_eml(const EmlParams& p) {
    if (!(p.alpha > 0.0 && p.alpha <= 1.0)) throw DomainError("EmlParams: alpha must be in (0, 1]");
    if (!(p.lambda >= 0.0) || !std::isfinite(p.lambda)) throw DomainError("EmlParams: lambda must be >= 0");
    if (!(p.b > 0.0 && p.b <= 1.0)) throw DomainError("EmlParams: b must be in (0, 1]");
    if (!(p.T > 0.0) || !std::isfinite(p.T)) throw DomainError("EmlParams: T must be > 0");
    if (p.c && !(*p.c > 0.0 && std::isfinite(*p.c))) throw DomainError("EmlParams: c must be > 0");
    if (!(p.lambda > (p.alpha - 1.0) / p.T)) throw DomainError("EmlParams: need lambda > (alpha - 1) / T");
}

std::complex<double> mgf_star(const EmlParams& p, std::complex<double> s, double t, const SeriesControl& ctl) {
    validate_eml(p);
    check_time(p, t, true, "mgf_star");
    const std::complex<double> su = s * p.nu();
    const double a = p.alpha, lam = p.lambda;
    return 1.0 + power_series(su, [&](int k) { return detail::log_J0(k * a, lam, t); }, ctl, "mgf_star");
}

double mgf_star(const EmlParams& p, double s, double t, const SeriesControl& ctl) {
    return mgf_star(p, std::complex<double>(s, 0.0), t, ctl).real();
}

std::complex<double> mgf_marginal(const EmlParams& p, std::complex<double> s, double t, const SeriesControl& ctl) {
    validate_eml(p);
    check_time(p, t, false, "mgf_marginal");
    const std::complex<double> su = s * p.nu();
    const double a1 = p.aT() / p.nu();
    const double a = p.alpha, lam = p.lambda;
    // a1 (t s + sum_{k>=1} s^(k+1) J1(k alpha)); the k = 1 weight below is t.
    const auto series = power_series(
        su,
        [&](int k) { return k == 1 ? std::log(t) : detail::log_J1((k - 1) * a, lam, t); },
        ctl, "mgf_marginal");
    return 1.0 + a1 * series;
}

double mgf_marginal(const EmlParams& p, double s, double t, const SeriesControl& ctl) {
    return mgf_marginal(p, std::complex<double>(s, 0.0), t, ctl).real();
}

double mgf_coefficient(const EmlParams& p, int k, double t, bool star) {
    validate_eml(p);
    check_time(p, t, star, "mgf_coefficient");
    if (k < 0) throw PreconditionError("mgf_coefficient: k must be >= 0");
    if (k == 0) return 1.0;
    const double nu = p.nu();
    if (star) return std::pow(nu, k) * detail::J0(k * p.alpha, p.lambda, t);
    if (k == 1) return t * p.aT();
    return p.aT() * std::pow(nu, k - 1) * detail::J1((k - 1) * p.alpha, p.lambda, t);
}

double moment_X(const EmlParams& p, int k, double t, const QuadControl& ctl) {
    validate_eml(p);
    check_time(p, t, false, "moment_X");
    check_k(k, "moment_X");
    if (k == 1) return t * p.aT();
    const double a = (k - 1) * p.alpha, lam = p.lambda;
    const double I = integrate_left_power([&](double y) { return (t - y) * std::exp(-lam * y); }, 0.0, t, a, ctl) /
                     std::tgamma(a);
    return factorial(k) * p.aT() * std::pow(p.nu(), k - 1) * I;
}

double moment_Xstar(const EmlParams& p, int k, double t, const QuadControl& ctl) {
    validate_eml(p);
    check_time(p, t, true, "moment_Xstar");
    check_k(k, "moment_Xstar");
    const double a = k * p.alpha, lam = p.lambda;
    const double I = integrate_left_power([&](double y) { return std::exp(-lam * y); }, 0.0, t, a, ctl) / std::tgamma(a);
    return factorial(k) * std::pow(p.nu(), k) * I;
}

double cross_moment_X(const EmlParams& p, double t, double s, const QuadControl& ctl) {
    if (t > s) std::swap(t, s);
    check_time(p, s, false, "cross_moment_X");
    const double second = moment_X(p, 2, t, ctl);
    if (t == s) return second;
    return second + mixed_moment(p, MixedMomentSpec{{t, s}, {1, 2}, {1, 1}, false}, ctl).value;
}

double covariance_X(const EmlParams& p, double t, double s, const QuadControl& ctl) {
    return cross_moment_X(p, t, s, ctl) - moment_X(p, 1, t, ctl) * moment_X(p, 1, s, ctl);
}

double cross_moment_Xstar(const EmlParams& p, double t, double s, const QuadControl& ctl) {
    if (t > s) std::swap(t, s);
    const double second = moment_Xstar(p, 2, t, ctl);
    if (t == s) return second;
    return second + mixed_moment(p, MixedMomentSpec{{t, s}, {1, 2}, {1, 1}, true}, ctl).value;
}

double covariance_Xstar(const EmlParams& p, double t, double s, const QuadControl& ctl) {
    return cross_moment_Xstar(p, t, s, ctl) - moment_Xstar(p, 1, t, ctl) * moment_Xstar(p, 1, s, ctl);
}

namespace closed {

namespace {
void need_exp(const EmlParams& p) {
    validate_eml(p);
    if (p.alpha != 1.0 || !(p.lambda > 0.0)) throw PreconditionError("exponential closed form needs alpha = 1, lambda > 0");
}
void need_ml(const EmlParams& p) {
    validate_eml(p);
    if (p.lambda != 0.0 || p.alpha >= 1.0) throw PreconditionError("Mittag-Leffler closed form needs lambda = 0, alpha < 1");
}
}  // namespace

double exp_mgf_marginal(const EmlParams& p, double s, double t) {
    need_exp(p);
    const double su = s * p.nu(), lam = p.lambda;
    const double c1 = p.b * std::exp(-lam * p.T);
    const double r = lam - su;
    return 1.0 + t * c1 * su + c1 * su * su * (t + std::expm1(-t * r) / r) / r;
}

double exp_mgf_star(const EmlParams& p, double s, double t) {
    need_exp(p);
    const double su = s * p.nu(), r = p.lambda - su;
    return 1.0 - su * std::expm1(-t * r) / r;
}

double ml_mgf_marginal(const EmlParams& p, double s, double t) {
    need_ml(p);
    const double su = s * p.nu(), a = p.alpha;
    const double cp = p.b * std::pow(p.T, a - 1.0) / std::tgamma(a);
    return 1.0 + su * cp * t * mittag_leffler(a, 2.0, su * std::pow(t, a));
}

double ml_mgf_star(const EmlParams& p, double s, double t) {
    need_ml(p);
    return mittag_leffler(p.alpha, 1.0, s * p.nu() * std::pow(t, p.alpha));
}

double exp_moment_Xstar(const EmlParams& p, int k, double t) {
    need_exp(p);
    check_k(k, "exp_moment_Xstar");
    const double lam = p.lambda;
    return std::pow(p.nu(), k) * factorial(k) * regularized_lower_gamma(k, lam * t) / std::pow(lam, k);
}

double ml_moment_X(const EmlParams& p, int k, double t) {
    need_ml(p);
    check_k(k, "ml_moment_X");
    const double a = p.alpha;
    const double ck1 = factorial(k) * p.b * std::pow(p.T, a - 1.0) / (std::tgamma(a) * std::tgamma(a * (k - 1) + 2.0));
    return std::pow(p.nu(), k) * ck1 * std::pow(t, a * (k - 1) + 1.0);
}

double ml_moment_Xstar(const EmlParams& p, int k, double t) {
    need_ml(p);
    check_k(k, "ml_moment_Xstar");
    return std::pow(p.nu(), k) * factorial(k) / std::tgamma(p.alpha * k + 1.0) * std::pow(t, p.alpha * k);
}

double ml_cross_moment(const EmlParams& p, double t, double s) {
    need_ml(p);
    if (t > s) std::swap(t, s);
    const double a = p.alpha, nu = p.nu();
    const double cp = p.b * std::pow(p.T, a - 1.0) / std::tgamma(a);
    return nu * nu * cp / std::tgamma(a + 2.0) *
           (std::pow(t, a + 1.0) + std::pow(s, a + 1.0) - std::pow(s - t, a + 1.0));
}

double exp_increment_cross_moment(const EmlParams& p, double t, double s, double d) {
    need_exp(p);
    if (t > s) std::swap(t, s);
    if (!(d > 0.0 && d < s - t)) throw PreconditionError("exp_increment_cross_moment: need 0 < d < s - t");
    const double lam = p.lambda, nu = p.nu();
    const double cp = p.b * std::exp(-lam * p.T) / (lam * lam);
    const double sh = std::sinh(0.5 * lam * d);
    return nu * nu * cp * std::exp(-lam * (s - t)) * 4.0 * sh * sh;
}

double ml_increment_cross_moment(const EmlParams& p, double t, double s, double d) {
    need_ml(p);
    if (t > s) std::swap(t, s);
    if (!(d > 0.0 && d < s - t)) throw PreconditionError("ml_increment_cross_moment: need 0 < d < s - t");
    const double a = p.alpha, nu = p.nu(), g = s - t;
    const double cp = p.b * std::pow(p.T, a - 1.0) / (std::tgamma(a) * std::tgamma(a + 2.0));
    return nu * nu * cp * (std::pow(g + d, a + 1.0) - 2.0 * std::pow(g, a + 1.0) + std::pow(g - d, a + 1.0));
}

}  // namespace closed

IncrementReport increment_asymptotics(const EmlParams& p, IncrementMode mode, const std::vector<double>& times,
                                      double delta, const std::vector<int>& k_in, const QuadControl& ctl) {
    validate_eml(p);
    const std::size_t m = times.size();
    if (m < 2) throw PreconditionError("increment_asymptotics: need at least two times");
    std::vector<int> k = k_in.empty() ? std::vector<int>(m, 1) : k_in;
    if (k.size() != m) throw PreconditionError("increment_asymptotics: k must match times");
    if (mode == IncrementMode::exp && (p.alpha != 1.0 || !(p.lambda > 0.0)))
        throw PreconditionError("increment_asymptotics: exp mode needs alpha = 1, lambda > 0");
    if (mode == IncrementMode::ml && p.lambda != 0.0)
        throw PreconditionError("increment_asymptotics: ml mode needs lambda = 0");
    const bool star = mode == IncrementMode::Xstar;
    const double a = p.alpha, lam = p.lambda, c = p.c_value(), aT = p.aT();

    IncrementReport r;
    r.exact = mixed_moment(p, increment_spec(times, delta, k, star), ctl).value;
    r.closed = kNaN;
    r.asymptotic = r.ratio = r.cov_exact = r.corr_exact = r.corr_asymptotic = kNaN;

    double denom = 1.0;
    for (std::size_t i = 0; i < m; ++i) denom *= moment_X(p, k[i], delta, ctl);
    r.product_ratio = r.exact / denom;
    double lim = 1.0;
    if (star) {
        lim = std::exp(-lam * times.back()) * std::pow(c / aT, static_cast<double>(m));
        for (std::size_t i = 0; i < m; ++i) lim *= std::pow(times[i] - (i ? times[i - 1] : 0.0), a - 1.0);
    } else {
        lim = std::exp(-lam * (times.back() - times.front())) * std::pow(c / aT, static_cast<double>(m - 1));
        for (std::size_t i = 1; i < m; ++i) lim *= std::pow(times[i] - times[i - 1], a - 1.0);
    }
    r.product_limit = lim;

    const bool pair = m == 2 && k[0] == 1 && k[1] == 1;
    if (!pair) return r;
    const double t1 = times[0], t2 = times[1], g = t2 - t1, d2 = delta * delta;
    if (star) {
        r.asymptotic = c * c * d2 * std::exp(-lam * t2) * std::pow(t1, a - 1.0) * std::pow(g, a - 1.0);
        auto inc_mean = [&](double t) { return moment_Xstar(p, 1, t, ctl) - moment_Xstar(p, 1, t - delta, ctl); };
        auto inc_sq = [&](std::size_t i) {
            return mixed_moment(p, increment_spec({times[i]}, delta, {2}, true), ctl).value;
        };
        const double m1 = inc_mean(t1), m2 = inc_mean(t2);
        r.cov_exact = r.exact - m1 * m2;
        r.corr_exact = r.cov_exact / std::sqrt((inc_sq(0) - m1 * m1) * (inc_sq(1) - m2 * m2));
    } else {
        r.asymptotic = c * aT * d2 * std::exp(-lam * g) * std::pow(g, a - 1.0);
        if (mode == IncrementMode::exp) r.closed = closed::exp_increment_cross_moment(p, t1, t2, delta);
        if (mode == IncrementMode::ml) r.closed = closed::ml_increment_cross_moment(p, t1, t2, delta);
        const double mean = aT * delta;
        const double var = moment_X(p, 2, delta, ctl) - mean * mean;
        r.cov_exact = r.exact - mean * mean;
        r.corr_exact = r.cov_exact / var;
        const double base = aT / c;
        const double cpp = 2.0 / (a * (a + 1.0));
        r.corr_asymptotic = (std::exp(-lam * g) * std::pow(g, a - 1.0) - base) / (cpp * std::pow(delta, a - 1.0) - base);
    }
    r.ratio = r.exact / r.asymptotic;
    return r;
}

SelfSimilarityReport self_similarity_check(const EmlParams& p, double u, double t, int kmax, const QuadControl& ctl) {
    validate_eml(p);
    if (!(u > 0.0)) throw PreconditionError("self_similarity_check: u must be > 0");
    if (kmax < 1 || kmax > 4) throw PreconditionError("self_similarity_check: k must be in [1, 4]");
    EmlParams q = p;
    q.lambda = u * p.lambda;
    EmlParams qx = q;
    qx.T = p.T / u;
    SelfSimilarityReport r;
    for (int k = 1; k <= kmax; ++k) {
        const double scale = std::pow(u, p.alpha * k);
        r.star_ratio.push_back(moment_Xstar(p, k, u * t, ctl) / (scale * moment_Xstar(q, k, t, ctl)));
        if (u * t <= p.T)
            r.X_ratio.push_back(moment_X(p, k, u * t, ctl) / (scale * moment_X(qx, k, t, ctl)));
        else
            r.X_ratio.push_back(kNaN);
    }
    return r;
}

}  // namespace gbp
