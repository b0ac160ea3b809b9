#pragma once

#include <complex>

namespace gbp {

struct SeriesControl {
    double tol = 1e-12;
    long max_terms = 100000;
};

// Largest |z| for which the Mittag-Leffler series is validated (relative error
// <= 1e-10 against a 50-digit reference) at this alpha.
double ml_zmax(double alpha);

std::complex<double> mittag_leffler(double alpha, double beta, std::complex<double> z,
                                    const SeriesControl& ctl = {});
double mittag_leffler(double alpha, double beta, double z, const SeriesControl& ctl = {});

// Series without the validated-region check (region probing only).
std::complex<double> ml_series_unchecked(double alpha, double beta, double gamma, std::complex<double> z,
                                         const SeriesControl& ctl = {});

// sum_k (gamma)_k / k! * z^k / Gamma(alpha k + beta)
std::complex<double> ml_three_param(double alpha, double beta, double gamma, std::complex<double> z,
                                    const SeriesControl& ctl = {});

// Largest x for which the alternating M series is used; beyond it the
// integral representation takes over.
double wright_m_series_limit(double alpha);

double wright_m(double alpha, double x, const SeriesControl& ctl = {});
double wright_m_series(double alpha, double x, const SeriesControl& ctl = {});
double wright_m_integral(double alpha, double x);

// Density of the alpha-stable subordinator at time x, evaluated at t.
double stable_pdf_g(double alpha, double t, double x, const SeriesControl& ctl = {});
// Density of the inverse stable subordinator at time t, evaluated at x.
double inverse_stable_pdf_h(double alpha, double x, double t, const SeriesControl& ctl = {});

double lower_incomplete_gamma(double a, double x);
// gamma(a, x) / Gamma(a)
double regularized_lower_gamma(double a, double x);
// log of gamma(a, x) / (Gamma(a) x^a); at x = 0 this is -log Gamma(a + 1).
double log_lower_gamma_scaled(double a, double x);

// 1 / Gamma(x), zero at the poles.
double rgamma(double x);
// Gamma(x) through reflection for x < 0.5; throws DomainError at poles.
double gamma_reflect(double x);

}  // namespace gbp
