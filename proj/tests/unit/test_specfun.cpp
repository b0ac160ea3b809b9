#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "gbpwalk/errors.hpp"
#include "gbpwalk/quadrature.hpp"
#include "gbpwalk/specfun.hpp"
#include "test_util.hpp"

using namespace gbp;
using testutil::rel_err;

TEST(Specfun, FrozenReferenceValues) {
    const auto rows = testutil::read_csv("specfun.csv");
    ASSERT_FALSE(rows.empty());
    for (const auto& r : rows) {
        const std::string& kind = r.str("kind");
        const double a = r.num("a"), b = r.num("b"), x = r.num("x"), ref = r.num("value");
        double got = 0.0, tol = 1e-10;
        if (kind == "ml") {
            got = mittag_leffler(a, b, x);
        } else if (kind == "wm") {
            got = wright_m(a, x);
            tol = 1e-10;
        } else if (kind == "lig") {
            got = lower_incomplete_gamma(a, x);
            tol = 1e-12;
        }
        EXPECT_LT(rel_err(got, ref), tol) << kind << " a=" << a << " b=" << b << " x=" << x;
    }
}

TEST(Specfun, NamedValues) {
    EXPECT_NEAR(mittag_leffler(1.0, 1.0, 1.0), std::numbers::e, 1e-14);
    EXPECT_NEAR(mittag_leffler(1.0, 2.0, 1.0), std::numbers::e - 1.0, 1e-14);
    EXPECT_THROW(mittag_leffler(2.0, 1.0, -1.0), DomainError);
    EXPECT_NEAR(wright_m(0.5, 1.0), std::exp(-0.25) / std::sqrt(std::numbers::pi), 1e-12);
    EXPECT_NEAR(lower_incomplete_gamma(1.0, 2.0), 1.0 - std::exp(-2.0), 1e-15);
    EXPECT_NEAR(rgamma(-2.0), 0.0, 0.0);
    EXPECT_NEAR(gamma_reflect(-0.5), -2.0 * std::sqrt(std::numbers::pi), 1e-13);
    EXPECT_THROW(gamma_reflect(-1.0), DomainError);
}

TEST(Specfun, ComplexArgumentMatchesRealAxis) {
    const auto z = mittag_leffler(0.6, 1.0, std::complex<double>(0.7, 0.0));
    EXPECT_NEAR(z.real(), mittag_leffler(0.6, 1.0, 0.7), 1e-14);
    EXPECT_NEAR(z.imag(), 0.0, 1e-15);
    // E_{1,1}(i) = e^i
    const auto w = mittag_leffler(1.0, 1.0, std::complex<double>(0.0, 1.0));
    EXPECT_NEAR(w.real(), std::cos(1.0), 1e-14);
    EXPECT_NEAR(w.imag(), std::sin(1.0), 1e-14);
}

TEST(Specfun, MittagLefflerRefusesOutsideValidatedRegion) {
    EXPECT_THROW(mittag_leffler(0.5, 1.0, 1.1 * ml_zmax(0.5)), DomainError);
    EXPECT_THROW(mittag_leffler(0.05, 1.0, 0.1), DomainError);
}

TEST(Specfun, ThreeParameterReducesToTwo) {
    const auto a = ml_three_param(0.7, 1.3, 1.0, {0.4, 0.0});
    EXPECT_NEAR(a.real(), mittag_leffler(0.7, 1.3, 0.4), 1e-14);
}

TEST(Specfun, WrightBranchesAgreeAtSwitch) {
    for (double a : {0.3, 0.5, 0.8}) {
        const double x = 0.9 * wright_m_series_limit(a);
        EXPECT_LT(rel_err(wright_m_series(a, x), wright_m_integral(a, x)), 1e-10) << a;
    }
}

TEST(Specfun, WrightMIsADensity) {
    for (double a : {0.3, 0.5, 0.7}) {
        const double mass = integrate_to_infinity([&](double x) { return wright_m(a, x); }, 0.0);
        const double mean = integrate_to_infinity([&](double x) { return x * wright_m(a, x); }, 0.0);
        EXPECT_NEAR(mass, 1.0, 1e-9) << a;
        EXPECT_NEAR(mean, 1.0 / std::tgamma(1.0 + a), 1e-9) << a;
    }
}

TEST(Specfun, InverseStableLaplaceTransform) {
    for (double a : {0.5, 0.7})
        for (double s : {-1.0, -0.3}) {
            const double v = integrate_to_infinity([&](double x) { return std::exp(s * x) * inverse_stable_pdf_h(a, x, 1.0); }, 0.0);
            EXPECT_NEAR(v, mittag_leffler(a, 1.0, s), 1e-9);
        }
}

TEST(Specfun, InverseStableScaling) {
    const double a = 0.6, t = 2.0, x = 0.8;
    EXPECT_LT(rel_err(inverse_stable_pdf_h(a, x, t), std::pow(t, -a) * wright_m(a, x * std::pow(t, -a))), 1e-12);
}

TEST(Specfun, StableDensityHalfIsLevy) {
    // One-sided 1/2-stable with Laplace exponent s^(1/2): density at y for an operational time x.
    const double x = 1.3;
    for (double y : {0.1, 0.5, 2.0}) {
        const double levy = x / (2.0 * std::sqrt(std::numbers::pi)) * std::pow(y, -1.5) * std::exp(-x * x / (4.0 * y));
        EXPECT_LT(rel_err(stable_pdf_g(0.5, y, x), levy), 1e-9) << y;
    }
}

TEST(Specfun, RegularizedAndScaledGamma) {
    EXPECT_NEAR(regularized_lower_gamma(2.0, 1.0), 1.0 - 2.0 * std::exp(-1.0), 1e-15);
    EXPECT_NEAR(log_lower_gamma_scaled(1.5, 0.0), -std::lgamma(2.5), 1e-14);
    EXPECT_NEAR(std::exp(log_lower_gamma_scaled(2.0, 1.0)), (1.0 - 2.0 * std::exp(-1.0)) / 1.0, 1e-14);
}
