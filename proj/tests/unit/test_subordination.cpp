#include <cmath>

#include <gtest/gtest.h>

#include "gbpwalk/eml.hpp"
#include "gbpwalk/errors.hpp"
#include "gbpwalk/subordination.hpp"

using namespace gbp;

namespace {

const EmlParams kExp{1.0, 1.0, 0.5, 1.0, std::nullopt};
const EmlParams kTempered{0.6, 0.8, 0.5, 1.0, std::nullopt};

}  // namespace

TEST(Subordination, GaussianCharFnIsMgfAtMinusHalfSquare) {
    const BrownianLevy bm{0.0, 1.3};
    for (double s : {0.5, 1.5})
        for (double t : {0.4, 1.0}) {
            const double theta = -0.5 * 1.3 * 1.3 * s * s;
            const auto z = char_fn_Z(kExp, bm, {s}, {t}, true);
            EXPECT_NEAR(z.real(), closed::exp_mgf_star(kExp, theta, t), 1e-12);
            EXPECT_NEAR(z.imag(), 0.0, 1e-14);
            const auto x = char_fn_Z(kExp, bm, {s}, {t}, false);
            EXPECT_NEAR(x.real(), closed::exp_mgf_marginal(kExp, theta, t), 1e-12);
        }
}

TEST(Subordination, CharFnBoundaryCases) {
    const StableLevy st{1.5, 1.0, 0.3, 0.7, 0.1};
    EXPECT_EQ(char_fn_Z(kTempered, st, {0.0, 0.0}, {0.3, 0.8}, true), std::complex<double>(1.0, 0.0));
    const auto one = char_fn_Z(kTempered, st, {0.7}, {0.3}, true);
    const auto two = char_fn_Z(kTempered, st, {0.7, 0.0}, {0.3, 0.8}, true);
    EXPECT_NEAR(std::abs(one - two), 0.0, 1e-6);
    EXPECT_LE(std::abs(char_fn_Z(kTempered, st, {2.0}, {1.5}, true)), 1.0 + 1e-12);
    EXPECT_THROW(char_fn_Z(kTempered, st, {1, 1, 1, 1}, {0.1, 0.2, 0.3, 0.4}, true), Refusal);
    EXPECT_THROW(char_fn_Z(kTempered, st, {1, 1}, {0.1}, true), PreconditionError);
}

TEST(Subordination, LimitSamplerMoments) {
    for (const EmlParams& p : {kExp, kTempered, EmlParams{0.5, 0.0, 0.5, 1.0, 0.8}}) {
        const auto x = sample_star_marginal(p, 1.3, 200000, 4);
        double s = 0.0, s2 = 0.0, s4 = 0.0;
        for (double v : x) {
            s += v;
            s2 += v * v;
            s4 += v * v * v * v;
        }
        const double n = static_cast<double>(x.size());
        const double m1 = s / n, m2 = s2 / n;
        EXPECT_LT(std::abs(m1 - moment_Xstar(p, 1, 1.3)), 4.0 * std::sqrt((m2 - m1 * m1) / n)) << p.alpha;
        EXPECT_LT(std::abs(m2 - moment_Xstar(p, 2, 1.3)), 4.0 * std::sqrt((s4 / n - m2 * m2) / n)) << p.alpha;
    }
}

TEST(Subordination, LimitSamplerAtomAtAlphaOne) {
    const auto x = sample_star_marginal(kExp, 1.0, 100000, 8);
    double atom = 0.0;
    for (double v : x) atom += v == 1.0;
    const double p = std::exp(-1.0);
    EXPECT_NEAR(atom / 100000.0, p, 4.0 * std::sqrt(p * (1 - p) / 100000.0));
}

TEST(Subordination, EmpiricalCharFnAgreesWithComposition) {
    const TemperedStableLevy ts{0.5, 1.0, 1.0};
    const double t = 0.9;
    const auto x = sample_star_marginal(kTempered, t, 50000, 21);
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        CounterRng rng = substream(21, i, StreamDomain::levy);
        z[i] = sample_levy_increment(ts, x[i], rng);
    }
    for (double s : {-1.5, 0.7}) {
        const EcfEstimate e = empirical_char_fn(z, s);
        const auto m = char_fn_Z(kTempered, ts, {s}, {t}, true);
        EXPECT_LT(std::abs(e.value.real() - m.real()), 4.0 * e.stderr_re);
        EXPECT_LT(std::abs(e.value.imag() - m.imag()), 4.0 * e.stderr_im);
    }
}

TEST(Subordination, DeterministicDriftScalesPaths) {
    const Window w(WindowSpec{TemperedPower{0.5, 0.6, 1.0}, 100, 1.0, 0.5});
    const PathEnsemble x = scaled_walk_paths(w, {0.5, 1.0}, 200, 3, 1);
    const PathEnsemble z = subordinate_paths(BrownianLevy{2.0, 1e-300}, x, 9, 1);
    EXPECT_EQ(z.variant, "Z/window");
    for (std::size_t i = 0; i < x.values.size(); ++i) EXPECT_NEAR(z.values[i], 2.0 * x.values[i], 1e-12);
    const PathEnsemble z1 = subordinate_paths(StableLevy{1.5, 1.0, .5, .5, 0.0}, x, 9, 1);
    const PathEnsemble z4 = subordinate_paths(StableLevy{1.5, 1.0, .5, .5, 0.0}, x, 9, 4);
    EXPECT_EQ(z1.values, z4.values);
}

TEST(Subordination, RejectsDecreasingTimeChange) {
    PathEnsemble e;
    e.grid = {0.5, 1.0};
    e.count = 1;
    e.values = {0.4, 0.3};
    EXPECT_THROW(subordinate_paths(BrownianLevy{}, e, 1, 1), DataError);
}

TEST(Subordination, FourierResidualsShrink) {
    const BrownianLevy bm{0.5, 1.0};
    FourierCheckSpec c;
    c.s_grid = {0.5, 1.5};
    c.step = 0.04;
    c.levels = 3;
    const FourierReport star = governing_check_fourier(kTempered, bm, c);
    EXPECT_TRUE(star.decreasing());
    c.star = false;
    c.t_min = 0.3;
    c.t_max = 1.0;
    EXPECT_TRUE(governing_check_fourier(kTempered, bm, c).decreasing());
    c.star = true;
    c.t_min = 0.5;
    c.t_max = 2.0;
    const FourierReport e = governing_check_fourier(kExp, bm, c);
    EXPECT_LT(e.analytic_max_abs, 1e-10);
}

TEST(Subordination, IncrementMeansFactorizeOnWalkPaths) {
    const Window w(WindowSpec{TemperedPower{0.5, 0.6, 1.0}, 200, 1.0, 0.5});
    const PathEnsemble x = scaled_walk_paths(w, {0.4, 0.5, 0.9, 1.0}, 40000, 5, 1);
    const IncrementDependenceReport r = increment_dependence_Z(kTempered, BrownianLevy{1.5, 0.5}, x, {0.5, 1.0}, 0.1, 6);
    EXPECT_LT(std::abs(r.ratio_to_paths - 1.0), 4.0 * r.ratio_stderr);
    EXPECT_NEAR(r.mean_power, 2.25, 1e-15);
}
