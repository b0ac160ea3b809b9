#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "gbpwalk/errors.hpp"
#include "gbpwalk/levy.hpp"

using namespace gbp;

namespace {

struct Moments {
    double mean, var, n;
};

Moments draw(const LevySpec& spec, double duration, int count, std::uint64_t seed) {
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < count; ++i) {
        CounterRng rng = substream(seed, static_cast<std::uint64_t>(i), StreamDomain::levy);
        const double y = sample_levy_increment(spec, duration, rng);
        s += y;
        s2 += y * y;
    }
    const double m = s / count;
    return {m, s2 / count - m * m, static_cast<double>(count)};
}

void expect_ecf(const LevySpec& spec, double duration, double s, int count, std::uint64_t seed) {
    double re = 0.0, im = 0.0, re2 = 0.0, im2 = 0.0;
    for (int i = 0; i < count; ++i) {
        CounterRng rng = substream(seed, static_cast<std::uint64_t>(i), StreamDomain::levy);
        const double y = sample_levy_increment(spec, duration, rng);
        re += std::cos(s * y);
        im += std::sin(s * y);
        re2 += std::cos(s * y) * std::cos(s * y);
        im2 += std::sin(s * y) * std::sin(s * y);
    }
    re /= count;
    im /= count;
    const double se_re = std::sqrt((re2 / count - re * re) / count), se_im = std::sqrt((im2 / count - im * im) / count);
    const std::complex<double> model = std::exp(duration * levy_exponent(spec, s));
    EXPECT_LT(std::abs(re - model.real()), 4.0 * se_re + 1e-12) << describe(spec) << " s=" << s;
    EXPECT_LT(std::abs(im - model.imag()), 4.0 * se_im + 1e-12) << describe(spec) << " s=" << s;
}

}  // namespace

TEST(Levy, Exponents) {
    const auto b = levy_exponent(BrownianLevy{0.5, 2.0}, 1.5);
    EXPECT_NEAR(b.real(), -4.0 * 1.5 * 1.5 / 2.0, 1e-14);
    EXPECT_NEAR(b.imag(), 0.75, 1e-14);
    const double beta = 1.5;
    const auto s = levy_exponent(StableLevy{beta, 1.0, 0.5, 0.5, 0.0}, -2.0);
    EXPECT_NEAR(s.real(), std::pow(2.0, beta) * std::cos(std::numbers::pi * beta / 2.0), 1e-13);
    EXPECT_NEAR(s.imag(), 0.0, 1e-13);
    EXPECT_EQ(levy_exponent(TemperedStableLevy{}, 0.0), std::complex<double>(0.0, 0.0));
}

TEST(Levy, MeansAndVariances) {
    EXPECT_DOUBLE_EQ(*levy_mean(BrownianLevy{0.3, 1.0}), 0.3);
    EXPECT_DOUBLE_EQ(*levy_variance(BrownianLevy{0.3, 2.0}), 4.0);
    EXPECT_DOUBLE_EQ(*levy_mean(StableLevy{1.5, 1.0, 0.5, 0.5, 0.2}), 0.2);
    EXPECT_FALSE(levy_variance(StableLevy{1.5, 1.0, 0.5, 0.5, 0.2}).has_value());
    EXPECT_FALSE(levy_mean(StableLevy{0.5, -1.0, 0.5, 0.5, 0.0}).has_value());
    EXPECT_NEAR(*levy_mean(TemperedStableLevy{0.5, 4.0, 1.0}), -0.5 * 0.5, 1e-15);
}

TEST(Levy, Validation) {
    EXPECT_THROW(validate_levy(BrownianLevy{0.0, 0.0}), PreconditionError);
    EXPECT_THROW(validate_levy(StableLevy{1.0, 1.0, 0.5, 0.5, 0.0}), DomainError);
    EXPECT_THROW(validate_levy(StableLevy{1.5, -1.0, 0.5, 0.5, 0.0}), PreconditionError);
    EXPECT_THROW(validate_levy(StableLevy{0.5, 1.0, 0.5, 0.5, 0.0}), PreconditionError);
    EXPECT_THROW(validate_levy(StableLevy{1.5, 1.0, 0.7, 0.5, 0.0}), PreconditionError);
    EXPECT_THROW(validate_levy(TemperedStableLevy{1.2, 1.0, 1.0}), PreconditionError);
}

TEST(Levy, SimulationParameterMap) {
    const StableSimParams s = stable_sim_params(StableLevy{1.5, 2.0, 0.2, 0.8, 0.1});
    EXPECT_NEAR(std::pow(s.scale, 1.5), -2.0 * std::cos(0.75 * std::numbers::pi), 1e-14);
    EXPECT_NEAR(s.skew, 0.6, 1e-15);
    EXPECT_EQ(s.shift, 0.1);
}

TEST(Levy, PositiveStableLaplaceTransform) {
    for (double beta : {0.3, 0.7}) {
        const int count = 100000;
        for (double u : {0.5, 2.0}) {
            double acc = 0.0, acc2 = 0.0;
            for (int i = 0; i < count; ++i) {
                CounterRng rng = substream(3, static_cast<std::uint64_t>(i), StreamDomain::misc);
                const double v = std::exp(-u * sample_positive_stable(beta, rng));
                acc += v;
                acc2 += v * v;
            }
            const double m = acc / count, se = std::sqrt((acc2 / count - m * m) / count);
            EXPECT_LT(std::abs(m - std::exp(-std::pow(u, beta))), 4.0 * se) << beta << ' ' << u;
        }
    }
}

TEST(Levy, BrownianIncrementMoments) {
    const Moments m = draw(BrownianLevy{0.5, 1.5}, 2.0, 100000, 1);
    EXPECT_LT(std::abs(m.mean - 1.0), 4.0 * std::sqrt(4.5 / m.n));
    EXPECT_NEAR(m.var, 4.5, 4.0 * 4.5 * std::sqrt(2.0 / m.n));
}

TEST(Levy, TemperedStableIncrementMoments) {
    const TemperedStableLevy spec{0.5, 1.0, 1.0};
    const double d = 1.5, var = d * 0.5 * 0.5;
    const Moments m = draw(spec, d, 100000, 2);
    EXPECT_LT(std::abs(m.mean - d * *levy_mean(spec)), 4.0 * std::sqrt(var / m.n));
    EXPECT_NEAR(m.var, d * *levy_variance(spec), 0.05 * var);
    CounterRng rng = substream(2, 0, StreamDomain::levy);
    EXPECT_LE(sample_levy_increment(spec, 0.7, rng), 0.0);
    EXPECT_EQ(sample_levy_increment(spec, 0.0, rng), 0.0);
}

TEST(Levy, CharacteristicFunctionsOfSamples) {
    expect_ecf(StableLevy{1.5, 1.0, 0.2, 0.8, 0.3}, 0.7, 1.2, 100000, 10);
    expect_ecf(StableLevy{0.6, -1.0, 1.0, 0.0, 0.0}, 0.5, -0.8, 100000, 11);
    expect_ecf(StableLevy{1.9, 0.5, 0.5, 0.5, -0.2}, 1.0, 2.0, 100000, 12);
    expect_ecf(TemperedStableLevy{0.4, 2.0, 1.5}, 1.0, 1.0, 100000, 13);
    expect_ecf(BrownianLevy{-0.4, 0.8}, 1.3, 1.7, 100000, 14);
}
