#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "gbpwalk/errors.hpp"
#include "gbpwalk/exact.hpp"

using namespace gbp;

namespace {

// P(ones at B, zeros at F) by the plain 2^|F| inclusion-exclusion over gap products.
double brute_joint(const Window& w, const IndexSet& B, const IndexSet& F) {
    double total = 0.0;
    const std::size_t m = F.size();
    for (std::uint32_t sub = 0; sub < (1u << m); ++sub) {
        IndexSet S = B;
        int sign = 1;
        for (std::size_t j = 0; j < m; ++j)
            if (sub >> j & 1u) {
                S.push_back(F[j]);
                sign = -sign;
            }
        std::sort(S.begin(), S.end());
        double L = 1.0;
        if (!S.empty()) {
            L = w.bfT();
            for (std::size_t i = 1; i < S.size(); ++i) L *= w.f(S[i] - S[i - 1]);
        }
        total += sign * L;
    }
    return total;
}

std::vector<KernelSpec> kernels() {
    return {TemperedPower{0.4, 0.5, 1.0}, PurePower{0.4, 0.5}, Exponential{0.9, 1.0}, ShiftedPower{0.2, 0.3, 0.5}};
}

double walk_moment_from_table(const DistributionTable& t, int m, int k) {
    double acc = 0.0;
    for (std::uint32_t mask = 0; mask < t.prob.size(); ++mask) {
        const int ones = __builtin_popcount(mask & ((1u << m) - 1u));
        acc += t.prob[mask] * std::pow(static_cast<double>(ones), k);
    }
    return acc;
}

}  // namespace

TEST(Exact, WindowLength) {
    EXPECT_EQ(window_length(10, 1.0), 10);
    EXPECT_EQ(window_length(7, 1.5), 10);
}

TEST(Exact, LValueIsGapProduct) {
    const Window w(WindowSpec{PurePower{0.4, 0.5}, 9, 1.0, 0.5});
    EXPECT_DOUBLE_EQ(L_value(w, {}), 1.0 / w.bfT());
    EXPECT_DOUBLE_EQ(L_value(w, {3}), 1.0);
    EXPECT_NEAR(L_value(w, {1, 2, 5}), w.f(1) * w.f(3), 1e-16);
    EXPECT_NEAR(L_value(w, {2, 5, 9}), 0.046188, 1e-6);
}

TEST(Exact, JointProbabilityMatchesBruteForce) {
    for (const auto& k : kernels()) {
        const Window w(WindowSpec{k, 12, 1.0, 0.7});
        const std::vector<std::pair<IndexSet, IndexSet>> cases{
            {{2, 5}, {1, 3, 4}}, {{}, {1, 2, 3, 4, 5, 6}}, {{1, 12}, {2, 6, 7, 11}}, {{4}, {}}, {{3, 8, 9}, {10}}};
        for (const auto& [B, F] : cases) {
            EXPECT_NEAR(joint_prob(w, {B, F}), brute_joint(w, B, F), 1e-14) << describe_kernel(k);
            EXPECT_NEAR(w.bfT() * D_value(w, B, F), brute_joint(w, B, F), 1e-14);
        }
    }
}

TEST(Exact, EnumerationIsAProbabilityLaw) {
    for (const auto& k : kernels())
        for (double b : {0.5, 1.0}) {
            const Window w(WindowSpec{k, 10, 1.0, b});
            const DistributionTable t = enumerate_distribution(w);
            ASSERT_EQ(t.prob.size(), 1024u);
            double sum = 0.0;
            for (double p : t.prob) {
                EXPECT_GE(p, 0.0);
                sum += p;
            }
            EXPECT_NEAR(sum, 1.0, 1e-12);
        }
}

TEST(Exact, EnumerationIsStationary) {
    const Window w(WindowSpec{TemperedPower{0.4, 0.5, 1.0}, 10, 1.0, 0.5});
    const DistributionTable t = enumerate_distribution(w);
    for (int shift = 1; shift < 4; ++shift) {
        // P(xi_1 = 1, xi_3 = 1) equals P(xi_{1+s} = 1, xi_{3+s} = 1).
        double a = 0.0, b = 0.0;
        for (std::uint32_t mask = 0; mask < t.prob.size(); ++mask) {
            if ((mask & 0b101u) == 0b101u) a += t.prob[mask];
            if ((mask >> shift & 0b101u) == 0b101u) b += t.prob[mask];
        }
        EXPECT_NEAR(a, b, 1e-14);
    }
}

TEST(Exact, PairCorrelationMatchesEnumeration) {
    const Window w(WindowSpec{Exponential{0.9, 1.0}, 8, 1.0, 0.5});
    const DistributionTable t = enumerate_distribution(w);
    const double bf = w.bfT();
    for (int k = 1; k < 8; ++k) {
        double p = 0.0;
        for (std::uint32_t mask = 0; mask < t.prob.size(); ++mask)
            if ((mask & 1u) && (mask >> k & 1u)) p += t.prob[mask];
        EXPECT_NEAR(pair_correlation(w, k), (p - bf * bf) / (bf * (1.0 - bf)), 1e-12);
    }
    double s = 0.0;
    for (int k = 1; k <= 5; ++k) s += pair_correlation(w, k);
    EXPECT_NEAR(correlation_sum(w, 5), s, 1e-14);
}

TEST(Exact, PatternNamesUseBitOrder) {
    EXPECT_EQ(DistributionTable::pattern(0b0101u, 4), "1010");
}

TEST(Exact, StarLawStartsAfterAOne) {
    const KernelSpec k = TemperedPower{0.4, 0.5, 1.0};
    EXPECT_NEAR(star_joint_prob(k, 10, {1}, {}), eval_kernel(k, 1, 10), 1e-15);
    EXPECT_NEAR(star_joint_prob(k, 10, {2, 3}, {}), eval_kernel(k, 2, 10) * eval_kernel(k, 1, 10), 1e-15);
    EXPECT_NEAR(star_joint_prob(k, 10, {}, {1}), 1.0 - eval_kernel(k, 1, 10), 1e-15);
}

TEST(Exact, Stirling) {
    EXPECT_EQ(stirling2(4, 2), 7.0);
    EXPECT_EQ(stirling2(5, 3), 25.0);
    EXPECT_EQ(stirling2(3, 0), 0.0);
}

TEST(Exact, WalkMomentsMatchEnumeration) {
    for (const auto& k : kernels()) {
        const Window w(WindowSpec{k, 12, 1.0, 0.6});
        const DistributionTable t = enumerate_distribution(w);
        for (int m : {5, 12})
            for (int p = 1; p <= 4; ++p) {
                const double t_ = static_cast<double>(m) / 12.0;
                const double scale = std::pow(12.0, p * w.alpha());
                EXPECT_NEAR(exact_walk_moment(w, t_, p) * scale, walk_moment_from_table(t, m, p),
                            1e-10 * std::max(1.0, walk_moment_from_table(t, m, p)))
                    << describe_kernel(k) << " m=" << m << " k=" << p;
            }
    }
}

TEST(Exact, FirstWalkMomentIsLinear) {
    const Window w(WindowSpec{TemperedPower{0.5, 0.6, 1.0}, 1000, 1.0, 0.5});
    EXPECT_NEAR(exact_walk_moment(w, 0.5, 1), 500.0 * w.bfT() / std::pow(1000.0, 0.6), 1e-13);
}

TEST(Exact, ClampAndPositivity) {
    const std::vector<double> f{0.0, 0.5, 0.4};
    EXPECT_NEAR(inclusion_exclusion(f, {1}, {2}, 1.0), 0.5, 1e-16);
    EXPECT_THROW(inclusion_exclusion({0.0, 0.9, 0.1}, {1, 3}, {2}, 1.0), PositivityViolation);
}
