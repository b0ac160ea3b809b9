#include <cmath>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "gbpwalk/errors.hpp"
#include "gbpwalk/renewal.hpp"

using namespace gbp;

namespace {

IndexSet ones_of(std::uint32_t mask, int N) {
    IndexSet s;
    for (int i = 0; i < N; ++i)
        if (mask >> i & 1u) s.push_back(i + 1);
    return s;
}

}  // namespace

TEST(Renewal, TablesReproduceEnumeration) {
    for (const KernelSpec& k : {KernelSpec(TemperedPower{0.4, 0.5, 1.0}), KernelSpec(PurePower{0.4, 0.5}),
                                KernelSpec(Exponential{0.9, 1.0})})
        for (double b : {0.5, 1.0}) {
            const Window w(WindowSpec{k, 11, 1.0, b});
            const DistributionTable d = enumerate_distribution(w);
            const RenewalTables t = build_renewal_tables(w);
            for (std::uint32_t mask = 0; mask < d.prob.size(); ++mask)
                ASSERT_NEAR(table_pattern_probability(t, ones_of(mask, 11)), d.prob[mask], 1e-12);
        }
}

TEST(Renewal, GapLawSumsToOne) {
    const Window w(WindowSpec{TemperedPower{0.4, 0.5, 1.0}, 50, 1.0, 0.5});
    const RenewalTables t = build_renewal_tables(w);
    double total_v = t.s0;
    for (std::int64_t d = 1; d <= t.length; ++d) total_v += t.v[static_cast<std::size_t>(d)];
    EXPECT_NEAR(total_v, 1.0, 1e-12);
    for (std::int64_t d = 1; d <= t.length; ++d) EXPECT_GE(t.u[static_cast<std::size_t>(d)], 0.0);
}

TEST(Renewal, StarTablesMatchStarLaw) {
    const KernelSpec k = Exponential{0.9, 1.0};
    const RenewalTables t = build_star_tables(k, 10, 8);
    for (std::uint32_t mask = 0; mask < 256; ++mask) {
        const IndexSet B = ones_of(mask, 8);
        IndexSet F;
        for (int i = 1; i <= 8; ++i)
            if (!(mask >> (i - 1) & 1u)) F.push_back(i);
        EXPECT_NEAR(table_pattern_probability(t, B), star_joint_prob(k, 10, B, F), 1e-12);
    }
}

TEST(Renewal, SampledPatternsPassChiSquare) {
    const int N = 8;
    const Window w(WindowSpec{TemperedPower{0.4, 0.5, 1.0}, N, 1.0, 0.5});
    const DistributionTable d = enumerate_distribution(w);
    const RenewalTables t = build_renewal_tables(w);
    const std::int64_t count = 200000;
    std::vector<double> counts(d.prob.size(), 0.0);
    for (std::int64_t i = 0; i < count; ++i) {
        CounterRng rng = substream(5, static_cast<std::uint64_t>(i), StreamDomain::gbp_path);
        const auto xs = sample_gbp_window(w, t, rng);
        std::uint32_t mask = 0;
        for (int j = 0; j < N; ++j)
            if (xs[static_cast<std::size_t>(j)]) mask |= 1u << j;
        counts[mask] += 1.0;
    }
    double chi2 = 0.0;
    int cells = 0;
    for (std::size_t m = 0; m < counts.size(); ++m) {
        const double e = d.prob[m] * count;
        if (e < 5.0) continue;
        chi2 += (counts[m] - e) * (counts[m] - e) / e;
        ++cells;
    }
    const double p = boost::math::cdf(boost::math::complement(boost::math::chi_squared(cells - 1), chi2));
    EXPECT_GT(p, 1e-4) << "chi2=" << chi2 << " cells=" << cells;
}

TEST(Renewal, SamplerIsDeterministicPerStream) {
    const Window w(WindowSpec{PurePower{0.4, 0.5}, 200, 1.0, 0.5});
    const RenewalTables t = build_renewal_tables(w);
    CounterRng a = substream(9, 3, StreamDomain::gbp_path), b = substream(9, 3, StreamDomain::gbp_path);
    EXPECT_EQ(sample_gbp_window(w, t, a), sample_gbp_window(w, t, b));
    const IndexSet ones = sample_ones(t, a);
    EXPECT_TRUE(std::is_sorted(ones.begin(), ones.end()));
    for (auto i : ones) {
        EXPECT_GE(i, 1);
        EXPECT_LE(i, 200);
    }
}

TEST(Renewal, StarSamplerFirstOneFrequency) {
    const KernelSpec k = Exponential{0.6, 1.0};
    const std::int64_t count = 100000;
    double hits = 0.0;
    for (std::int64_t i = 0; i < count; ++i) {
        CounterRng rng = substream(17, static_cast<std::uint64_t>(i), StreamDomain::gbp_path);
        hits += sample_gbp_star(k, 10, 5, rng)[0];
    }
    const double p = eval_kernel(k, 1, 10);
    EXPECT_NEAR(hits / count, p, 4.0 * std::sqrt(p * (1 - p) / count));
}

TEST(Renewal, LengthGuard) {
    EXPECT_THROW(build_star_tables(Exponential{0.5, 1.0}, 10, kMaxRenewalLength + 1), Refusal);
}
