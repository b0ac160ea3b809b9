#pragma once

#include <cstdint>
#include <vector>

#include "gbpwalk/exact.hpp"
#include "gbpwalk/rng.hpp"

namespace gbp {

// Gap law of the ones of a window (or of the started sequence when star).
// Vectors are indexed from 0 with entry 0 unused (u[0] = v[0] = 0).
struct RenewalTables {
    std::int64_t length = 0;
    bool star = false;
    double bfT = 0.0;  // window tag, 0 for star tables
    std::vector<double> u;
    std::vector<double> v;
    std::vector<double> s;  // s[m] = 1 - sum_{d<=m} u_d, s[0] = 1
    double s0 = 0.0;        // P(no one), window only
    std::vector<double> U;  // cumulative u
    std::vector<double> V;  // cumulative v
};

inline constexpr std::int64_t kMaxRenewalLength = 200000;

RenewalTables build_renewal_tables(const Window& w);
RenewalTables build_star_tables(const KernelSpec& kernel, std::int64_t n, std::int64_t length);

// Probability the tables assign to the pattern with ones exactly at `ones`.
double table_pattern_probability(const RenewalTables& t, const IndexSet& ones);

// Positions of the ones in one sampled sequence (increasing, within [1, length]).
IndexSet sample_ones(const RenewalTables& t, CounterRng& rng);

std::vector<std::uint8_t> sample_gbp_window(const Window& w, const RenewalTables& t, CounterRng& rng);
std::vector<std::uint8_t> sample_gbp_star(const RenewalTables& t, CounterRng& rng);
std::vector<std::uint8_t> sample_gbp_star(const KernelSpec& kernel, std::int64_t n, std::int64_t length,
                                          CounterRng& rng);

}  // namespace gbp
