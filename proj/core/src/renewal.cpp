#include "gbpwalk/renewal.hpp"

#include <algorithm>
#include <cmath>

#include "gbpwalk/errors.hpp"

namespace gbp {
namespace {

constexpr double kBreakdown = 1e-10;

double clamp_entry(double x, const char* what) {
    if (x < -kBreakdown) throw RenewalBreakdown(std::string(what) + " below -1e-10");
    return x < 0.0 ? 0.0 : x;
}

// u_d = f(d) - sum_{j<d} u_j f(d-j); raw values drive the recursion.
std::vector<double> gap_pmf(const std::vector<double>& f, std::int64_t L) {
    std::vector<double> raw(static_cast<std::size_t>(L) + 1, 0.0);
    std::vector<double> u(raw.size(), 0.0);
    for (std::int64_t d = 1; d <= L; ++d) {
        double acc = f[static_cast<std::size_t>(d)];
        for (std::int64_t j = 1; j < d; ++j)
            acc -= raw[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(d - j)];
        raw[static_cast<std::size_t>(d)] = acc;
        u[static_cast<std::size_t>(d)] = clamp_entry(acc, "gap probability");
    }
    return u;
}

void finish(RenewalTables& t) {
    const auto L = static_cast<std::size_t>(t.length);
    t.U.assign(L + 1, 0.0);
    t.s.assign(L + 1, 1.0);
    for (std::size_t d = 1; d <= L; ++d) {
        t.U[d] = t.U[d - 1] + t.u[d];
        t.s[d] = std::max(0.0, 1.0 - t.U[d]);
    }
    if (t.U[L] > 1.0 + 1e-12) throw RenewalBreakdown("gap probabilities sum above one");
    t.V.assign(L + 1, 0.0);
    for (std::size_t j = 1; j <= L && !t.v.empty(); ++j) t.V[j] = t.V[j - 1] + t.v[j];
    if (!t.star) {
        if (t.V[L] > 1.0 + 1e-12) throw RenewalBreakdown("first-one probabilities sum above one");
        t.s0 = std::max(0.0, 1.0 - t.V[L]);
    }
}

}  // namespace

RenewalTables build_renewal_tables(const Window& w) {
    RenewalTables t;
    t.length = w.N();
    t.star = false;
    t.bfT = w.bfT();
    const auto& f = w.table();
    t.u = gap_pmf(f, t.length);
    std::vector<double> raw(static_cast<std::size_t>(t.length) + 1, 0.0);
    t.v.assign(raw.size(), 0.0);
    for (std::int64_t j = 1; j <= t.length; ++j) {
        double acc = t.bfT;
        for (std::int64_t i = 1; i < j; ++i)
            acc -= raw[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(j - i)];
        raw[static_cast<std::size_t>(j)] = acc;
        t.v[static_cast<std::size_t>(j)] = clamp_entry(acc, "first-one probability");
    }
    finish(t);
    return t;
}

RenewalTables build_star_tables(const KernelSpec& kernel, std::int64_t n, std::int64_t length) {
    validate_kernel(kernel);
    if (length < 1) throw DomainError("star tables: length must be >= 1");
    if (length > kMaxRenewalLength) throw Refusal("star tables: length exceeds the renewal table limit");
    RenewalTables t;
    t.length = length;
    t.star = true;
    std::vector<double> f(static_cast<std::size_t>(length) + 1, 0.0);
    for (std::int64_t d = 1; d <= length; ++d)
        f[static_cast<std::size_t>(d)] =
            eval_kernel_unchecked(kernel, static_cast<double>(d), static_cast<double>(n));
    t.u = gap_pmf(f, length);
    t.v = t.u;
    finish(t);
    return t;
}

double table_pattern_probability(const RenewalTables& t, const IndexSet& ones) {
    if (ones.empty()) return t.star ? t.s[static_cast<std::size_t>(t.length)] : t.s0;
    double p = t.v[static_cast<std::size_t>(ones.front())];
    for (std::size_t i = 1; i < ones.size(); ++i)
        p *= t.u[static_cast<std::size_t>(ones[i] - ones[i - 1])];
    return p * t.s[static_cast<std::size_t>(t.length - ones.back())];
}

namespace {

// Smallest d in [lo, m] with cum[d] > r, or 0 when r falls in the survival mass.
std::int64_t invert(const std::vector<double>& cum, std::int64_t lo, std::int64_t m, double r) {
    auto first = cum.begin() + lo;
    auto last = cum.begin() + m + 1;
    auto it = std::upper_bound(first, last, r);
    if (it == last) return 0;
    return static_cast<std::int64_t>(it - cum.begin());
}

}  // namespace

IndexSet sample_ones(const RenewalTables& t, CounterRng& rng) {
    IndexSet ones;
    const std::int64_t L = t.length;
    std::int64_t pos = invert(t.V, 1, L, rng.uniform());
    if (pos == 0) return ones;
    ones.push_back(pos);

    const double u1 = t.u[1];
    const bool runs = u1 >= 0.5 && u1 < 1.0;
    const double log_u1 = runs ? std::log(u1) : 0.0;
    while (pos < L) {
        const std::int64_t m = L - pos;
        if (runs) {
            // Consecutive unit gaps come in a geometric run; the gap that ends
            // the run is drawn from the partition restricted to d >= 2.
            const double k = std::floor(std::log(rng.uniform_open()) / log_u1);
            const std::int64_t run = k >= static_cast<double>(m) ? m : static_cast<std::int64_t>(k);
            for (std::int64_t i = 1; i <= run; ++i) ones.push_back(pos + i);
            pos += run;
            if (pos >= L) break;
            const double r = u1 + rng.uniform() * (1.0 - u1);
            const std::int64_t d = L - pos >= 2 ? invert(t.U, 2, L - pos, r) : 0;
            if (d == 0) break;
            pos += d;
            ones.push_back(pos);
        } else {
            const std::int64_t d = invert(t.U, 1, m, rng.uniform());
            if (d == 0) break;
            pos += d;
            ones.push_back(pos);
        }
    }
    return ones;
}

std::vector<std::uint8_t> sample_gbp_window(const Window& w, const RenewalTables& t, CounterRng& rng) {
    if (t.star || t.length != w.N() || t.bfT != w.bfT())
        throw PreconditionError("sample_gbp_window: tables were not built from this window");
    std::vector<std::uint8_t> seq(static_cast<std::size_t>(t.length), 0);
    for (auto i : sample_ones(t, rng)) seq[static_cast<std::size_t>(i - 1)] = 1;
    return seq;
}

std::vector<std::uint8_t> sample_gbp_star(const RenewalTables& t, CounterRng& rng) {
    if (!t.star) throw PreconditionError("sample_gbp_star: window tables supplied");
    std::vector<std::uint8_t> seq(static_cast<std::size_t>(t.length), 0);
    for (auto i : sample_ones(t, rng)) seq[static_cast<std::size_t>(i - 1)] = 1;
    return seq;
}

std::vector<std::uint8_t> sample_gbp_star(const KernelSpec& kernel, std::int64_t n, std::int64_t length,
                                          CounterRng& rng) {
    return sample_gbp_star(build_star_tables(kernel, n, length), rng);
}

}  // namespace gbp
