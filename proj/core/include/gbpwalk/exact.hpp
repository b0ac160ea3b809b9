#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gbpwalk/kernel.hpp"

namespace gbp {

using IndexSet = std::vector<std::int64_t>;

struct WindowSpec {
    KernelSpec kernel;
    std::int64_t n = 10;
    double T = 1.0;
    double b = 0.5;
};

std::int64_t window_length(std::int64_t n, double T);

// A validated window with the kernel tabulated on [1, N].
class Window {
public:
    explicit Window(WindowSpec spec);

    const WindowSpec& spec() const { return spec_; }
    const KernelSpec& kernel() const { return spec_.kernel; }
    std::int64_t n() const { return spec_.n; }
    std::int64_t N() const { return N_; }
    double b() const { return spec_.b; }
    double fT() const { return f_[static_cast<std::size_t>(N_)]; }
    double bfT() const { return spec_.b * fT(); }
    double alpha() const { return kernel_alpha(spec_.kernel); }

    // f_n(d) for 1 <= d <= N.
    double f(std::int64_t d) const { return f_[static_cast<std::size_t>(d)]; }
    // Table with f[0] = 0 and f[d] = f_n(d).
    const std::vector<double>& table() const { return f_; }

private:
    WindowSpec spec_;
    std::int64_t N_;
    std::vector<double> f_;
};

double L_value(const Window& w, const IndexSet& B);
double D_value(const Window& w, const IndexSet& B, const IndexSet& F);

struct JointEvent {
    IndexSet B;
    IndexSet F;
};

double joint_prob(const Window& w, const JointEvent& event);

struct DistributionTable {
    int N = 0;
    // prob[mask], bit (i-1) of mask set iff position i holds a one.
    std::vector<double> prob;

    static std::string pattern(std::uint32_t mask, int N);
    void write_csv(std::ostream& os) const;
};

DistributionTable enumerate_distribution(const Window& w);

double pair_correlation(const Window& w, std::int64_t k);

// Sum of pair_correlation(k) for k = 1..K.
double correlation_sum(const Window& w, std::int64_t K);

// Law of the sequence started right after a one (independent of b and T).
double star_joint_prob(const KernelSpec& kernel, std::int64_t n, const IndexSet& B, const IndexSet& F);

double exact_walk_moment(const Window& w, double t, int k);

// Stirling numbers of the second kind, k <= 20.
double stirling2(int k, int m);

// Inclusion-exclusion over the merged points of B and F with gap weights taken
// from f (f[d] for d >= 1). empty_value is used for the empty configuration.
// Result is clamped per the positivity rule; throws PositivityViolation.
double inclusion_exclusion(const std::vector<double>& f, const IndexSet& B, const IndexSet& F,
                           double empty_value);

}  // namespace gbp
