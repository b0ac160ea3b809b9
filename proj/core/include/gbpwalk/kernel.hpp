#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace gbp {

struct TemperedPower {
    double c;
    double alpha;
    double lambda;
};

struct Exponential {
    double c;
    double lambda;
};

struct PurePower {
    double c;
    double alpha;
};

// f(x) = p + c e^{-x}
struct ShiftedExponential {
    double p;
    double c;
};

// f(x) = p + c x^{alpha-1}
struct ShiftedPower {
    double p;
    double c;
    double alpha;
};

using KernelVariant =
    std::variant<TemperedPower, Exponential, PurePower, ShiftedExponential, ShiftedPower>;

struct KernelSpec {
    KernelVariant variant;

    KernelSpec() : variant(PurePower{0.4, 0.5}) {}
    template <class V>
    KernelSpec(V v) : variant(v) {}
};

// Returns a description of the first violated parameter constraint, if any.
// horizon_T, when given, also enforces lambda > (alpha-1)/T for TemperedPower.
std::optional<std::string> kernel_domain_error(const KernelSpec& spec,
                                               std::optional<double> horizon_T = std::nullopt);

// Throws InvalidKernel when kernel_domain_error reports a problem.
void validate_kernel(const KernelSpec& spec, std::optional<double> horizon_T = std::nullopt);

double eval_kernel(const KernelSpec& spec, std::int64_t x, std::int64_t n);

// No parameter checks; used by check_assumption on out-of-domain kernels.
double eval_kernel_unchecked(const KernelSpec& spec, double x, double n);
double log_kernel_unchecked(const KernelSpec& spec, double x, double n);

// Scaling exponent used by the walk normalisation n^alpha.
double kernel_alpha(const KernelSpec& spec);

std::string kernel_name(const KernelSpec& spec);
std::string describe_kernel(const KernelSpec& spec);

struct AssumptionReport {
    bool decreasing = true;
    bool ratio_nondecreasing = true;
    bool two_point = true;  // f(2) > f(1)^2
    bool in_unit_interval = true;
    std::int64_t max_x = 0;
    std::int64_t first_decrease_failure = 0;
    std::int64_t first_ratio_failure = 0;
    double f1 = 0.0;
    double f2 = 0.0;
    bool pass() const { return decreasing && ratio_nondecreasing && two_point && in_unit_interval; }
};

AssumptionReport check_assumption(const KernelSpec& spec, std::int64_t n, std::int64_t max_x);

// Default prefix length max(floor(nT), 1000).
std::int64_t default_check_length(std::int64_t n, double T);

}  // namespace gbp
