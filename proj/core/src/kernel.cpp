#include "gbpwalk/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gbpwalk/errors.hpp"

namespace gbp {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Largest c with p + c q2 > (p + c q1)^2, i.e. the upper root of
// q1^2 c^2 + (2 p q1 - q2) c + p^2 - p.
double shifted_bound(double p, double q1, double q2) {
    const double A = q1 * q1;
    const double B = 2.0 * p * q1 - q2;
    const double C = p * p - p;
    return (-B + std::sqrt(B * B - 4.0 * A * C)) / (2.0 * A);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::optional<std::string> kernel_domain_error(const KernelSpec& spec,
                                               std::optional<double> horizon_T) {
    return std::visit(
        overloaded{
            [&](const TemperedPower& k) -> std::optional<std::string> {
                if (!(k.alpha > 0.0 && k.alpha <= 1.0)) return "tempered_power: alpha must lie in (0,1]";
                const double cmax = std::pow(2.0, k.alpha - 1.0);
                if (!(k.c > 0.0 && k.c < cmax))
                    return "tempered_power: c must lie in (0, 2^(alpha-1)) = (0, " + fmt(cmax) + ")";
                if (!std::isfinite(k.lambda)) return "tempered_power: lambda must be finite";
                if (k.alpha == 1.0 && !(k.lambda > 0.0))
                    return "tempered_power: alpha = 1 requires lambda > 0";
                if (horizon_T && !(k.lambda > (k.alpha - 1.0) / *horizon_T))
                    return "tempered_power: lambda must exceed (alpha-1)/T";
                return std::nullopt;
            },
            [](const Exponential& k) -> std::optional<std::string> {
                if (!(k.c > 0.0 && k.c <= 1.0)) return "exponential: c must lie in (0,1]";
                if (!(k.lambda > 0.0 && std::isfinite(k.lambda))) return "exponential: lambda must be > 0";
                return std::nullopt;
            },
            [](const PurePower& k) -> std::optional<std::string> {
                if (!(k.alpha < 1.0 && std::isfinite(k.alpha))) return "pure_power: alpha must be < 1";
                const double cmax = std::pow(2.0, k.alpha - 1.0);
                if (!(k.c > 0.0 && k.c < cmax))
                    return "pure_power: c must lie in (0, 2^(alpha-1)) = (0, " + fmt(cmax) + ")";
                return std::nullopt;
            },
            [](const ShiftedExponential& k) -> std::optional<std::string> {
                if (!(k.p > 0.0 && k.p < 1.0)) return "shifted_exponential: p must lie in (0,1)";
                const double e1 = std::exp(-1.0);
                const double bound = std::min(1.0 - k.p, shifted_bound(k.p, e1, e1 * e1));
                if (!(k.c > 0.0 && k.c < bound))
                    return "shifted_exponential: c must lie in (0, " + fmt(bound) + ")";
                return std::nullopt;
            },
            [](const ShiftedPower& k) -> std::optional<std::string> {
                if (!(k.p > 0.0 && k.p < 1.0)) return "shifted_power: p must lie in (0,1)";
                if (!(k.alpha < 1.0 && std::isfinite(k.alpha))) return "shifted_power: alpha must be < 1";
                const double bound =
                    std::min(1.0 - k.p, shifted_bound(k.p, 1.0, std::pow(2.0, k.alpha - 1.0)));
                if (!(k.c > 0.0 && k.c < bound))
                    return "shifted_power: c must lie in (0, " + fmt(bound) + ")";
                return std::nullopt;
            },
        },
        spec.variant);
}

void validate_kernel(const KernelSpec& spec, std::optional<double> horizon_T) {
    if (auto err = kernel_domain_error(spec, horizon_T)) throw InvalidKernel(*err);
}

double log_kernel_unchecked(const KernelSpec& spec, double x, double n) {
    return std::visit(
        overloaded{
            [&](const TemperedPower& k) {
                return std::log(k.c) - k.lambda * x / n + (k.alpha - 1.0) * std::log(x);
            },
            [&](const Exponential& k) { return std::log(k.c) - k.lambda * x / n; },
            [&](const PurePower& k) { return std::log(k.c) + (k.alpha - 1.0) * std::log(x); },
            [&](const ShiftedExponential& k) { return std::log(k.p + k.c * std::exp(-x)); },
            [&](const ShiftedPower& k) {
                return std::log(k.p + std::exp(std::log(k.c) + (k.alpha - 1.0) * std::log(x)));
            },
        },
        spec.variant);
}

double eval_kernel_unchecked(const KernelSpec& spec, double x, double n) {
    return std::exp(log_kernel_unchecked(spec, x, n));
}

double eval_kernel(const KernelSpec& spec, std::int64_t x, std::int64_t n) {
    if (x < 1) throw DomainError("eval_kernel: x must be >= 1");
    if (n < 1) throw DomainError("eval_kernel: n must be >= 1");
    validate_kernel(spec);
    return eval_kernel_unchecked(spec, static_cast<double>(x), static_cast<double>(n));
}

double kernel_alpha(const KernelSpec& spec) {
    return std::visit(overloaded{
                          [](const TemperedPower& k) { return k.alpha; },
                          [](const Exponential&) { return 1.0; },
                          [](const PurePower& k) { return k.alpha; },
                          [](const ShiftedExponential&) { return 1.0; },
                          [](const ShiftedPower& k) { return k.alpha; },
                      },
                      spec.variant);
}

std::string kernel_name(const KernelSpec& spec) {
    static const char* names[] = {"tempered_power", "exponential", "pure_power",
                                  "shifted_exponential", "shifted_power"};
    return names[spec.variant.index()];
}

std::string describe_kernel(const KernelSpec& spec) {
    std::ostringstream os;
    os.precision(17);
    os << kernel_name(spec) << "{";
    std::visit(overloaded{
                   [&](const TemperedPower& k) {
                       os << "c=" << k.c << ", alpha=" << k.alpha << ", lambda=" << k.lambda;
                   },
                   [&](const Exponential& k) { os << "c=" << k.c << ", lambda=" << k.lambda; },
                   [&](const PurePower& k) { os << "c=" << k.c << ", alpha=" << k.alpha; },
                   [&](const ShiftedExponential& k) { os << "p=" << k.p << ", c=" << k.c; },
                   [&](const ShiftedPower& k) {
                       os << "p=" << k.p << ", c=" << k.c << ", alpha=" << k.alpha;
                   },
               },
               spec.variant);
    os << "}";
    return os.str();
}

namespace {

// log f(x+1) - log f(x) with the power and exponential parts kept separate.
double log_step(const KernelSpec& spec, double x, double n) {
    return std::visit(
        overloaded{
            [&](const TemperedPower& k) {
                return -k.lambda / n + (k.alpha - 1.0) * std::log1p(1.0 / x);
            },
            [&](const Exponential& k) { return -k.lambda / n; },
            [&](const PurePower& k) { return (k.alpha - 1.0) * std::log1p(1.0 / x); },
            [&](const auto&) {
                return log_kernel_unchecked(spec, x + 1.0, n) - log_kernel_unchecked(spec, x, n);
            },
        },
        spec.variant);
}

// Shifted kernels are p + c*q(x); compares q in the log domain, where the tail never rounds flat.
bool shifted_part_decreases(const KernelSpec& spec, double x) {
    return std::visit(overloaded{
                          [&](const ShiftedExponential&) { return -(x + 1.0) < -x; },
                          [&](const ShiftedPower& k) { return (k.alpha - 1.0) * std::log1p(1.0 / x) < 0.0; },
                          [](const auto&) { return false; },
                      },
                      spec.variant);
}

}  // namespace

AssumptionReport check_assumption(const KernelSpec& spec, std::int64_t n, std::int64_t max_x) {
    if (max_x < 3) throw DomainError("check_assumption: max_x must be >= 3");
    AssumptionReport r;
    r.max_x = max_x;
    const double nd = static_cast<double>(n);
    r.f1 = eval_kernel_unchecked(spec, 1.0, nd);
    r.f2 = eval_kernel_unchecked(spec, 2.0, nd);
    r.two_point = log_kernel_unchecked(spec, 2.0, nd) > 2.0 * log_kernel_unchecked(spec, 1.0, nd);
    r.in_unit_interval = r.f1 > 0.0 && r.f1 < 1.0 &&
                         eval_kernel_unchecked(spec, static_cast<double>(max_x), nd) > 0.0;

    constexpr double ratio_slack = 1e-12;
    double prev = log_step(spec, 1.0, nd);
    if (!(prev < 0.0 || shifted_part_decreases(spec, 1.0))) {
        r.decreasing = false;
        r.first_decrease_failure = 1;
    }
    for (std::int64_t x = 2; x < max_x; ++x) {
        const double d = log_step(spec, static_cast<double>(x), nd);
        if (r.decreasing && !(d < 0.0 || shifted_part_decreases(spec, static_cast<double>(x)))) {
            r.decreasing = false;
            r.first_decrease_failure = x;
        }
        if (r.ratio_nondecreasing && d < prev - ratio_slack) {
            r.ratio_nondecreasing = false;
            r.first_ratio_failure = x - 1;
        }
        prev = d;
    }
    return r;
}

std::int64_t default_check_length(std::int64_t n, double T) {
    const auto N = static_cast<std::int64_t>(std::floor(static_cast<double>(n) * T + 1e-9));
    return std::max<std::int64_t>(N, 1000);
}

}  // namespace gbp
