#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "gbpwalk/quadrature.hpp"
#include "gbpwalk/specfun.hpp"

namespace gbp {

// Parameters of the limit processes X (on [0, T]) and X* (on [0, inf)).
struct EmlParams {
    double alpha = 0.5;
    double lambda = 0.0;
    double b = 1.0;
    double T = 1.0;
    std::optional<double> c;  // defaults to 1 / Gamma(alpha)

    double c_value() const;
    double nu() const;
    double aT() const;
    // Same process with c = 1 / Gamma(alpha).
    EmlParams unit() const;
};

void validate_eml(const EmlParams& p);

std::complex<double> mgf_marginal(const EmlParams& p, std::complex<double> s, double t, const SeriesControl& ctl = {});
double mgf_marginal(const EmlParams& p, double s, double t, const SeriesControl& ctl = {});
std::complex<double> mgf_star(const EmlParams& p, std::complex<double> s, double t, const SeriesControl& ctl = {});
double mgf_star(const EmlParams& p, double s, double t, const SeriesControl& ctl = {});

// Coefficient of s^k in the mgf series, so that the k-th moment is k! times it.
double mgf_coefficient(const EmlParams& p, int k, double t, bool star);

double moment_X(const EmlParams& p, int k, double t, const QuadControl& ctl = {});
double moment_Xstar(const EmlParams& p, int k, double t, const QuadControl& ctl = {});

// E(X_t X_s) and cov(X_t, X_s) for t <= s.
double cross_moment_X(const EmlParams& p, double t, double s, const QuadControl& ctl = {});
double covariance_X(const EmlParams& p, double t, double s, const QuadControl& ctl = {});
double cross_moment_Xstar(const EmlParams& p, double t, double s, const QuadControl& ctl = {});
double covariance_Xstar(const EmlParams& p, double t, double s, const QuadControl& ctl = {});

struct MixedMomentSpec {
    std::vector<double> times;  // t_1 < ... < t_m
    std::vector<int> C;         // 1-based indices into times, increasing
    std::vector<int> k;         // exponent per element of C
    bool star = false;
};

struct MixedMomentResult {
    double value = 0.0;
    double A = 0.0;  // value with the a_T, t_max power and factorial prefactors removed
    int dimension = 0;
};

inline constexpr int kMaxMixedDimension = 6;

void validate_mixed_spec(const EmlParams& p, const MixedMomentSpec& spec);
// E prod_i (X_{t_C(i)} - X_{t_C(i)-1})^{k_i}, with t_0 = 0.
MixedMomentResult mixed_moment(const EmlParams& p, const MixedMomentSpec& spec, const QuadControl& ctl = {});

// Spec for prod_i (X_{t_i} - X_{t_i - delta})^{k_i}.
MixedMomentSpec increment_spec(const std::vector<double>& times, double delta, const std::vector<int>& k, bool star);

struct FddControl {
    int steps = 1200;
};

// Finite-dimensional mgf with interval weights S_i = s_i + ... + s_m on (t_{i-1}, t_i].
std::complex<double> mgf_fdd(const EmlParams& p, const std::vector<std::complex<double>>& S,
                             const std::vector<double>& times, bool star, const FddControl& ctl = {});
// Same with the plain weights s_i.
std::complex<double> mgf_fdd_s(const EmlParams& p, const std::vector<std::complex<double>>& s,
                               const std::vector<double>& times, bool star, const FddControl& ctl = {});

// Closed forms. Exponential ones need alpha = 1, Mittag-Leffler ones lambda = 0.
namespace closed {
double exp_mgf_marginal(const EmlParams& p, double s, double t);
double exp_mgf_star(const EmlParams& p, double s, double t);
double ml_mgf_marginal(const EmlParams& p, double s, double t);
double ml_mgf_star(const EmlParams& p, double s, double t);
double exp_moment_Xstar(const EmlParams& p, int k, double t);
double ml_moment_X(const EmlParams& p, int k, double t);
double ml_moment_Xstar(const EmlParams& p, int k, double t);
// E(X_t X_s), t <= s
double ml_cross_moment(const EmlParams& p, double t, double s);
// E(grad X_t grad X_s) with increments of length d < s - t
double exp_increment_cross_moment(const EmlParams& p, double t, double s, double d);
double ml_increment_cross_moment(const EmlParams& p, double t, double s, double d);
}  // namespace closed

enum class IncrementMode { X, Xstar, exp, ml };

struct IncrementReport {
    double exact = 0.0;       // quadrature value of E(prod grad X^k)
    double closed = 0.0;      // closed form where one exists, NaN otherwise
    double asymptotic = 0.0;  // small-delta approximation (pairs with k = 1)
    double ratio = 0.0;       // exact / asymptotic
    double cov_exact = 0.0;
    double corr_exact = 0.0;
    double corr_asymptotic = 0.0;
    double product_ratio = 0.0;  // exact / prod of single-increment moments
    double product_limit = 0.0;
};

IncrementReport increment_asymptotics(const EmlParams& p, IncrementMode mode, const std::vector<double>& times,
                                      double delta, const std::vector<int>& k = {}, const QuadControl& ctl = {});

struct SelfSimilarityReport {
    std::vector<double> star_ratio;  // index k-1
    std::vector<double> X_ratio;
};

SelfSimilarityReport self_similarity_check(const EmlParams& p, double u, double t, int kmax,
                                           const QuadControl& ctl = {});

}  // namespace gbp
