#include "gbpwalk/levy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gbpwalk/errors.hpp"

namespace gbp {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... F>
struct overloaded : F... {
    using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

// Chambers-Mallows-Stuck draw from S(beta, skew, 1, 0), beta != 1.
double cms_standard(double beta, double skew, CounterRng& rng) {
    const double V = kPi * (rng.uniform_open() - 0.5);
    const double W = rng.exponential();
    const double tb = std::tan(kPi * beta / 2.0);
    const double B = std::atan(skew * tb) / beta;
    const double S = std::pow(1.0 + skew * skew * tb * tb, 1.0 / (2.0 * beta));
    const double a = beta * (V + B);
    return S * std::sin(a) / std::pow(std::cos(V), 1.0 / beta) *
           std::pow(std::cos(V - a) / W, (1.0 - beta) / beta);
}

}  // namespace

void validate_levy(const LevySpec& spec) {
    std::visit(overloaded{
                   [](const BrownianLevy& b) {
                       if (!(b.sigma > 0.0) || !std::isfinite(b.sigma) || !std::isfinite(b.drift))
                           throw PreconditionError("Brownian: need sigma > 0 and finite drift");
                   },
                   [](const StableLevy& s) {
                       if (s.beta == 1.0) throw DomainError("Stable: beta = 1 is not supported");
                       if (!(s.beta > 0.0 && s.beta <= 2.0)) throw PreconditionError("Stable: beta must lie in (0, 2]");
                       if (!(s.p >= 0.0 && s.q >= 0.0) || std::abs(s.p + s.q - 1.0) > 1e-12)
                           throw PreconditionError("Stable: need p, q >= 0 with p + q = 1");
                       if (s.beta > 1.0 && !(s.C > 0.0)) throw PreconditionError("Stable: beta in (1, 2] needs C > 0");
                       if (s.beta < 1.0 && !(s.C < 0.0)) throw PreconditionError("Stable: beta in (0, 1) needs C < 0");
                       if (!std::isfinite(s.C) || !std::isfinite(s.drift))
                           throw PreconditionError("Stable: C and drift must be finite");
                   },
                   [](const TemperedStableLevy& t) {
                       if (!(t.beta > 0.0 && t.beta < 1.0)) throw PreconditionError("TemperedStable: beta must lie in (0, 1)");
                       if (!(t.mu > 0.0) || !(t.C > 0.0) || !std::isfinite(t.mu) || !std::isfinite(t.C))
                           throw PreconditionError("TemperedStable: need mu > 0 and C > 0");
                   },
               },
               spec);
}

std::string describe(const LevySpec& spec) {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const BrownianLevy& b) { os << "Brownian(drift=" << b.drift << ",sigma=" << b.sigma << ')'; },
                   [&](const StableLevy& s) {
                       os << "Stable(beta=" << s.beta << ",C=" << s.C << ",p=" << s.p << ",q=" << s.q
                          << ",drift=" << s.drift << ')';
                   },
                   [&](const TemperedStableLevy& t) {
                       os << "TemperedStable(beta=" << t.beta << ",mu=" << t.mu << ",C=" << t.C << ')';
                   },
               },
               spec);
    return os.str();
}

std::complex<double> levy_exponent(const LevySpec& spec, double s) {
    validate_levy(spec);
    using cd = std::complex<double>;
    return std::visit(overloaded{
                          [&](const BrownianLevy& b) { return cd(-0.5 * b.sigma * b.sigma * s * s, b.drift * s); },
                          [&](const StableLevy& st) {
                              if (s == 0.0) return cd(0.0);
                              const cd is(0.0, s);
                              return st.C * (st.p * std::pow(is, st.beta) + st.q * std::pow(-is, st.beta)) +
                                     cd(0.0, st.drift * s);
                          },
                          [&](const TemperedStableLevy& t) {
                              if (s == 0.0) return cd(0.0);
                              return -t.C * (std::pow(cd(t.mu, s), t.beta) - std::pow(t.mu, t.beta));
                          },
                      },
                      spec);
}

std::optional<double> levy_mean(const LevySpec& spec) {
    validate_levy(spec);
    return std::visit(overloaded{
                          [](const BrownianLevy& b) -> std::optional<double> { return b.drift; },
                          [](const StableLevy& s) -> std::optional<double> {
                              if (s.beta > 1.0) return s.drift;
                              return std::nullopt;
                          },
                          [](const TemperedStableLevy& t) -> std::optional<double> {
                              return -t.C * t.beta * std::pow(t.mu, t.beta - 1.0);
                          },
                      },
                      spec);
}

std::optional<double> levy_variance(const LevySpec& spec) {
    validate_levy(spec);
    return std::visit(overloaded{
                          [](const BrownianLevy& b) -> std::optional<double> { return b.sigma * b.sigma; },
                          [](const StableLevy& s) -> std::optional<double> {
                              if (s.beta == 2.0) return 2.0 * s.C;
                              return std::nullopt;
                          },
                          [](const TemperedStableLevy& t) -> std::optional<double> {
                              return t.C * t.beta * (1.0 - t.beta) * std::pow(t.mu, t.beta - 2.0);
                          },
                      },
                      spec);
}

StableSimParams stable_sim_params(const StableLevy& s) {
    validate_levy(s);
    // |s|^beta coefficient is C cos(pi beta / 2) and the odd part is i sgn(s) C (p - q) sin(pi beta / 2).
    StableSimParams r;
    r.beta = s.beta;
    const double cpos = -s.C * std::cos(kPi * s.beta / 2.0);
    r.scale = std::pow(cpos, 1.0 / s.beta);
    r.skew = s.beta == 2.0 ? 0.0 : s.q - s.p;
    r.shift = s.drift;
    return r;
}

double sample_positive_stable(double beta, CounterRng& rng) {
    if (!(beta > 0.0 && beta <= 1.0)) throw PreconditionError("sample_positive_stable: beta must lie in (0, 1]");
    if (beta == 1.0) return 1.0;
    const double U = kPi * rng.uniform_open();
    const double E = rng.exponential();
    return std::sin(beta * U) / std::pow(std::sin(U), 1.0 / beta) *
           std::pow(std::sin((1.0 - beta) * U) / E, (1.0 - beta) / beta);
}

double sample_levy_increment(const LevySpec& spec, double duration, CounterRng& rng) {
    validate_levy(spec);
    if (!std::isfinite(duration) || duration < 0.0) throw PreconditionError("sample_levy_increment: need duration >= 0");
    if (duration == 0.0) return 0.0;
    return std::visit(overloaded{
                          [&](const BrownianLevy& b) {
                              return b.drift * duration + b.sigma * std::sqrt(duration) * rng.normal();
                          },
                          [&](const StableLevy& s) {
                              const StableSimParams sp = stable_sim_params(s);
                              return sp.scale * std::pow(duration, 1.0 / sp.beta) * cms_standard(sp.beta, sp.skew, rng) +
                                     sp.shift * duration;
                          },
                          [&](const TemperedStableLevy& t) {
                              // Tilt a positive stable piece by e^(-mu S); pieces keep the acceptance rate >= 1/e.
                              const double load = t.C * duration * std::pow(t.mu, t.beta);
                              const long pieces = std::max(1L, static_cast<long>(std::ceil(load)));
                              const double scale = std::pow(t.C * duration / static_cast<double>(pieces), 1.0 / t.beta);
                              double total = 0.0;
                              long tries = 0;
                              for (long k = 0; k < pieces; ++k) {
                                  for (;;) {
                                      if (++tries > kTemperedRejectionCap)
                                          throw SamplingError("TemperedStable: rejection cap exceeded");
                                      const double S = scale * sample_positive_stable(t.beta, rng);
                                      if (rng.uniform() < std::exp(-t.mu * S)) {
                                          total += S;
                                          break;
                                      }
                                  }
                              }
                              return -total;
                          },
                      },
                      spec);
}

}  // namespace gbp
