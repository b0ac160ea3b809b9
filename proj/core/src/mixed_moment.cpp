#include <algorithm>
#include <cmath>
#include <string>

#include "eml_detail.hpp"
#include "gbpwalk/eml.hpp"
#include "gbpwalk/errors.hpp"

namespace gbp {

namespace {

struct Block {
    double lo, hi;
    int k;
};

// Nested quadrature over ordered chains of points, computed at c = 1 / Gamma(alpha).
// Gaps carry d^(alpha-1) e^(-lambda d) / Gamma(alpha); the k points inside one
// interval collapse into a block kernel d^((k-1) alpha - 1) e^(-lambda d) / Gamma((k-1) alpha).
class Chain {
public:
    Chain(double alpha, double lambda, std::vector<Block> blocks, const QuadControl& ctl)
        : a_(alpha), lam_(lambda), blocks_(std::move(blocks)), base_(ctl) {}

    double star() const { return tail(0, 0.0, 1); }

    double marginal() const {
        const Block& b = blocks_[0];
        if (blocks_.size() == 1 && b.k == 1) return b.hi - b.lo;
        return quad([&](double y) { return entry(0, y, 2); }, b.lo, b.hi, 1);
    }

private:
    QuadControl level(int depth) const {
        QuadControl c = base_;
        if (depth > 1) {
            c.rel_tol = std::max(base_.rel_tol * std::pow(0.1, depth - 1), 1e-14);
            c.max_intervals = 400;
        }
        return c;
    }

    double quad(const Integrand& f, double lo, double hi, int depth) const {
        if (!(hi > lo)) return 0.0;
        if (depth == 1) return integrate(f, lo, hi, level(depth));
        return integrate_adaptive(f, lo, hi, level(depth)).value;
    }

    // Blocks i.. given the previous chain point at y <= blocks_[i].lo.
    double tail(std::size_t i, double y, int depth) const {
        if (i == blocks_.size()) return 1.0;
        const Block& b = blocks_[i];
        if (i + 1 == blocks_.size() && b.k == 1)
            return detail::J0(a_, lam_, b.hi - y) - detail::J0(a_, lam_, b.lo - y);
        if (a_ == 1.0)
            return quad([&](double x) { return std::exp(-lam_ * (x - y)) * entry(i, x, depth + 1); }, b.lo, b.hi, depth);
        const double inv = 1.0 / a_;
        auto g = [&](double w) {
            const double d = std::pow(w, inv);
            return std::exp(-lam_ * d) * entry(i, y + d, depth + 1);
        };
        return quad(g, std::pow(std::max(b.lo - y, 0.0), a_), std::pow(std::max(b.hi - y, 0.0), a_), depth) /
               std::tgamma(a_ + 1.0);
    }

    // Block i with its first point at x.
    double entry(std::size_t i, double x, int depth) const {
        const Block& b = blocks_[i];
        if (b.k == 1) return tail(i + 1, x, depth);
        const double beta = (b.k - 1) * a_;
        if (i + 1 == blocks_.size()) return detail::J0(beta, lam_, b.hi - x);
        if (beta >= 1.0) {
            const double gb = std::tgamma(beta);
            auto f = [&](double d) {
                return std::pow(d, beta - 1.0) * std::exp(-lam_ * d) / gb * tail(i + 1, x + d, depth + 1);
            };
            return quad(f, 0.0, b.hi - x, depth);
        }
        const double inv = 1.0 / beta;
        auto g = [&](double w) {
            const double d = std::pow(w, inv);
            return std::exp(-lam_ * d) * tail(i + 1, x + d, depth + 1);
        };
        return quad(g, 0.0, std::pow(std::max(b.hi - x, 0.0), beta), depth) / std::tgamma(beta + 1.0);
    }

    double a_, lam_;
    std::vector<Block> blocks_;
    QuadControl base_;
};

}  // namespace

void validate_mixed_spec(const EmlParams& p, const MixedMomentSpec& spec) {
    validate_eml(p);
    const auto& t = spec.times;
    if (t.empty()) throw PreconditionError("mixed_moment: empty time vector");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0.0) || !std::isfinite(t[i])) throw PreconditionError("mixed_moment: times must be > 0");
        if (i && !(t[i] > t[i - 1])) throw PreconditionError("mixed_moment: times must increase strictly");
    }
    if (spec.C.empty()) throw PreconditionError("mixed_moment: C must be non-empty");
    if (spec.k.size() != spec.C.size()) throw PreconditionError("mixed_moment: one exponent per element of C");
    int dim = 0;
    for (std::size_t i = 0; i < spec.C.size(); ++i) {
        const int idx = spec.C[i];
        if (idx < 1 || idx > static_cast<int>(t.size())) throw PreconditionError("mixed_moment: C index out of range");
        if (i && idx <= spec.C[i - 1]) throw PreconditionError("mixed_moment: C must increase strictly");
        if (spec.k[i] < 1) throw PreconditionError("mixed_moment: exponents must be positive");
        dim += spec.k[i] >= 2 ? 2 : 1;
    }
    if (!spec.star && t[static_cast<std::size_t>(spec.C.back() - 1)] > p.T * (1.0 + 1e-12))
        throw PreconditionError("mixed_moment: times must lie in (0, T]");
    if (dim > kMaxMixedDimension)
        throw Refusal("mixed_moment: quadrature dimension " + std::to_string(dim) + " exceeds " +
                      std::to_string(kMaxMixedDimension));
}

MixedMomentResult mixed_moment(const EmlParams& p, const MixedMomentSpec& spec, const QuadControl& ctl) {
    validate_mixed_spec(p, spec);
    std::vector<Block> blocks;
    int K = 0, dim = 0;
    double kfact = 1.0;
    for (std::size_t i = 0; i < spec.C.size(); ++i) {
        const auto j = static_cast<std::size_t>(spec.C[i] - 1);
        blocks.push_back({j ? spec.times[j - 1] : 0.0, spec.times[j], spec.k[i]});
        K += spec.k[i];
        dim += spec.k[i] >= 2 ? 2 : 1;
        kfact *= std::tgamma(spec.k[i] + 1.0);
    }
    const Chain chain(p.alpha, p.lambda, blocks, ctl);
    const double nu = p.nu(), a = p.alpha;
    const double tmax = blocks.back().hi;
    MixedMomentResult r;
    r.dimension = dim;
    if (spec.star) {
        r.value = kfact * std::pow(nu, K) * chain.star();
        r.A = r.value / (kfact * std::pow(tmax, a * K));
    } else {
        r.value = kfact * std::pow(nu, K - 1) * p.aT() * chain.marginal();
        r.A = r.value / (kfact * p.aT() * std::pow(tmax, a * (K - 1) + 1.0));
    }
    return r;
}

MixedMomentSpec increment_spec(const std::vector<double>& times, double delta, const std::vector<int>& k, bool star) {
    if (!(delta > 0.0)) throw PreconditionError("increment_spec: delta must be > 0");
    if (k.size() != times.size()) throw PreconditionError("increment_spec: k must match times");
    MixedMomentSpec s;
    s.star = star;
    s.k = k;
    double prev = 0.0;
    for (double t : times) {
        const double lo = t - delta;
        if (lo < prev - 1e-15 * std::max(1.0, t)) throw PreconditionError("increment_spec: increments overlap");
        if (lo > prev * (1.0 + 1e-15) + 1e-300) s.times.push_back(lo);
        s.times.push_back(t);
        s.C.push_back(static_cast<int>(s.times.size()));
        prev = t;
    }
    return s;
}

}  // namespace gbp
