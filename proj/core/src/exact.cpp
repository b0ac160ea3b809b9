#include "gbpwalk/exact.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "gbpwalk/convolution.hpp"
#include "gbpwalk/errors.hpp"

namespace gbp {

std::int64_t window_length(std::int64_t n, double T) {
    return static_cast<std::int64_t>(std::floor(static_cast<double>(n) * T * (1.0 + 1e-12)));
}

Window::Window(WindowSpec spec) : spec_(std::move(spec)) {
    if (spec_.n < 1) throw DomainError("window: n must be >= 1");
    if (!(spec_.T > 0.0)) throw DomainError("window: T must be > 0");
    if (!(spec_.b > 0.0 && spec_.b <= 1.0)) throw DomainError("window: b must lie in (0,1]");
    N_ = window_length(spec_.n, spec_.T);
    if (N_ < 2) throw DomainError("window: floor(nT) must be >= 2");
    validate_kernel(spec_.kernel, spec_.T);
    const auto rep = check_assumption(spec_.kernel, spec_.n, std::max<std::int64_t>(N_, 3));
    if (!rep.pass()) throw InvalidKernel("window: kernel fails the monotonicity assumptions on [1, N]");
    f_.assign(static_cast<std::size_t>(N_) + 1, 0.0);
    for (std::int64_t d = 1; d <= N_; ++d)
        f_[static_cast<std::size_t>(d)] =
            eval_kernel_unchecked(spec_.kernel, static_cast<double>(d), static_cast<double>(spec_.n));
    const double q = bfT();
    if (!(q > 0.0 && q < 1.0)) throw DomainError("window: b*f(N) must lie in (0,1)");
}

namespace {

void check_indices(const Window& w, const IndexSet& s, const char* what) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 1 || s[i] > w.N()) throw DomainError(std::string(what) + ": index outside [1, N]");
        if (i > 0 && s[i] <= s[i - 1]) throw DomainError(std::string(what) + ": indices must be strictly increasing");
    }
}

void check_disjoint(const IndexSet& B, const IndexSet& F) {
    std::size_t i = 0, j = 0;
    while (i < B.size() && j < F.size()) {
        if (B[i] == F[j]) throw DomainError("event: B and F must be disjoint");
        if (B[i] < F[j]) ++i; else ++j;
    }
}

}  // namespace

double L_value(const Window& w, const IndexSet& B) {
    check_indices(w, B, "L_value");
    if (B.empty()) return 1.0 / w.bfT();
    double prod = 1.0;
    for (std::size_t i = 1; i < B.size(); ++i) prod *= w.f(B[i] - B[i - 1]);
    return prod;
}

double inclusion_exclusion(const std::vector<double>& f, const IndexSet& B, const IndexSet& F,
                           double empty_value) {
    struct Pt {
        std::int64_t pos;
        bool one;
    };
    std::vector<Pt> pts;
    pts.reserve(B.size() + F.size());
    for (auto b : B) pts.push_back({b, true});
    for (auto z : F) pts.push_back({z, false});
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.pos < b.pos; });

    auto gap = [&](std::int64_t d) {
        if (d < 1 || static_cast<std::size_t>(d) >= f.size())
            throw DomainError("inclusion_exclusion: gap outside kernel table");
        return f[static_cast<std::size_t>(d)];
    };

    // W[j]: signed sum over admissible chosen sets whose largest element is pts[j].
    const std::size_t M = pts.size();
    std::vector<double> W(M, 0.0);
    bool one_seen = false;
    for (std::size_t j = 0; j < M; ++j) {
        double acc = one_seen ? 0.0 : 1.0;
        for (std::size_t i = j; i-- > 0;) {
            acc += W[i] * gap(pts[j].pos - pts[i].pos);
            if (pts[i].one) break;
        }
        W[j] = pts[j].one ? acc : -acc;
        one_seen = one_seen || pts[j].one;
    }
    double D = B.empty() ? empty_value : 0.0;
    for (std::size_t j = M; j-- > 0;) {
        D += W[j];
        if (pts[j].one) break;
    }

    double scale = empty_value;
    if (!B.empty()) {
        scale = 1.0;
        for (std::size_t i = 1; i < B.size(); ++i) scale *= gap(B[i] - B[i - 1]);
    }
    const double eps_neg = 1e-14 * std::abs(scale);
    if (D < 0.0) {
        if (D >= -eps_neg) return 0.0;
        throw PositivityViolation("D value below the negative clamp band", D);
    }
    return D;
}

double D_value(const Window& w, const IndexSet& B, const IndexSet& F) {
    check_indices(w, B, "D_value");
    check_indices(w, F, "D_value");
    check_disjoint(B, F);
    return inclusion_exclusion(w.table(), B, F, 1.0 / w.bfT());
}

double joint_prob(const Window& w, const JointEvent& e) {
    return w.bfT() * D_value(w, e.B, e.F);
}

std::string DistributionTable::pattern(std::uint32_t mask, int N) {
    std::string s(static_cast<std::size_t>(N), '0');
    for (int i = 0; i < N; ++i)
        if (mask & (1u << i)) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

void DistributionTable::write_csv(std::ostream& os) const {
    os << "pattern,probability\n";
    os << std::setprecision(17);
    for (std::uint32_t m = 0; m < prob.size(); ++m) os << pattern(m, N) << ',' << prob[m] << '\n';
}

DistributionTable enumerate_distribution(const Window& w) {
    if (w.N() > 16) throw Refusal("enumerate_distribution: N exceeds 16");
    DistributionTable t;
    t.N = static_cast<int>(w.N());
    const std::uint32_t count = 1u << t.N;
    t.prob.resize(count);
    IndexSet B, F;
    B.reserve(16);
    F.reserve(16);
    for (std::uint32_t m = 0; m < count; ++m) {
        B.clear();
        F.clear();
        for (int i = 0; i < t.N; ++i) (m & (1u << i) ? B : F).push_back(i + 1);
        t.prob[m] = w.bfT() * inclusion_exclusion(w.table(), B, F, 1.0 / w.bfT());
    }
    return t;
}

double pair_correlation(const Window& w, std::int64_t k) {
    if (k < 1 || k > w.N() - 1) throw DomainError("pair_correlation: k must lie in [1, N-1]");
    const double q = w.bfT();
    return (w.f(k) - q) / (1.0 - q);
}

double correlation_sum(const Window& w, std::int64_t K) {
    double s = 0.0;
    for (std::int64_t k = 1; k <= K; ++k) s += pair_correlation(w, k);
    return s;
}

double star_joint_prob(const KernelSpec& kernel, std::int64_t n, const IndexSet& B, const IndexSet& F) {
    validate_kernel(kernel);
    for (const IndexSet* s : {&B, &F})
        for (std::size_t i = 0; i < s->size(); ++i) {
            if ((*s)[i] < 1) throw DomainError("star_joint_prob: indices must be positive");
            if (i > 0 && (*s)[i] <= (*s)[i - 1])
                throw DomainError("star_joint_prob: indices must be strictly increasing");
        }
    check_disjoint(B, F);
    IndexSet B1{1}, F1;
    for (auto i : B) B1.push_back(i + 1);
    for (auto i : F) F1.push_back(i + 1);
    std::int64_t top = 1;
    if (!B1.empty()) top = std::max(top, B1.back());
    if (!F1.empty()) top = std::max(top, F1.back());
    std::vector<double> f(static_cast<std::size_t>(top) + 1, 0.0);
    for (std::int64_t d = 1; d <= top; ++d)
        f[static_cast<std::size_t>(d)] =
            eval_kernel_unchecked(kernel, static_cast<double>(d), static_cast<double>(n));
    return inclusion_exclusion(f, B1, F1, 0.0);
}

double stirling2(int k, int m) {
    if (k < 0 || m < 0 || k > 20) throw DomainError("stirling2: arguments out of range");
    std::vector<std::vector<double>> S(static_cast<std::size_t>(k) + 1,
                                       std::vector<double>(static_cast<std::size_t>(k) + 1, 0.0));
    S[0][0] = 1.0;
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= i; ++j) S[i][j] = j * S[i - 1][j] + S[i - 1][j - 1];
    return m > k ? 0.0 : S[k][m];
}

double exact_walk_moment(const Window& w, double t, int k) {
    if (k < 1 || k > 8) throw DomainError("exact_walk_moment: k must lie in [1, 8]");
    if (!(t > 0.0) || t > w.spec().T * (1.0 + 1e-12))
        throw DomainError("exact_walk_moment: t must lie in (0, T]");
    const std::int64_t M = std::min(window_length(w.n(), t), w.N());
    if (M < 1) throw DomainError("exact_walk_moment: floor(nt) must be >= 1");
    const double q = w.bfT();

    double total = static_cast<double>(M) * q;
    if (k >= 2 && M >= 2) {
        const auto len = static_cast<std::size_t>(M);  // indices 0..M-1
        std::vector<double> base(w.table().begin(), w.table().begin() + static_cast<std::ptrdiff_t>(len));
        std::vector<double> power = base;
        double fact = 1.0;
        for (int m = 1; m <= k - 1; ++m) {
            if (m > 1) power = convolve_truncated(power, base, len);
            fact *= (m + 1);
            double s = 0.0;
            for (std::int64_t j = m; j <= M - 1; ++j)
                s += static_cast<double>(M - j) * power[static_cast<std::size_t>(j)];
            total += fact * stirling2(k, m + 1) * q * s;
        }
    }
    return total / std::pow(static_cast<double>(w.n()), w.alpha() * k);
}

}  // namespace gbp
