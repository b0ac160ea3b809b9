#include "gbpwalk/convolution.hpp"

#include <algorithm>

namespace gbp {
namespace {

constexpr std::size_t kSchoolbook = 48;

// out[0 .. 2n-1) += a[0..n) * b[0..n); scratch must hold 4n doubles.
void karatsuba(const double* a, const double* b, std::size_t n, double* out, double* scratch) {
    if (n <= kSchoolbook) {
        for (std::size_t i = 0; i < n; ++i) {
            const double ai = a[i];
            if (ai == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) out[i + j] += ai * b[j];
        }
        return;
    }
    const std::size_t h = n / 2;
    const std::size_t hi = n - h;
    double* sa = scratch;
    double* sb = scratch + hi;
    double* mid = scratch + 2 * hi;
    double* rest = scratch + 4 * hi;
    std::fill(mid, mid + 2 * hi, 0.0);
    for (std::size_t i = 0; i < hi; ++i) {
        sa[i] = (i < h ? a[i] : 0.0) + a[h + i];
        sb[i] = (i < h ? b[i] : 0.0) + b[h + i];
    }
    karatsuba(sa, sb, hi, mid, rest);

    std::vector<double> lo(2 * h, 0.0), up(2 * hi, 0.0);
    karatsuba(a, b, h, lo.data(), rest);
    karatsuba(a + h, b + h, hi, up.data(), rest);
    for (std::size_t i = 0; i < 2 * h; ++i) mid[i] -= lo[i];
    for (std::size_t i = 0; i < 2 * hi; ++i) mid[i] -= up[i];
    for (std::size_t i = 0; i < 2 * h; ++i) out[i] += lo[i];
    for (std::size_t i = 0; i < 2 * hi; ++i) out[2 * h + i] += up[i];
    for (std::size_t i = 0; i < 2 * hi; ++i) out[h + i] += mid[i];
}

}  // namespace

std::vector<double> convolve_direct(const std::vector<double>& a, const std::vector<double>& b,
                                    std::size_t len) {
    std::vector<double> out(len, 0.0);
    const std::size_t na = std::min(a.size(), len);
    for (std::size_t i = 0; i < na; ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        const std::size_t nb = std::min(b.size(), len - i);
        double* o = out.data() + i;
        for (std::size_t j = 0; j < nb; ++j) o[j] += ai * b[j];
    }
    return out;
}

std::vector<double> convolve_karatsuba(const std::vector<double>& a, const std::vector<double>& b,
                                       std::size_t len) {
    const std::size_t n = std::max(std::min(a.size(), len), std::min(b.size(), len));
    std::vector<double> pa(n, 0.0), pb(n, 0.0);
    std::copy_n(a.begin(), std::min(a.size(), n), pa.begin());
    std::copy_n(b.begin(), std::min(b.size(), n), pb.begin());
    std::vector<double> full(2 * n, 0.0);
    std::vector<double> scratch(8 * n + 64, 0.0);
    karatsuba(pa.data(), pb.data(), n, full.data(), scratch.data());
    full.resize(len, 0.0);
    return full;
}

std::vector<double> convolve_truncated(const std::vector<double>& a, const std::vector<double>& b,
                                       std::size_t len) {
    if (len <= kDirectConvolutionLimit) return convolve_direct(a, b, len);
    return convolve_karatsuba(a, b, len);
}

}  // namespace gbp
