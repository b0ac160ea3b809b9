#pragma once

#include <cstddef>
#include <vector>

namespace gbp {

// Truncated linear convolution: result[j] = sum_{i} a[i] b[j-i] for j < len.
std::vector<double> convolve_truncated(const std::vector<double>& a, const std::vector<double>& b,
                                       std::size_t len);

std::vector<double> convolve_direct(const std::vector<double>& a, const std::vector<double>& b,
                                    std::size_t len);

std::vector<double> convolve_karatsuba(const std::vector<double>& a, const std::vector<double>& b,
                                       std::size_t len);

// Length at or below which convolve_truncated uses the direct sum.
inline constexpr std::size_t kDirectConvolutionLimit = 20000;

}  // namespace gbp
