// Reads "kind alpha beta re im" lines and prints "re im"; used by oracles/specfun_region.py.
#include <complex>
#include <cstdio>
#include <iostream>
#include <string>

#include "gbpwalk/specfun.hpp"

int main() {
    std::string kind;
    double a, b, re, im;
    while (std::cin >> kind >> a >> b >> re >> im) {
        std::complex<double> v;
        try {
            if (kind == "ml") v = gbp::ml_series_unchecked(a, b, 1.0, {re, im});
            else if (kind == "ms") v = gbp::wright_m_series(a, re);
            else if (kind == "mi") v = gbp::wright_m_integral(a, re);
            else v = std::nan("");
        } catch (const std::exception&) {
            v = std::nan("");
        }
        std::printf("%.17g %.17g\n", v.real(), v.imag());
    }
}
