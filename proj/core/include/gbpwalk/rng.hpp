#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace gbp {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Counter-based stream: output i is a keyed mix of the counter, so any
// (seed, stream) pair gives an independent reproducible sequence.
class CounterRng {
public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t domain = 0)
        : key_(splitmix64(splitmix64(seed ^ 0xD1B54A32D192ED03ull) ^ splitmix64(stream + 0x632BE59BD9B4E019ull) ^
                          (domain * 0xA24BAED4963EE407ull))),
          counter_(0) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        const std::uint64_t c = ++counter_;
        return splitmix64(key_ ^ splitmix64(c * 0x9E3779B97F4A7C15ull));
    }

    // Uniform on [0,1).
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
    // Uniform on (0,1).
    double uniform_open() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

    double exponential() { return -std::log(uniform_open()); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Substream domains keep path sampling and Levy increments on separate keys.
enum class StreamDomain : std::uint64_t { gbp_path = 1, levy = 2, misc = 3 };

inline CounterRng substream(std::uint64_t seed, std::uint64_t index, StreamDomain d) {
    return CounterRng(seed, index, static_cast<std::uint64_t>(d));
}

}  // namespace gbp
