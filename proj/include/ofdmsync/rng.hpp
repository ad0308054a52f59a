#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace ofdmsync {

// splitmix64 finalizer; used both as a bit mixer and as the seed-derivation
// step so per-trial substreams are reproducible and order-independent.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(base ^ splitmix64(index * 0x9e3779b97f4a7c15ULL + 1));
}

// mt19937_64 plus a hand-rolled Box-Muller transform. The engine's output
// sequence is fully specified by the standard, and doing the normal
// transform ourselves keeps streams bit-identical across standard
// library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t bits() { return gen_(); }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double standard_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = mag * std::sin(ang);
        have_spare_ = true;
        return mag * std::cos(ang);
    }

    // circularly-symmetric complex Gaussian with E|w|^2 = total_variance
    std::complex<double> complex_normal(double total_variance) {
        const double s = std::sqrt(total_variance * 0.5);
        const double re = standard_normal();
        const double im = standard_normal();
        return {s * re, s * im};
    }

    // one Gray-coded unit-energy QPSK point
    std::complex<double> qpsk_point() {
        const std::uint64_t b = gen_();
        const double inv_sqrt2 = 0.7071067811865475244;
        return {(b & 1) ? -inv_sqrt2 : inv_sqrt2,
                (b & 2) ? -inv_sqrt2 : inv_sqrt2};
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace ofdmsync
