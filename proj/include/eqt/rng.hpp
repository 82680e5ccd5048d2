#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace eqt::rng {

// Deterministic scalar sampling stream.  The variate algorithms are fixed
// here (Box-Muller, Marsaglia-Tsang) rather than delegated to
// std::*_distribution, whose output is implementation-defined; a fixed seed
// must reproduce byte-identical results on any standard library.
class Stream {
  public:
    explicit Stream(std::uint64_t seed) : eng_(seed) {}

    // Uniform on (0, 1), 53-bit resolution, never exactly 0.
    double u01() {
        const std::uint64_t r = eng_() >> 11;
        return (static_cast<double>(r) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; second variate of each pair is cached.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = u01();
        const double u2 = u01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    // Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape < 1 handled by the
    // boost Gamma(shape) = Gamma(shape+1) * U^{1/shape}.
    double gamma(double shape) {
        if (!(shape > 0.0))
            throw std::invalid_argument("Stream::gamma: shape must be > 0");
        if (shape < 1.0)
            return gamma(shape + 1.0) * std::pow(u01(), 1.0 / shape);
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = u01();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
                return d * v;
        }
    }

  private:
    std::mt19937_64 eng_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace eqt::rng
