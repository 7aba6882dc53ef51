#ifndef CGO_TYPES_HPP
#define CGO_TYPES_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgo {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI = Complex(0.0, 1.0);

/// Thrown when a spectral parameter is too oscillatory for the mesh in use.
class OscillationGuardError : public std::runtime_error {
public:
    explicit OscillationGuardError(const std::string& what)
        : std::runtime_error(what) {}
};

/// Thrown on invalid geometry/model/solver inputs (precondition violations).
class InvalidInputError : public std::invalid_argument {
public:
    explicit InvalidInputError(const std::string& what)
        : std::invalid_argument(what) {}
};

/// Deterministic seeded generator. std::mt19937_64 is bit-stable across
/// platforms; the mapping to doubles below avoids the (unspecified)
/// standard-library distributions so seeded runs reproduce everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next_u64() {
        // xorshift* — small, fast, reproducible
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545F4914F6CDD1DULL;
    }

    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    Complex complex_in_disk(Complex center, double radius) {
        // rejection keeps the law exactly uniform on the disk
        for (;;) {
            double x = uniform(-1.0, 1.0);
            double y = uniform(-1.0, 1.0);
            if (x * x + y * y <= 1.0) return center + radius * Complex(x, y);
        }
    }

    Complex unit_complex() {
        double t = uniform(0.0, 2.0 * kPi);
        return Complex(std::cos(t), std::sin(t));
    }

private:
    std::uint64_t state_;
};

inline double sup_norm(const std::vector<Complex>& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace cgo

#endif
