#ifndef CGO_SPECTRAL_HPP
#define CGO_SPECTRAL_HPP

#include <vector>

#include "cgo/types.hpp"

namespace cgo {

/// Plain O(N²) DFT over equispaced samples; sizes here stay in the hundreds.
/// Coefficients are normalized so idft(dft(f)) = f and dft(f)[0] is the mean.
inline std::vector<Complex> dft(const std::vector<Complex>& f) {
    const std::size_t n = f.size();
    std::vector<Complex> out(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double th = -2.0 * kPi * static_cast<double>(k * j % n) / static_cast<double>(n);
            acc += f[j] * Complex(std::cos(th), std::sin(th));
        }
        out[k] = acc / static_cast<double>(n);
    }
    return out;
}

inline std::vector<Complex> idft(const std::vector<Complex>& fhat) {
    const std::size_t n = fhat.size();
    std::vector<Complex> out(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        Complex acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            double th = 2.0 * kPi * static_cast<double>(k * j % n) / static_cast<double>(n);
            acc += fhat[k] * Complex(std::cos(th), std::sin(th));
        }
        out[j] = acc;
    }
    return out;
}

inline int signed_mode(std::size_t k, std::size_t n) {
    return k <= n / 2 ? static_cast<int>(k) : static_cast<int>(k) - static_cast<int>(n);
}

/// d/ds of a periodic sample set over a closed curve of length L.
inline std::vector<Complex> spectral_derivative(const std::vector<Complex>& f, double length) {
    const std::size_t n = f.size();
    std::vector<Complex> fhat = dft(f);
    for (std::size_t k = 0; k < n; ++k) {
        double mode = signed_mode(k, n);
        fhat[k] *= kI * (2.0 * kPi * mode / length);
    }
    return idft(fhat);
}

}  // namespace cgo

#endif
