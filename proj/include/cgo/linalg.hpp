#ifndef CGO_LINALG_HPP
#define CGO_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "cgo/types.hpp"

namespace cgo {

/// Solves A x = b in place by LU with partial pivoting; A is n×n row-major.
/// Returns false when a pivot vanishes (singular system).
inline bool lu_solve(std::vector<Complex>& A, std::size_t n, std::vector<Complex>& b) {
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(A[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            double v = std::abs(A[i * n + k]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) return false;
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(A[k * n + j], A[piv * n + j]);
            std::swap(b[k], b[piv]);
        }
        Complex inv = 1.0 / A[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex m = A[i * n + k] * inv;
            if (m == 0.0) continue;
            A[i * n + k] = m;
            for (std::size_t j = k + 1; j < n; ++j) A[i * n + j] -= m * A[k * n + j];
            b[i] -= m * b[k];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        Complex s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= A[i * n + j] * b[j];
        b[i] = s / A[i * n + i];
    }
    return true;
}

}  // namespace cgo

#endif
