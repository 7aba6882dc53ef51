#include "cgo/admissible.hpp"

#include <algorithm>
#include <cmath>

#include "cgo/parallel.hpp"

namespace cgo {

std::pair<double, double> eval_AB(Complex w, Complex lambda_cand,
                                  const ContourMesh& boundary_O, const ContourMesh& boundary_D) {
    double A = -1e300, B = -1e300;
    for (const Complex& z : boundary_O.nodes) {
        Complex d = z - w;
        A = std::max(A, std::real(lambda_cand * d * d));
    }
    for (const Complex& z : boundary_D.nodes) {
        Complex d = z - w;
        B = std::max(B, std::real(lambda_cand * d * d));
    }
    // z = w contributes Re 0 = 0 to the sup over D̄ when w lies inside;
    // membership tested by the winding number of Γ around w
    if (std::abs(winding_number(boundary_D, w) - 1.0) < 0.5) B = std::max(B, 0.0);
    return {A, B};
}

bool certify_proper(const AdmissibleCertificate& cert) {
    return cert.eps2 - cert.eps1 > kAdmissibleTol;
}

std::optional<AdmissibleCertificate> find_admissible(Complex w, const DomainMeshes& meshes,
                                                     const AdmissibleSearch& search) {
    // interior-point obstruction: w ∈ D̄ forces B ≥ 0
    if (std::abs(w - meshes.geometry.jump_center) <= meshes.geometry.jump_radius + kAdmissibleTol)
        return std::nullopt;

    std::optional<AdmissibleCertificate> best;
    double best_score = 0.0;
    for (int k = 0; k < search.n_angles; ++k) {
        double psi = 2.0 * kPi * k / search.n_angles;
        Complex dir(std::cos(psi), std::sin(psi));
        auto [a_unit, b_unit] = eval_AB(w, dir, meshes.boundary, meshes.gamma);
        if (b_unit >= 0.0 || a_unit >= -b_unit) continue;  // infeasible direction
        // admissible window for the scale t (A_unit > 0 since the boundary
        // max dominates the interior value 0)
        double t_lo = 0.5 / -b_unit;
        double t_hi = 0.5 / a_unit;
        // maximize min(ε₁, ε₂−ε₁): ε₁ = 1/2 − tA_u decreasing,
        // ε₂−ε₁ = t(A_u+|B_u|) − 1 increasing; equality at
        // t* = 3 / (2(2A_u + |B_u|)).
        double t_star = 1.5 / (2.0 * a_unit - b_unit);
        t_star = std::clamp(t_star, t_lo * (1.0 + 1e-9), t_hi * (1.0 - 1e-9));
        double A = t_star * a_unit;
        double B = t_star * b_unit;
        if (!certify_admissible(A, B)) continue;
        AdmissibleCertificate cert;
        cert.w = w;
        cert.lambda_O = t_star * dir;
        cert.A = A;
        cert.B = B;
        cert.eps1 = 0.5 - A;
        cert.eps2 = -0.5 - B;
        cert.proper = certify_proper(cert);
        double score = std::min(cert.eps1, cert.eps2 - cert.eps1);
        if (!best || score > best_score) {
            best = cert;
            best_score = score;
        }
    }
    return best;
}

std::vector<AdmissibleMapRow> admissible_map(const DomainMeshes& meshes, int grid_n,
                                             const AdmissibleSearch& search, unsigned threads) {
    const DiskGeometry& g = meshes.geometry;
    std::vector<Complex> pts;
    for (int iy = 0; iy < grid_n; ++iy) {
        for (int ix = 0; ix < grid_n; ++ix) {
            double x = g.outer_center.real() + g.outer_radius * (2.0 * (ix + 0.5) / grid_n - 1.0);
            double y = g.outer_center.imag() + g.outer_radius * (2.0 * (iy + 0.5) / grid_n - 1.0);
            Complex z(x, y);
            if (std::abs(z - g.outer_center) < g.outer_radius) pts.push_back(z);
        }
    }
    std::vector<AdmissibleMapRow> rows(pts.size());
    parallel_for(pts.size(), threads, [&](std::size_t i) {
        AdmissibleMapRow row;
        row.x = pts[i].real();
        row.y = pts[i].imag();
        auto cert = find_admissible(pts[i], meshes, search);
        if (cert) {
            row.admissible = 1;
            row.proper = cert->proper ? 1 : 0;
            row.lambda_O = cert->lambda_O;
            row.A = cert->A;
            row.B = cert->B;
        }
        rows[i] = row;
    });
    return rows;
}

}  // namespace cgo
