#ifndef CGO_ADMISSIBLE_HPP
#define CGO_ADMISSIBLE_HPP

#include <optional>
#include <vector>

#include "cgo/geometry.hpp"
#include "cgo/types.hpp"

namespace cgo {

/// Feasibility witness for a point w: A = sup_{O̅} Re[λ_O(z−w)²],
/// B = sup_{D̄} Re[λ_O(z−w)²], with A = 1/2−ε₁ and B = −1/2−ε₂.
/// Admissible means A < 1/2 and B < −1/2; proper means ε₂−ε₁ > 0.
struct AdmissibleCertificate {
    Complex w;
    Complex lambda_O;
    double A = 0.0;
    double B = 0.0;
    double eps1 = 0.0;
    double eps2 = 0.0;
    bool proper = false;
};

struct AdmissibleSearch {
    int n_angles = 720;
};

inline constexpr double kAdmissibleTol = 1e-9;

/// Strict admissibility with tolerance: A < 1/2 and B < −1/2 by margin.
inline bool certify_admissible(double A, double B) {
    return A < 0.5 - kAdmissibleTol && B < -0.5 - kAdmissibleTol;
}

/// A = max over ∂O samples, B = max over Γ samples of Re[λ_cand(z−w)²];
/// both sups live on the boundaries because the function is harmonic in z.
/// When w ∈ D̄ the interior value 0 at z = w joins the B maximization.
std::pair<double, double> eval_AB(Complex w, Complex lambda_cand,
                                  const ContourMesh& boundary_O, const ContourMesh& boundary_D);

/// Scans directions e^{iψ}; by positive homogeneity a direction is feasible
/// iff B_unit < 0 and A_unit < |B_unit|, with the admissible scales forming
/// the window t ∈ (1/(2|B_unit|), 1/(2A_unit)). The returned certificate
/// maximizes the robustness margin min(ε₁, ε₂−ε₁) — the literal sup of
/// ε₂−ε₁ sits at the window edge where ε₁ → 0 and admissibility degenerates.
std::optional<AdmissibleCertificate> find_admissible(Complex w, const DomainMeshes& meshes,
                                                     const AdmissibleSearch& search = {});

/// ε₂ − ε₁ > tolerance.
bool certify_proper(const AdmissibleCertificate& cert);

/// One row of the admissibility map CSV.
struct AdmissibleMapRow {
    double x = 0.0, y = 0.0;
    int admissible = 0, proper = 0;
    Complex lambda_O;
    double A = 0.0, B = 0.0;
};

std::vector<AdmissibleMapRow> admissible_map(const DomainMeshes& meshes, int grid_n,
                                             const AdmissibleSearch& search = {},
                                             unsigned threads = 1);

}  // namespace cgo

#endif
