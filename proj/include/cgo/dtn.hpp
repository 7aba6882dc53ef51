#ifndef CGO_DTN_HPP
#define CGO_DTN_HPP

#include <vector>

#include "cgo/conductivity.hpp"
#include "cgo/geometry.hpp"
#include "cgo/operators.hpp"
#include "cgo/types.hpp"

namespace cgo {

/// Spectral representation of the co-normal Dirichlet-to-Neumann map on a
/// circular ∂O: eigenvalue per Fourier mode. Mode 0 maps to 0 (constants).
struct DtnOperator {
    std::vector<Complex> eigenvalues;  // index k ↔ mode k−max_mode? see mode()
    int max_mode = 0;
    double radius = 1.0;

    Complex eigenvalue(int n) const { return eigenvalues[static_cast<std::size_t>(n + max_mode)]; }
};

struct BoundaryTracePair {
    std::vector<Complex> h1, h2;
};

struct BoundaryRelationResult {
    double residual = 0.0;
    bool mean_condition_ok = true;  // solvability: mean(ν h₁ − ν̄ h₂) ≈ 0
    double mean_defect = 0.0;
};

/// DtN eigenvalue of the radial piecewise-constant model (γ⁻ inside the
/// concentric jump circle of radius r₀, γ⁺ between r₀ and the outer radius),
/// from the 2×2 transfer system matching u = A r^{|n|} inside against
/// u = B r^{|n|} + C r^{−|n|} outside with continuity of u and γ·∂u/∂r.
Complex radial_dtn(Complex gamma_in, Complex gamma_out, double r0, double outer_radius, int n);

/// Assembles the mode table |n| ≤ max_mode for the radial model.
DtnOperator make_radial_dtn_operator(Complex gamma_in, Complex gamma_out, double r0,
                                     double outer_radius, int max_mode);

/// Periodic antiderivative along ∂O normalized to ∮ g ds = 0, computed by
/// Fourier division. Rejects input with nonvanishing mean.
std::vector<Complex> tangential_antiderivative(const ContourMesh& boundary,
                                               const std::vector<Complex>& f);

/// Sup-norm of (I − iΛ_γ∂_s⁻¹)(ν h₁) − (I + iΛ_γ∂_s⁻¹)(ν̄ h₂) over ∂O nodes.
/// Λ∂_s⁻¹ acts as the joint spectral multiplier Λ_n·r/(i n) (zero on mode 0,
/// where Λ vanishes); a violated solvability mean shows up both in the
/// reported flag and in the mode-0 part of the residual itself.
BoundaryRelationResult boundary_relation_residual(const BoundaryTracePair& traces,
                                                  const DtnOperator& dtn,
                                                  const ContourMesh& boundary);

/// Single layer S_{λ,w}f(z) = (1/iπ)·p.v.∮_{∂O} f(ς)
///   ·e^{−λ(z−w)²+λ(ς−w)²}/(ς−z) dς at the node z = boundary.nodes[i].
/// Principal value by singularity subtraction plus the half-residue iπ.
Complex single_layer_S(const CgoParameters& params, const ContourMesh& boundary,
                       const std::vector<Complex>& f, std::size_t node_index);

/// Dirac traces of the radial mode-n solution on ∂O (for γ piecewise
/// constant along concentric circles): closed-form members of 𝒯_q.
BoundaryTracePair radial_mode_traces(Complex gamma_in, Complex gamma_out, double r0,
                                     const ContourMesh& boundary, int n);

/// Diagnostic residuals of the three-equation system tying CGO boundary
/// traces to the DtN map: r1 = sup|(I−S_{λ,w})h₁ − 2e^{λ(z−w)²}|,
/// r2 = sup|(I−conj(S_{λ,w}))h₂|, r3 = the boundary-relation residual.
/// No uniqueness claim is attached; the numbers are reported as-is.
struct ConjectureResiduals {
    double r1 = 0.0, r2 = 0.0, r3 = 0.0;
};

ConjectureResiduals conjecture_residuals(const CgoParameters& params,
                                         const BoundaryTracePair& traces,
                                         const DtnOperator& dtn, const ContourMesh& boundary);

}  // namespace cgo

#endif
