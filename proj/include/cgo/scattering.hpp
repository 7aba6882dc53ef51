#ifndef CGO_SCATTERING_HPP
#define CGO_SCATTERING_HPP

#include <functional>
#include <vector>

#include "cgo/cgo_solver.hpp"
#include "cgo/operators.hpp"

namespace cgo {

enum class ScatteringForm { Boundary, Interior };

struct ScatteringSample {
    Complex lambda;
    Complex h;
    ScatteringForm form = ScatteringForm::Boundary;
};

/// Annulus sampling R < |λ| < 2R: log-spaced radii with trapezoid weights
/// (exact for the |λ|⁻² profile appearing in the reconstruction constant)
/// times a periodic uniform angular rule. Weights integrate dσ_λ.
struct AnnulusSample {
    Complex lambda;
    double weight;
};

struct ReconstructionConfig {
    double R = 4.0;
    int n_radial = 8;
    int n_angular = 16;
    std::vector<double> R_ladder;  // defaults to {R, 2R, 4R} when empty
};

std::vector<AnnulusSample> annulus_grid(double R, int n_radial, int n_angular);

/// Scattering datum from the ∂O traces of μ₂ (boundary form):
/// h = (i/(2λ_s))·∮_{∂O} conj(U_s)·μ₂ dz̄ with U_s = e^{ln|λ|·λ_s(z−w)²}.
/// The i/(2λ_s) prefactor normalizes h so the annulus reconstruction formula
/// below inverts it exactly (it absorbs the −2i of Green's theorem and the
/// Jacobian of the λ_s rescale).
ScatteringSample scattering_boundary(const CgoSolution& solution, const DomainMeshes& meshes);

/// Same datum computed from the interior side via Green's theorem:
/// the Γ⁺ integral of conj(U_s)·μ₂⁺ plus −2i·∬_{O∖D̄} conj(U_s)·q̃₂₁·μ₁ dσ,
/// with the same i/(2λ_s) prefactor. Independent quadrature path from the
/// boundary form; the two agreeing is the strongest end-to-end identity.
ScatteringSample scattering_interior(const CgoSolution& solution, const DiracPotential& q,
                                     const JumpTrace& jump, const DomainMeshes& meshes);

/// T[G](λ) = ∬_{O∖D̄} conj(U_s)·e^{−i·Im[λ(z−w)²]/2}·q₂₁·G dσ.
Complex apply_T(const std::vector<Complex>& G, const CgoParameters& params,
                const DiracPotential& q, const AreaMesh& mesh);

/// Normalized stationary-phase probe. Evaluates
///   I(λ) = ∬ e^{−i·Im[λ(z−w)²]/2 + ln|λ|·(z−w)²} φ dσ
/// on a fine polar grid over the support disk and returns |λ|·I/(2π) per
/// ladder entry, which tends to φ(w). The phase carries the /2 of the
/// μ-system; for it the 2π normalization is exact (a Gaussian closed form
/// fixes the constant — the plain phase would halve it).
struct ProbeValue {
    double abs_lambda;
    Complex normalized;  // |λ|·I/(2π)
};

struct SupportDisk {
    Complex center;
    double radius;
};

std::vector<ProbeValue> stationary_phase_probe(const std::function<Complex(Complex)>& phi,
                                               const SupportDisk& support, Complex w,
                                               const std::vector<double>& lambda_ladder,
                                               int grid_n = 256);

/// Reconstruction at a proper admissible point:
/// q̂₂₁(w) = (λ_s/(4π²·ln2))·∬_{R<|λ|<2R} |λ|⁻¹ h(λ,w) dσ_λ.
/// Samples must cover the canonical annulus grid of `config` (in grid order).
Complex reconstruct_q21(const std::vector<ScatteringSample>& samples,
                        const CgoParameters& params, const ReconstructionConfig& config);

/// ∬_{R<|λ|<2R} |λ|⁻² dσ_λ under the same quadrature (equals 2π·ln2).
double annulus_inv_square_integral(double R, int n_radial, int n_angular);

}  // namespace cgo

#endif
