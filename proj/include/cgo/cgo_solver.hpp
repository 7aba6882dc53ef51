#ifndef CGO_SOLVER_HPP
#define CGO_SOLVER_HPP

#include <cstdint>
#include <vector>

#include "cgo/operators.hpp"

namespace cgo {

enum class SolveMethod { Iterative, Dense };
enum class SolveStatus { Ok, NoConvergence, SingularSystem };

struct SolveOptions {
    SolveMethod method = SolveMethod::Iterative;
    double tol = 1e-9;
    int max_iter = 400;
    double r_cut = 2.0;  // spectral cutoff: require |λ| > R_cut
    unsigned threads = 1;
    bool dense_fallback = true;
    std::size_t dense_limit = 2600;  // refuse dense assembly beyond this many unknowns
    bool fill_field = true;  // evaluate μ on the whole area mesh after solving
};

/// Solution of (0-indexed by collocation layout) the discretized
/// Lippmann–Schwinger system, together with the correction field
/// f = μ − (I+DQ̃)(U,0)ᵗ, the ∂O traces and the verified residual
/// ‖(I+PÃ−DQ̃)μ − (U,0)ᵗ‖∞.
struct CgoSolution {
    CgoParameters params;
    FieldPair mu;
    FieldPair correction_f;
    std::vector<Complex> boundary_mu1, boundary_mu2;  // traces on ∂O nodes
    double residual = 0.0;
    int iterations = 0;
    double contraction = 0.0;  // measured Neumann delta ratio (iterative path)
    SolveStatus status = SolveStatus::Ok;
    bool used_dense = false;
};

/// Enriched CGO incident wave U = exp(ln|λ|·λ_O·(z−w)²).
Complex cgo_incident(const CgoParameters& params, Complex z);

/// Solves for μ. The iterative path runs the Neumann iteration on
/// (I+M)f = −M(I+DQ̃)(U,0)ᵗ; the dense path assembles (I+PÃ−DQ̃) by columns
/// and LU-solves it, and doubles as the fallback when iteration stalls.
CgoSolution solve_mu(const CgoParameters& params, const DiracPotential& q,
                     const JumpTrace& jump, const DomainMeshes& meshes,
                     const SolveOptions& opts = {});

/// φ₁ = μ₁·e^{λ(z−w)²/4}, φ₂ = μ₂·e^{conj(λ(z−w)²)/4} on the area nodes.
/// Refuses parameter ranges that would overflow the exponential.
FieldPair normalize_phi(const CgoSolution& solution, const AreaMesh& mesh);

/// Measured contraction factor of the Neumann iteration on the run's data:
/// the geometric mean of the step ratios ‖Δf_{k+1}‖/‖Δf_k‖ of the power
/// series in M seeded by (I+DQ̃)(U,0)ᵗ. This is the factor that governs the
/// solver's convergence; it decays with |λ| by stationary phase. (The
/// adversarial operator norm of the discretized M does not: its unimodular
/// phases can be conjugated away by a worst-case input, so power iteration
/// on M itself measures a λ-flat quantity.)
double estimate_contraction(const CgoParameters& params, const DiracPotential& q,
                            const JumpTrace& jump, const DomainMeshes& meshes,
                            unsigned threads = 1, int iterations = 8);

}  // namespace cgo

#endif
