#ifndef CGO_OPERATORS_HPP
#define CGO_OPERATORS_HPP

#include <cstddef>
#include <vector>

#include "cgo/conductivity.hpp"
#include "cgo/geometry.hpp"
#include "cgo/types.hpp"

namespace cgo {

/// Spectral/CGO parameters of one run: λ is the spectral parameter, w the
/// center, λ_O the admissible direction. λ_s is kept equal to λ_O.
struct CgoParameters {
    Complex lambda;
    Complex w;
    Complex lambda_O;
    Complex lambda_s() const { return lambda_O; }
};

struct TracePair {
    std::vector<Complex> first, second;
};

/// μ-like vector: area samples plus (optionally) interior traces on Γ.
struct FieldPair {
    std::vector<Complex> first, second;
    TracePair trace;
};

enum class ProjectorVariant { Plus, Minus };

struct ProjectorResult {
    Complex value = 0.0;
    bool near_singular = false;
};

/// Phase exponent Im[λ(z−w)²]/2 of the oscillating factors.
inline double phase_exponent(const CgoParameters& p, Complex z) {
    Complex d = z - p.w;
    return 0.5 * std::imag(p.lambda * d * d);
}

/// Refuses λ whose phase advances more than π/4 between adjacent area nodes
/// (aliasing would silently destroy the stationary-phase structure).
void check_oscillation(Complex lambda, Complex w, const AreaMesh& mesh);

/// Largest |λ| the mesh can carry for a given w under the π/4 rule.
double oscillation_cap(Complex w, const AreaMesh& mesh);

/// Solid Cauchy transform ∂̄⁻¹f(z) = (−1/π)∬ f(ς)/(ς−z) dσ_ς.
/// Quadrature: each cell is modeled as the equal-area disk around its node;
/// the kernel integral over that disk is analytic (conj(z−c) inside,
/// (w/π)/(z−c) outside), which keeps the rule continuous in z and exact for
/// the local constant term. The node-centered self-cell value is the inside
/// branch at d = 0, i.e. zero.
Complex solid_cauchy(const AreaMesh& mesh, const std::vector<Complex>& density, Complex z);

/// ∂⁻¹: same transform with the conjugate kernel 1/conj(ς−z).
Complex solid_cauchy_conj(const AreaMesh& mesh, const std::vector<Complex>& density, Complex z);

/// Cauchy projector P₊f(w) = (1/2πi)∮_{Γ⁺} f(z)/(z−w) dz and its complex
/// adjoint P₋ = conj∘P₊∘conj. Flags w within one node spacing of the curve.
ProjectorResult cauchy_projector(const ContourMesh& curve, const std::vector<Complex>& trace,
                                 Complex w, ProjectorVariant variant);

/// One-sided limit of (Pf)|_Γ realized by evaluation at nodes offset half a
/// node spacing along −ν (interior) or +ν (exterior).
std::vector<Complex> project_to_curve(const ContourMesh& curve, const std::vector<Complex>& trace,
                                      ProjectorVariant variant, bool interior_side = true);

/// Q̃_λ: off-diagonal multiplication with unit-modulus phases,
/// (Q̃v)₁ = q12·e^{−i·Im[λ(z−w)²]/2}·v₂, (Q̃v)₂ = q21·e^{+i·Im[λ(z−w)²]/2}·v₁.
FieldPair apply_Qtilde(const CgoParameters& params, const DiracPotential& q,
                       const AreaMesh& mesh, const FieldPair& v);

/// Ã_λ: the transmission matrix with phased off-diagonal entries, acting on
/// interior traces per Γ node.
TracePair apply_Atilde(const CgoParameters& params, const JumpTrace& jump,
                       const ContourMesh& gamma, const TracePair& traces_minus);

/// M v = PÃ_λ v + DQ̃_λ PÃ_λ v − DQ̃_λ DQ̃_λ v on the collocation set
/// (convenience wrapper over LsOperators).
FieldPair apply_M(const CgoParameters& params, const DiracPotential& q, const JumpTrace& jump,
                  const DomainMeshes& meshes, const FieldPair& v);

/// Bundle of the discretized Lippmann–Schwinger operators for one
/// (λ, w, λ_O, potential, jump, meshes) tuple. Collocation runs over the
/// supp(q) nodes and the Γ trace points (nodes offset half a spacing
/// inward): DQ̃ reads area values on supp(q) only and PÃ reads traces only,
/// so every other equation row is an explicit representation evaluation and
/// carries no unknown.
class LsOperators {
public:
    LsOperators(const CgoParameters& params, const DiracPotential& q, const JumpTrace& jump,
                const DomainMeshes& meshes, unsigned threads = 1);

    const CgoParameters& params() const { return params_; }
    const DomainMeshes& meshes() const { return *meshes_; }
    const std::vector<Complex>& trace_points() const { return trace_points_; }
    const std::vector<std::size_t>& support() const { return q_->support; }
    std::size_t area_size() const { return meshes_->area.size(); }
    std::size_t trace_size() const { return trace_points_.size(); }

    /// M v = PÃv + D[Q̃(PÃv − DQ̃v)]  (= PÃ + DQ̃PÃ − DQ̃DQ̃ by linearity),
    /// collocated on supp(q) and the trace points.
    FieldPair apply_M(const FieldPair& v) const;

    /// (I + PÃ − DQ̃)μ at the collocation points.
    FieldPair apply_lhs(const FieldPair& mu) const;

    /// (I + DQ̃)v at the collocation points.
    FieldPair apply_I_plus_DQ(const FieldPair& v) const;

    /// μ evaluated from the representation (U,0) − PÃμ + DQ̃μ at arbitrary
    /// points off the collocation set (∂O traces, field dumps).
    void eval_representation(const std::vector<Complex>& pts, const FieldPair& mu,
                             const std::vector<Complex>& incident_at_pts,
                             std::vector<Complex>& out1, std::vector<Complex>& out2) const;

    /// Flattened coupled unknown vector: [first|supp, second|supp,
    /// first_trace, second_trace]; the layout is fixed so dense assembly and
    /// iteration agree.
    std::size_t flat_size() const { return 2 * (support().size() + trace_size()); }
    std::vector<Complex> flatten(const FieldPair& v) const;
    FieldPair unflatten(const std::vector<Complex>& x) const;

private:
    void dq_batch(const std::vector<Complex>& pts, const FieldPair& v,
                  std::vector<Complex>& out1, std::vector<Complex>& out2) const;
    void pa_batch(const TracePair& atilde_applied, const std::vector<Complex>& pts,
                  std::vector<Complex>& out1, std::vector<Complex>& out2) const;
    TracePair atilde(const TracePair& traces) const;
    FieldPair gather_support(const FieldPair& v) const;

    CgoParameters params_;
    const DiracPotential* q_;
    const JumpTrace* jump_;
    const DomainMeshes* meshes_;
    unsigned threads_;

    std::vector<Complex> trace_points_;
    // compressed source tables over supp(q)
    std::vector<Complex> sup_nodes_;
    std::vector<double> sup_w_, sup_a2_, sup_near2_;
    std::vector<Complex> sup_ax1_, sup_ax2_, sup_quad_;
    std::vector<Complex> sup_q12_, sup_q21_;
    std::vector<Complex> sup_phase_;  // e^{+i Im[λ(z−w)²]/2} at support nodes
    std::vector<Complex> gamma_phase_;
    std::vector<Complex> proj_coef_;  // w_j t_j / (2πi) per Γ node
};

}  // namespace cgo

#endif
