#ifndef CGO_CONDUCTIVITY_HPP
#define CGO_CONDUCTIVITY_HPP

#include <vector>

#include "cgo/geometry.hpp"
#include "cgo/types.hpp"

namespace cgo {

enum class ModelKind { RadialTwoLayer, SmoothBumpWithJump };

/// Complex conductivity γ on ℂ∖Γ with γ ≡ 1 outside O and Re γ ≥ c > 0.
/// γ(z) = J(z)·exp(β(z)): J piecewise constant (J ≡ 1 outside D̄), β a C∞
/// radial bump supported strictly inside O∖D̄ with closed-form Wirtinger
/// derivatives. All log/sqrt branches are principal; Re γ > 0 keeps values
/// off the cut.
struct ConductivityModel {
    ModelKind kind = ModelKind::SmoothBumpWithJump;
    DiskGeometry geometry;
    Complex jump_inside = 1.0;  // J on D
    Complex bump_amplitude = 0.0;
    Complex bump_center = 0.0;
    double bump_radius = 0.1;
    double lower_bound = 1.0;  // validated min of Re γ

    bool inside_jump(Complex z) const { return std::abs(z - geometry.jump_center) < geometry.jump_radius; }
    bool inside_outer(Complex z) const { return std::abs(z - geometry.outer_center) < geometry.outer_radius; }

    Complex beta(Complex z) const;
    Complex beta_d(Complex z) const;     // ∂β
    Complex beta_dbar(Complex z) const;  // ∂̄β

    Complex eval(Complex z) const;      // γ(z), z off Γ
    Complex d_log(Complex z) const;     // ∂ log γ, z off Γ
    Complex dbar_log(Complex z) const;  // ∂̄ log γ, z off Γ
    Complex trace_minus(Complex z) const;
    Complex trace_plus(Complex z) const;
    bool is_real_valued() const;
};

struct ModelParams {
    Complex jump_inside = 1.0;
    Complex bump_amplitude = 0.0;
    Complex bump_center = 0.0;
    double bump_radius = 0.1;
};

/// q = −(1/2)·(∂ log γ, ∂̄ log γ) sampled on the area mesh; on Γ the values
/// come from the exterior side (fixed convention; measure zero for the
/// quadrature). `support` lists the node indices where q carries weight.
struct DiracPotential {
    std::vector<Complex> q12;
    std::vector<Complex> q21;
    std::vector<Complex> alpha;  // jump trace on Γ nodes
    std::vector<std::size_t> support;
};

struct JumpTrace {
    std::vector<Complex> alpha;  // principal sqrt(γ⁻/γ⁺) per Γ node
    double deviation = 0.0;      // sup |α−1|
};

struct Mat2 {
    Complex a11, a12, a21, a22;
};

/// Validates Re γ ≥ c > 0 on a sampling grid and the bump support
/// constraints, then returns the model.
ConductivityModel make_model(ModelKind kind, const DiskGeometry& geometry,
                             const ModelParams& params);

DiracPotential dirac_potential(const ConductivityModel& model, const AreaMesh& mesh,
                               const ContourMesh& gamma_mesh);

JumpTrace jump_alpha(const ConductivityModel& model, const ContourMesh& gamma_mesh);

/// (1/2)·[[α+1/α−2, (α−1/α)conj(ν)²], [(α−1/α)ν², α+1/α−2]]; exactly zero
/// at α = 1.
Mat2 transmission_matrix(Complex alpha, Complex nu);

}  // namespace cgo

#endif
