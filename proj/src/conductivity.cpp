#include "cgo/conductivity.hpp"

#include <cmath>

namespace cgo {

namespace {

// ψ(t) = exp(−t/(1−t)) on [0,1), extended by 0: a C∞ bump profile with
// ψ(0) = 1 and all derivatives vanishing at t = 1.
double psi(double t) {
    if (t >= 1.0) return 0.0;
    return std::exp(-t / (1.0 - t));
}

double psi_prime(double t) {
    if (t >= 1.0) return 0.0;
    double u = 1.0 - t;
    return -psi(t) / (u * u);
}

}  // namespace

Complex ConductivityModel::beta(Complex z) const {
    if (bump_amplitude == 0.0) return 0.0;
    double t = std::norm(z - bump_center) / (bump_radius * bump_radius);
    return bump_amplitude * psi(t);
}

Complex ConductivityModel::beta_d(Complex z) const {
    if (bump_amplitude == 0.0) return 0.0;
    double rb2 = bump_radius * bump_radius;
    double t = std::norm(z - bump_center) / rb2;
    // ∂|z−c|² = conj(z−c)
    return bump_amplitude * psi_prime(t) * std::conj(z - bump_center) / rb2;
}

Complex ConductivityModel::beta_dbar(Complex z) const {
    if (bump_amplitude == 0.0) return 0.0;
    double rb2 = bump_radius * bump_radius;
    double t = std::norm(z - bump_center) / rb2;
    return bump_amplitude * psi_prime(t) * (z - bump_center) / rb2;
}

Complex ConductivityModel::eval(Complex z) const {
    if (!inside_outer(z)) return 1.0;
    Complex j = inside_jump(z) ? jump_inside : Complex(1.0);
    return j * std::exp(beta(z));
}

Complex ConductivityModel::d_log(Complex z) const {
    // log γ = log J + β with J locally constant off Γ
    return beta_d(z);
}

Complex ConductivityModel::dbar_log(Complex z) const {
    return beta_dbar(z);
}

Complex ConductivityModel::trace_minus(Complex z) const {
    return jump_inside * std::exp(beta(z));
}

Complex ConductivityModel::trace_plus(Complex z) const {
    return std::exp(beta(z));
}

bool ConductivityModel::is_real_valued() const {
    return jump_inside.imag() == 0.0 && bump_amplitude.imag() == 0.0;
}

ConductivityModel make_model(ModelKind kind, const DiskGeometry& geometry,
                             const ModelParams& params) {
    ConductivityModel m;
    m.kind = kind;
    m.geometry = geometry;
    m.jump_inside = params.jump_inside;
    if (kind == ModelKind::SmoothBumpWithJump) {
        m.bump_amplitude = params.bump_amplitude;
        m.bump_center = params.bump_center;
        m.bump_radius = params.bump_radius;
        if (m.bump_radius <= 0.0)
            throw InvalidInputError("make_model: bump radius must be positive");
        if (m.bump_amplitude != 0.0) {
            double to_gamma = std::abs(m.bump_center - geometry.jump_center) - m.bump_radius;
            double to_boundary = geometry.outer_radius -
                                 (std::abs(m.bump_center - geometry.outer_center) + m.bump_radius);
            if (to_gamma <= geometry.jump_radius)
                throw InvalidInputError("make_model: bump support touches the jump contour");
            if (to_boundary <= 0.0)
                throw InvalidInputError("make_model: bump support touches the outer boundary");
        }
    } else {
        m.bump_amplitude = 0.0;
    }

    // Validation grid for the standing assumption Re γ ≥ c > 0.
    double c = 1.0;  // γ ≡ 1 outside O
    const int n_r = 64, n_th = 128;
    for (int i = 0; i < n_r; ++i) {
        double r = (i + 0.5) / n_r * geometry.outer_radius;
        for (int j = 0; j < n_th; ++j) {
            double th = 2.0 * kPi * j / n_th;
            Complex z = geometry.outer_center + r * Complex(std::cos(th), std::sin(th));
            c = std::min(c, m.eval(z).real());
        }
    }
    c = std::min(c, m.jump_inside.real());
    if (c <= 0.0)
        throw InvalidInputError("make_model: Re(gamma) must stay positive on the validation grid");
    m.lower_bound = c;
    return m;
}

DiracPotential dirac_potential(const ConductivityModel& model, const AreaMesh& mesh,
                               const ContourMesh& gamma_mesh) {
    DiracPotential q;
    const std::size_t n = mesh.size();
    q.q12.resize(n);
    q.q21.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        q.q12[i] = -0.5 * model.d_log(mesh.nodes[i]);
        q.q21[i] = -0.5 * model.dbar_log(mesh.nodes[i]);
        if (q.q12[i] != 0.0 || q.q21[i] != 0.0) q.support.push_back(i);
    }
    q.alpha = jump_alpha(model, gamma_mesh).alpha;
    return q;
}

JumpTrace jump_alpha(const ConductivityModel& model, const ContourMesh& gamma_mesh) {
    JumpTrace jt;
    jt.alpha.resize(gamma_mesh.size());
    for (std::size_t j = 0; j < gamma_mesh.size(); ++j) {
        Complex z = gamma_mesh.nodes[j];
        jt.alpha[j] = std::sqrt(model.trace_minus(z) / model.trace_plus(z));
        jt.deviation = std::max(jt.deviation, std::abs(jt.alpha[j] - 1.0));
    }
    return jt;
}

Mat2 transmission_matrix(Complex alpha, Complex nu) {
    if (alpha == 0.0) throw InvalidInputError("transmission_matrix: alpha must be nonzero");
    Complex diag = 0.5 * (alpha + 1.0 / alpha - 2.0);
    Complex off = 0.5 * (alpha - 1.0 / alpha);
    Complex nu2 = nu * nu;
    return Mat2{diag, off * std::conj(nu2), off * nu2, diag};
}

}  // namespace cgo
