#include "cgo/scattering.hpp"

#include <algorithm>
#include <cmath>

namespace cgo {

namespace {

Complex u_s(const CgoParameters& p, Complex z) {
    Complex d = z - p.w;
    return std::exp(std::log(std::abs(p.lambda)) * p.lambda_s() * d * d);
}

Complex h_prefactor(const CgoParameters& p) { return kI / (2.0 * p.lambda_s()); }

}  // namespace

std::vector<AnnulusSample> annulus_grid(double R, int n_radial, int n_angular) {
    if (R <= 0.0) throw InvalidInputError("annulus_grid: R must be positive");
    if (n_radial < 2 || n_angular < 1) throw InvalidInputError("annulus_grid: too few samples");
    std::vector<AnnulusSample> grid;
    grid.reserve(static_cast<std::size_t>(n_radial) * n_angular);
    const double ds = std::log(2.0) / (n_radial - 1);
    const double dth = 2.0 * kPi / n_angular;
    for (int i = 0; i < n_radial; ++i) {
        double r = R * std::exp(i * ds);
        double tau = (i == 0 || i == n_radial - 1) ? 0.5 : 1.0;
        for (int j = 0; j < n_angular; ++j) {
            double th = j * dth;
            // dσ_λ = r dr dθ = r² ds dθ on the log-radial grid
            grid.push_back({r * Complex(std::cos(th), std::sin(th)), r * r * ds * dth * tau});
        }
    }
    return grid;
}

ScatteringSample scattering_boundary(const CgoSolution& solution, const DomainMeshes& meshes) {
    const ContourMesh& bd = meshes.boundary;
    const CgoParameters& p = solution.params;
    Complex acc = 0.0;
    for (std::size_t j = 0; j < bd.size(); ++j)
        acc += bd.weights[j] * std::conj(bd.tangents[j]) * std::conj(u_s(p, bd.nodes[j])) *
               solution.boundary_mu2[j];
    return {p.lambda, h_prefactor(p) * acc, ScatteringForm::Boundary};
}

ScatteringSample scattering_interior(const CgoSolution& solution, const DiracPotential& q,
                                     const JumpTrace& jump, const DomainMeshes& meshes) {
    const CgoParameters& p = solution.params;
    const ContourMesh& g = meshes.gamma;
    const AreaMesh& a = meshes.area;

    // Q̃ density feeding μ₂
    std::vector<Complex> dens2(a.size(), 0.0);
    for (std::size_t i : q.support) {
        double phi = phase_exponent(p, a.nodes[i]);
        dens2[i] = q.q21[i] * Complex(std::cos(phi), std::sin(phi)) * solution.mu.first[i];
    }

    // exterior trace of μ₂ on Γ from the representation,
    // μ₂⁺ = [DQ̃μ]₂ − (P₋(Ãμ)₂)⁺, with the projector's one-sided limit
    TracePair am = apply_Atilde(p, jump, g, solution.mu.trace);
    std::vector<Complex> p_minus_ext = project_to_curve(g, am.second, ProjectorVariant::Minus,
                                                        /*interior_side=*/false);
    Complex gamma_term = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        Complex mu2_plus = solid_cauchy_conj(a, dens2, g.nodes[j]) - p_minus_ext[j];
        gamma_term += g.weights[j] * std::conj(g.tangents[j]) * std::conj(u_s(p, g.nodes[j])) * mu2_plus;
    }

    // ∬ conj(U_s)·(Q̃μ)₂ over O∖D̄ with the second-order cell correction of
    // conj(U_s) (its quadrupole term, matching the solid-transform far field)
    Complex gfac = std::log(std::abs(p.lambda)) * p.lambda_s();
    Complex area_term = 0.0;
    for (std::size_t i : q.support) {
        if (a.region[i] != RegionTag::OutsideD) continue;
        if (dens2[i] == 0.0) continue;
        Complex us = u_s(p, a.nodes[i]);
        Complex d = a.nodes[i] - p.w;
        Complex us_dd = (2.0 * gfac + 4.0 * gfac * gfac * d * d) * us;
        Complex quad = a.weights[i] * (a.half_axis1[i] * a.half_axis1[i] +
                                       a.half_axis2[i] * a.half_axis2[i]) / (3.0 * kPi);
        Complex cell = a.weights[i] * std::conj(us) + 0.5 * kPi * std::conj(quad * us_dd);
        area_term += cell * dens2[i];
    }
    Complex h = h_prefactor(p) * (gamma_term - 2.0 * kI * area_term);
    return {p.lambda, h, ScatteringForm::Interior};
}

Complex apply_T(const std::vector<Complex>& G, const CgoParameters& params,
                const DiracPotential& q, const AreaMesh& mesh) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        if (mesh.region[i] != RegionTag::OutsideD) continue;
        if (q.q21[i] == 0.0) continue;
        double phi = phase_exponent(params, mesh.nodes[i]);
        acc += mesh.weights[i] * std::conj(u_s(params, mesh.nodes[i])) *
               Complex(std::cos(phi), -std::sin(phi)) * q.q21[i] * G[i];
    }
    return acc;
}

std::vector<ProbeValue> stationary_phase_probe(const std::function<Complex(Complex)>& phi,
                                               const SupportDisk& support, Complex w,
                                               const std::vector<double>& lambda_ladder,
                                               int grid_n) {
    // polar grid over the support disk
    std::vector<Complex> nodes;
    std::vector<double> weights;
    int n_rad = grid_n, n_ang = 2 * grid_n;
    nodes.reserve(static_cast<std::size_t>(n_rad) * n_ang);
    double dr = support.radius / n_rad;
    double dth = 2.0 * kPi / n_ang;
    for (int i = 0; i < n_rad; ++i) {
        double ra = i * dr, rb = ra + dr, rm = 0.5 * (ra + rb);
        for (int j = 0; j < n_ang; ++j) {
            double th = (j + 0.5) * dth;
            nodes.push_back(support.center + rm * Complex(std::cos(th), std::sin(th)));
            weights.push_back(0.5 * (rb * rb - ra * ra) * dth);
        }
    }
    double sup_re = -1e300;
    for (const Complex& z : nodes) {
        Complex d = z - w;
        sup_re = std::max(sup_re, std::real(d * d));
    }
    if (sup_re >= 1.0)
        throw InvalidInputError("stationary_phase_probe: sup Re(z-w)^2 must stay below 1");

    std::vector<Complex> phi_vals(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) phi_vals[i] = phi(nodes[i]);

    std::vector<ProbeValue> out;
    out.reserve(lambda_ladder.size());
    for (double lam : lambda_ladder) {
        double ln_lam = std::log(lam);
        Complex acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            Complex d = nodes[i] - w;
            Complex d2 = d * d;
            // phase of the μ-system (half angle) plus the enrichment weight
            Complex expo = Complex(0.0, -0.5 * lam * std::imag(d2)) + ln_lam * d2;
            acc += weights[i] * phi_vals[i] * std::exp(expo);
        }
        out.push_back({lam, lam * acc / (2.0 * kPi)});
    }
    return out;
}

Complex reconstruct_q21(const std::vector<ScatteringSample>& samples,
                        const CgoParameters& params, const ReconstructionConfig& config) {
    if (config.n_radial < 8 || config.n_angular < 8)
        throw InvalidInputError("reconstruct_q21: sample counts must be at least 8");
    std::vector<AnnulusSample> grid = annulus_grid(config.R, config.n_radial, config.n_angular);
    if (samples.size() != grid.size())
        throw InvalidInputError("reconstruct_q21: samples do not cover the annulus grid");
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (std::abs(samples[i].lambda - grid[i].lambda) > 1e-9 * std::abs(grid[i].lambda))
            throw InvalidInputError("reconstruct_q21: sample ordering does not match the annulus grid");

    // deterministic fold in grid order (sorted by |λ|, then arg λ)
    Complex acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        acc += grid[i].weight / std::abs(grid[i].lambda) * samples[i].h;
    return params.lambda_s() / (4.0 * kPi * kPi * std::log(2.0)) * acc;
}

double annulus_inv_square_integral(double R, int n_radial, int n_angular) {
    double acc = 0.0;
    for (const AnnulusSample& s : annulus_grid(R, n_radial, n_angular))
        acc += s.weight / std::norm(s.lambda);
    return acc;
}

}  // namespace cgo
