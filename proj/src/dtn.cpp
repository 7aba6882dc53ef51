#include "cgo/dtn.hpp"

#include <algorithm>
#include <cmath>

#include "cgo/spectral.hpp"

namespace cgo {

namespace {

// radial mode profile g(r) = B r^m + C r^{−m} outside r0, A r^m inside,
// normalized to A = 1; k = γ⁻/γ⁺
struct RadialMode {
    Complex B, C;
    int m = 0;
};

RadialMode radial_mode(Complex gamma_in, Complex gamma_out, double r0, int n) {
    RadialMode rm;
    rm.m = std::abs(n);
    Complex k = gamma_in / gamma_out;
    rm.B = 0.5 * (1.0 + k);
    rm.C = 0.5 * (1.0 - k) * std::pow(r0, 2 * rm.m);
    return rm;
}

}  // namespace

Complex radial_dtn(Complex gamma_in, Complex gamma_out, double r0, double outer_radius, int n) {
    if (r0 >= outer_radius)
        throw InvalidInputError("radial_dtn: jump radius must be smaller than the outer radius");
    if (r0 <= 0.0 || outer_radius <= 0.0)
        throw InvalidInputError("radial_dtn: radii must be positive");
    if (n == 0) return 0.0;  // constants are in the kernel
    int m = std::abs(n);
    Complex k = gamma_in / gamma_out;
    double rho = std::pow(r0 / outer_radius, 2 * m);
    Complex num = (1.0 + k) - (1.0 - k) * rho;
    Complex den = (1.0 + k) + (1.0 - k) * rho;
    return gamma_out * static_cast<double>(m) / outer_radius * num / den;
}

DtnOperator make_radial_dtn_operator(Complex gamma_in, Complex gamma_out, double r0,
                                     double outer_radius, int max_mode) {
    DtnOperator op;
    op.max_mode = max_mode;
    op.radius = outer_radius;
    op.eigenvalues.resize(2 * max_mode + 1);
    for (int n = -max_mode; n <= max_mode; ++n)
        op.eigenvalues[static_cast<std::size_t>(n + max_mode)] =
            radial_dtn(gamma_in, gamma_out, r0, outer_radius, n);
    return op;
}

std::vector<Complex> tangential_antiderivative(const ContourMesh& boundary,
                                               const std::vector<Complex>& f) {
    const std::size_t n = boundary.size();
    double radius = boundary.length() / (2.0 * kPi);
    std::vector<Complex> fhat = dft(f);
    double scale = 1.0;
    for (const Complex& v : f) scale = std::max(scale, std::abs(v));
    if (std::abs(fhat[0]) > 1e-10 * scale)
        throw InvalidInputError("tangential_antiderivative: nonzero mean, no periodic antiderivative");
    std::vector<Complex> ghat(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) {
        int mode = signed_mode(k, n);
        ghat[k] = fhat[k] * radius / (kI * static_cast<double>(mode));
    }
    return idft(ghat);
}

BoundaryRelationResult boundary_relation_residual(const BoundaryTracePair& traces,
                                                  const DtnOperator& dtn,
                                                  const ContourMesh& boundary) {
    const std::size_t n = boundary.size();
    if (dtn.max_mode < static_cast<int>(n / 2))
        throw InvalidInputError("boundary_relation_residual: DtN mode table too small for the mesh");
    std::vector<Complex> a(n), b(n);
    for (std::size_t j = 0; j < n; ++j) {
        a[j] = boundary.normals[j] * traces.h1[j];
        b[j] = std::conj(boundary.normals[j]) * traces.h2[j];
    }
    std::vector<Complex> ahat = dft(a), bhat = dft(b);

    BoundaryRelationResult res;
    double scale = 1.0;
    for (std::size_t j = 0; j < n; ++j)
        scale = std::max({scale, std::abs(a[j]), std::abs(b[j])});
    res.mean_defect = std::abs(ahat[0] - bhat[0]);
    res.mean_condition_ok = res.mean_defect <= 1e-8 * scale;

    // Relation from inverting the trace matrix: Λf = a + b with
    // f = i∂_s⁻¹(a − b), i.e. (I − iΛ∂_s⁻¹)a + (I + iΛ∂_s⁻¹)b = 0.
    // (The printed rewrite swaps the ± pairing; that version already fails
    // for the semi-analytic jump solutions, so the inverted form is used.)
    std::vector<Complex> rhat(n);
    for (std::size_t k = 0; k < n; ++k) {
        int mode = signed_mode(k, n);
        Complex mult = 0.0;  // Λ∂_s⁻¹ on mode 0 is 0 since Λ kills constants
        if (mode != 0)
            mult = dtn.eigenvalue(mode) * dtn.radius / (kI * static_cast<double>(mode));
        rhat[k] = (ahat[k] + bhat[k]) - kI * mult * (ahat[k] - bhat[k]);
    }
    std::vector<Complex> r = idft(rhat);
    res.residual = sup_norm(r);
    return res;
}

Complex single_layer_S(const CgoParameters& params, const ContourMesh& boundary,
                       const std::vector<Complex>& f, std::size_t node_index) {
    const std::size_t n = boundary.size();
    const Complex z = boundary.nodes[node_index];
    // g(ς) = f(ς)·e^{λ(ς−w)²}; the z-exponential factors out
    std::vector<Complex> g(n);
    for (std::size_t j = 0; j < n; ++j) {
        Complex d = boundary.nodes[j] - params.w;
        g[j] = f[j] * std::exp(params.lambda * d * d);
    }
    Complex acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == node_index) continue;
        acc += boundary.weights[j] * boundary.tangents[j] * (g[j] - g[node_index]) /
               (boundary.nodes[j] - z);
    }
    // removable-singularity value dg/dς at the node, by centered difference
    std::size_t jp = (node_index + 1) % n, jm = (node_index + n - 1) % n;
    Complex dg = (g[jp] - g[jm]) / (boundary.nodes[jp] - boundary.nodes[jm]);
    acc += boundary.weights[node_index] * boundary.tangents[node_index] * dg;
    // p.v. of the bare Cauchy kernel over a smooth closed curve is iπ
    acc += g[node_index] * kI * kPi;

    Complex dz = z - params.w;
    return std::exp(-params.lambda * dz * dz) * acc / (kI * kPi);
}

ConjectureResiduals conjecture_residuals(const CgoParameters& params,
                                         const BoundaryTracePair& traces,
                                         const DtnOperator& dtn, const ContourMesh& boundary) {
    ConjectureResiduals out;
    const std::size_t n = boundary.size();
    std::vector<Complex> h2c(n);
    for (std::size_t j = 0; j < n; ++j) h2c[j] = std::conj(traces.h2[j]);
    for (std::size_t j = 0; j < n; ++j) {
        Complex d = boundary.nodes[j] - params.w;
        Complex s1 = traces.h1[j] - single_layer_S(params, boundary, traces.h1, j) -
                     2.0 * std::exp(params.lambda * d * d);
        out.r1 = std::max(out.r1, std::abs(s1));
        // conj(S) h₂ = conj(S applied to conj h₂)
        Complex s2 = traces.h2[j] - std::conj(single_layer_S(params, boundary, h2c, j));
        out.r2 = std::max(out.r2, std::abs(s2));
    }
    out.r3 = boundary_relation_residual(traces, dtn, boundary).residual;
    return out;
}

BoundaryTracePair radial_mode_traces(Complex gamma_in, Complex gamma_out, double r0,
                                     const ContourMesh& boundary, int n) {
    const double R = boundary.length() / (2.0 * kPi);
    RadialMode rm = radial_mode(gamma_in, gamma_out, r0, n);
    double m = rm.m;
    Complex gR = rm.B * std::pow(R, m) + rm.C * std::pow(R, -m);
    Complex gpR = m * (rm.B * std::pow(R, m - 1) - rm.C * std::pow(R, -m - 1));
    Complex sq = std::sqrt(gamma_out);
    BoundaryTracePair tp;
    tp.h1.resize(boundary.size());
    tp.h2.resize(boundary.size());
    for (std::size_t j = 0; j < boundary.size(); ++j) {
        double th = std::arg(boundary.normals[j]);
        Complex ein = std::exp(kI * static_cast<double>(n) * th);
        Complex eim = std::exp(-kI * th);
        // φ₁ = (1/2)(g' + n g/r)e^{i(n−1)θ}, φ₂ = (1/2)(g' − n g/r)e^{i(n+1)θ}
        tp.h1[j] = sq * 0.5 * (gpR + static_cast<double>(n) * gR / R) * ein * eim;
        tp.h2[j] = sq * 0.5 * (gpR - static_cast<double>(n) * gR / R) * ein / eim;
    }
    return tp;
}

}  // namespace cgo
