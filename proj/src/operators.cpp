#include "cgo/operators.hpp"

#include <algorithm>
#include <cmath>

#include "cgo/parallel.hpp"
#include "cgo/spectral.hpp"

namespace cgo {

void check_oscillation(Complex lambda, Complex w, const AreaMesh& mesh) {
    double worst = 0.0;
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        double step = std::abs(lambda) * std::abs(mesh.nodes[i] - w) * mesh.spacing[i];
        worst = std::max(worst, step);
    }
    if (worst > 0.25 * kPi)
        throw OscillationGuardError(
            "oscillation guard: phase advances " + std::to_string(worst) +
            " rad between adjacent nodes (limit pi/4); refine the mesh or lower |lambda|");
}

double oscillation_cap(Complex w, const AreaMesh& mesh) {
    double worst = 0.0;
    for (std::size_t i = 0; i < mesh.size(); ++i)
        worst = std::max(worst, std::abs(mesh.nodes[i] - w) * mesh.spacing[i]);
    return worst > 0.0 ? 0.25 * kPi / worst : 0.0;
}

namespace {

// Equal-area-disk model of a cell with a quadrupole correction: the kernel
// integral over the disk is conj(z−c) inside and (w/π)·conj(z−c)/|z−c|²
// outside; a parallelogram cell additionally carries the second moment
// ∫(ς−c)² dσ = w·(ax1²+ax2²)/3, which the disk lacks, so the far field gets
// the matching 1/(z−c)³ term. Near cells are subdivided 4×4 along their
// half-axes. The conjugate kernel is the exact mirror of the plain one,
// which keeps the conjugation identity tight.
constexpr double kNearFactor2 = 36.0;  // trigger radius² = 36·(|ax1|²+|ax2|²)

inline void disk_kernels(Complex d, double w_cell, double a2, Complex quad, Complex& k_plain,
                         Complex& k_conj) {
    double n2 = std::norm(d);
    if (n2 <= a2) {
        k_plain = std::conj(d);
        k_conj = d;
    } else {
        Complex inv = std::conj(d) / n2;  // 1/d
        Complex kp = (w_cell / kPi) * inv + quad * (inv * inv * inv);
        k_plain = kp;
        k_conj = std::conj(kp);
    }
}

inline Complex quad_moment(double w_cell, Complex ax1, Complex ax2) {
    return w_cell * (ax1 * ax1 + ax2 * ax2) / (3.0 * kPi);
}

inline void cell_kernels(Complex z, Complex node, double w_cell, double a2, Complex ax1,
                         Complex ax2, Complex& k_plain, Complex& k_conj) {
    Complex d = z - node;
    double n2 = std::norm(d);
    double s = std::norm(ax1) + std::norm(ax2);
    if (n2 > kNearFactor2 * s) {
        disk_kernels(d, w_cell, a2, quad_moment(w_cell, ax1, ax2), k_plain, k_conj);
        return;
    }
    if (n2 <= 0.25 * a2) {
        // deep inside this cell's own disk (a unique cell: the quarter disks
        // around distinct nodes are disjoint); the unsplit model keeps
        // ∂̄∘∂̄⁻¹ = identity exact here
        k_plain = std::conj(d);
        k_conj = d;
        return;
    }
    const int n_sub = n2 > 9.0 * s ? 4 : 8;  // finer split right on top of the cell
    k_plain = 0.0;
    k_conj = 0.0;
    const double inv = 1.0 / n_sub;
    const double sw = w_cell * inv * inv;
    const double sa2 = a2 * inv * inv;
    const Complex squad = quad_moment(sw, inv * ax1, inv * ax2);
    for (int i = 0; i < n_sub; ++i) {
        double u = (2.0 * i + 1.0) * inv - 1.0;
        for (int j = 0; j < n_sub; ++j) {
            double v = (2.0 * j + 1.0) * inv - 1.0;
            Complex kp, kc;
            disk_kernels(d - u * ax1 - v * ax2, sw, sa2, squad, kp, kc);
            k_plain += kp;
            k_conj += kc;
        }
    }
}

}  // namespace

Complex solid_cauchy(const AreaMesh& mesh, const std::vector<Complex>& density, Complex z) {
    Complex acc = 0.0;
    for (std::size_t c = 0; c < mesh.size(); ++c) {
        if (density[c] == 0.0) continue;
        Complex kp, kc;
        cell_kernels(z, mesh.nodes[c], mesh.weights[c], mesh.weights[c] / kPi,
                     mesh.half_axis1[c], mesh.half_axis2[c], kp, kc);
        acc += density[c] * kp;
    }
    return acc;
}

Complex solid_cauchy_conj(const AreaMesh& mesh, const std::vector<Complex>& density, Complex z) {
    Complex acc = 0.0;
    for (std::size_t c = 0; c < mesh.size(); ++c) {
        if (density[c] == 0.0) continue;
        Complex kp, kc;
        cell_kernels(z, mesh.nodes[c], mesh.weights[c], mesh.weights[c] / kPi,
                     mesh.half_axis1[c], mesh.half_axis2[c], kp, kc);
        acc += density[c] * kc;
    }
    return acc;
}

namespace {

Complex cauchy_plus_raw(const ContourMesh& curve, const std::vector<Complex>& trace, Complex w) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < curve.size(); ++j)
        s += curve.weights[j] * curve.tangents[j] * trace[j] / (curve.nodes[j] - w);
    return s / (2.0 * kPi * kI);
}

}  // namespace

ProjectorResult cauchy_projector(const ContourMesh& curve, const std::vector<Complex>& trace,
                                 Complex w, ProjectorVariant variant) {
    ProjectorResult r;
    double dmin = 1e300;
    std::size_t jmin = 0;
    for (std::size_t j = 0; j < curve.size(); ++j) {
        double d = std::abs(curve.nodes[j] - w);
        if (d < dmin) {
            dmin = d;
            jmin = j;
        }
    }
    r.near_singular = dmin < curve.weights[jmin];
    if (variant == ProjectorVariant::Plus) {
        r.value = cauchy_plus_raw(curve, trace, w);
    } else {
        std::vector<Complex> conj_trace(trace.size());
        for (std::size_t j = 0; j < trace.size(); ++j) conj_trace[j] = std::conj(trace[j]);
        r.value = std::conj(cauchy_plus_raw(curve, conj_trace, w));
    }
    return r;
}

std::vector<Complex> project_to_curve(const ContourMesh& curve, const std::vector<Complex>& trace,
                                      ProjectorVariant variant, bool interior_side) {
    const std::size_t n = curve.size();
    if (variant == ProjectorVariant::Minus) {
        std::vector<Complex> conj_trace(n);
        for (std::size_t j = 0; j < n; ++j) conj_trace[j] = std::conj(trace[j]);
        std::vector<Complex> r = project_to_curve(curve, conj_trace, ProjectorVariant::Plus,
                                                  interior_side);
        for (auto& v : r) v = std::conj(v);
        return r;
    }
    // One-sided limit by Sokhotski–Plemelj: p.v. value (singularity-subtracted
    // trapezoid, removable term from the spectral derivative, half-residue iπ)
    // plus ±trace/2. Evaluating at a small offset instead caps the projector
    // property at O(offset·mode); the limit formula keeps it spectral.
    std::vector<Complex> dg_ds = spectral_derivative(trace, curve.length());
    std::vector<Complex> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        Complex z = curve.nodes[j];
        Complex acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            acc += curve.weights[k] * curve.tangents[k] * (trace[k] - trace[j]) /
                   (curve.nodes[k] - z);
        }
        acc += curve.weights[j] * dg_ds[j];  // w_j t_j · (dg/ds)/t_j at the node
        Complex pv = acc / (2.0 * kPi * kI) + 0.5 * trace[j];
        out[j] = pv + (interior_side ? 0.5 : -0.5) * trace[j];
    }
    return out;
}

FieldPair apply_Qtilde(const CgoParameters& params, const DiracPotential& q,
                       const AreaMesh& mesh, const FieldPair& v) {
    FieldPair out;
    out.first.assign(mesh.size(), 0.0);
    out.second.assign(mesh.size(), 0.0);
    for (std::size_t i : q.support) {
        double phi = phase_exponent(params, mesh.nodes[i]);
        Complex e_plus(std::cos(phi), std::sin(phi));
        out.first[i] = q.q12[i] * std::conj(e_plus) * v.second[i];
        out.second[i] = q.q21[i] * e_plus * v.first[i];
    }
    return out;
}

TracePair apply_Atilde(const CgoParameters& params, const JumpTrace& jump,
                       const ContourMesh& gamma, const TracePair& traces_minus) {
    TracePair out;
    const std::size_t n = gamma.size();
    out.first.resize(n);
    out.second.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        Mat2 m = transmission_matrix(jump.alpha[j], gamma.normals[j]);
        double phi = phase_exponent(params, gamma.nodes[j]);
        Complex e_plus(std::cos(phi), std::sin(phi));
        out.first[j] = m.a11 * traces_minus.first[j] + m.a12 * std::conj(e_plus) * traces_minus.second[j];
        out.second[j] = m.a21 * e_plus * traces_minus.first[j] + m.a22 * traces_minus.second[j];
    }
    return out;
}

LsOperators::LsOperators(const CgoParameters& params, const DiracPotential& q,
                         const JumpTrace& jump, const DomainMeshes& meshes, unsigned threads)
    : params_(params), q_(&q), jump_(&jump), meshes_(&meshes), threads_(threads) {
    const ContourMesh& g = meshes.gamma;
    trace_points_.resize(g.size());
    proj_coef_.resize(g.size());
    gamma_phase_.resize(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        trace_points_[j] = g.nodes[j] - 0.5 * g.weights[j] * g.normals[j];
        proj_coef_[j] = g.weights[j] * g.tangents[j] / (2.0 * kPi * kI);
        double phi = phase_exponent(params_, g.nodes[j]);
        gamma_phase_[j] = Complex(std::cos(phi), std::sin(phi));
    }
    const AreaMesh& a = meshes.area;
    sup_nodes_.reserve(q.support.size());
    for (std::size_t i : q.support) {
        sup_nodes_.push_back(a.nodes[i]);
        sup_w_.push_back(a.weights[i]);
        sup_a2_.push_back(a.weights[i] / kPi);
        sup_ax1_.push_back(a.half_axis1[i]);
        sup_ax2_.push_back(a.half_axis2[i]);
        sup_near2_.push_back(kNearFactor2 *
                             (std::norm(a.half_axis1[i]) + std::norm(a.half_axis2[i])));
        sup_quad_.push_back(quad_moment(a.weights[i], a.half_axis1[i], a.half_axis2[i]));
        sup_q12_.push_back(q.q12[i]);
        sup_q21_.push_back(q.q21[i]);
        double phi = phase_exponent(params_, a.nodes[i]);
        sup_phase_.push_back(Complex(std::cos(phi), std::sin(phi)));
    }
}

// D Q̃ v at the given points. v must carry area values; only supp(q) is read.
// Cells whose density vanishes are skipped, which makes unit-vector inputs
// (dense assembly) cheap.
void LsOperators::dq_batch(const std::vector<Complex>& pts, const FieldPair& v,
                           std::vector<Complex>& out1, std::vector<Complex>& out2) const {
    const std::size_t ns = sup_nodes_.size();
    std::vector<Complex> dens1(ns), dens2(ns);
    std::vector<std::size_t> active;
    active.reserve(ns);
    for (std::size_t s = 0; s < ns; ++s) {
        std::size_t i = q_->support[s];
        dens1[s] = sup_q12_[s] * std::conj(sup_phase_[s]) * v.second[i];
        dens2[s] = sup_q21_[s] * sup_phase_[s] * v.first[i];
        if (dens1[s] != 0.0 || dens2[s] != 0.0) active.push_back(s);
    }
    out1.assign(pts.size(), 0.0);
    out2.assign(pts.size(), 0.0);
    parallel_for(pts.size(), threads_, [&](std::size_t p) {
        Complex z = pts[p];
        Complex acc1 = 0.0, acc2 = 0.0;
        for (std::size_t s : active) {
            Complex d = z - sup_nodes_[s];
            double n2 = std::norm(d);
            if (n2 > sup_near2_[s]) {
                Complex inv = std::conj(d) / n2;
                Complex k = (sup_w_[s] / kPi) * inv + sup_quad_[s] * (inv * inv * inv);
                acc1 += dens1[s] * k;
                acc2 += dens2[s] * std::conj(k);
            } else {
                Complex kp, kc;
                cell_kernels(z, sup_nodes_[s], sup_w_[s], sup_a2_[s], sup_ax1_[s], sup_ax2_[s],
                             kp, kc);
                acc1 += dens1[s] * kp;
                acc2 += dens2[s] * kc;
            }
        }
        out1[p] = acc1;
        out2[p] = acc2;
    });
}

// P applied to a Γ density pair, evaluated at the given points.
void LsOperators::pa_batch(const TracePair& g, const std::vector<Complex>& pts,
                           std::vector<Complex>& out1, std::vector<Complex>& out2) const {
    const ContourMesh& gm = meshes_->gamma;
    const std::size_t n = gm.size();
    std::vector<std::size_t> active;
    active.reserve(n);
    for (std::size_t j = 0; j < n; ++j)
        if (g.first[j] != 0.0 || g.second[j] != 0.0) active.push_back(j);
    out1.assign(pts.size(), 0.0);
    out2.assign(pts.size(), 0.0);
    parallel_for(pts.size(), threads_, [&](std::size_t p) {
        Complex z = pts[p];
        Complex acc1 = 0.0, acc2 = 0.0;
        for (std::size_t j : active) {
            Complex k = proj_coef_[j] / (gm.nodes[j] - z);
            acc1 += k * g.first[j];
            acc2 += k * std::conj(g.second[j]);  // P₋ = conj ∘ P₊ ∘ conj
        }
        out1[p] = acc1;
        out2[p] = std::conj(acc2);
    });
}

TracePair LsOperators::atilde(const TracePair& traces) const {
    return apply_Atilde(params_, *jump_, meshes_->gamma, traces);
}

FieldPair LsOperators::apply_M(const FieldPair& v) const {
    const AreaMesh& a = meshes_->area;
    TracePair av = atilde(v.trace);

    // PÃv and DQ̃v on supp(q); the inner field g = PÃv − DQ̃v feeds DQ̃ once
    std::vector<Complex> pa1_sup, pa2_sup, pa1_tr, pa2_tr;
    pa_batch(av, sup_nodes_, pa1_sup, pa2_sup);
    pa_batch(av, trace_points_, pa1_tr, pa2_tr);
    std::vector<Complex> dq1_sup, dq2_sup;
    dq_batch(sup_nodes_, v, dq1_sup, dq2_sup);

    FieldPair g;
    g.first.assign(a.size(), 0.0);
    g.second.assign(a.size(), 0.0);
    for (std::size_t s = 0; s < sup_nodes_.size(); ++s) {
        std::size_t i = q_->support[s];
        g.first[i] = pa1_sup[s] - dq1_sup[s];
        g.second[i] = pa2_sup[s] - dq2_sup[s];
    }

    std::vector<Complex> t1_sup, t2_sup, t1_tr, t2_tr;
    dq_batch(sup_nodes_, g, t1_sup, t2_sup);
    dq_batch(trace_points_, g, t1_tr, t2_tr);

    FieldPair out;
    out.first.assign(a.size(), 0.0);
    out.second.assign(a.size(), 0.0);
    out.trace.first.resize(trace_points_.size());
    out.trace.second.resize(trace_points_.size());
    for (std::size_t s = 0; s < sup_nodes_.size(); ++s) {
        std::size_t i = q_->support[s];
        out.first[i] = pa1_sup[s] + t1_sup[s];
        out.second[i] = pa2_sup[s] + t2_sup[s];
    }
    for (std::size_t j = 0; j < trace_points_.size(); ++j) {
        out.trace.first[j] = pa1_tr[j] + t1_tr[j];
        out.trace.second[j] = pa2_tr[j] + t2_tr[j];
    }
    return out;
}

FieldPair LsOperators::apply_lhs(const FieldPair& mu) const {
    const AreaMesh& a = meshes_->area;
    TracePair am = atilde(mu.trace);
    std::vector<Complex> pa1_sup, pa2_sup, pa1_tr, pa2_tr;
    pa_batch(am, sup_nodes_, pa1_sup, pa2_sup);
    pa_batch(am, trace_points_, pa1_tr, pa2_tr);
    std::vector<Complex> dq1_sup, dq2_sup, dq1_tr, dq2_tr;
    dq_batch(sup_nodes_, mu, dq1_sup, dq2_sup);
    dq_batch(trace_points_, mu, dq1_tr, dq2_tr);

    FieldPair out;
    out.first.assign(a.size(), 0.0);
    out.second.assign(a.size(), 0.0);
    out.trace.first.resize(trace_points_.size());
    out.trace.second.resize(trace_points_.size());
    for (std::size_t s = 0; s < sup_nodes_.size(); ++s) {
        std::size_t i = q_->support[s];
        out.first[i] = mu.first[i] + pa1_sup[s] - dq1_sup[s];
        out.second[i] = mu.second[i] + pa2_sup[s] - dq2_sup[s];
    }
    for (std::size_t j = 0; j < trace_points_.size(); ++j) {
        out.trace.first[j] = mu.trace.first[j] + pa1_tr[j] - dq1_tr[j];
        out.trace.second[j] = mu.trace.second[j] + pa2_tr[j] - dq2_tr[j];
    }
    return out;
}

FieldPair LsOperators::apply_I_plus_DQ(const FieldPair& v) const {
    const AreaMesh& a = meshes_->area;
    std::vector<Complex> dq1_sup, dq2_sup, dq1_tr, dq2_tr;
    dq_batch(sup_nodes_, v, dq1_sup, dq2_sup);
    dq_batch(trace_points_, v, dq1_tr, dq2_tr);
    FieldPair out;
    out.first.assign(a.size(), 0.0);
    out.second.assign(a.size(), 0.0);
    out.trace.first.resize(trace_points_.size());
    out.trace.second.resize(trace_points_.size());
    for (std::size_t s = 0; s < sup_nodes_.size(); ++s) {
        std::size_t i = q_->support[s];
        out.first[i] = v.first[i] + dq1_sup[s];
        out.second[i] = v.second[i] + dq2_sup[s];
    }
    for (std::size_t j = 0; j < trace_points_.size(); ++j) {
        out.trace.first[j] = v.trace.first[j] + dq1_tr[j];
        out.trace.second[j] = v.trace.second[j] + dq2_tr[j];
    }
    return out;
}

void LsOperators::eval_representation(const std::vector<Complex>& pts, const FieldPair& mu,
                                      const std::vector<Complex>& incident_at_pts,
                                      std::vector<Complex>& out1, std::vector<Complex>& out2) const {
    TracePair am = atilde(mu.trace);
    std::vector<Complex> pa1, pa2, dq1, dq2;
    pa_batch(am, pts, pa1, pa2);
    dq_batch(pts, mu, dq1, dq2);
    out1.resize(pts.size());
    out2.resize(pts.size());
    for (std::size_t p = 0; p < pts.size(); ++p) {
        out1[p] = incident_at_pts[p] - pa1[p] + dq1[p];
        out2[p] = -pa2[p] + dq2[p];
    }
}

std::vector<Complex> LsOperators::flatten(const FieldPair& v) const {
    std::vector<Complex> x;
    x.reserve(flat_size());
    for (std::size_t i : q_->support) x.push_back(v.first[i]);
    for (std::size_t i : q_->support) x.push_back(v.second[i]);
    x.insert(x.end(), v.trace.first.begin(), v.trace.first.end());
    x.insert(x.end(), v.trace.second.begin(), v.trace.second.end());
    return x;
}

FieldPair LsOperators::unflatten(const std::vector<Complex>& x) const {
    const std::size_t ns = q_->support.size(), nt = trace_size();
    FieldPair v;
    v.first.assign(area_size(), 0.0);
    v.second.assign(area_size(), 0.0);
    for (std::size_t s = 0; s < ns; ++s) v.first[q_->support[s]] = x[s];
    for (std::size_t s = 0; s < ns; ++s) v.second[q_->support[s]] = x[ns + s];
    v.trace.first.assign(x.begin() + 2 * ns, x.begin() + 2 * ns + nt);
    v.trace.second.assign(x.begin() + 2 * ns + nt, x.end());
    return v;
}

FieldPair apply_M(const CgoParameters& params, const DiracPotential& q, const JumpTrace& jump,
                  const DomainMeshes& meshes, const FieldPair& v) {
    return LsOperators(params, q, jump, meshes).apply_M(v);
}

}  // namespace cgo
