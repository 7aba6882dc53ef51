#include "cgo/cgo_solver.hpp"

#include <algorithm>
#include <cmath>

#include "cgo/linalg.hpp"

namespace cgo {

Complex cgo_incident(const CgoParameters& params, Complex z) {
    Complex d = z - params.w;
    return std::exp(std::log(std::abs(params.lambda)) * params.lambda_O * d * d);
}

namespace {

double vec_sup(const std::vector<Complex>& v) { return sup_norm(v); }

double vec_sup_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

FieldPair incident_field(const LsOperators& ops) {
    const AreaMesh& a = ops.meshes().area;
    FieldPair u;
    u.first.assign(a.size(), 0.0);
    u.second.assign(a.size(), 0.0);
    u.trace.first.resize(ops.trace_size());
    u.trace.second.assign(ops.trace_size(), 0.0);
    for (std::size_t i : ops.support()) u.first[i] = cgo_incident(ops.params(), a.nodes[i]);
    for (std::size_t j = 0; j < ops.trace_size(); ++j)
        u.trace.first[j] = cgo_incident(ops.params(), ops.trace_points()[j]);
    return u;
}

// oscillation guard over the nodes where the phase factors are actually
// evaluated: supp(q) cells, plus the Γ nodes when the jump is active
void guard_sources(const CgoParameters& p, const DiracPotential& q, const JumpTrace& jump,
                   const DomainMeshes& meshes) {
    double worst = 0.0;
    const AreaMesh& a = meshes.area;
    for (std::size_t i : q.support)
        worst = std::max(worst,
                         std::abs(p.lambda) * std::abs(a.nodes[i] - p.w) * a.spacing[i]);
    if (jump.deviation > 0.0) {
        const ContourMesh& g = meshes.gamma;
        for (std::size_t j = 0; j < g.size(); ++j)
            worst = std::max(worst,
                             std::abs(p.lambda) * std::abs(g.nodes[j] - p.w) * g.weights[j]);
    }
    if (worst > 0.25 * kPi)
        throw OscillationGuardError(
            "oscillation guard: phase advances " + std::to_string(worst) +
            " rad between adjacent source nodes (limit pi/4); refine the mesh or lower |lambda|");
}

double residual_of(const LsOperators& ops, const FieldPair& mu, const std::vector<Complex>& rhs_flat) {
    return vec_sup_diff(ops.flatten(ops.apply_lhs(mu)), rhs_flat);
}

void finalize(CgoSolution& sol, const LsOperators& ops, const std::vector<Complex>& b_flat,
              bool fill_field) {
    sol.correction_f = ops.unflatten([&] {
        std::vector<Complex> f = ops.flatten(sol.mu);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] -= b_flat[i];
        return f;
    }());

    const ContourMesh& bd = ops.meshes().boundary;
    std::vector<Complex> u_bd(bd.size());
    for (std::size_t j = 0; j < bd.size(); ++j) u_bd[j] = cgo_incident(ops.params(), bd.nodes[j]);
    ops.eval_representation(bd.nodes, sol.mu, u_bd, sol.boundary_mu1, sol.boundary_mu2);

    if (fill_field) {
        const AreaMesh& a = ops.meshes().area;
        std::vector<Complex> u_area(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) u_area[i] = cgo_incident(ops.params(), a.nodes[i]);
        std::vector<Complex> f1, f2;
        ops.eval_representation(a.nodes, sol.mu, u_area, f1, f2);
        // keep the solved values on the collocation set itself
        for (std::size_t i : ops.support()) {
            f1[i] = sol.mu.first[i];
            f2[i] = sol.mu.second[i];
        }
        sol.mu.first = std::move(f1);
        sol.mu.second = std::move(f2);
    }
}

CgoSolution solve_dense(const LsOperators& ops, const std::vector<Complex>& rhs_flat,
                        const std::vector<Complex>& b_flat, const SolveOptions& opts) {
    CgoSolution sol;
    sol.params = ops.params();
    sol.used_dense = true;
    const std::size_t n = ops.flat_size();
    if (n > opts.dense_limit)
        throw InvalidInputError("solve_mu: dense system of " + std::to_string(n) +
                                " unknowns exceeds the dense limit");
    std::vector<Complex> A(n * n);
    std::vector<Complex> e(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        e[k] = 1.0;
        std::vector<Complex> col = ops.flatten(ops.apply_lhs(ops.unflatten(e)));
        for (std::size_t i = 0; i < n; ++i) A[i * n + k] = col[i];
        e[k] = 0.0;
    }
    std::vector<Complex> x = rhs_flat;
    if (!lu_solve(A, n, x)) {
        sol.status = SolveStatus::SingularSystem;
        return sol;
    }
    sol.mu = ops.unflatten(x);
    sol.residual = residual_of(ops, sol.mu, rhs_flat);
    finalize(sol, ops, b_flat, opts.fill_field);
    sol.status = SolveStatus::Ok;
    return sol;
}

}  // namespace

CgoSolution solve_mu(const CgoParameters& params, const DiracPotential& q,
                     const JumpTrace& jump, const DomainMeshes& meshes,
                     const SolveOptions& opts) {
    if (std::abs(params.lambda) <= opts.r_cut)
        throw InvalidInputError("solve_mu: |lambda| must exceed the configured R_cut");
    guard_sources(params, q, jump, meshes);

    LsOperators ops(params, q, jump, meshes, opts.threads);
    FieldPair rhs0 = incident_field(ops);
    std::vector<Complex> rhs_flat = ops.flatten(rhs0);
    std::vector<Complex> b_flat = ops.flatten(ops.apply_I_plus_DQ(rhs0));

    if (opts.method == SolveMethod::Dense) return solve_dense(ops, rhs_flat, b_flat, opts);

    const double scale = std::max(1.0, vec_sup(rhs_flat));
    // Neumann iteration on (I+M)f = −M b:  f ← −M(b + f)
    auto apply_m_flat = [&](const std::vector<Complex>& x) {
        return ops.flatten(ops.apply_M(ops.unflatten(x)));
    };
    std::vector<Complex> f = apply_m_flat(b_flat);
    for (auto& v : f) v = -v;

    CgoSolution sol;
    sol.params = params;
    double first_delta = 0.0, last_delta = 0.0;
    int ratio_steps = 0;
    double prev_delta = 1e300;
    int grew = 0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        std::vector<Complex> arg(b_flat.size());
        for (std::size_t i = 0; i < arg.size(); ++i) arg[i] = b_flat[i] + f[i];
        std::vector<Complex> next = apply_m_flat(arg);
        for (auto& v : next) v = -v;
        double delta = vec_sup_diff(next, f);
        f = std::move(next);
        sol.iterations = it;
        if (delta > 0.0) {
            if (first_delta == 0.0) first_delta = delta;
            last_delta = delta;
            ratio_steps = it;
        }
        if (ratio_steps > 1 && first_delta > 0.0)
            sol.contraction = std::pow(last_delta / first_delta, 1.0 / (ratio_steps - 1));
        if (delta > prev_delta * 1.02) {
            if (++grew >= 4) break;  // divergent Neumann series
        } else {
            grew = 0;
        }
        prev_delta = delta;
        if (delta <= 0.2 * opts.tol * scale || it == opts.max_iter) {
            std::vector<Complex> mu_flat(b_flat.size());
            for (std::size_t i = 0; i < mu_flat.size(); ++i) mu_flat[i] = b_flat[i] + f[i];
            sol.mu = ops.unflatten(mu_flat);
            sol.residual = residual_of(ops, sol.mu, rhs_flat);
            if (sol.residual <= opts.tol) {
                finalize(sol, ops, b_flat, opts.fill_field);
                sol.status = SolveStatus::Ok;
                return sol;
            }
        }
    }
    {
        std::vector<Complex> mu_flat(b_flat.size());
        for (std::size_t i = 0; i < mu_flat.size(); ++i) mu_flat[i] = b_flat[i] + f[i];
        sol.mu = ops.unflatten(mu_flat);
    }
    sol.residual = residual_of(ops, sol.mu, rhs_flat);
    if (opts.dense_fallback && ops.flat_size() <= opts.dense_limit) {
        CgoSolution dense = solve_dense(ops, rhs_flat, b_flat, opts);
        dense.iterations = sol.iterations;
        return dense;
    }
    finalize(sol, ops, b_flat, opts.fill_field);
    sol.status = SolveStatus::NoConvergence;
    return sol;
}

FieldPair normalize_phi(const CgoSolution& solution, const AreaMesh& mesh) {
    const CgoParameters& p = solution.params;
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        Complex d = mesh.nodes[i] - p.w;
        if (std::real(p.lambda * d * d) * 0.25 > 700.0)
            throw InvalidInputError("normalize_phi: exponential overflow at a mesh node");
    }
    FieldPair phi;
    phi.first.resize(mesh.size());
    phi.second.resize(mesh.size());
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        Complex d = mesh.nodes[i] - p.w;
        Complex e = p.lambda * d * d * 0.25;
        phi.first[i] = solution.mu.first[i] * std::exp(e);
        phi.second[i] = solution.mu.second[i] * std::exp(std::conj(e));
    }
    return phi;
}

double estimate_contraction(const CgoParameters& params, const DiracPotential& q,
                            const JumpTrace& jump, const DomainMeshes& meshes,
                            unsigned threads, int iterations) {
    LsOperators ops(params, q, jump, meshes, threads);
    FieldPair rhs0 = incident_field(ops);
    std::vector<Complex> x = ops.flatten(ops.apply_I_plus_DQ(rhs0));
    double prev = sup_norm(x);
    if (prev == 0.0) return 0.0;
    double log_acc = 0.0;
    for (int it = 0; it < iterations; ++it) {
        for (auto& v : x) v /= prev;  // scale free; dodges under/overflow
        std::vector<Complex> y = ops.flatten(ops.apply_M(ops.unflatten(x)));
        double n = sup_norm(y);
        if (n == 0.0) return 0.0;
        log_acc += std::log(n);
        prev = n;
        x = std::move(y);
    }
    return std::exp(log_acc / iterations);
}

}  // namespace cgo
