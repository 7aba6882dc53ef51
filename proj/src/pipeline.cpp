#include "cgo/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "cgo/dtn.hpp"
#include "cgo/parallel.hpp"

namespace cgo {

namespace {

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ModelKind kind_from_string(const std::string& s) {
    if (s == "radial-two-layer") return ModelKind::RadialTwoLayer;
    if (s == "smooth-bump-with-jump" || s == "trivial") return ModelKind::SmoothBumpWithJump;
    throw InvalidInputError("unknown model kind: " + s);
}

ModelParams params_from_config(const RunConfig& c) {
    ModelParams p;
    if (c.model_kind == "trivial") {
        p.jump_inside = 1.0;
        p.bump_amplitude = 0.0;
        p.bump_radius = 0.1;
        p.bump_center = c.outer_center;
        return p;
    }
    p.jump_inside = c.model_jump;
    p.bump_amplitude = (c.model_kind == "radial-two-layer") ? Complex(0.0) : c.bump_amplitude;
    p.bump_center = c.bump_center;
    p.bump_radius = c.bump_radius;
    return p;
}

}  // namespace

PipelineContext make_context(const RunConfig& config, double lambda_max) {
    GeometryResolution res;
    res.gamma_nodes = config.gamma_nodes;
    res.boundary_nodes = config.boundary_nodes;
    res.area_radial = config.area_radial;
    res.area_angular = config.area_angular;

    RefinePatch patch;
    const bool has_bump = config.model_kind == "smooth-bump-with-jump" &&
                          config.bump_amplitude != Complex(0.0);
    if (has_bump) {
        patch.center = config.bump_center;
        patch.radius = config.bump_radius;
        // background-equivalent cell size unless λ forces finer
        patch.target_h = config.outer_radius / config.area_radial;
    }
    if (lambda_max > 0.0 && config.auto_refine) {
        // phase advance ≤ phase_step per cell at |λ| = lambda_max, on the
        // cells that carry the potential and on Γ
        if (has_bump) {
            double reach = std::abs(config.bump_center - config.w) + config.bump_radius;
            double h = config.phase_step / (lambda_max * reach);
            patch.target_h = std::min(patch.target_h, h);
            double est = kPi * patch.radius * patch.radius / (patch.target_h * patch.target_h);
            const double budget = 60000.0;
            if (est > budget)
                throw OscillationGuardError(
                    "ladder exceeds the mesh budget: |lambda| up to " + std::to_string(lambda_max) +
                    " needs about " + std::to_string(static_cast<long>(est)) +
                    " cells on supp q (budget " + std::to_string(static_cast<long>(budget)) +
                    "); shrink the annulus or raise mesh.phase_step");
        }
        double gamma_reach = std::abs(config.w - config.jump_center) + config.jump_radius;
        int gnodes = static_cast<int>(
            std::ceil(2.0 * kPi * config.jump_radius * lambda_max * gamma_reach / config.phase_step));
        res.gamma_nodes = std::max(config.gamma_nodes, gnodes);
    }

    PipelineContext ctx;
    ctx.meshes = make_disk_geometry(config.outer_center, config.outer_radius, config.jump_center,
                                    config.jump_radius, res, patch);
    ctx.model = make_model(kind_from_string(config.model_kind), ctx.meshes.geometry,
                           params_from_config(config));
    ctx.jump = jump_alpha(ctx.model, ctx.meshes.gamma);
    ctx.potential = dirac_potential(ctx.model, ctx.meshes.area, ctx.meshes.gamma);
    return ctx;
}

SampleResult run_sample(const PipelineContext& ctx, const CgoParameters& params,
                        const SolveOptions& opts) {
    SampleResult sr;
    CgoSolution sol = solve_mu(params, ctx.potential, ctx.jump, ctx.meshes, opts);
    sr.residual = sol.residual;
    sr.contraction = sol.contraction;
    sr.status = sol.status;
    if (sol.status != SolveStatus::Ok) {
        sr.boundary = {params.lambda, 0.0, ScatteringForm::Boundary};
        sr.interior = {params.lambda, 0.0, ScatteringForm::Interior};
        return sr;
    }
    sr.boundary = scattering_boundary(sol, ctx.meshes);
    sr.interior = scattering_interior(sol, ctx.potential, ctx.jump, ctx.meshes);
    return sr;
}

namespace {

void write_text(const std::string& path, const std::string& body,
                std::vector<std::string>& written) {
    std::ofstream out(path);
    out << body;
    written.push_back(path);
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& config) {
    PipelineResult result;
    namespace fs = std::filesystem;
    try {
        fs::create_directories(config.out_dir);
        unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();

        // admissibility certificate (or override)
        PipelineContext probe_ctx = make_context(config);
        if (config.auto_lambda) {
            auto cert = find_admissible(config.w, probe_ctx.meshes);
            if (!cert) {
                result.status = PipelineStatus::InfeasiblePoint;
                result.message = "no admissible direction found for w";
                return result;
            }
            result.certificate = *cert;
        } else {
            auto [A, B] = eval_AB(config.w, config.lambda_O, probe_ctx.meshes.boundary,
                                  probe_ctx.meshes.gamma);
            AdmissibleCertificate cert;
            cert.w = config.w;
            cert.lambda_O = config.lambda_O;
            cert.A = A;
            cert.B = B;
            cert.eps1 = 0.5 - A;
            cert.eps2 = -0.5 - B;
            cert.proper = certify_proper(cert);
            if (A >= 0.5 - kAdmissibleTol || B >= -0.5 - kAdmissibleTol) {
                result.status = PipelineStatus::InfeasiblePoint;
                result.message = "configured lambda_O is not admissible at w";
                return result;
            }
            result.certificate = cert;
        }
        const AdmissibleCertificate& cert = *result.certificate;

        nlohmann::json cert_json = {
            {"w", {cert.w.real(), cert.w.imag()}},
            {"lambda_O", {cert.lambda_O.real(), cert.lambda_O.imag()}},
            {"A", cert.A},
            {"B", cert.B},
            {"eps1", cert.eps1},
            {"eps2", cert.eps2},
            {"proper", cert.proper},
        };
        write_text(config.out_dir + "/certificate.json", cert_json.dump(2) + "\n",
                   result.files_written);

        // reconstruction ladder
        Complex q21_true = -0.5 * probe_ctx.model.dbar_log(config.w);
        std::string recon_csv = "R,re_q21_hat,im_q21_hat,re_q21_true,im_q21_true,abs_error\n";
        nlohmann::json rungs_json = nlohmann::json::array();

        for (int rung = 0; rung < config.ladder_rungs; ++rung) {
            double R = config.annulus_r * std::pow(2.0, rung);
            PipelineContext ctx = make_context(config, 2.0 * R);
            // oscillation cap over the phase-carrying nodes: supp(q) and Γ
            double worst = 0.0;
            for (std::size_t i : ctx.potential.support)
                worst = std::max(worst, std::abs(ctx.meshes.area.nodes[i] - config.w) *
                                            ctx.meshes.area.spacing[i]);
            for (std::size_t j = 0; j < ctx.meshes.gamma.size(); ++j)
                worst = std::max(worst, std::abs(ctx.meshes.gamma.nodes[j] - config.w) *
                                            ctx.meshes.gamma.weights[j]);
            double cap = worst > 0.0 ? 0.25 * kPi / worst : 1e300;
            if (cap < 2.0 * R) {
                result.status = PipelineStatus::OscillationGuard;
                result.message = "annulus rung R=" + std::to_string(R) +
                                 " exceeds the mesh oscillation cap |lambda| <= " + std::to_string(cap);
                return result;
            }

            std::vector<AnnulusSample> grid = annulus_grid(R, config.n_radial, config.n_angular);
            std::vector<SampleResult> samples(grid.size());
            SolveOptions opts;
            opts.method = config.method == "dense" ? SolveMethod::Dense : SolveMethod::Iterative;
            opts.tol = config.tol;
            opts.max_iter = config.max_iter;
            opts.r_cut = config.r_cut;
            opts.threads = 1;  // parallelism lives across λ samples
            opts.fill_field = false;
            std::atomic<bool> failed{false};
            parallel_for(grid.size(), threads, [&](std::size_t i) {
                CgoParameters p{grid[i].lambda, config.w, cert.lambda_O};
                samples[i] = run_sample(ctx, p, opts);
                if (samples[i].status != SolveStatus::Ok) failed = true;
            });
            if (failed) {
                result.status = PipelineStatus::SolverFailure;
                result.message = "solver failed to converge on at least one annulus sample";
                return result;
            }

            std::vector<ScatteringSample> h_samples(grid.size());
            std::string sample_csv = "re_lambda,im_lambda,re_h,im_h\n";
            double rung_contraction = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                h_samples[i] = samples[i].boundary;
                double denom = std::max(std::abs(samples[i].boundary.h), 1e-30);
                result.green_max_rel = std::max(
                    result.green_max_rel,
                    std::abs(samples[i].boundary.h - samples[i].interior.h) / denom);
                rung_contraction = std::max(rung_contraction, samples[i].contraction);
                sample_csv += g17(h_samples[i].lambda.real()) + "," + g17(h_samples[i].lambda.imag()) +
                              "," + g17(h_samples[i].h.real()) + "," + g17(h_samples[i].h.imag()) + "\n";
            }
            char rtag[32];
            std::snprintf(rtag, sizeof(rtag), "R%g", R);
            write_text(config.out_dir + "/samples_" + rtag + ".csv", sample_csv,
                       result.files_written);

            ReconstructionConfig rc;
            rc.R = R;
            rc.n_radial = config.n_radial;
            rc.n_angular = config.n_angular;
            CgoParameters rp{Complex(R, 0.0), config.w, cert.lambda_O};
            Complex q_hat = reconstruct_q21(h_samples, rp, rc);

            LadderRow row{R, q_hat, q21_true, std::abs(q_hat - q21_true)};
            result.ladder.push_back(row);
            recon_csv += g17(R) + "," + g17(q_hat.real()) + "," + g17(q_hat.imag()) + "," +
                         g17(q21_true.real()) + "," + g17(q21_true.imag()) + "," +
                         g17(row.abs_error) + "\n";
            rungs_json.push_back({{"R", R},
                                  {"q21_hat", {q_hat.real(), q_hat.imag()}},
                                  {"q21_true", {q21_true.real(), q21_true.imag()}},
                                  {"abs_error", row.abs_error},
                                  {"max_contraction", rung_contraction}});

            if (config.dump_fields) {
                // μ field of the first sample of the rung
                CgoParameters p{grid[0].lambda, config.w, cert.lambda_O};
                SolveOptions field_opts = opts;
                field_opts.fill_field = true;
                field_opts.threads = threads;
                CgoSolution sol = solve_mu(p, ctx.potential, ctx.jump, ctx.meshes, field_opts);
                std::string field_csv = "x,y,re_mu1,im_mu1,re_mu2,im_mu2\n";
                for (std::size_t i = 0; i < ctx.meshes.area.size(); ++i) {
                    Complex z = ctx.meshes.area.nodes[i];
                    field_csv += g17(z.real()) + "," + g17(z.imag()) + "," +
                                 g17(sol.mu.first[i].real()) + "," + g17(sol.mu.first[i].imag()) +
                                 "," + g17(sol.mu.second[i].real()) + "," +
                                 g17(sol.mu.second[i].imag()) + "\n";
                }
                write_text(config.out_dir + "/mu_field_" + rtag + ".csv", field_csv,
                           result.files_written);
            }
        }
        write_text(config.out_dir + "/reconstruction.csv", recon_csv, result.files_written);

        nlohmann::json report = {
            {"status", "ok"},
            {"green_consistency_max_rel", result.green_max_rel},
            {"certificate", cert_json},
            {"ladder", rungs_json},
            {"config", serialize_config(config)},
        };
        write_text(config.out_dir + "/run_report.json", report.dump(2) + "\n",
                   result.files_written);
        result.status = PipelineStatus::Ok;
        return result;
    } catch (const OscillationGuardError& e) {
        result.status = PipelineStatus::OscillationGuard;
        result.message = e.what();
        return result;
    } catch (const InvalidInputError& e) {
        result.status = PipelineStatus::ConfigError;
        result.message = e.what();
        return result;
    }
}

namespace {

void push_item(SelftestReport& rep, const std::string& name, double measured, double threshold,
               const std::string& note = "") {
    SelftestItem it;
    it.name = name;
    it.measured = measured;
    it.threshold = threshold;
    it.pass = measured <= threshold;
    it.note = note;
    rep.items.push_back(it);
}

}  // namespace

SelftestReport selftest(const SelftestOptions& options) {
    SelftestReport rep;
    Rng rng(20240817);
    double scale = options.resolution_scale;

    GeometryResolution res;
    res.area_radial = std::max(12, static_cast<int>(48 * scale));
    res.area_angular = std::max(48, static_cast<int>(192 * scale));
    res.gamma_nodes = 128;
    res.boundary_nodes = 128;
    DomainMeshes dm = make_disk_geometry(0.0, 1.0, Complex(-0.5, 0.0), 0.2, res);

    // solid Cauchy of the indicator of O (= unit disk): z̄ inside, 1/z outside
    {
        std::vector<Complex> one(dm.area.size(), 1.0);
        double worst_in = 0.0, worst_out = 0.0;
        for (int k = 0; k < 50; ++k) {
            Complex z = rng.complex_in_disk(0.0, 0.95);
            worst_in = std::max(worst_in, std::abs(solid_cauchy(dm.area, one, z) - std::conj(z)));
        }
        for (int k = 0; k < 20; ++k) {
            Complex z = rng.complex_in_disk(0.0, 1.0) + Complex(2.5, 0.0);
            worst_out = std::max(worst_out, std::abs(solid_cauchy(dm.area, one, z) - 1.0 / z));
        }
        push_item(rep, "solid-cauchy-interior", worst_in, 2e-3);
        push_item(rep, "solid-cauchy-exterior", worst_out, 2e-3);

        // conjugation identity
        std::vector<Complex> f(dm.area.size()), fc(dm.area.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            f[i] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
            fc[i] = std::conj(f[i]);
        }
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) {
            Complex z = rng.complex_in_disk(0.0, 1.2);
            worst = std::max(worst, std::abs(solid_cauchy_conj(dm.area, f, z) -
                                             std::conj(solid_cauchy(dm.area, fc, z))));
        }
        push_item(rep, "solid-cauchy-conjugation", worst, 1e-12);
    }

    // Cauchy projector reproduces z^n / conj(z)^n
    {
        ContourMesh circle = make_circle_contour(0.0, 1.0, 256);
        double worst_p = 0.0, worst_m = 0.0;
        for (int n = 0; n <= 8; ++n) {
            std::vector<Complex> zn(circle.size()), znb(circle.size());
            for (std::size_t j = 0; j < circle.size(); ++j) {
                zn[j] = std::pow(circle.nodes[j], n);
                znb[j] = std::conj(zn[j]);
            }
            for (int k = 0; k < 20; ++k) {
                Complex z = rng.complex_in_disk(0.0, 0.8);
                Complex got = cauchy_projector(circle, zn, z, ProjectorVariant::Plus).value;
                worst_p = std::max(worst_p, std::abs(got - std::pow(z, n)));
                Complex gotm = cauchy_projector(circle, znb, z, ProjectorVariant::Minus).value;
                worst_m = std::max(worst_m, std::abs(gotm - std::conj(std::pow(z, n))));
            }
        }
        push_item(rep, "projector-holomorphic", worst_p, 1e-10);
        push_item(rep, "projector-adjoint", worst_m, 1e-10);

        // idempotence of the curve restriction (deliberate-fault hook here)
        std::vector<Complex> g(circle.size());
        for (std::size_t j = 0; j < circle.size(); ++j) {
            Complex z = circle.nodes[j];
            g[j] = std::exp(0.7 * z) + 0.4 * std::conj(z) * std::conj(z) +
                   Complex(0.0, 0.3) / (z - Complex(1.6, 0.4));
        }
        ContourMesh curve = circle;
        if (options.corrupt_projector_sign)
            for (auto& t : curve.tangents) t = -t;  // mutation: flips the projector sign
        std::vector<Complex> once = project_to_curve(curve, g, ProjectorVariant::Plus);
        std::vector<Complex> twice = project_to_curve(curve, once, ProjectorVariant::Plus);
        double worst = 0.0;
        for (std::size_t j = 0; j < circle.size(); ++j)
            worst = std::max(worst, std::abs(twice[j] - once[j]));
        push_item(rep, "projector-idempotence", worst, 1e-6);
    }

    // winding number and orientation
    {
        double worst = std::abs(winding_number(dm.gamma, Complex(-0.5, 0.05)) - 1.0);
        ContourMesh neg = orient(dm.gamma, Orientation::Negative);
        worst = std::max(worst, std::abs(winding_number(neg, Complex(-0.5, 0.05)) + 1.0));
        push_item(rep, "winding-number", worst, 1e-8);
    }

    // transmission matrix: zero at α = 1, factored product on random pairs
    {
        Mat2 z = transmission_matrix(1.0, rng.unit_complex());
        double worst = std::abs(z.a11) + std::abs(z.a12) + std::abs(z.a21) + std::abs(z.a22);
        for (int k = 0; k < 1000; ++k) {
            Complex alpha = Complex(1.0, 0.0) + 0.8 * rng.complex_in_disk(0.0, 1.0);
            Complex nu = rng.unit_complex();
            Mat2 got = transmission_matrix(alpha, nu);
            // the proof's factorization
            Complex f11 = (alpha - 1.0) * std::conj(nu), f12 = (1.0 / alpha - 1.0) * (-kI) * std::conj(nu);
            Complex f21 = (alpha - 1.0) * nu, f22 = (1.0 / alpha - 1.0) * kI * nu;
            Complex s11 = nu, s12 = std::conj(nu), s21 = kI * nu, s22 = -kI * std::conj(nu);
            Complex e11 = 0.5 * (f11 * s11 + f12 * s21), e12 = 0.5 * (f11 * s12 + f12 * s22);
            Complex e21 = 0.5 * (f21 * s11 + f22 * s21), e22 = 0.5 * (f21 * s12 + f22 * s22);
            worst = std::max({worst, std::abs(got.a11 - e11), std::abs(got.a12 - e12),
                              std::abs(got.a21 - e21), std::abs(got.a22 - e22)});
        }
        push_item(rep, "transmission-factored", worst, 1e-12);
    }

    // annulus identity
    {
        double worst = 0.0;
        for (double R : {1.0, 3.0, 17.5})
            worst = std::max(worst, std::abs(annulus_inv_square_integral(R, 64, 64) -
                                             2.0 * kPi * std::log(2.0)));
        push_item(rep, "annulus-identity", worst, 1e-10);
    }

    // DtN oracle
    {
        double worst = 0.0;
        for (int n = -32; n <= 32; ++n)
            worst = std::max(worst, std::abs(radial_dtn(1.0, 1.0, 0.5, 1.0, n) -
                                             Complex(std::abs(n), 0.0)));
        push_item(rep, "dtn-identity", worst, 0.0);

        ContourMesh bd = make_circle_contour(0.0, 1.0, 128);
        DtnOperator op = make_radial_dtn_operator(Complex(2.0, 0.7), 1.0, 0.5, 1.0, 64);
        double worst_rel = 0.0;
        for (int n : {1, 2, 5, 9}) {
            BoundaryTracePair tp = radial_mode_traces(Complex(2.0, 0.7), 1.0, 0.5, bd, n);
            worst_rel = std::max(worst_rel, boundary_relation_residual(tp, op, bd).residual);
        }
        // γ ≡ 1, u = x: φ = (1/2, 1/2)
        DtnOperator id_op = make_radial_dtn_operator(1.0, 1.0, 0.5, 1.0, 64);
        BoundaryTracePair ux;
        ux.h1.assign(bd.size(), 0.5);
        ux.h2.assign(bd.size(), 0.5);
        double ux_res = boundary_relation_residual(ux, id_op, bd).residual;
        push_item(rep, "dtn-boundary-relation-modes", worst_rel, 1e-6);
        push_item(rep, "dtn-boundary-relation-ux", ux_res, 1e-10);

        BoundaryTracePair random_pair;
        random_pair.h1.resize(bd.size());
        random_pair.h2.resize(bd.size());
        for (std::size_t j = 0; j < bd.size(); ++j) {
            random_pair.h1[j] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
            random_pair.h2[j] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
        }
        double rnd = boundary_relation_residual(random_pair, id_op, bd).residual;
        push_item(rep, "dtn-nonsolution-detected", rnd > 0.1 ? 0.0 : 1.0, 0.5,
                  "residual " + std::to_string(rnd));
    }

    // Green consistency on a seeded small-jump model (coarse)
    {
        RunConfig cfg;
        cfg.model_jump = {1.04, 0.02};
        cfg.bump_amplitude = {0.1, 0.05};
        cfg.area_radial = std::max(20, static_cast<int>(32 * scale));
        cfg.area_angular = std::max(80, static_cast<int>(128 * scale));
        cfg.auto_refine = false;
        PipelineContext ctx = make_context(cfg);
        SolveOptions opts;
        opts.threads = options.threads ? options.threads : 2;
        double worst = 0.0;
        for (double ang : {0.3, 2.1}) {
            CgoParameters p{2.5 * Complex(std::cos(ang), std::sin(ang)), cfg.w, Complex(-0.6, 0.0)};
            SampleResult sr = run_sample(ctx, p, opts);
            if (sr.status != SolveStatus::Ok) {
                worst = 1.0;
                break;
            }
            worst = std::max(worst, std::abs(sr.boundary.h - sr.interior.h) /
                                        std::max(1e-30, std::abs(sr.boundary.h)));
        }
        push_item(rep, "green-consistency-coarse", worst, 1e-2);
    }

    return rep;
}

}  // namespace cgo
