#include "cgo/probes.hpp"

#include <algorithm>
#include <cmath>

#include "cgo/operators.hpp"

namespace cgo {

namespace {

double bump01(double t) {
    // C∞ profile on [0,1], 1 at t=0, 0 at t=1
    if (t >= 1.0) return 0.0;
    return std::exp(-t / (1.0 - t));
}

std::string res_string(int a, int b, double truncation) {
    return std::to_string(a) + "x" + std::to_string(b) + "@" + std::to_string(truncation);
}

}  // namespace

ProbeReport laplace_hy_ratio(const std::function<Complex(double, double)>& f,
                             const RectSupport& s, double p, const LaplaceProbeGrid& grid,
                             std::uint64_t family_id) {
    if (p < 2.0) throw InvalidInputError("laplace_hy_ratio: dual pairing needs p >= 2");
    double q = p / (p - 1.0);
    const int n = grid.n_xy;
    const double dx = (s.x1 - s.x0) / n, dy = (s.y1 - s.y0) / n;

    std::vector<double> xs(n), ys(n);
    std::vector<Complex> fv(static_cast<std::size_t>(n) * n);
    double norm_q_acc = 0.0;
    for (int i = 0; i < n; ++i) xs[i] = s.x0 + (i + 0.5) * dx;
    for (int j = 0; j < n; ++j) ys[j] = s.y0 + (j + 0.5) * dy;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex v = f(xs[i], ys[j]);
            fv[static_cast<std::size_t>(i) * n + j] = v;
            norm_q_acc += std::pow(std::abs(v), q) * dx * dy;
        }
    double norm_q = std::pow(norm_q_acc, 1.0 / q);
    if (norm_q == 0.0) throw InvalidInputError("laplace_hy_ratio: zero input");

    // separable kernel: partial transform in x first
    const int nl = grid.n_lambda;
    const double dl1 = grid.lambda_max / nl;
    const double l2_min = 1.0;
    const double dl2 = (grid.lambda_max - l2_min) / nl;
    std::vector<Complex> ax(static_cast<std::size_t>(nl) * n);  // A(λ1; y_j)
    for (int a = 0; a < nl; ++a) {
        double l1 = (a + 0.5) * dl1;
        for (int j = 0; j < n; ++j) {
            Complex acc = 0.0;
            for (int i = 0; i < n; ++i) {
                double ph = -l1 * xs[i];
                acc += fv[static_cast<std::size_t>(i) * n + j] * Complex(std::cos(ph), std::sin(ph));
            }
            ax[static_cast<std::size_t>(a) * n + j] = acc * dx;
        }
    }
    double lp_acc = 0.0;
    for (int b = 0; b < nl; ++b) {
        double l2 = l2_min + (b + 0.5) * dl2;
        double lnl2 = std::log(l2);
        for (int a = 0; a < nl; ++a) {
            Complex acc = 0.0;
            for (int j = 0; j < n; ++j) {
                double ph = -l2 * ys[j];
                double damp = std::exp(-lnl2 * ys[j]);
                acc += ax[static_cast<std::size_t>(a) * n + j] * damp *
                       Complex(std::cos(ph), std::sin(ph));
            }
            acc *= dy;
            lp_acc += std::pow(std::abs(acc), p) * dl1 * dl2;
        }
    }
    double norm_p = std::pow(lp_acc, 1.0 / p);

    ProbeReport r;
    r.probe_id = "laplace-hy";
    r.p = p;
    r.q = q;
    r.ratio = norm_p / norm_q;
    r.resolution = res_string(n, nl, grid.lambda_max);
    r.seed = family_id;
    return r;
}

ProbeReport kernel_norm_estimate(Complex a, double p, double R_dom, double delta,
                                 int resolution) {
    if (a == 0.0) throw InvalidInputError("kernel_norm_estimate: a must be nonzero");
    if (p < 1.0 || p >= 2.0) throw InvalidInputError("kernel_norm_estimate: need 1 <= p < 2");
    // substitute u = v² with the branch-symmetric root (the change of
    // variables carries both roots ±√u, matching the ± sum of the
    // transformed integral): ∫|u(√u−a)|^{−p} dσ_u =
    // 2∫_{|v|<√R} |v|^{2−2p}·min_±|±v−a|^{−p} dσ_v. The radial power is
    // integrated exactly per cell, the |v∓a| singularity by an equal-area
    // disk mean on its own cell.
    const double vr = std::sqrt(R_dom);
    const int n_rad = resolution, n_ang = 4 * resolution;
    const double dr = vr / n_rad;
    const double dth = 2.0 * kPi / n_ang;
    double acc = 0.0;
    const double rad_pow = 4.0 - 2.0 * p;  // ∫ r^{2−2p} r dr = ∫ r^{3−2p} dr
    for (int i = 0; i < n_rad; ++i) {
        double ra = i * dr, rb = ra + dr;
        double rint = (std::pow(rb, rad_pow) - std::pow(ra, rad_pow)) / rad_pow;
        double rm = 0.5 * (ra + rb);
        for (int j = 0; j < n_ang; ++j) {
            double th = -kPi + (j + 0.5) * dth;
            Complex v = rm * Complex(std::cos(th), std::sin(th));
            double w_cell = 0.5 * (rb * rb - ra * ra) * dth;
            double dist2 = std::min(std::norm(v - a), std::norm(v + a));
            double sing;
            double a_eq2 = w_cell / kPi;
            if (dist2 <= a_eq2) {
                // mean of the singular factor over the equal-area disk
                sing = (2.0 * kPi / (2.0 - p)) * std::pow(std::sqrt(a_eq2), 2.0 - p) / w_cell;
            } else {
                sing = std::pow(dist2, -0.5 * p);
            }
            acc += 2.0 * rint * dth * sing;  // radial power exact, angular midpoint
        }
    }
    double norm_p = std::pow(acc, 1.0 / p);
    ProbeReport r;
    r.probe_id = "kernel-norm";
    r.p = p;
    r.q = p / (p - 1.0);
    r.ratio = norm_p / (1.0 + std::pow(std::abs(a), -1.0 + delta));
    r.resolution = res_string(n_rad, n_ang, R_dom);
    r.seed = 0;
    return r;
}

ProbeReport oscillatory_kernel_probe(const std::function<Complex(Complex)>& phi,
                              const SupportDisk& support, Complex z1, Complex w,
                              Complex lambda0, double p, double delta,
                              const OscKernelGrid& grid, std::uint64_t family_id) {
    if (z1 == w) throw InvalidInputError("oscillatory_kernel_probe: z1 must differ from w");
    if (p <= 2.0) throw InvalidInputError("oscillatory_kernel_probe: needs p > 2");

    // polar mesh over supp φ reused as an AreaMesh for the z-integral
    AreaMesh zmesh;
    append_polar_disk(zmesh, support.center, support.radius, support.radius / grid.n_z,
                      RegionTag::OutsideD);
    std::vector<Complex> phi_v(zmesh.size());
    double phi_sup = 0.0;
    double A0 = -1e300;
    for (std::size_t i = 0; i < zmesh.size(); ++i) {
        phi_v[i] = phi(zmesh.nodes[i]);
        phi_sup = std::max(phi_sup, std::abs(phi_v[i]));
        Complex d = zmesh.nodes[i] - w;
        A0 = std::max(A0, std::real(lambda0 * d * d));
    }
    if (phi_sup == 0.0) {
        ProbeReport zero;
        zero.probe_id = "oscillatory-kernel";
        zero.p = p;
        zero.q = p / (p - 1.0);
        zero.ratio = 0.0;
        zero.resolution = res_string(grid.n_z, grid.n_lambda_rad, grid.lambda_max);
        zero.seed = family_id;
        return zero;
    }

    // L^p over the truncated λ annulus of |λ|^{−A0}·F(λ),
    // F(λ) = ∬ φ e^{ρ}/(z−z1) dσ_z = −π·∂̄⁻¹[φ e^{ρ}](z1)
    double lp_acc = 0.0;
    const double dlr = (grid.lambda_max - grid.lambda_min) / grid.n_lambda_rad;
    const double dla = 2.0 * kPi / grid.n_lambda_ang;
    std::vector<Complex> dens(zmesh.size());
    for (int ir = 0; ir < grid.n_lambda_rad; ++ir) {
        double r = grid.lambda_min + (ir + 0.5) * dlr;
        double lnr = std::log(r);
        for (int ja = 0; ja < grid.n_lambda_ang; ++ja) {
            double th = ja * dla;
            Complex lam = r * Complex(std::cos(th), std::sin(th));
            for (std::size_t i = 0; i < zmesh.size(); ++i) {
                Complex d = zmesh.nodes[i] - w;
                Complex d2 = d * d;
                Complex rho = Complex(0.0, -0.5 * std::imag(lam * d2)) + lnr * lambda0 * d2;
                dens[i] = phi_v[i] * std::exp(rho);
            }
            Complex F = -kPi * solid_cauchy(zmesh, dens, z1);
            double val = std::pow(r, -A0) * std::abs(F);
            lp_acc += std::pow(val, p) * r * dlr * dla;
        }
    }
    double left = std::pow(lp_acc, 1.0 / p);
    double right = phi_sup / std::pow(std::abs(z1 - w), 1.0 - delta);

    ProbeReport rep;
    rep.probe_id = "oscillatory-kernel";
    rep.p = p;
    rep.q = p / (p - 1.0);
    rep.ratio = left / right;
    rep.resolution = res_string(grid.n_z, grid.n_lambda_rad, grid.lambda_max);
    rep.seed = family_id;
    return rep;
}

std::function<Complex(double, double)> seeded_rect_function(std::uint64_t seed,
                                                            const RectSupport& s) {
    Rng rng(seed);
    double c1 = rng.uniform(0.5, 1.5), c2 = rng.uniform(-0.5, 0.5);
    double k1 = rng.uniform(1.0, 3.0), k2 = rng.uniform(1.0, 3.0);
    return [=](double x, double y) -> Complex {
        double tx = (2.0 * (x - s.x0) / (s.x1 - s.x0) - 1.0);
        double ty = (2.0 * (y - s.y0) / (s.y1 - s.y0) - 1.0);
        if (std::abs(tx) >= 1.0 || std::abs(ty) >= 1.0) return 0.0;
        double prof = bump01(tx * tx) * bump01(ty * ty);
        return prof * Complex(c1 + std::sin(k1 * x), c2 + std::cos(k2 * y));
    };
}

std::function<Complex(Complex)> seeded_disk_function(std::uint64_t seed, const SupportDisk& s) {
    Rng rng(seed);
    double c1 = rng.uniform(0.5, 1.5);
    double k1 = rng.uniform(0.5, 2.0), k2 = rng.uniform(0.5, 2.0);
    return [=](Complex z) -> Complex {
        double t = std::norm(z - s.center) / (s.radius * s.radius);
        if (t >= 1.0) return 0.0;
        return bump01(t) * Complex(c1 + 0.3 * std::sin(k1 * z.real()),
                                   0.4 * std::cos(k2 * z.imag()));
    };
}

}  // namespace cgo
