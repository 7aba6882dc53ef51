#include <doctest.h>

#include <cmath>

#include "cgo/probes.hpp"

using namespace cgo;

TEST_CASE("probe ratios are exactly homogeneous in the test function") {
    RectSupport rect;
    auto f = seeded_rect_function(5, rect);
    auto f3 = [&](double x, double y) { return 3.0 * f(x, y); };
    LaplaceProbeGrid grid;
    grid.n_xy = 48;
    grid.n_lambda = 24;
    ProbeReport a = laplace_hy_ratio(f, rect, 2.0, grid, 5);
    ProbeReport b = laplace_hy_ratio(f3, rect, 2.0, grid, 5);
    CHECK(std::abs(a.ratio - b.ratio) <= 1e-12 * a.ratio);

    SupportDisk disk{Complex(0.2, 0.1), 0.5};
    auto g = seeded_disk_function(5, disk);
    auto g3 = [&](Complex z) { return 3.0 * g(z); };
    OscKernelGrid lg;
    lg.n_z = 32;
    lg.n_lambda_rad = 12;
    lg.n_lambda_ang = 8;
    ProbeReport c = oscillatory_kernel_probe(g, disk, Complex(0.9, -0.3), Complex(0.05, 0.0),
                                      Complex(0.3, 0.2), 3.0, 0.2, lg, 5);
    ProbeReport d = oscillatory_kernel_probe(g3, disk, Complex(0.9, -0.3), Complex(0.05, 0.0),
                                      Complex(0.3, 0.2), 3.0, 0.2, lg, 5);
    CHECK(std::abs(c.ratio - d.ratio) <= 1e-12 * c.ratio);
}

TEST_CASE("Hausdorff-Young probe against the closed-form rectangle") {
    // indicator of [a,b]×[c,d]: both norms have closed forms up to the
    // λ-grid quadrature, which the reference evaluates exactly per sample
    RectSupport rect{0.4, 1.4, 1.3, 2.3};
    auto ind = [&](double x, double y) -> Complex {
        return (x > rect.x0 && x < rect.x1 && y > rect.y0 && y < rect.y1) ? 1.0 : 0.0;
    };
    LaplaceProbeGrid grid;
    grid.n_xy = 256;  // resolves the discontinuous indicator
    grid.n_lambda = 32;
    double p = 2.0;
    ProbeReport rep = laplace_hy_ratio(ind, rect, p, grid, 0);

    // reference: |Lf| per λ sample from the analytic factor integrals
    double lp = 0.0;
    double dl1 = grid.lambda_max / grid.n_lambda;
    double dl2 = (grid.lambda_max - 1.0) / grid.n_lambda;
    for (int bq = 0; bq < grid.n_lambda; ++bq) {
        double l2 = 1.0 + (bq + 0.5) * dl2;
        for (int aq = 0; aq < grid.n_lambda; ++aq) {
            double l1 = (aq + 0.5) * dl1;
            Complex fx = (std::exp(-kI * l1 * rect.x0) - std::exp(-kI * l1 * rect.x1)) / (kI * l1);
            Complex s(std::log(l2), l2);
            Complex fy = (std::exp(-s * rect.y0) - std::exp(-s * rect.y1)) / s;
            lp += std::pow(std::abs(fx * fy), p) * dl1 * dl2;
        }
    }
    double q = p / (p - 1.0);
    double ref = std::pow(lp, 1.0 / p) /
                 std::pow((rect.x1 - rect.x0) * (rect.y1 - rect.y0), 1.0 / q);
    CHECK(std::abs(rep.ratio - ref) <= 0.01 * ref);
    CHECK(rep.ratio > 0.0);
    CHECK(std::isfinite(rep.ratio));

    // zero input is rejected
    auto zero = [](double, double) -> Complex { return 0.0; };
    CHECK_THROWS_AS(laplace_hy_ratio(zero, rect, 2.0, grid, 0), InvalidInputError);
}

TEST_CASE("Hausdorff-Young probe is stable under doubled truncation") {
    RectSupport rect;
    auto f = seeded_rect_function(9, rect);
    LaplaceProbeGrid grid;
    grid.n_xy = 96;
    grid.n_lambda = 32;
    ProbeReport a = laplace_hy_ratio(f, rect, 2.0, grid, 9);
    LaplaceProbeGrid twice = grid;
    twice.lambda_max *= 2.0;
    twice.n_lambda *= 2;
    ProbeReport b = laplace_hy_ratio(f, rect, 2.0, twice, 9);
    CHECK(std::abs(b.ratio - a.ratio) <= 0.05 * a.ratio);
}

TEST_CASE("kernel norm probe is stable and saturates in a") {
    ProbeReport base = kernel_norm_estimate(Complex(0.6, 0.8), 1.5, 4.0, 0.25, 96);
    CHECK(std::isfinite(base.ratio));
    CHECK(base.ratio > 0.0);
    ProbeReport fine = kernel_norm_estimate(Complex(0.6, 0.8), 1.5, 4.0, 0.25, 192);
    CHECK(std::abs(fine.ratio - base.ratio) <= 0.02 * base.ratio);

    // rotation invariance of the bound
    ProbeReport rot = kernel_norm_estimate(Complex(0.6, 0.8) * std::exp(kI * 1.1), 1.5, 4.0,
                                           0.25, 96);
    CHECK(std::abs(rot.ratio - base.ratio) <= 0.01 * base.ratio);

    // large-a saturation
    ProbeReport big = kernel_norm_estimate(10.0 * Complex(0.6, 0.8), 1.5, 4.0, 0.25, 96);
    CHECK(big.ratio <= 2.0 * base.ratio);

    CHECK_THROWS_AS(kernel_norm_estimate(0.0, 1.5, 4.0, 0.25, 64), InvalidInputError);
    CHECK_THROWS_AS(kernel_norm_estimate(1.0, 2.5, 4.0, 0.25, 64), InvalidInputError);
}

TEST_CASE("oscillatory kernel probe behaviors") {
    SupportDisk disk{Complex(0.2, 0.1), 0.35};
    auto phi = seeded_disk_function(3, disk);
    OscKernelGrid grid;  // default annulus [1, 80]
    Complex w(0.05, 0.0), lam0(0.3, 0.2);

    auto zero = [](Complex) -> Complex { return 0.0; };
    CHECK(oscillatory_kernel_probe(zero, disk, Complex(0.9, -0.3), w, lam0, 3.0, 0.2, grid, 0).ratio ==
          0.0);
    CHECK_THROWS_AS(oscillatory_kernel_probe(phi, disk, w, w, lam0, 3.0, 0.2, grid, 0),
                    InvalidInputError);

    // walking z1 toward w keeps the ratio bounded (the allowance grows too)
    double worst = 0.0;
    for (double t : {0.9, 0.5, 0.25, 0.12}) {
        Complex z1 = w + t * Complex(1.0, -0.4);
        ProbeReport r = oscillatory_kernel_probe(phi, disk, z1, w, lam0, 3.0, 0.2, grid, 3);
        CHECK(std::isfinite(r.ratio));
        worst = std::max(worst, r.ratio);
    }
    CHECK(worst < 20.0);

    // λ₀ = 0 reduces ρ to the pure oscillation; both ratios finite and the
    // enrichment genuinely changes the value
    ProbeReport with = oscillatory_kernel_probe(phi, disk, Complex(0.9, -0.3), w, lam0, 3.0, 0.2, grid, 3);
    ProbeReport without = oscillatory_kernel_probe(phi, disk, Complex(0.9, -0.3), w, Complex(0.0, 0.0),
                                            3.0, 0.2, grid, 3);
    CHECK(std::isfinite(without.ratio));
    CHECK(without.ratio > 0.0);
    CHECK(std::abs(without.ratio - with.ratio) > 0.01 * with.ratio);

    // doubled truncation drifts the ratio by at most 5%
    OscKernelGrid twice = grid;
    twice.lambda_max *= 2.0;
    twice.n_lambda_rad *= 2;
    ProbeReport far = oscillatory_kernel_probe(phi, disk, Complex(0.9, -0.3), w, lam0, 3.0, 0.2, twice, 3);
    CHECK(std::abs(far.ratio - with.ratio) <= 0.05 * with.ratio);
}
