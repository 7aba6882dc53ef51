#include <doctest.h>

#include <cmath>

#include "cgo/dtn.hpp"
#include "cgo/linalg.hpp"

using namespace cgo;

TEST_CASE("radial DtN eigenvalues for the identity conductivity") {
    for (int n = -32; n <= 32; ++n)
        CHECK(radial_dtn(1.0, 1.0, 0.5, 1.0, n) == Complex(std::abs(n), 0.0));
    CHECK(radial_dtn(Complex(3.0, 1.0), 1.0, 0.5, 1.0, 0) == Complex(0.0));
    CHECK_THROWS_AS(radial_dtn(1.0, 1.0, 1.2, 1.0, 1), InvalidInputError);
}

TEST_CASE("radial DtN matches the 2x2 continuity system") {
    // direct oracle: solve for (B, C) from continuity of u and γ u_r at r0,
    // normalize u(1) = 1, read off γ⁺ u_r(1)
    Complex gin(2.0, 0.0), gout(1.0, 0.0);
    double r0 = 0.5;
    int n = 1;
    for (int pass = 0; pass < 2; ++pass) {
        if (pass == 1) gin = Complex(2.0, 0.7);
        double m = n;
        // unknowns (B, C) with A = 1: u⁻ = r^m, u⁺ = B r^m + C r^−m
        std::vector<Complex> A = {std::pow(r0, m), std::pow(r0, -m),
                                  gout * m * std::pow(r0, m - 1), -gout * m * std::pow(r0, -m - 1)};
        std::vector<Complex> rhs = {std::pow(r0, m), gin * m * std::pow(r0, m - 1)};
        REQUIRE(lu_solve(A, 2, rhs));
        Complex B = rhs[0], C = rhs[1];
        Complex uR = B + C, duR = m * (B - C);
        Complex want = gout * duR / uR;
        CHECK(std::abs(radial_dtn(gin, gout, r0, 1.0, n) - want) <= 1e-12 * std::abs(want));
    }
}

TEST_CASE("radial DtN matches a dense radial finite-difference solve") {
    Complex gin(1.0, 1.0), gout(1.0, 0.0);
    double r0 = 0.5;
    int n = 2;
    // conservative FD for (r γ u')' /r − n²γu/r² = 0, u(0)=0, u(1)=1 (Thomas)
    const int N = 6000;
    double h = 1.0 / N;
    std::vector<Complex> a(N - 1), b(N - 1), c(N - 1), d(N - 1, 0.0);
    auto gam = [&](double r) { return r < r0 ? gin : gout; };
    for (int i = 1; i < N; ++i) {
        double r = i * h;
        Complex gm = gam(r - 0.5 * h) * (r - 0.5 * h);
        Complex gp = gam(r + 0.5 * h) * (r + 0.5 * h);
        a[i - 1] = gm / (h * h);
        c[i - 1] = gp / (h * h);
        // the r-multiplied form (r γ u')' − γ n² u / r = 0
        b[i - 1] = -(gm + gp) / (h * h) - gam(r) * static_cast<double>(n * n) / r;
    }
    d[N - 2] -= c[N - 2] * 1.0;  // u(1) = 1
    // Thomas sweep
    for (int i = 1; i < N - 1; ++i) {
        Complex m = a[i] / b[i - 1];
        b[i] -= m * c[i - 1];
        d[i] -= m * d[i - 1];
    }
    std::vector<Complex> u(N - 1);
    u[N - 2] = d[N - 2] / b[N - 2];
    for (int i = N - 3; i >= 0; --i) u[i] = (d[i] - c[i] * u[i + 1]) / b[i];
    // one-sided second-order derivative at r = 1 with u(1) = 1
    Complex du = (3.0 * 1.0 - 4.0 * u[N - 2] + u[N - 3]) / (2.0 * h);
    Complex fd_value = gout * du;
    Complex exact = radial_dtn(gin, gout, r0, 1.0, n);
    CHECK(std::abs(fd_value - exact) <= 1e-3 * std::abs(exact));
}

TEST_CASE("tangential antiderivative on the circle") {
    ContourMesh bd = make_circle_contour(0.0, 1.0, 128);
    std::vector<Complex> cosv(bd.size()), sinv(bd.size()), onev(bd.size(), 1.0);
    for (std::size_t j = 0; j < bd.size(); ++j) {
        double th = std::arg(bd.normals[j]);
        cosv[j] = std::cos(th);
        sinv[j] = std::sin(th);
    }
    auto g1 = tangential_antiderivative(bd, cosv);
    auto g2 = tangential_antiderivative(bd, sinv);
    double w1 = 0.0, w2 = 0.0;
    for (std::size_t j = 0; j < bd.size(); ++j) {
        double th = std::arg(bd.normals[j]);
        w1 = std::max(w1, std::abs(g1[j] - std::sin(th)));
        w2 = std::max(w2, std::abs(g2[j] + std::cos(th)));
    }
    CHECK(w1 <= 1e-10);
    CHECK(w2 <= 1e-10);
    CHECK_THROWS_AS(tangential_antiderivative(bd, onev), InvalidInputError);

    // ∂_s ∘ ∂_s⁻¹ = identity on zero-mean trigonometric polynomials:
    // each mode e^{inθ} must come back as (r/(i n))·e^{inθ}
    for (int n : {1, -2, 5, -7}) {
        std::vector<Complex> mode(bd.size());
        for (std::size_t j = 0; j < bd.size(); ++j)
            mode[j] = std::exp(kI * static_cast<double>(n) * std::arg(bd.normals[j]));
        auto anti = tangential_antiderivative(bd, mode);
        double worst = 0.0;
        for (std::size_t j = 0; j < bd.size(); ++j)
            worst = std::max(worst,
                             std::abs(anti[j] - mode[j] / (kI * static_cast<double>(n))));
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("boundary relation residual certifies trace membership") {
    ContourMesh bd = make_circle_contour(0.0, 1.0, 128);

    // γ ≡ 1, u = x: φ = (1/2, 1/2)
    DtnOperator id_op = make_radial_dtn_operator(1.0, 1.0, 0.5, 1.0, 64);
    BoundaryTracePair ux;
    ux.h1.assign(bd.size(), 0.5);
    ux.h2.assign(bd.size(), 0.5);
    BoundaryRelationResult r = boundary_relation_residual(ux, id_op, bd);
    CHECK(r.residual <= 1e-10);
    CHECK(r.mean_condition_ok);

    // semi-analytic jump-mode solutions are members to machine precision
    Complex gin(2.0, 0.7);
    DtnOperator op = make_radial_dtn_operator(gin, 1.0, 0.5, 1.0, 64);
    for (int n : {1, 2, 3, -4, 7}) {
        BoundaryTracePair tp = radial_mode_traces(gin, 1.0, 0.5, bd, n);
        BoundaryRelationResult rr = boundary_relation_residual(tp, op, bd);
        CHECK(rr.residual <= 1e-6);
        // homogeneity: scaling the traces scales the residual
        BoundaryTracePair scaled = tp;
        for (auto& v : scaled.h1) v *= 3.0;
        for (auto& v : scaled.h2) v *= 3.0;
        BoundaryRelationResult rs = boundary_relation_residual(scaled, op, bd);
        CHECK(std::abs(rs.residual - 3.0 * rr.residual) <= 1e-12 + 1e-9 * rr.residual);
    }

    // random unrelated traces are rejected loudly
    Rng rng(23);
    BoundaryTracePair rnd;
    rnd.h1.resize(bd.size());
    rnd.h2.resize(bd.size());
    for (std::size_t j = 0; j < bd.size(); ++j) {
        rnd.h1[j] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
        rnd.h2[j] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    }
    CHECK(boundary_relation_residual(rnd, id_op, bd).residual > 0.1);

    // violated solvability mean shows up in the report
    BoundaryTracePair bad;
    bad.h1.resize(bd.size());
    bad.h2.assign(bd.size(), 0.0);
    for (std::size_t j = 0; j < bd.size(); ++j) bad.h1[j] = std::conj(bd.normals[j]);
    BoundaryRelationResult rb = boundary_relation_residual(bad, id_op, bd);
    CHECK_FALSE(rb.mean_condition_ok);
    CHECK(rb.mean_defect > 0.1);
}

TEST_CASE("single layer operator satisfies the Plemelj value") {
    ContourMesh bd = make_circle_contour(0.0, 1.0, 128);
    CgoParameters p0{Complex(0.0, 0.0), Complex(0.2, 0.1), Complex(-0.6, 0.0)};
    std::vector<Complex> one(bd.size(), 1.0), zero(bd.size(), 0.0);
    for (std::size_t j : {0ul, 31ul, 77ul}) {
        CHECK(std::abs(single_layer_S(p0, bd, one, j) - 1.0) <= 1e-10);
        CHECK(single_layer_S(p0, bd, zero, j) == Complex(0.0));
    }
    // the kernel's exponential factor cancels at ς = z
    CgoParameters p{Complex(0.7, 0.2), Complex(0.2, 0.1), Complex(-0.6, 0.0)};
    Complex z = bd.nodes[11];
    Complex d = z - p.w;
    CHECK(std::abs(std::exp(-p.lambda * d * d + p.lambda * d * d) - 1.0) == 0.0);
    // smoke: finite values with λ ≠ 0
    Complex v = single_layer_S(p, bd, one, 11);
    CHECK(std::isfinite(v.real()));
    CHECK(std::isfinite(v.imag()));
}

TEST_CASE("conjecture diagnostic reports three finite residuals") {
    ContourMesh bd = make_circle_contour(0.0, 1.0, 96);
    DtnOperator op = make_radial_dtn_operator(1.0, 1.0, 0.5, 1.0, 48);
    CgoParameters p{Complex(0.4, 0.1), Complex(0.1, 0.0), Complex(-0.6, 0.0)};
    BoundaryTracePair tp;
    tp.h1.assign(bd.size(), 1.0);
    tp.h2.assign(bd.size(), 0.0);
    ConjectureResiduals cr = conjecture_residuals(p, tp, op, bd);
    CHECK(std::isfinite(cr.r1));
    CHECK(std::isfinite(cr.r2));
    CHECK(std::isfinite(cr.r3));
    CHECK(cr.r2 <= 1e-10);  // h₂ ≡ 0 satisfies the conjugate equation exactly
    CHECK(cr.r1 > 0.1);     // constants do not satisfy the first equation
}
