#include <doctest.h>

#include <cmath>

#include "cgo/admissible.hpp"

using namespace cgo;

namespace {

DomainMeshes worked_meshes() {
    GeometryResolution res;
    res.boundary_nodes = 720;  // dense boundary sampling for tight sups
    res.gamma_nodes = 360;
    return make_disk_geometry(0.0, 1.0, Complex(-0.5, 0.0), 0.2, res);
}

}  // namespace

TEST_CASE("eval_AB on the unit disk") {
    DomainMeshes dm = worked_meshes();
    // w = 0, λ real positive: A = t·max|z|² = t on ∂O
    for (double t : {0.5, 1.0, 2.5}) {
        auto [A, B] = eval_AB(0.0, Complex(t, 0.0), dm.boundary, dm.gamma);
        CHECK(std::abs(A - t) <= 1e-4 * t);
    }
    // w ∈ D̄ forces B ≥ 0 through the interior point z = w
    auto [A_in, B_in] = eval_AB(Complex(-0.5, 0.05), Complex(-1.0, 0.3), dm.boundary, dm.gamma);
    CHECK(B_in >= 0.0);
    (void)A_in;
}

TEST_CASE("worked admissibility example") {
    DomainMeshes dm = worked_meshes();
    auto [A, B] = eval_AB(Complex(0.7, 0.0), Complex(-0.6, 0.0), dm.boundary, dm.gamma);
    CHECK(std::abs(A - 0.453) <= 0.002);
    CHECK(std::abs(B - (-0.600)) <= 0.002);

    auto cert = find_admissible(Complex(0.7, 0.0), dm);
    REQUIRE(cert.has_value());
    CHECK(cert->proper);
    CHECK(std::abs(cert->lambda_O - Complex(-0.6, 0.0)) <= 0.05);
    CHECK(std::abs((cert->eps2 - cert->eps1) - 0.05) <= 0.015);
    CHECK(cert->B <= cert->A);
}

TEST_CASE("infeasible points return none") {
    DomainMeshes dm = worked_meshes();
    CHECK_FALSE(find_admissible(Complex(0.0, 0.0), dm).has_value());   // center
    CHECK_FALSE(find_admissible(Complex(-0.5, 0.1), dm).has_value());  // inside D̄
    CHECK_FALSE(find_admissible(Complex(-0.5, 0.2), dm).has_value());  // on Γ
}

TEST_CASE("properness arithmetic and tolerance edge") {
    AdmissibleCertificate c;
    c.A = 0.453;
    c.B = -0.600;
    c.eps1 = 0.5 - c.A;
    c.eps2 = -0.5 - c.B;
    CHECK(std::abs(c.eps1 - 0.047) <= 1e-12);
    CHECK(std::abs(c.eps2 - 0.100) <= 1e-12);
    CHECK(certify_proper(c));

    AdmissibleCertificate d;
    d.A = 0.4;
    d.B = -0.55;
    d.eps1 = 0.1;
    d.eps2 = 0.05;
    CHECK_FALSE(certify_proper(d));

    CHECK_FALSE(certify_admissible(0.499999999, -0.5 - 1e-12));
    CHECK(certify_admissible(0.4, -0.6));
}

TEST_CASE("positive homogeneity of eval_AB") {
    DomainMeshes dm = worked_meshes();
    Rng rng(31);
    for (int k = 0; k < 20; ++k) {
        Complex w = rng.complex_in_disk(0.0, 0.9);
        Complex dir = rng.unit_complex();
        double t = rng.uniform(0.1, 9.0);
        auto [A1, B1] = eval_AB(w, dir, dm.boundary, dm.gamma);
        auto [At, Bt] = eval_AB(w, t * dir, dm.boundary, dm.gamma);
        CHECK(std::abs(At - t * A1) <= 1e-12 * std::max(1.0, std::abs(t * A1)));
        CHECK(std::abs(Bt - t * B1) <= 1e-12 * std::max(1.0, std::abs(t * B1)));
        CHECK(Bt <= At + 1e-14);  // sup over a subset
    }
}

TEST_CASE("boundary sampling is monotone under nested refinement") {
    GeometryResolution lo, hi;
    lo.boundary_nodes = 64;
    lo.gamma_nodes = 64;
    hi.boundary_nodes = 256;  // contains all 64-node angles
    hi.gamma_nodes = 256;
    DomainMeshes dlo = make_disk_geometry(0.0, 1.0, Complex(-0.5, 0.0), 0.2, lo);
    DomainMeshes dhi = make_disk_geometry(0.0, 1.0, Complex(-0.5, 0.0), 0.2, hi);
    Rng rng(13);
    for (int k = 0; k < 10; ++k) {
        Complex w = rng.complex_in_disk(0.0, 0.8);
        Complex lam = rng.complex_in_disk(0.0, 2.0);
        auto [Alo, Blo] = eval_AB(w, lam, dlo.boundary, dlo.gamma);
        auto [Ahi, Bhi] = eval_AB(w, lam, dhi.boundary, dhi.gamma);
        CHECK(Ahi >= Alo - 1e-14);
        CHECK(Bhi >= Blo - 1e-14);
    }
}

TEST_CASE("boundary-only sup matches a dense area grid (maximum principle)") {
    DomainMeshes dm = worked_meshes();
    Rng rng(19);
    for (int k = 0; k < 5; ++k) {
        Complex w = rng.complex_in_disk(0.0, 0.7);
        Complex lam = rng.complex_in_disk(0.0, 1.5);
        auto [A, B] = eval_AB(w, lam, dm.boundary, dm.gamma);
        double dense = -1e300;
        for (int ir = 0; ir < 60; ++ir)
            for (int it = 0; it < 120; ++it) {
                double r = (ir + 0.5) / 60.0;
                double th = 2.0 * kPi * it / 120.0;
                Complex z = r * Complex(std::cos(th), std::sin(th));
                Complex d = z - w;
                dense = std::max(dense, std::real(lam * d * d));
            }
        CHECK(dense <= A + 1e-3);
        (void)B;
    }
}

TEST_CASE("admissible map emits sane rows") {
    DomainMeshes dm = make_disk_geometry(0.0, 1.0, Complex(-0.5, 0.0), 0.2, {});
    AdmissibleSearch search;
    search.n_angles = 90;  // coarse scan for speed
    auto rows = admissible_map(dm, 9, search, 2);
    CHECK(rows.size() > 40);
    int n_adm = 0, n_proper = 0;
    for (const auto& r : rows) {
        if (r.admissible) {
            ++n_adm;
            CHECK(r.A < 0.5);
            CHECK(r.B < -0.5);
            n_proper += r.proper;
        }
        // points inside D̄ are never admissible
        if (std::abs(Complex(r.x, r.y) - Complex(-0.5, 0.0)) <= 0.2) CHECK(r.admissible == 0);
    }
    CHECK(n_adm > 0);
    CHECK(n_proper > 0);
}
