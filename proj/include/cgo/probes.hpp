#ifndef CGO_PROBES_HPP
#define CGO_PROBES_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "cgo/scattering.hpp"
#include "cgo/types.hpp"

namespace cgo {

/// Numerical ratio probe result: left norm / right norm of one of the
/// appendix estimates, with the exponents and grids that produced it.
/// The probes check boundedness and truncation stability, never the
/// analytic constant.
struct ProbeReport {
    std::string probe_id;
    double p = 2.0;
    double q = 2.0;  // dual exponent, 1/p + 1/q = 1
    double ratio = 0.0;
    std::string resolution;
    std::uint64_t seed = 0;
};

struct RectSupport {
    double x0 = 0.0, x1 = 1.0;  // support in x ⊂ [0,∞)
    double y0 = 1.2, y1 = 2.2;  // support in y ⊂ [1,∞)
};

struct LaplaceProbeGrid {
    int n_xy = 96;             // tensor nodes across the support
    int n_lambda = 48;         // tensor nodes per λ axis
    double lambda_max = 12.0;  // truncation of the (λ₁, λ₂) quarter-plane
};

/// Hausdorff–Young analogue for the 2D Laplace-type transform
///   Lf(λ₁,λ₂) = ∬ e^{−iλ₁x}·e^{−iλ₂y−ln(λ₂)·y} f dx dy,
/// ratio = ‖Lf‖_{L^p(λ grid)} / ‖f‖_{L^q}. λ₂ runs from 1 (the contour
/// condition Re z(s) = ln λ₂ > 0) to the truncation radius.
ProbeReport laplace_hy_ratio(const std::function<Complex(double, double)>& f,
                             const RectSupport& support, double p,
                             const LaplaceProbeGrid& grid, std::uint64_t family_id);

/// Kernel bound of the recalled norm lemma:
/// ratio = ‖1/(u(√u−a))‖_{L^p(|u|<R_dom)} / (1 + |a|^{−1+δ}), 1 ≤ p < 2.
ProbeReport kernel_norm_estimate(Complex a, double p, double R_dom, double delta,
                                 int resolution);

struct OscKernelGrid {
    int n_z = 64;              // polar resolution across supp φ
    int n_lambda_rad = 24;     // λ grid, radial
    int n_lambda_ang = 12;     // λ grid, angular
    double lambda_min = 1.0;   // the lemma is applied for |λ| bounded away from 0
    double lambda_max = 80.0;  // truncation of the λ annulus
};

/// ratio = ‖|λ|^{−A₀}·∬ φ e^{ρ}/(z−z₁) dσ_z‖_{L^p(λ disk)}
///         / (‖φ‖∞ / |z₁−w|^{1−δ}),
/// ρ = −i·Im[λ(z−w)²]/2 + ln|λ|·λ₀(z−w)², A₀ = sup_{supp φ} Re[λ₀(z−w)²].
ProbeReport oscillatory_kernel_probe(const std::function<Complex(Complex)>& phi,
                              const SupportDisk& support, Complex z1, Complex w,
                              Complex lambda0, double p, double delta,
                              const OscKernelGrid& grid, std::uint64_t family_id);

/// Seeded smooth test function on a rectangle: a C∞ bump profile times a
/// low-order random trigonometric factor. Used by the CLI and the fixed-seed
/// acceptance runs.
std::function<Complex(double, double)> seeded_rect_function(std::uint64_t seed,
                                                            const RectSupport& support);

std::function<Complex(Complex)> seeded_disk_function(std::uint64_t seed,
                                                     const SupportDisk& support);

}  // namespace cgo

#endif
