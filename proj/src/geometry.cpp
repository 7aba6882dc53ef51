#include "cgo/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace cgo {

double ContourMesh::length() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

Complex ContourMesh::integrate_dz(const std::vector<Complex>& f) const {
    Complex s = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) s += weights[j] * tangents[j] * f[j];
    return s;
}

Complex ContourMesh::integrate_dzbar(const std::vector<Complex>& f) const {
    Complex s = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) s += weights[j] * std::conj(tangents[j]) * f[j];
    return s;
}

double AreaMesh::total_area() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

void AreaMesh::push_cell(Complex node, double weight, Complex ax1, Complex ax2, RegionTag tag) {
    nodes.push_back(node);
    weights.push_back(weight);
    spacing.push_back(2.0 * std::max(std::abs(ax1), std::abs(ax2)));
    half_axis1.push_back(ax1);
    half_axis2.push_back(ax2);
    region.push_back(tag);
}

ContourMesh make_circle_contour(Complex center, double radius, int n_nodes) {
    if (radius <= 0.0) throw InvalidInputError("make_circle_contour: radius must be positive");
    if (n_nodes < 16) throw InvalidInputError("make_circle_contour: need at least 16 nodes");
    ContourMesh m;
    m.nodes.resize(n_nodes);
    m.weights.assign(n_nodes, 2.0 * kPi * radius / n_nodes);
    m.normals.resize(n_nodes);
    m.tangents.resize(n_nodes);
    for (int j = 0; j < n_nodes; ++j) {
        double th = 2.0 * kPi * j / n_nodes;
        Complex dir(std::cos(th), std::sin(th));
        m.nodes[j] = center + radius * dir;
        m.normals[j] = dir;        // outer normal (z-c)/|z-c|
        m.tangents[j] = kI * dir;  // interior to the left
    }
    m.orientation = Orientation::Positive;
    return m;
}

ContourMesh orient(const ContourMesh& mesh, Orientation orientation) {
    if (orientation == mesh.orientation) return mesh;
    ContourMesh out;
    const std::size_t n = mesh.size();
    out.nodes.resize(n);
    out.weights.resize(n);
    out.normals.resize(n);
    out.tangents.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t k = n - 1 - j;
        out.nodes[j] = mesh.nodes[k];
        out.weights[j] = mesh.weights[k];
        out.normals[j] = mesh.normals[k];   // normals always outer
        out.tangents[j] = -mesh.tangents[k];
    }
    out.orientation = orientation;
    return out;
}

namespace {

// Distance from jump_center to ∂O along direction e^{iθ}; positive root of
// |e + ρ e^{iθ}| = R with e = jump_center − outer_center.
double outer_reach(const DiskGeometry& g, double theta) {
    Complex e = g.jump_center - g.outer_center;
    double b = e.real() * std::cos(theta) + e.imag() * std::sin(theta);
    double disc = b * b + g.outer_radius * g.outer_radius - std::norm(e);
    return -b + std::sqrt(disc);
}

}  // namespace

void append_polar_disk(AreaMesh& mesh, Complex center, double radius, double target_h,
                       RegionTag tag) {
    int n_rad = std::max(3, static_cast<int>(std::ceil(radius / target_h)));
    double dr = radius / n_rad;
    // ring 0 is one disk cell at the center; the disk model is exact for it
    mesh.push_cell(center, kPi * dr * dr, 0.0, 0.0, tag);
    mesh.spacing.back() = 2.0 * dr;
    for (int i = 1; i < n_rad; ++i) {
        double ra = i * dr, rb = ra + dr, rm = 0.5 * (ra + rb);
        // angular count from the square-cell target, floored so the chord
        // sagitta rm·dθ²/8 stays below ~2% of the cell size
        int n_sag = static_cast<int>(std::ceil(2.0 * kPi * std::sqrt(rm / (0.16 * dr))));
        int n_ang = std::max({16, static_cast<int>(std::lround(2.0 * kPi * rm / dr)), n_sag});
        double dth = 2.0 * kPi / n_ang;
        for (int j = 0; j < n_ang; ++j) {
            double th = (j + 0.5) * dth;
            Complex dir(std::cos(th), std::sin(th));
            mesh.push_cell(center + rm * dir, 0.5 * (rb * rb - ra * ra) * dth,
                           0.5 * dr * dir, 0.5 * rm * dth * kI * dir, tag);
        }
    }
}

namespace {

// radial segment [ra, rb] along one angular strip; geometric radii keep the
// cells square against the strip's arc width
void append_ray_segment(AreaMesh& mesh, Complex center, Complex dir, double ra, double rb,
                        double dth, RegionTag tag) {
    if (rb - ra <= 1e-14) return;
    int n = std::max(1, static_cast<int>(std::ceil(std::log(rb / ra) / dth)));
    double q = std::pow(rb / ra, 1.0 / n);
    double r0 = ra;
    for (int i = 0; i < n; ++i) {
        double r1 = (i == n - 1) ? rb : r0 * q;
        double rm = 0.5 * (r0 + r1);
        mesh.push_cell(center + rm * dir, 0.5 * (r1 * r1 - r0 * r0) * dth,
                       0.5 * (r1 - r0) * dir, 0.5 * rm * dth * kI * dir, tag);
        r0 = r1;
    }
}

}  // namespace

DomainMeshes make_disk_geometry(Complex outer_center, double outer_radius,
                                Complex jump_center, double jump_radius,
                                const GeometryResolution& res, const RefinePatch& patch) {
    if (outer_radius <= 0.0 || jump_radius <= 0.0)
        throw InvalidInputError("make_disk_geometry: radii must be positive");
    if (std::abs(jump_center - outer_center) + jump_radius >= outer_radius)
        throw InvalidInputError("make_disk_geometry: closed jump disk must lie strictly inside O");
    if (res.gamma_nodes < 16 || res.boundary_nodes < 16)
        throw InvalidInputError("make_disk_geometry: need at least 16 nodes per contour");
    const bool with_patch = patch.target_h > 0.0 && patch.radius > 0.0;
    if (with_patch) {
        if (std::abs(patch.center - jump_center) - patch.radius <= jump_radius ||
            std::abs(patch.center - outer_center) + patch.radius >= outer_radius)
            throw InvalidInputError("make_disk_geometry: refine patch must lie strictly in O\\D");
    }

    DomainMeshes dm;
    dm.geometry = {outer_center, outer_radius, jump_center, jump_radius};
    dm.gamma = make_circle_contour(jump_center, jump_radius, res.gamma_nodes);
    dm.boundary = make_circle_contour(outer_center, outer_radius, res.boundary_nodes);

    // O∖D̄ as a polar tensor grid around the jump center, reaching ∂O exactly;
    // rays crossing the refine patch skip its chord, the patch is meshed on
    // its own fine polar grid.
    const double h_bg = outer_radius / res.area_radial;
    const double dth = 2.0 * kPi / res.area_angular;
    for (int j = 0; j < res.area_angular; ++j) {
        double th = (j + 0.5) * dth;
        Complex dir(std::cos(th), std::sin(th));
        double reach = outer_reach(dm.geometry, th);
        double t_in = reach, t_out = reach;  // no patch crossing by default
        if (with_patch) {
            Complex e = patch.center - jump_center;
            double m = e.real() * dir.real() + e.imag() * dir.imag();
            double disc = m * m - (std::norm(e) - patch.radius * patch.radius);
            if (disc > 1e-14) {
                double s = std::sqrt(disc);
                t_in = m - s;
                t_out = m + s;
            }
        }
        if (t_in < reach && t_out > jump_radius) {
            append_ray_segment(dm.area, jump_center, dir, jump_radius, t_in, dth,
                               RegionTag::OutsideD);
            append_ray_segment(dm.area, jump_center, dir, t_out, reach, dth,
                               RegionTag::OutsideD);
        } else {
            append_ray_segment(dm.area, jump_center, dir, jump_radius, reach, dth,
                               RegionTag::OutsideD);
        }
    }
    if (with_patch)
        append_polar_disk(dm.area, patch.center, patch.radius, patch.target_h,
                          RegionTag::OutsideD);

    // D gets its own polar grid, slightly finer than the background (the
    // identity error of the disk-model quadrature peaks in small polar rings).
    append_polar_disk(dm.area, jump_center, jump_radius, 0.6 * h_bg, RegionTag::InsideD);

    return dm;
}

Complex winding_number(const ContourMesh& mesh, Complex w) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < mesh.size(); ++j)
        s += mesh.weights[j] * mesh.tangents[j] / (mesh.nodes[j] - w);
    return s / (2.0 * kPi * kI);
}

}  // namespace cgo
