#ifndef CGO_GEOMETRY_HPP
#define CGO_GEOMETRY_HPP

#include <cstddef>
#include <vector>

#include "cgo/types.hpp"

namespace cgo {

enum class Orientation { Positive, Negative };
enum class RegionTag { InsideD, OutsideD };

/// Quadrature discretization of a smooth closed curve. Equispaced parameter
/// samples with trapezoid weights, so contour integrals of smooth periodic
/// integrands are spectrally accurate.
struct ContourMesh {
    std::vector<Complex> nodes;
    std::vector<double> weights;    // arclength weights
    std::vector<Complex> normals;   // unit outer normals
    std::vector<Complex> tangents;  // unit tangents, i*normal when positive
    Orientation orientation = Orientation::Positive;

    std::size_t size() const { return nodes.size(); }
    double length() const;

    /// ∮ f dz  =  Σ w_j t_j f_j
    Complex integrate_dz(const std::vector<Complex>& f) const;
    /// ∮ f dz̄ =  Σ w_j conj(t_j) f_j
    Complex integrate_dzbar(const std::vector<Complex>& f) const;
};

/// Area quadrature of O, split into the two open regions D and O∖D̄ so that
/// no cell straddles the jump contour. Cells come from tensor polar grids per
/// region; `spacing` is the largest side of the cell around each node, used
/// by the oscillation guard. The half-axes span each cell as a parallelogram
/// (node ± ax1 ± ax2), which the singular quadrature uses to subdivide cells
/// close to an evaluation point.
struct AreaMesh {
    std::vector<Complex> nodes;
    std::vector<double> weights;
    std::vector<double> spacing;
    std::vector<RegionTag> region;
    std::vector<Complex> half_axis1;
    std::vector<Complex> half_axis2;

    std::size_t size() const { return nodes.size(); }
    double total_area() const;
    void push_cell(Complex node, double weight, Complex ax1, Complex ax2, RegionTag tag);
};

/// Full disk at cell size ≈ target_h with the angular count adapted per
/// ring, so cells stay square down to the center (no slivers).
void append_polar_disk(AreaMesh& mesh, Complex center, double radius, double target_h,
                       RegionTag tag);

struct DiskGeometry {
    Complex outer_center;
    double outer_radius = 0.0;
    Complex jump_center;
    double jump_radius = 0.0;
};

struct GeometryResolution {
    int gamma_nodes = 128;     // nodes on Γ
    int boundary_nodes = 128;  // nodes on ∂O
    int area_radial = 48;      // radial cells across O∖D̄
    int area_angular = 256;    // angular cells in O∖D̄
};

/// Locally refined disk patch (used over supp q, where the oscillatory
/// densities live). The background grid excludes the patch disk exactly and
/// the patch carries its own fine polar grid.
struct RefinePatch {
    Complex center;
    double radius = 0.0;
    double target_h = 0.0;  // cell size inside the patch; 0 disables
};

struct DomainMeshes {
    DiskGeometry geometry;
    AreaMesh area;
    ContourMesh gamma;     // Γ, positively oriented by default
    ContourMesh boundary;  // ∂O, positively oriented
};

/// Positively oriented circle with N equispaced nodes.
ContourMesh make_circle_contour(Complex center, double radius, int n_nodes);

ContourMesh orient(const ContourMesh& mesh, Orientation orientation);

/// Builds the area and contour meshes for a disk O with a jump disk D̄ ⊂ O.
/// Rejects degenerate radii and D̄ not strictly inside O. When `patch` has a
/// positive target_h, the patch disk (which must sit strictly inside O∖D̄)
/// is meshed at that resolution and carved out of the background grid.
DomainMeshes make_disk_geometry(Complex outer_center, double outer_radius,
                                Complex jump_center, double jump_radius,
                                const GeometryResolution& resolution = {},
                                const RefinePatch& patch = {});

/// Winding number (1/2πi)∮ dz/(z−w) by the mesh quadrature.
Complex winding_number(const ContourMesh& mesh, Complex w);

}  // namespace cgo

#endif
