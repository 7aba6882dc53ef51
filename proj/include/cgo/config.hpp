#ifndef CGO_CONFIG_HPP
#define CGO_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "cgo/types.hpp"

namespace cgo {

/// Flat run configuration. Serializes to dotted-key text
/// (`geometry.outer_radius = 1.0`), diff-friendly and dependency-free;
/// round-trips losslessly (doubles printed with 17 significant digits).
struct RunConfig {
    // geometry
    Complex outer_center = {0.0, 0.0};
    double outer_radius = 1.0;
    Complex jump_center = {-0.5, 0.0};
    double jump_radius = 0.2;
    int gamma_nodes = 128;
    int boundary_nodes = 128;
    int area_radial = 48;
    int area_angular = 256;
    // model
    std::string model_kind = "smooth-bump-with-jump";  // radial-two-layer | trivial
    Complex model_jump = {1.05, 0.02};
    Complex bump_amplitude = {0.12, 0.06};
    Complex bump_center = {0.55, 0.0};
    double bump_radius = 0.3;
    // evaluation point and CGO direction
    Complex w = {0.7, 0.0};
    bool auto_lambda = true;
    Complex lambda_O = {-0.6, 0.0};
    // annulus ladder
    double annulus_r = 16.0;
    int ladder_rungs = 3;
    int n_radial = 8;
    int n_angular = 12;
    // solver
    std::string method = "iterative";
    double tol = 1e-9;
    int max_iter = 400;
    double r_cut = 2.0;
    // mesh refinement policy
    bool auto_refine = true;
    double phase_step = 0.6;  // target phase advance per cell at the ladder top
    // io
    std::string out_dir = "out";
    bool dump_fields = false;
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0 = hardware concurrency
};

std::string serialize_config(const RunConfig& config);
RunConfig parse_config(std::istream& in);
RunConfig load_config_file(const std::string& path);

}  // namespace cgo

#endif
