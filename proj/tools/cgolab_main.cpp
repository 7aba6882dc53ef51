#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cgo/dtn.hpp"
#include "cgo/pipeline.hpp"
#include "cgo/probes.hpp"

namespace {

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

cgo::RunConfig load_or_default(const std::string& config_path, const std::string& out_dir,
                               std::uint64_t seed, unsigned threads, bool seed_set,
                               bool threads_set) {
    cgo::RunConfig cfg;
    if (!config_path.empty()) cfg = cgo::load_config_file(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed_set) cfg.seed = seed;
    if (threads_set) cfg.threads = threads;
    return cfg;
}

int cmd_run(const cgo::RunConfig& cfg) {
    cgo::PipelineResult res = cgo::run_pipeline(cfg);
    if (res.status != cgo::PipelineStatus::Ok) {
        std::cerr << "error: " << res.message << "\n";
        return static_cast<int>(res.status);
    }
    std::cout << "green consistency (max rel): " << res.green_max_rel << "\n";
    for (const auto& row : res.ladder)
        std::cout << "R=" << row.R << "  q21_hat=(" << row.q21_hat.real() << ","
                  << row.q21_hat.imag() << ")  abs_error=" << row.abs_error << "\n";
    for (const auto& f : res.files_written) std::cout << "wrote " << f << "\n";
    return 0;
}

int cmd_admissible_map(const cgo::RunConfig& cfg, int grid_n) {
    cgo::GeometryResolution res;
    res.gamma_nodes = cfg.gamma_nodes;
    res.boundary_nodes = cfg.boundary_nodes;
    res.area_radial = cfg.area_radial;
    res.area_angular = cfg.area_angular;
    cgo::DomainMeshes dm = cgo::make_disk_geometry(cfg.outer_center, cfg.outer_radius,
                                                   cfg.jump_center, cfg.jump_radius, res);
    unsigned threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
    auto rows = cgo::admissible_map(dm, grid_n, {}, threads);
    std::filesystem::create_directories(cfg.out_dir);
    std::string path = cfg.out_dir + "/admissible_map.csv";
    std::ofstream out(path);
    out << "x,y,admissible,proper,best_re_lambda_O,best_im_lambda_O,A,B\n";
    for (const auto& r : rows)
        out << g17(r.x) << "," << g17(r.y) << "," << r.admissible << "," << r.proper << ","
            << g17(r.lambda_O.real()) << "," << g17(r.lambda_O.imag()) << "," << g17(r.A) << ","
            << g17(r.B) << "\n";
    std::cout << "wrote " << path << " (" << rows.size() << " rows)\n";
    return 0;
}

int cmd_reconstruct(const cgo::RunConfig& cfg) {
    // reconstruction-focused run: the ladder CSV is the headline output
    cgo::PipelineResult res = cgo::run_pipeline(cfg);
    if (res.status != cgo::PipelineStatus::Ok) {
        std::cerr << "error: " << res.message << "\n";
        return static_cast<int>(res.status);
    }
    for (const auto& row : res.ladder)
        std::cout << "R=" << row.R << " abs_error=" << row.abs_error << "\n";
    return 0;
}

int cmd_oracle_dtn(const cgo::RunConfig& cfg, int max_mode) {
    std::filesystem::create_directories(cfg.out_dir);
    std::string path = cfg.out_dir + "/dtn_modes.csv";
    std::ofstream out(path);
    out << "n,re_lambda_n,im_lambda_n\n";
    for (int n = -max_mode; n <= max_mode; ++n) {
        cgo::Complex v = cgo::radial_dtn(cfg.model_jump, 1.0, cfg.jump_radius, cfg.outer_radius, n);
        out << n << "," << g17(v.real()) << "," << g17(v.imag()) << "\n";
    }
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_check_estimates(const cgo::RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    std::string path = cfg.out_dir + "/estimates.csv";
    std::ofstream out(path);
    out << "probe_id,p,q,ratio,resolution,seed\n";
    auto emit = [&](const cgo::ProbeReport& r) {
        out << r.probe_id << "," << g17(r.p) << "," << g17(r.q) << "," << g17(r.ratio) << ","
            << r.resolution << "," << r.seed << "\n";
        std::cout << r.probe_id << " p=" << r.p << " ratio=" << r.ratio << "\n";
    };
    cgo::RectSupport rect;
    emit(cgo::laplace_hy_ratio(cgo::seeded_rect_function(cfg.seed, rect), rect, 2.0, {}, cfg.seed));
    emit(cgo::kernel_norm_estimate(cgo::Complex(0.9, 0.4), 1.5, 4.0, 0.25, 96));
    cgo::SupportDisk disk{cgo::Complex(0.2, 0.1), 0.5};
    emit(cgo::oscillatory_kernel_probe(cgo::seeded_disk_function(cfg.seed, disk), disk,
                               cgo::Complex(0.9, -0.3), cgo::Complex(0.05, 0.0),
                               cgo::Complex(0.3, 0.2), 3.0, 0.2, {}, cfg.seed));
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_selftest(bool corrupt_projector) {
    cgo::SelftestOptions opts;
    opts.corrupt_projector_sign = corrupt_projector;
    cgo::SelftestReport rep = cgo::selftest(opts);
    for (const auto& it : rep.items) {
        std::printf("[%s] %-32s measured %.3e  (threshold %.3e)%s%s\n",
                    it.pass ? "PASS" : "FAIL", it.name.c_str(), it.measured, it.threshold,
                    it.note.empty() ? "" : "  ", it.note.c_str());
    }
    std::printf("%d/%zu items passed\n", static_cast<int>(rep.items.size()) - rep.failures(),
                rep.items.size());
    return rep.failures() == 0 ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cgolab: CGO scattering laboratory for 2D complex conductivities with jumps"};
    app.require_subcommand(1);
    app.fallthrough();  // accept the global flags after the subcommand too

    std::string config_path, out_dir;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    app.add_option("--config", config_path, "path to a dotted-key config file");
    app.add_option("--out", out_dir, "output directory (overrides the config)");
    auto* seed_opt = app.add_option("--seed", seed, "seed for random test families");
    auto* threads_opt = app.add_option("--threads", threads, "worker threads (0 = all cores)");

    auto* run = app.add_subcommand("run", "full pipeline: model -> solves -> reconstruction");
    auto* amap = app.add_subcommand("admissible-map", "admissibility/properness map over O");
    int grid_n = 41;
    amap->add_option("--grid", grid_n, "points per axis of the sampling grid");
    auto* rec = app.add_subcommand("reconstruct", "reconstruction ladder only");
    auto* dtn = app.add_subcommand("oracle-dtn", "radial DtN mode table");
    int max_mode = 32;
    dtn->add_option("--max-mode", max_mode, "largest Fourier mode |n|");
    auto* est = app.add_subcommand("check-estimates", "appendix inequality ratio probes");
    auto* st = app.add_subcommand("selftest", "run the invariant suite");
    bool corrupt_projector = false;
    st->add_flag("--inject-fault-projector-sign", corrupt_projector,
                 "deliberately corrupt the projector sign (mutation check)");

    CLI11_PARSE(app, argc, argv);

    try {
        cgo::RunConfig cfg = load_or_default(config_path, out_dir, seed, threads,
                                             seed_opt->count() > 0, threads_opt->count() > 0);
        if (run->parsed()) return cmd_run(cfg);
        if (amap->parsed()) return cmd_admissible_map(cfg, grid_n);
        if (rec->parsed()) return cmd_reconstruct(cfg);
        if (dtn->parsed()) return cmd_oracle_dtn(cfg, max_mode);
        if (est->parsed()) return cmd_check_estimates(cfg);
        if (st->parsed()) return cmd_selftest(corrupt_projector);
    } catch (const cgo::OscillationGuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(cgo::PipelineStatus::OscillationGuard);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(cgo::PipelineStatus::ConfigError);
    }
    return 0;
}
