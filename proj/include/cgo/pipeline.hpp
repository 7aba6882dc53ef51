#ifndef CGO_PIPELINE_HPP
#define CGO_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "cgo/admissible.hpp"
#include "cgo/config.hpp"
#include "cgo/scattering.hpp"

namespace cgo {

/// Exit statuses of the pipeline; the CLI maps these to process exit codes.
enum class PipelineStatus : int {
    Ok = 0,
    ConfigError = 1,
    InfeasiblePoint = 2,
    SolverFailure = 3,
    OscillationGuard = 4,
};

struct LadderRow {
    double R = 0.0;
    Complex q21_hat;
    Complex q21_true;
    double abs_error = 0.0;
};

struct PipelineResult {
    PipelineStatus status = PipelineStatus::Ok;
    std::string message;
    std::optional<AdmissibleCertificate> certificate;
    std::vector<LadderRow> ladder;
    double green_max_rel = 0.0;  // worst boundary/interior h disagreement
    std::vector<std::string> files_written;
};

/// Runs geometry → model → potential → admissibility → per-λ solves →
/// scattering (both forms) → reconstruction ladder, writing CSV/JSON
/// artifacts under config.out_dir.
PipelineResult run_pipeline(const RunConfig& config);

/// One solve + both scattering forms for a single λ (shared by the pipeline
/// and the acceptance suite).
struct SampleResult {
    ScatteringSample boundary;
    ScatteringSample interior;
    double residual = 0.0;
    double contraction = 0.0;  // measured Neumann factor of the solve
    SolveStatus status = SolveStatus::Ok;
};

struct PipelineContext {
    DomainMeshes meshes;
    ConductivityModel model;
    DiracPotential potential;
    JumpTrace jump;
};

/// Builds meshes/model/potential for a config; when `lambda_max` is given and
/// mesh.auto_refine is on, the area and Γ resolutions are scaled so the phase
/// advance per cell stays at or below config.phase_step at that |λ|.
PipelineContext make_context(const RunConfig& config, double lambda_max = 0.0);

SampleResult run_sample(const PipelineContext& ctx, const CgoParameters& params,
                        const SolveOptions& opts);

struct SelftestOptions {
    bool corrupt_projector_sign = false;  // deliberate-fault hook
    double resolution_scale = 1.0;
    unsigned threads = 0;
};

struct SelftestItem {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string note;
};

struct SelftestReport {
    std::vector<SelftestItem> items;
    int failures() const {
        int n = 0;
        for (const auto& it : items)
            if (!it.pass) ++n;
        return n;
    }
};

/// Invariant suite: operator identities, annulus identity, Green consistency
/// on a seeded small model, DtN oracle checks. Every item reports its margin.
SelftestReport selftest(const SelftestOptions& options = {});

}  // namespace cgo

#endif
