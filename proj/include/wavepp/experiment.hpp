#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "wavepp/diagnostics.hpp"
#include "wavepp/error.hpp"
#include "wavepp/processing.hpp"

namespace wavepp {

struct RunConfig {
    ProblemId problem = ProblemId::periodic1d;
    int p = 2;
    int q = 0;
    int level = 1;  // 2D mesh level
    int N = 5;      // 1D cells per unit subinterval
    SolveMode solver = SolveMode::direct_surrogate;
    int cg_iters = 100;
    double safety = 0.9;
    int post_degree = 0;  // 0: 2p
    Seeding seeding = Seeding::nodal;
    std::string out;
    ReportFormat format = ReportFormat::csv;
    std::string trace;  // energy trace CSV path, empty for none
    std::uint64_t seed = 1;
    bool record_wall_time = true;
};

/// Throws unless p is in {1,2,3}, q >= 0 and the refinement is positive.
/// Returns a warning for q > 2p (empty otherwise).
std::string validate_config(const RunConfig& config);

/// Error raised by one pipeline stage; what() starts with the stage name.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what)
        : Error(stage + ": " + what), stage_(std::move(stage)) {}
    [[nodiscard]] const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// Everything built by one run, for tests and diagnostics.
struct RunArtifacts {
    ErrorReport report;
    ProblemSpec spec;
    std::shared_ptr<const Mesh> mesh;
    WaveOperators ops_low;
    WaveOperators ops_high;
    CsrMatrix P;
    TimestepPlan plan;
    ProcessingPlan processing;
    FieldVector u0h, v0h;
    FieldVector u_T, v_T;
    FieldVector u_star, v_star;
    std::vector<TracePoint> trace;
};

[[nodiscard]] std::shared_ptr<const Mesh> build_problem_mesh(const ProblemSpec& spec, const RunConfig& config);

/// mesh -> spaces -> pre-processing -> time loop -> post-processing -> errors.
[[nodiscard]] RunArtifacts run_pipeline(const RunConfig& config);
[[nodiscard]] ErrorReport run_single(const RunConfig& config);

/// One run per refinement (N in 1D, level in 2D), in parallel up to WAVEPP_THREADS.
[[nodiscard]] ConvergenceTable run_sweep(const RunConfig& config, const std::vector<int>& refinements);

/// Worker count from WAVEPP_THREADS (default: hardware concurrency).
[[nodiscard]] unsigned worker_threads();

void write_trace(const std::vector<TracePoint>& trace, const std::string& path);

}  // namespace wavepp
