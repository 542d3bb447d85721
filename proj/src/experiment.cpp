#include "wavepp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <thread>

namespace wavepp {

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

}  // namespace

std::string validate_config(const RunConfig& c) {
    if (c.p < 1 || c.p > 3) throw Error("p must be 1, 2 or 3 (got " + std::to_string(c.p) + ")");
    if (c.q < 0) throw Error("q must be non-negative");
    if (c.problem == ProblemId::periodic1d ? c.N < 1 : c.level < 1) throw Error("mesh refinement must be positive");
    if (!(c.safety > 0.0)) throw Error("safety factor must be positive");
    if (c.cg_iters < 0) throw Error("cg iteration count must be non-negative");
    if (c.q > 2 * c.p)
        return "q = " + std::to_string(c.q) + " exceeds 2p = " + std::to_string(2 * c.p) +
               "; convergence is capped at order 2p";
    return {};
}

std::shared_ptr<const Mesh> build_problem_mesh(const ProblemSpec& spec, const RunConfig& c) {
    switch (spec.id) {
        case ProblemId::periodic1d: return std::make_shared<const Mesh>(generate_interval_mesh(c.N));
        case ProblemId::square2d: return std::make_shared<const Mesh>(generate_square_mesh(c.level, c.seed));
        case ProblemId::circle2d: return std::make_shared<const Mesh>(generate_disk_mesh(c.level, 2 * c.p));
    }
    throw Error("unknown problem");
}

RunArtifacts run_pipeline(const RunConfig& c) {
    const auto t0 = std::chrono::steady_clock::now();
    stage("config", [&] { return validate_config(c); });
    RunArtifacts a;
    a.spec = get_problem(c.problem);
    const ProblemSpec& spec = a.spec;
    a.mesh = stage("mesh", [&] { return build_problem_mesh(spec, c); });

    SolverConfig solver;
    solver.mode = c.solver;
    solver.iterations = c.cg_iters;
    a.processing = stage("config", [&] {
        ProcessingPlan pp = ProcessingPlan::make(c.q, c.p, solver, c.post_degree);
        pp.seeding = c.seeding;
        return pp;
    });

    const bool one_d = spec.dim == 1;
    const Shape shape = one_d ? Shape::interval : Shape::triangle;
    stage("assembly", [&] {
        auto low = build_space(a.mesh, build_reference_element(
                                           shape, one_d ? Family::spectral_gll : Family::lumped_triangle, c.p));
        AssemblyOptions lo;
        lo.mass = MassKind::lumped;
        lo.elementwise_constant_coefficients = spec.elementwise_constant_coefficients;
        a.ops_low = assemble_operators(low, spec.rho, spec.c, lo);
        const int hd = a.processing.post_degree;
        auto high = build_space(a.mesh, build_reference_element(
                                            shape, one_d ? Family::spectral_gll : Family::lagrange, hd));
        AssemblyOptions ho;
        ho.mass = MassKind::consistent;
        ho.quadrature_degree = 4 * c.p;
        ho.retain_element_matrices = false;
        a.ops_high = assemble_operators(high, spec.rho, spec.c, ho);
        a.P = build_prolongation(*low, *high);
        return 0;
    });
    const SourceSampler src_low = SourceSampler::from_problem(spec, *a.ops_low.space);
    const SourceSampler src_high = SourceSampler::from_problem(spec, *a.ops_high.space);

    a.plan = stage("timestep", [&] { return make_plan(a.ops_low, c.p, spec.T, c.safety); });

    ProcessingStats stats;
    std::tie(a.u0h, a.v0h) = stage("preprocess", [&] {
        return preprocess_initial(InitialData::from_problem(spec), a.processing, a.ops_low, src_low, &stats);
    });

    RunOptions ro;
    if (!c.trace.empty()) ro.trace_every = std::max<long>(1, a.plan.N_T / 1000);
    RunResult rr = stage("timestep", [&] { return run(a.u0h, a.v0h, a.ops_low, src_low, a.plan, ro); });
    a.u_T = std::move(rr.u);
    a.v_T = std::move(rr.v);
    a.trace = std::move(rr.trace);

    std::tie(a.u_star, a.v_star) = stage("postprocess", [&] {
        return postprocess_final(a.u_T, a.v_T, spec.T, a.processing, a.ops_low, src_low, a.ops_high, src_high, a.P,
                                 &stats);
    });
    const ErrorNorms norms =
        stage("diagnostics", [&] { return error_norms(*a.ops_high.space, a.u_star, a.v_star, spec, spec.T); });

    ErrorReport& r = a.report;
    r.problem = spec.name;
    r.p = c.p;
    r.q = c.q;
    r.level = one_d ? 0 : c.level;
    r.N = one_d ? c.N : static_cast<int>(a.mesh->num_elements());
    r.dof = static_cast<long>(a.ops_low.size());
    r.dof_high = static_cast<long>(a.ops_high.size());
    r.NT = a.plan.N_T;
    r.e0 = norms.e0;
    r.eE = norms.eE;
    r.solves = stats.solves;
    r.cg_iterations = stats.iterations;
    if (c.record_wall_time)
        r.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!c.trace.empty()) stage("output", [&] { write_trace(a.trace, c.trace); return 0; });
    return a;
}

ErrorReport run_single(const RunConfig& config) { return run_pipeline(config).report; }

unsigned worker_threads() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("WAVEPP_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) n = static_cast<unsigned>(v);
    }
    return n;
}

ConvergenceTable run_sweep(const RunConfig& config, const std::vector<int>& refinements) {
    require(refinements.size() >= 2, "run_sweep: need at least two refinements");
    const bool one_d = config.problem == ProblemId::periodic1d;
    std::vector<ErrorReport> reports(refinements.size());
    std::vector<std::exception_ptr> errors(refinements.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < refinements.size(); i = next++) {
            RunConfig c = config;
            (one_d ? c.N : c.level) = refinements[i];
            if (!config.trace.empty() && refinements.size() > 1)
                c.trace = config.trace + "." + std::to_string(refinements[i]);
            try {
                reports[i] = run_single(c);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = std::min<unsigned>(worker_threads(), static_cast<unsigned>(refinements.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return convergence_table(reports);
}

void write_trace(const std::vector<TracePoint>& trace, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open trace file " + path);
    f << "step,time,energy\n";
    char buf[96];
    for (const auto& t : trace) {
        std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g\n", t.step, t.time, t.energy);
        f << buf;
    }
    if (!f) throw Error("failed writing trace file " + path);
}

}  // namespace wavepp
