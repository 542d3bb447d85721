#pragma once

#include <functional>
#include <utility>

#include "wavepp/problems.hpp"
#include "wavepp/solvers.hpp"
#include "wavepp/timestepper.hpp"

namespace wavepp {

/// alpha = ceil(q/2) even-rung solves, beta = floor(q/2) odd-rung solves.
struct ProcessingCounts {
    int alpha = 0;
    int beta = 0;
};
[[nodiscard]] ProcessingCounts processing_counts(int q);

enum class Seeding {
    nodal,       // interpolate the exact derivatives at the nodes
    projection,  // rho-weighted L2 projection of the exact derivatives
};

struct ProcessingPlan {
    int q = 0;
    int alpha = 0;
    int beta = 0;
    int post_degree = 0;  // 0: 2p
    Seeding seeding = Seeding::nodal;
    SolverConfig solver;

    static ProcessingPlan make(int q, int p, SolverConfig solver = {}, int post_degree = 0);
};

/// k-th time derivative of the exact field at the initial time.
struct InitialData {
    std::function<double(const Point& x, const Point& cell_center, int k)> derivative;
    SpatialFn rho;

    [[nodiscard]] static InitialData from_problem(const ProblemSpec& spec, double t0 = 0.0);
    [[nodiscard]] SpatialFn at(int k) const;
};

struct ProcessingStats {
    int solves = 0;
    long iterations = 0;
};

/// (u0h, v0h) whose rungs q and q+1 match the exact derivatives.
[[nodiscard]] std::pair<FieldVector, FieldVector> preprocess_initial(const InitialData& data,
                                                                     const ProcessingPlan& plan,
                                                                     const WaveOperators& ops,
                                                                     const SourceSampler& source,
                                                                     ProcessingStats* stats = nullptr);

/// (u*, v*) in the high space: climb (u_T, v_T) to rungs q, q+1 in the low
/// space, prolong, and descend with L_h*^{-1}.
[[nodiscard]] std::pair<FieldVector, FieldVector> postprocess_final(std::span<const double> u_T,
                                                                    std::span<const double> v_T, double T,
                                                                    const ProcessingPlan& plan,
                                                                    const WaveOperators& ops_low,
                                                                    const SourceSampler& source_low,
                                                                    const WaveOperators& ops_high,
                                                                    const SourceSampler& source_high,
                                                                    const CsrMatrix& P,
                                                                    ProcessingStats* stats = nullptr);

/// rung_k = L_h^{-1}(-rung_{k+2} + f_k), with the kernel component taken from the guess.
[[nodiscard]] FieldVector descend_rung(const WaveOperators& ops, std::span<const double> rung_k2,
                                       const SourceSampler& source, double t, int k,
                                       std::span<const double> guess, const SolverConfig& config,
                                       ProcessingStats* stats = nullptr);

}  // namespace wavepp
