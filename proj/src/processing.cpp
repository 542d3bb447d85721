#include "wavepp/processing.hpp"

#include "wavepp/error.hpp"
#include "wavepp/kernels.hpp"

namespace wavepp {

ProcessingCounts processing_counts(int q) {
    require(q >= 0, "processing_counts: q must be non-negative");
    return {(q + 1) / 2, q / 2};
}

ProcessingPlan ProcessingPlan::make(int q, int p, SolverConfig solver, int post_degree) {
    const ProcessingCounts c = processing_counts(q);
    ProcessingPlan plan;
    plan.q = q;
    plan.alpha = c.alpha;
    plan.beta = c.beta;
    plan.post_degree = post_degree > 0 ? post_degree : 2 * p;
    plan.solver = solver;
    if (q > 0 && plan.post_degree < p + q)
        throw Error("post-processing degree " + std::to_string(plan.post_degree) + " is below p + q = " +
                    std::to_string(p + q));
    return plan;
}

InitialData InitialData::from_problem(const ProblemSpec& spec, double t0) {
    InitialData d;
    d.derivative = [u = spec.u, t0](const Point& x, const Point& cc, int k) { return u(x, cc, t0, k); };
    d.rho = spec.rho;
    return d;
}

SpatialFn InitialData::at(int k) const {
    return [fn = derivative, k](const Point& x, const Point& cc) { return fn(x, cc, k); };
}

FieldVector descend_rung(const WaveOperators& ops, std::span<const double> rung_k2, const SourceSampler& source,
                         double t, int k, std::span<const double> guess, const SolverConfig& config,
                         ProcessingStats* stats) {
    FieldVector rhs(rung_k2.begin(), rung_k2.end());
    kernels::scale(-1.0, rhs);
    source.add(t, k, 1.0, rhs);
    auto [x, rep] = solve_Lh_inverse(ops, rhs, guess, config);
    if (stats) {
        ++stats->solves;
        stats->iterations += rep.iterations;
    }
    const bool untouched = config.mode == SolveMode::cg_fixed && config.iterations == 0;
    if (ops.space->constant_kernel() && !untouched) {
        // L_h^{-1} fixes only the mean-free part
        const FieldVector ones(x.size(), 1.0);
        const double shift = ops.mass_mean_numerator(guess) / ops.mass_mean_numerator(ones);
        for (double& v : x) v += shift;
    }
    return x;
}

std::pair<FieldVector, FieldVector> preprocess_initial(const InitialData& data, const ProcessingPlan& plan,
                                                       const WaveOperators& ops, const SourceSampler& source,
                                                       ProcessingStats* stats) {
    const DiscreteSpace& space = *ops.space;
    const int q = plan.q;
    auto seed = [&](int k) {
        if (plan.seeding == Seeding::projection && q > 0) return project_weighted_l2(space, data.at(k), data.rho);
        return interpolate(space, data.at(k));
    };
    if (q == 0) return {interpolate(space, data.at(0)), interpolate(space, data.at(1))};
    std::vector<FieldVector> rungs(static_cast<std::size_t>(q + 2));
    rungs[static_cast<std::size_t>(q)] = seed(q);
    rungs[static_cast<std::size_t>(q + 1)] = seed(q + 1);
    for (int k = q - 1; k >= 0; --k) {
        const FieldVector guess = interpolate(space, data.at(k));
        rungs[static_cast<std::size_t>(k)] =
            descend_rung(ops, rungs[static_cast<std::size_t>(k + 2)], source, 0.0, k, guess, plan.solver, stats);
    }
    return {std::move(rungs[0]), std::move(rungs[1])};
}

std::pair<FieldVector, FieldVector> postprocess_final(std::span<const double> u_T, std::span<const double> v_T,
                                                      double T, const ProcessingPlan& plan,
                                                      const WaveOperators& ops_low, const SourceSampler& source_low,
                                                      const WaveOperators& ops_high,
                                                      const SourceSampler& source_high, const CsrMatrix& P,
                                                      ProcessingStats* stats) {
    require(static_cast<std::size_t>(P.cols()) == u_T.size() && static_cast<std::size_t>(P.rows()) == ops_high.size(),
            "postprocess_final: prolongation does not match the spaces");
    const int q = plan.q;
    if (q == 0) return {P.multiply(u_T), P.multiply(v_T)};
    const std::vector<FieldVector> low = time_derivative_ladder(ops_low, u_T, v_T, source_low, T, q + 1);
    std::vector<FieldVector> high(static_cast<std::size_t>(q + 2));
    high[static_cast<std::size_t>(q)] = P.multiply(low[static_cast<std::size_t>(q)]);
    high[static_cast<std::size_t>(q + 1)] = P.multiply(low[static_cast<std::size_t>(q + 1)]);
    for (int k = q - 1; k >= 0; --k) {
        const FieldVector guess = P.multiply(low[static_cast<std::size_t>(k)]);
        high[static_cast<std::size_t>(k)] = descend_rung(ops_high, high[static_cast<std::size_t>(k + 2)], source_high,
                                                         T, k, guess, plan.solver, stats);
    }
    return {std::move(high[0]), std::move(high[1])};
}

}  // namespace wavepp
