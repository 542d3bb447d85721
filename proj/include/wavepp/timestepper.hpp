#pragma once

#include <functional>
#include <span>
#include <vector>

#include "wavepp/assembly.hpp"
#include "wavepp/problems.hpp"

namespace wavepp {

/// Nodal values of time derivatives of the source on one space.
class SourceSampler {
public:
    using Fn = std::function<void(double t, int k, double scale, std::span<double> out)>;

    /// Zero source.
    SourceSampler() = default;
    explicit SourceSampler(Fn fn) : fn_(std::move(fn)) {}
    /// Interpolates the problem source in the space; separable sources are
    /// sampled once and scaled in time.
    static SourceSampler from_problem(const ProblemSpec& spec, const DiscreteSpace& space);

    [[nodiscard]] bool is_zero() const noexcept { return !fn_; }
    /// out += scale * interp(d_t^k f(., t))
    void add(double t, int k, double scale, std::span<double> out) const {
        if (fn_) fn_(t, k, scale, out);
    }

private:
    Fn fn_;
};

/// Stability constant c_p of the order-2p scheme (p = 1, 2, 3).
[[nodiscard]] double stability_constant(int p);

struct TimestepPlan {
    int p = 1;
    double dt = 0.0;
    double dt_max = 0.0;
    double safety = 0.9;
    double T = 0.0;
    long N_T = 0;
    double c_p = 4.0;
    double sigma_bound = 0.0;
};

/// dt_max = sqrt(c_p / sigma), N_T = ceil(T / (safety dt_max)), dt = T / N_T.
[[nodiscard]] TimestepPlan make_plan(double sigma_bound, int p, double T, double safety = 0.9);
[[nodiscard]] TimestepPlan make_plan(const WaveOperators& ops, int p, double T, double safety = 0.9);

/// Rungs 0..k_max of rung_{k+2} = -L_h rung_k + interp(d_t^k f(t)).
/// Odd rungs are left empty when rung1 is empty.
[[nodiscard]] std::vector<FieldVector> time_derivative_ladder(const WaveOperators& ops, std::span<const double> rung0,
                                                              std::span<const double> rung1,
                                                              const SourceSampler& source, double t, int k_max);

struct WaveState {
    FieldVector u_prev;
    FieldVector u_curr;
    long n = 0;
    double t = 0.0;
};

/// Taylor start u^1 = sum_{j <= 2p+1} dt^j / j! rung_j(0).
[[nodiscard]] WaveState first_step(std::span<const double> u0, std::span<const double> v0, const WaveOperators& ops,
                                   const SourceSampler& source, const TimestepPlan& plan);

/// u^{n+1} = -u^{n-1} + 2u^n + 2 sum_{a=1}^p dt^{2a}/(2a)! rung_{2a}(t_n).
void dablain_step(WaveState& state, const WaveOperators& ops, const SourceSampler& source, const TimestepPlan& plan);

/// Velocity at time t from u(t + dt) and u(t - dt), accurate to the given order (2, 4 or 6).
[[nodiscard]] FieldVector reconstruct_velocity(std::span<const double> u_next, std::span<const double> u_prev,
                                               const WaveOperators& ops, const SourceSampler& source,
                                               const TimestepPlan& plan, int order, double t);

struct TracePoint {
    long step = 0;
    double time = 0.0;
    double energy = 0.0;
};

struct RunOptions {
    /// Record the discrete energy every this many steps (0 disables the trace).
    long trace_every = 0;
};

struct RunResult {
    FieldVector u;
    FieldVector v;
    std::vector<TracePoint> trace;
    long steps = 0;
};

/// First step, N_T - 1 scheme steps, one extra step for the velocity.
[[nodiscard]] RunResult run(std::span<const double> u0, std::span<const double> v0, const WaveOperators& ops,
                            const SourceSampler& source, const TimestepPlan& plan, const RunOptions& options = {});

/// 1/2 v^T M v + 1/2 u^T A u
[[nodiscard]] double discrete_energy(const WaveOperators& ops, std::span<const double> u, std::span<const double> v);

}  // namespace wavepp
