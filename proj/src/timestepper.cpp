#include "wavepp/timestepper.hpp"

#include <cmath>
#include <string>

#include "wavepp/error.hpp"
#include "wavepp/kernels.hpp"
#include "wavepp/solvers.hpp"

namespace wavepp {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// out = -L_h in + f^{(k)}(t)
FieldVector climb(const WaveOperators& ops, std::span<const double> in, const SourceSampler& source, double t, int k) {
    FieldVector out = apply_Lh(ops, in);
    kernels::scale(-1.0, out);
    source.add(t, k, 1.0, out);
    return out;
}

bool all_finite(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * 0.0;
    return s == 0.0;
}

}  // namespace

SourceSampler SourceSampler::from_problem(const ProblemSpec& spec, const DiscreteSpace& space) {
    if (!spec.has_source) return {};
    if (spec.source_shape && spec.source_time) {
        auto shape = std::make_shared<FieldVector>(interpolate(space, spec.source_shape));
        return SourceSampler([shape, time = spec.source_time](double t, int k, double scale, std::span<double> out) {
            kernels::axpy(scale * time(t, k), *shape, out);
        });
    }
    auto sp = std::make_shared<const DiscreteSpace>(space);
    return SourceSampler([sp, f = spec.f](double t, int k, double scale, std::span<double> out) {
        const FieldVector v = interpolate(*sp, [&](const Point& x, const Point& cc) { return f(x, cc, t, k); });
        kernels::axpy(scale, v, out);
    });
}

double stability_constant(int p) {
    switch (p) {
        case 1: return 4.0;
        case 2: return 12.0;
        case 3: return 7.57;
        default: throw Error("stability_constant: p must be 1, 2 or 3");
    }
}

TimestepPlan make_plan(double sigma_bound, int p, double T, double safety) {
    require(T >= 0.0, "make_plan: negative final time");
    require(safety > 0.0, "make_plan: safety factor must be positive");
    require(sigma_bound > 0.0, "make_plan: sigma bound must be positive");
    TimestepPlan plan;
    plan.p = p;
    plan.c_p = stability_constant(p);
    plan.sigma_bound = sigma_bound;
    plan.dt_max = std::sqrt(plan.c_p / sigma_bound);
    plan.safety = safety;
    plan.T = T;
    if (T == 0.0) {
        plan.N_T = 0;
        plan.dt = 0.0;
        return plan;
    }
    plan.N_T = static_cast<long>(std::ceil(T / (safety * plan.dt_max)));
    plan.dt = T / static_cast<double>(plan.N_T);
    return plan;
}

TimestepPlan make_plan(const WaveOperators& ops, int p, double T, double safety) {
    return make_plan(estimate_sigma_max(ops), p, T, safety);
}

std::vector<FieldVector> time_derivative_ladder(const WaveOperators& ops, std::span<const double> rung0,
                                                std::span<const double> rung1, const SourceSampler& source, double t,
                                                int k_max) {
    require(k_max >= 0, "time_derivative_ladder: k_max must be non-negative");
    std::vector<FieldVector> rungs(static_cast<std::size_t>(k_max + 1));
    rungs[0].assign(rung0.begin(), rung0.end());
    if (k_max >= 1 && !rung1.empty()) rungs[1].assign(rung1.begin(), rung1.end());
    for (int k = 2; k <= k_max; ++k) {
        const auto& below = rungs[static_cast<std::size_t>(k - 2)];
        if (below.empty()) continue;
        rungs[static_cast<std::size_t>(k)] = climb(ops, below, source, t, k - 2);
    }
    return rungs;
}

WaveState first_step(std::span<const double> u0, std::span<const double> v0, const WaveOperators& ops,
                     const SourceSampler& source, const TimestepPlan& plan) {
    const double dt = plan.dt;
    WaveState s;
    s.u_prev.assign(u0.begin(), u0.end());
    s.u_curr.assign(u0.begin(), u0.end());
    kernels::axpy(dt, v0, s.u_curr);
    FieldVector even(u0.begin(), u0.end());
    FieldVector odd(v0.begin(), v0.end());
    for (int a = 1; a <= plan.p; ++a) {
        even = climb(ops, even, source, 0.0, 2 * a - 2);
        odd = climb(ops, odd, source, 0.0, 2 * a - 1);
        kernels::axpy(std::pow(dt, 2 * a) / factorial(2 * a), even, s.u_curr);
        kernels::axpy(std::pow(dt, 2 * a + 1) / factorial(2 * a + 1), odd, s.u_curr);
    }
    s.n = 1;
    s.t = dt;
    if (!all_finite(s.u_curr)) throw InstabilityError("non-finite values after the first step", 1);
    return s;
}

void dablain_step(WaveState& s, const WaveOperators& ops, const SourceSampler& source, const TimestepPlan& plan) {
    const double dt = plan.dt;
    FieldVector next(s.u_curr.size());
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = 2.0 * s.u_curr[i] - s.u_prev[i];
    FieldVector rung = s.u_curr;
    for (int a = 1; a <= plan.p; ++a) {
        rung = climb(ops, rung, source, s.t, 2 * a - 2);
        kernels::axpy(2.0 * std::pow(dt, 2 * a) / factorial(2 * a), rung, next);
    }
    s.u_prev = std::move(s.u_curr);
    s.u_curr = std::move(next);
    ++s.n;
    s.t = static_cast<double>(s.n) * dt;
    if (!all_finite(s.u_curr)) throw InstabilityError("non-finite values at step " + std::to_string(s.n), s.n);
}

FieldVector reconstruct_velocity(std::span<const double> u_next, std::span<const double> u_prev,
                                 const WaveOperators& ops, const SourceSampler& source, const TimestepPlan& plan,
                                 int order, double t) {
    if (order != 2 && order != 4 && order != 6) throw Error("reconstruct_velocity: order must be 2, 4 or 6");
    if (order > 2 * plan.p) throw Error("reconstruct_velocity: order exceeds 2p");
    const double dt = plan.dt;
    FieldVector v2(u_next.size());
    for (std::size_t i = 0; i < v2.size(); ++i) v2[i] = (u_next[i] - u_prev[i]) / (2.0 * dt);
    if (order == 2) return v2;
    const std::size_t n = v2.size();
    // L v2 - f'
    FieldVector Lv2 = apply_Lh(ops, v2);
    FieldVector f1(n, 0.0);
    source.add(t, 1, 1.0, f1);
    FieldVector v = v2;
    for (std::size_t i = 0; i < n; ++i) v[i] += dt * dt / 6.0 * (Lv2[i] - f1[i]);
    if (order == 4) return v;
    FieldVector L2v2 = apply_Lh(ops, Lv2);
    FieldVector Lf1 = apply_Lh(ops, f1);
    FieldVector f3(n, 0.0);
    source.add(t, 3, 1.0, f3);
    const double dt4 = dt * dt * dt * dt;
    for (std::size_t i = 0; i < n; ++i) v[i] += dt4 * (7.0 / 360.0 * (L2v2[i] - Lf1[i]) - f3[i] / 120.0);
    return v;
}

double discrete_energy(const WaveOperators& ops, std::span<const double> u, std::span<const double> v) {
    const FieldVector Mv = ops.apply_mass(v);
    const FieldVector Au = ops.apply_stiffness(u);
    return 0.5 * kernels::dot(v, Mv) + 0.5 * kernels::dot(u, Au);
}

RunResult run(std::span<const double> u0, std::span<const double> v0, const WaveOperators& ops,
              const SourceSampler& source, const TimestepPlan& plan, const RunOptions& options) {
    RunResult res;
    if (plan.N_T == 0) {
        res.u.assign(u0.begin(), u0.end());
        res.v.assign(v0.begin(), v0.end());
        if (options.trace_every > 0) res.trace.push_back({0, 0.0, discrete_energy(ops, u0, v0)});
        return res;
    }
    if (options.trace_every > 0) res.trace.push_back({0, 0.0, discrete_energy(ops, u0, v0)});
    WaveState s = first_step(u0, v0, ops, source, plan);
    const int order = 2 * plan.p;
    // steps n <= N_T; the energy at step n uses u^{n-1} and u^{n+1}
    while (s.n <= plan.N_T) {
        const long n = s.n;
        const bool traced = n == plan.N_T || (options.trace_every > 0 && n % options.trace_every == 0);
        FieldVector u_before;
        if (traced) u_before = s.u_prev;
        dablain_step(s, ops, source, plan);
        if (!traced) continue;
        const double t = static_cast<double>(n) * plan.dt;
        FieldVector v = reconstruct_velocity(s.u_curr, u_before, ops, source, plan, order, n == plan.N_T ? plan.T : t);
        if (options.trace_every > 0 && n % options.trace_every == 0)
            res.trace.push_back({n, t, discrete_energy(ops, s.u_prev, v)});
        if (n == plan.N_T) {
            res.v = std::move(v);
            res.u = s.u_prev;
        }
    }
    res.steps = plan.N_T;
    return res;
}

}  // namespace wavepp
