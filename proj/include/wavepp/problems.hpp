#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wavepp/polynomial.hpp"
#include "wavepp/space.hpp"

namespace wavepp {

enum class ProblemId { periodic1d, square2d, circle2d };

[[nodiscard]] std::string problem_name(ProblemId id);
/// Throws on an unknown name.
[[nodiscard]] ProblemId parse_problem(const std::string& name);

/// k-th time derivative of a field at (x, t); cell_center selects the side of
/// a material interface.
using SpaceTimeFn = std::function<double(const Point& x, const Point& cell_center, double t, int k)>;
using SpaceTimeGradFn = std::function<Point(const Point& x, const Point& cell_center, double t, int k)>;

struct ProblemSpec {
    ProblemId id = ProblemId::periodic1d;
    std::string name;
    int dim = 1;
    double T = 0.0;
    double phase = 0.0;
    bool periodic = false;
    bool elementwise_constant_coefficients = false;
    SpatialFn rho;
    SpatialFn c;
    SpaceTimeFn u;
    SpaceTimeGradFn grad_u;
    bool has_source = false;
    SpaceTimeFn f;
    /// When set, f(x,t,k) = source_shape(x) * source_time(t,k).
    SpatialFn source_shape;
    std::function<double(double t, int k)> source_time;

    [[nodiscard]] SpatialFn u_at(double t, int k) const;
    [[nodiscard]] SpatialFn f_at(double t, int k) const;
};

[[nodiscard]] ProblemSpec get_problem(ProblemId id);

/// First positive root of J_2.
inline constexpr double bessel_kappa = 5.135622301840683;

/// J_2(x) for x >= 0: power series below 8, std::cyl_bessel_j above.
[[nodiscard]] double bessel_j2(double x);

struct LadderCheckReport {
    int max_k = 0;
    double max_scaled_residual = 0.0;
    std::vector<double> residual_per_k;  // scaled residual of d_t^{k+2} u + L d_t^k u - d_t^k f
    bool passed = false;
};

/// Verifies d_t^{k+2} u = -L d_t^k u + d_t^k f at sample points for k = 0..max_k,
/// with L v = -rho^{-1} div(c grad v) from Richardson-extrapolated differences of
/// the analytic gradient. Residuals are scaled by the largest term magnitude.
[[nodiscard]] LadderCheckReport exact_derivative_ladder_check(const ProblemSpec& spec, int max_k,
                                                              double tolerance = 1e-8, int samples = 200);

}  // namespace wavepp
