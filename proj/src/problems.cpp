#include "wavepp/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wavepp/error.hpp"

namespace wavepp {

namespace {

constexpr double pi = std::numbers::pi;

// d^k/dt^k cos(w t + phi)
double cos_derivative(double w, double t, double phi, int k) {
    return std::pow(w, k) * std::cos(w * t + phi + k * pi / 2);
}

ProblemSpec periodic1d() {
    ProblemSpec s;
    s.id = ProblemId::periodic1d;
    s.name = "periodic1d";
    s.dim = 1;
    s.T = 10.0;
    s.periodic = true;
    s.elementwise_constant_coefficients = true;
    auto left = [](const Point& center) { return center[0] < 1.0; };
    s.rho = [left](const Point&, const Point& cc) { return left(cc) ? 1.0 : 0.25; };
    s.c = [left](const Point&, const Point& cc) { return left(cc) ? 1.0 : 4.0; };
    auto X = [left](double x, const Point& cc) { return left(cc) ? x : 0.25 * x + 0.75; };
    auto dX = [left](const Point& cc) { return left(cc) ? 1.0 : 0.25; };
    s.u = [X](const Point& x, const Point& cc, double t, int k) {
        const double th = 2 * pi * (X(x[0], cc) - t);
        return std::pow(-2 * pi, k) * std::sin(th + k * pi / 2);
    };
    s.grad_u = [X, dX](const Point& x, const Point& cc, double t, int k) {
        const double th = 2 * pi * (X(x[0], cc) - t);
        return Point{std::pow(-2 * pi, k) * std::cos(th + k * pi / 2) * 2 * pi * dX(cc), 0.0};
    };
    return s;
}

ProblemSpec square2d() {
    ProblemSpec s;
    s.id = ProblemId::square2d;
    s.name = "square2d";
    s.dim = 2;
    s.T = 50.0;
    s.phase = 0.5;
    const double phi = s.phase;
    auto X = [](double x) { return x + 0.1 * std::sin(pi * x); };
    auto dX = [](double x) { return 1.0 + 0.1 * pi * std::cos(pi * x); };
    s.rho = [dX](const Point& x, const Point&) {
        const double a = dX(x[0]), b = dX(x[1]);
        return (a * a + b * b) / (2 * a * b);
    };
    s.c = [dX](const Point& x, const Point&) { return 1.0 / (dX(x[0]) * dX(x[1])); };
    auto shape = [X](const Point& x) { return std::sin(2 * pi * X(x[0])) * std::sin(2 * pi * X(x[1])); };
    s.u = [shape, phi](const Point& x, const Point&, double t, int k) {
        return shape(x) * cos_derivative(2 * pi, t, phi, k);
    };
    s.grad_u = [X, dX, phi](const Point& x, const Point&, double t, int k) {
        const double g = cos_derivative(2 * pi, t, phi, k);
        const double sx = std::sin(2 * pi * X(x[0])), cx = std::cos(2 * pi * X(x[0]));
        const double sy = std::sin(2 * pi * X(x[1])), cy = std::cos(2 * pi * X(x[1]));
        return Point{2 * pi * dX(x[0]) * cx * sy * g, 2 * pi * dX(x[1]) * sx * cy * g};
    };
    s.has_source = true;
    s.source_shape = [shape](const Point& x, const Point&) { return 4 * pi * pi * shape(x); };
    s.source_time = [phi](double t, int k) { return cos_derivative(2 * pi, t, phi, k); };
    s.f = [shape, phi](const Point& x, const Point&, double t, int k) {
        return 4 * pi * pi * shape(x) * cos_derivative(2 * pi, t, phi, k);
    };
    return s;
}

// g(r) = J_2(kappa r) / r^2 and g'(r) / r as even power series in r.
struct RadialSeries {
    double g = 0.0;
    double dg_over_r = 0.0;
};

RadialSeries radial(double r) {
    const double h = bessel_kappa / 2;
    const double r2 = r * r;
    RadialSeries out;
    // term_m = (-1)^m h^(2m+2) r^(2m) / (m! (m+2)!)
    double term = h * h / 2.0;
    double rpow = 1.0;
    for (int m = 0; m < 40; ++m) {
        if (m > 0) {
            term *= -h * h / (static_cast<double>(m) * (m + 2));
        }
        out.g += term * rpow;
        if (m >= 1) out.dg_over_r += term * 2.0 * m * (rpow / r2);
        rpow *= r2;
        if (m > 2 && std::abs(term * rpow) < 1e-18 * std::abs(out.g)) break;
    }
    return out;
}

RadialSeries radial_safe(double r) {
    if (r > 1e-150) return radial(r);
    // r -> 0: only the first terms survive
    const double h = bessel_kappa / 2;
    RadialSeries out;
    out.g = h * h / 2.0;
    out.dg_over_r = -std::pow(h, 4) / 6.0 * 2.0;
    return out;
}

ProblemSpec circle2d() {
    ProblemSpec s;
    s.id = ProblemId::circle2d;
    s.name = "circle2d";
    s.dim = 2;
    s.T = 50.0;
    s.phase = 0.5;
    const double phi = s.phase;
    s.rho = [](const Point&, const Point&) { return 1.0; };
    s.c = [](const Point&, const Point&) { return 1.0; };
    s.u = [phi](const Point& x, const Point&, double t, int k) {
        const double r = std::hypot(x[0], x[1]);
        return radial_safe(r).g * (x[0] * x[0] - x[1] * x[1]) * cos_derivative(bessel_kappa, t, phi, k);
    };
    s.grad_u = [phi](const Point& x, const Point&, double t, int k) {
        const double r = std::hypot(x[0], x[1]);
        const RadialSeries rs = radial_safe(r);
        const double q = x[0] * x[0] - x[1] * x[1];
        const double g = cos_derivative(bessel_kappa, t, phi, k);
        return Point{(rs.dg_over_r * x[0] * q + rs.g * 2 * x[0]) * g, (rs.dg_over_r * x[1] * q - rs.g * 2 * x[1]) * g};
    };
    return s;
}

}  // namespace

std::string problem_name(ProblemId id) {
    switch (id) {
        case ProblemId::periodic1d: return "periodic1d";
        case ProblemId::square2d: return "square2d";
        case ProblemId::circle2d: return "circle2d";
    }
    return "?";
}

ProblemId parse_problem(const std::string& name) {
    if (name == "periodic1d") return ProblemId::periodic1d;
    if (name == "square2d") return ProblemId::square2d;
    if (name == "circle2d") return ProblemId::circle2d;
    throw Error("unknown problem '" + name + "' (expected periodic1d, square2d or circle2d)");
}

ProblemSpec get_problem(ProblemId id) {
    switch (id) {
        case ProblemId::periodic1d: return periodic1d();
        case ProblemId::square2d: return square2d();
        case ProblemId::circle2d: return circle2d();
    }
    throw Error("unknown problem id");
}

SpatialFn ProblemSpec::u_at(double t, int k) const {
    return [fn = u, t, k](const Point& x, const Point& cc) { return fn(x, cc, t, k); };
}

SpatialFn ProblemSpec::f_at(double t, int k) const {
    if (!has_source) return [](const Point&, const Point&) { return 0.0; };
    return [fn = f, t, k](const Point& x, const Point& cc) { return fn(x, cc, t, k); };
}

double bessel_j2(double x) {
    require(x >= 0.0, "bessel_j2: negative argument");
    if (x >= 8.0) return std::cyl_bessel_j(2.0, x);
    const double h = x / 2;
    double term = h * h / 2.0;
    double sum = term;
    for (int m = 1; m < 60; ++m) {
        term *= -h * h / (static_cast<double>(m) * (m + 2));
        sum += term;
        if (std::abs(term) < 1e-18 * std::max(std::abs(sum), 1e-300)) break;
    }
    return sum;
}

LadderCheckReport exact_derivative_ladder_check(const ProblemSpec& spec, int max_k, double tolerance, int samples) {
    LadderCheckReport rep;
    rep.max_k = max_k;
    const double h = 1e-3;
    // deterministic low-discrepancy samples
    std::vector<Point> pts;
    for (int i = 0; i < samples; ++i) {
        const double a = std::fmod(0.5 + i * 0.6180339887498949, 1.0);
        const double b = std::fmod(0.5 + i * 0.7548776662466927, 1.0);
        if (spec.id == ProblemId::periodic1d)
            pts.push_back({0.05 + 4.9 * a, 0.0});
        else if (spec.id == ProblemId::square2d)
            pts.push_back({0.05 + 0.9 * a, 0.05 + 0.9 * b});
        else {
            const double r = 0.95 * std::sqrt(a), th = 2 * pi * b;
            pts.push_back({r * std::cos(th), r * std::sin(th)});
        }
    }
    const double t = 0.37;
    for (int k = 0; k <= max_k; ++k) {
        double max_res = 0.0, max_scale = 0.0;
        for (const Point& x : pts) {
            const Point cc = x;
            // div(c grad u_k) by Richardson-extrapolated central differences
            auto flux = [&](const Point& y, int dir) { return spec.c(y, cc) * spec.grad_u(y, cc, t, k)[dir]; };
            auto central = [&](int dir, double step) {
                Point a = x, b = x;
                a[dir] += step;
                b[dir] -= step;
                return (flux(a, dir) - flux(b, dir)) / (2 * step);
            };
            double div = 0.0;
            for (int dir = 0; dir < spec.dim; ++dir) div += (4 * central(dir, h / 2) - central(dir, h)) / 3;
            const double Lu = -div / spec.rho(x, cc);
            const double utt = spec.u(x, cc, t, k + 2);
            const double fk = spec.has_source ? spec.f(x, cc, t, k) : 0.0;
            max_res = std::max(max_res, std::abs(utt + Lu - fk));
            max_scale = std::max({max_scale, std::abs(utt), std::abs(Lu), std::abs(fk)});
        }
        const double scaled = max_scale > 0 ? max_res / max_scale : max_res;
        rep.residual_per_k.push_back(scaled);
        rep.max_scaled_residual = std::max(rep.max_scaled_residual, scaled);
    }
    rep.passed = rep.max_scaled_residual < tolerance;
    return rep;
}

}  // namespace wavepp
