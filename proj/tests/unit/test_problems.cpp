#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "wavepp/error.hpp"
#include "wavepp/problems.hpp"

using namespace wavepp;

namespace {

const ProblemId all_problems[] = {ProblemId::periodic1d, ProblemId::square2d, ProblemId::circle2d};

long double j2_series(long double x) {
    long double sum = 0, term = x * x / 8;  // m = 0: (x/2)^2 / 2!
    for (int m = 0; m < 40; ++m) {
        if (m > 0) term *= -(x * x / 4) / (static_cast<long double>(m) * (m + 2));
        sum += term;
    }
    return sum;
}

}  // namespace

TEST(Problems, NamesRoundTrip) {
    for (auto id : all_problems) {
        EXPECT_EQ(parse_problem(problem_name(id)), id);
        EXPECT_EQ(get_problem(id).name, problem_name(id));
    }
    EXPECT_THROW((void)parse_problem("sphere3d"), Error);
    EXPECT_THROW((void)parse_problem(""), Error);
}

TEST(Problems, ExactSolutionsSatisfyDerivativeLadder) {
    for (auto id : all_problems) {
        const auto rep = exact_derivative_ladder_check(get_problem(id), 8);
        EXPECT_TRUE(rep.passed) << problem_name(id) << " residual " << rep.max_scaled_residual;
        EXPECT_EQ(rep.residual_per_k.size(), 9u);
    }
}

TEST(Problems, LadderCheckFlagsCorruptedDerivative) {
    for (auto id : all_problems) {
        auto spec = get_problem(id);
        const auto u = spec.u;
        spec.u = [u](const Point& x, const Point& cc, double t, int k) { return u(x, cc, t, k) * (k == 2 ? 1.01 : 1.0); };
        const auto rep = exact_derivative_ladder_check(spec, 2);
        EXPECT_FALSE(rep.passed) << problem_name(id);
        EXPECT_GT(rep.residual_per_k[0], 1e-3) << problem_name(id);
    }
}

TEST(Problems, PeriodicTravellingWave) {
    const auto s = get_problem(ProblemId::periodic1d);
    const Point left{0.5, 0}, right{3.0, 0};
    // continuity of u and of the flux c u_x across x = 1 and x = 5 ~ 0
    for (double t : {0.0, 0.3, 1.7}) {
        EXPECT_NEAR(s.u({1, 0}, left, t, 0), s.u({1, 0}, right, t, 0), 1e-14);
        EXPECT_NEAR(s.c({1, 0}, left) * s.grad_u({1, 0}, left, t, 0)[0],
                    s.c({1, 0}, right) * s.grad_u({1, 0}, right, t, 0)[0], 1e-12);
        EXPECT_NEAR(s.u({5, 0}, right, t, 0), s.u({0, 0}, left, t, 0), 1e-13);
    }
    EXPECT_DOUBLE_EQ(std::sqrt(s.c(right, right) / s.rho(right, right)), 4.0);
    EXPECT_DOUBLE_EQ(std::sqrt(s.c(left, left) / s.rho(left, left)), 1.0);
    EXPECT_TRUE(s.periodic);
    EXPECT_TRUE(s.elementwise_constant_coefficients);
    EXPECT_DOUBLE_EQ(s.T, 10.0);
}

TEST(Problems, SquareCoefficientRanges) {
    const auto s = get_problem(ProblemId::square2d);
    double lo = 1e9, hi = 0;
    for (int i = 0; i <= 100; ++i)
        for (int j = 0; j <= 100; ++j) {
            const Point x{i / 100.0, j / 100.0};
            const double rho = s.rho(x, x), c = s.c(x, x);
            ASSERT_GT(rho, 0.0);
            ASSERT_GT(c, 0.0);
            const double speed = std::sqrt(c / rho);
            lo = std::min(lo, speed);
            hi = std::max(hi, speed);
        }
    EXPECT_NEAR(lo, 0.76, 0.01);
    EXPECT_NEAR(hi, 1.46, 0.01);
    // homogeneous Dirichlet data
    for (double t : {0.0, 1.1})
        for (double y : {0.0, 0.3, 1.0}) {
            EXPECT_NEAR(s.u({0, y}, {0, y}, t, 0), 0.0, 1e-14);
            EXPECT_NEAR(s.u({1, y}, {1, y}, t, 0), 0.0, 1e-14);
        }
    EXPECT_TRUE(s.has_source);
}

TEST(Problems, CircleMode) {
    const auto s = get_problem(ProblemId::circle2d);
    const double th = 0.4;
    for (double r : {0.3, 0.7}) {
        const Point x{r * std::cos(th), r * std::sin(th)};
        const double expected = bessel_j2(bessel_kappa * r) * std::cos(2 * th) * std::cos(0.5);
        EXPECT_NEAR(s.u(x, x, 0.0, 0), expected, 1e-13);
    }
    const Point edge{std::cos(th), std::sin(th)};
    EXPECT_NEAR(s.u(edge, edge, 0.2, 0), 0.0, 1e-13);
    EXPECT_NEAR(s.u({0, 0}, {0, 0}, 0.0, 0), 0.0, 1e-15);
    EXPECT_FALSE(s.has_source);
}

TEST(Bessel, J2Values) {
    EXPECT_EQ(bessel_j2(0.0), 0.0);
    EXPECT_NEAR(bessel_j2(bessel_kappa), 0.0, 1e-14);
    EXPECT_NEAR(bessel_j2(1.0), static_cast<double>(j2_series(1.0L)), 1e-13);
    for (double x : {0.5, 2.0, 5.0, 7.5})
        EXPECT_NEAR(bessel_j2(x), static_cast<double>(j2_series(x)), 1e-12) << x;
    EXPECT_NEAR(bessel_j2(8.0 - 1e-12), bessel_j2(8.0), 1e-11);
    EXPECT_THROW((void)bessel_j2(-1.0), Error);
}

TEST(Problems, SourcesVanishWithoutSource) {
    for (auto id : {ProblemId::periodic1d, ProblemId::circle2d}) {
        const auto f = get_problem(id).f_at(0.3, 2);
        EXPECT_EQ(f({0.2, 0.1}, {0.2, 0.1}), 0.0);
    }
    const auto s = get_problem(ProblemId::square2d);
    const Point x{0.3, 0.6};
    EXPECT_NEAR(s.f(x, x, 0.4, 1), s.source_shape(x, x) * s.source_time(0.4, 1), 1e-12);
}
