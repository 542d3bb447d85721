#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "wavepp/error.hpp"
#include "wavepp/quadrature.hpp"

using namespace wavepp;

namespace {

double apply(const QuadratureRule& r, int a, int b) {
    double s = 0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.points[i][0], a) * std::pow(r.points[i][1], b);
    return s;
}

}  // namespace

TEST(Quadrature, TriangleMonomialExactnessAllDegrees) {
    for (int d = 1; d <= max_triangle_degree; ++d) {
        const auto r = volume_quadrature(Shape::triangle, d);
        EXPECT_GE(r.exactness_degree, d);
        for (double w : r.weights) EXPECT_GT(w, 0.0) << "degree " << d;
        for (const auto& p : r.points) {
            EXPECT_GE(p[0], -1e-14);
            EXPECT_GE(p[1], -1e-14);
            EXPECT_LE(p[0] + p[1], 1 + 1e-14);
        }
        for (int a = 0; a <= d; ++a)
            for (int b = 0; a + b <= d; ++b) {
                const double exact = oracle::triangle_moment(a, b);
                EXPECT_NEAR(apply(r, a, b), exact, 1e-12 * exact) << "degree " << d << " x^" << a << " y^" << b;
            }
    }
}

TEST(Quadrature, TriangleRulesAreSymmetric) {
    for (int d = 1; d <= max_triangle_degree; ++d) {
        const auto r = volume_quadrature(Shape::triangle, d);
        // integrals of x^a y^b and x^b y^a agree beyond the exactness degree too
        for (int a = 0; a <= d + 2; ++a)
            for (int b = 0; b < a; ++b) EXPECT_NEAR(apply(r, a, b), apply(r, b, a), 1e-14);
    }
}

TEST(Quadrature, TriangleDegreeTwoIsEdgeMidpointRule) {
    const auto r = volume_quadrature(Shape::triangle, 2);
    ASSERT_EQ(r.size(), 3u);
    for (double w : r.weights) EXPECT_NEAR(w, 1.0 / 6, 1e-15);
}

TEST(Quadrature, TriangleBeyondTableThrows) { EXPECT_THROW((void)volume_quadrature(Shape::triangle, 13), Error); }

TEST(Quadrature, IntervalDegreeThreeIsTwoPointGauss) {
    const auto r = volume_quadrature(Shape::interval, 3);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_NEAR(r.points[0][0], 0.5 - 0.5 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(r.weights[0], 0.5, 1e-15);
}

TEST(Quadrature, GaussLegendreExactness) {
    for (int n = 1; n <= 12; ++n) {
        const auto r = gauss_legendre(n);
        for (int a = 0; a <= 2 * n - 1; ++a) EXPECT_NEAR(apply(r, a, 0), oracle::interval_moment(a), 1e-14) << n;
        // not exact one degree higher
        EXPECT_GT(std::abs(apply(r, 2 * n, 0) - oracle::interval_moment(2 * n)), 1e-15);
    }
}

TEST(Quadrature, GaussLobattoExactnessAndEndpoints) {
    for (int n = 2; n <= 8; ++n) {
        const auto r = gauss_lobatto(n);
        EXPECT_EQ(r.points.front()[0], 0.0);
        EXPECT_EQ(r.points.back()[0], 1.0);
        for (int a = 0; a <= 2 * n - 3; ++a) EXPECT_NEAR(apply(r, a, 0), oracle::interval_moment(a), 1e-14) << n;
    }
    const auto s = gauss_lobatto(3);
    EXPECT_NEAR(s.weights[0], 1.0 / 6, 1e-15);
    EXPECT_NEAR(s.weights[1], 4.0 / 6, 1e-15);
}

TEST(Quadrature, ReferenceMonomialIntegral) {
    EXPECT_NEAR(reference_monomial_integral(Shape::triangle, 2, 1), 2.0 / 120, 1e-16);
    EXPECT_NEAR(reference_monomial_integral(Shape::interval, 3, 0), 0.25, 1e-16);
    EXPECT_EQ(reference_measure(Shape::triangle), 0.5);
}
