#pragma once

#include <vector>

#include "wavepp/polynomial.hpp"

namespace wavepp {

enum class Shape { interval, triangle };

/// Reference interval is [0,1]; reference triangle is (0,0), (1,0), (0,1).
[[nodiscard]] double reference_measure(Shape shape) noexcept;
[[nodiscard]] int shape_dim(Shape shape) noexcept;

struct QuadratureRule {
    std::vector<Point> points;
    std::vector<double> weights;
    int exactness_degree = 0;

    [[nodiscard]] std::size_t size() const noexcept { return weights.size(); }
};

/// n-point Gauss-Legendre rule on [0,1], exact to degree 2n-1.
[[nodiscard]] QuadratureRule gauss_legendre(int n);
/// n-point Gauss-Lobatto-Legendre rule on [0,1] (n >= 2), exact to degree 2n-3.
[[nodiscard]] QuadratureRule gauss_lobatto(int n);

/// Symmetric positive rule with at least the requested exactness.
/// Intervals use Gauss-Legendre of any degree; triangles are tabulated up to degree 12.
[[nodiscard]] QuadratureRule volume_quadrature(Shape shape, int exactness_degree);

/// Largest tabulated triangle degree.
inline constexpr int max_triangle_degree = 12;

/// Integral of x^a y^b over the reference cell.
[[nodiscard]] double reference_monomial_integral(Shape shape, int a, int b);

}  // namespace wavepp
