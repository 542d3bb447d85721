#pragma once

#include <array>
#include <string>
#include <vector>

#include "wavepp/polynomial.hpp"
#include "wavepp/quadrature.hpp"

namespace wavepp {

enum class Family { spectral_gll, lumped_triangle, lagrange };

[[nodiscard]] std::string family_name(Family f);

enum class NodeKind { vertex, edge, interior };

/// Where a node sits on the reference cell. For edge nodes, t is the
/// position along the edge measured from its first vertex.
struct NodeTopology {
    NodeKind kind = NodeKind::interior;
    int entity = -1;  // vertex or edge index
    double t = 0.0;
};

/// Local edges of the reference triangle as vertex pairs.
inline constexpr std::array<std::array<int, 2>, 3> triangle_edges{{{0, 1}, {1, 2}, {2, 0}}};

struct ReferenceElement {
    Shape shape = Shape::interval;
    Family family = Family::spectral_gll;
    int degree = 1;
    std::vector<Point> nodes;  // reference coordinates, (lambda_1, lambda_2) on triangles
    std::vector<NodeTopology> topology;
    std::vector<Poly2> basis;
    std::vector<std::array<Poly2, 2>> basis_grad;
    std::vector<double> lump_weights;  // empty for lagrange
    int basis_degree = 1;              // highest polynomial degree in the span

    [[nodiscard]] std::size_t basis_dim() const noexcept { return basis.size(); }
    [[nodiscard]] int dim() const noexcept { return shape_dim(shape); }
};

/// Supported: interval/spectral_gll p=1..6, triangle/lumped_triangle p=1..3,
/// triangle/lagrange p=1..6.
[[nodiscard]] ReferenceElement build_reference_element(Shape shape, Family family, int degree);

/// Node-collocated rule whose weights are the lumping weights.
[[nodiscard]] QuadratureRule lumped_quadrature(const ReferenceElement& elem);

struct BasisValues {
    std::vector<double> values;
    std::vector<Point> gradients;
};

[[nodiscard]] BasisValues eval_basis(const ReferenceElement& elem, const Point& x);

/// Basis values and reference gradients at every point of a rule, row-major [q][i].
struct Tabulation {
    std::size_t nq = 0;
    std::size_t nb = 0;
    std::vector<double> value;
    std::vector<double> dx;
    std::vector<double> dy;

    [[nodiscard]] double v(std::size_t q, std::size_t i) const noexcept { return value[q * nb + i]; }
    [[nodiscard]] double gx(std::size_t q, std::size_t i) const noexcept { return dx[q * nb + i]; }
    [[nodiscard]] double gy(std::size_t q, std::size_t i) const noexcept { return dy[q * nb + i]; }
};

[[nodiscard]] Tabulation tabulate(const ReferenceElement& elem, const std::vector<Point>& points);

/// Edge parameters of the degree-3 lumped triangle.
inline constexpr double lumped_p3_alpha = 0.2934695559090402;
inline constexpr double lumped_p3_beta = 0.2073451756635909;

}  // namespace wavepp
