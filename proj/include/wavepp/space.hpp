#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "wavepp/mesh.hpp"
#include "wavepp/reference_element.hpp"

namespace wavepp {

/// Global nodal coefficients of one field at one time instant.
using FieldVector = std::vector<double>;

/// Spatial function sampled at x; the second argument is the centre of the
/// element the point belongs to, so piecewise data can pick its side.
using SpatialFn = std::function<double(const Point& x, const Point& cell_center)>;

/// Mesh + reference element + global numbering. Dirichlet boundary nodes are
/// not numbered; periodic partner nodes share an index.
struct DiscreteSpace {
    std::shared_ptr<const Mesh> mesh;
    ReferenceElement element;
    std::int32_t n_dofs = 0;
    std::vector<std::vector<std::int32_t>> element_dofs;  // -1 marks an eliminated node
    std::vector<Point> node_coords;
    std::vector<std::int32_t> node_owner;  // first element containing the node
    bool has_dirichlet = false;

    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(n_dofs); }
    /// True when constants lie in the stiffness kernel (no Dirichlet nodes).
    [[nodiscard]] bool constant_kernel() const noexcept { return !has_dirichlet; }
};

[[nodiscard]] std::shared_ptr<const DiscreteSpace> build_space(std::shared_ptr<const Mesh> mesh,
                                                               ReferenceElement element);

/// values_i = f(x_i); eliminated boundary nodes are implicitly zero.
[[nodiscard]] FieldVector interpolate(const DiscreteSpace& space, const SpatialFn& f);

/// Value and physical gradient of a discrete field at a reference point of element e.
struct FieldSample {
    double value = 0.0;
    Point gradient{};
};
[[nodiscard]] FieldSample evaluate_field(const DiscreteSpace& space, std::span<const double> u, std::size_t e,
                                         const Point& ref);

}  // namespace wavepp
