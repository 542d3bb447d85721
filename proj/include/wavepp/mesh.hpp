#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "wavepp/polynomial.hpp"
#include "wavepp/quadrature.hpp"

namespace wavepp {

enum class BoundaryKind { dirichlet, periodic };

struct BoundaryFacet {
    std::vector<std::int32_t> vertices;  // one vertex in 1D, an edge in 2D
    BoundaryKind kind = BoundaryKind::dirichlet;
    int periodic_id = -1;

    friend bool operator==(const BoundaryFacet&, const BoundaryFacet&) = default;
};

enum class MapKind { affine, curved };

/// Polynomial map from the reference cell to one physical element.
struct GeometricMap {
    MapKind kind = MapKind::affine;
    int dim = 2;
    int degree = 1;
    /// Affine: the element vertices. Curved: 3m edge nodes, i.e. the three
    /// vertices followed by m-1 nodes per edge in triangle_edges order.
    std::vector<Point> control_points;
    std::array<Poly2, 2> phi;
    std::array<Poly2, 2> dphi_dxh;
    std::array<Poly2, 2> dphi_dyh;
};

struct MapEval {
    Point x{};
    Eigen::Matrix2d J = Eigen::Matrix2d::Identity();  // J(i,j) = d x_i / d xhat_j
    double det = 1.0;
};

struct Mesh {
    int dim = 1;
    std::vector<Point> vertices;
    std::vector<std::array<std::int32_t, 3>> elements;  // 1D uses the first two entries
    std::vector<BoundaryFacet> boundary;
    std::vector<GeometricMap> maps;

    [[nodiscard]] std::size_t num_elements() const noexcept { return elements.size(); }
    [[nodiscard]] int vertices_per_element() const noexcept { return dim + 1; }
    [[nodiscard]] Shape shape() const noexcept { return dim == 1 ? Shape::interval : Shape::triangle; }
    [[nodiscard]] bool has_curved_elements() const noexcept;
    [[nodiscard]] bool is_periodic() const noexcept;
    /// Physical centroid of the element's vertices.
    [[nodiscard]] Point element_center(std::size_t e) const;
};

/// Periodic (0,5): N cells on (0,1) and N cells on (1,5).
[[nodiscard]] Mesh generate_interval_mesh(int N);
/// Jittered structured triangulation of the unit square with n = 4 * 2^(level-1)
/// cells per side; interior vertices move by up to jitter * h.
[[nodiscard]] Mesh generate_square_mesh(int level, std::uint64_t seed = 1, double jitter = 0.15);
/// Concentric-ring triangulation of the unit disk; boundary elements curved with map_degree.
[[nodiscard]] Mesh generate_disk_mesh(int level, int map_degree);

/// Number of cells per side (square) or rings (disk) at a level.
[[nodiscard]] int square_cells_per_side(int level);
[[nodiscard]] int disk_rings(int level);

[[nodiscard]] GeometricMap affine_map(const std::vector<Point>& vertices);
/// Degree-m map interpolating 3m edge nodes; edges flagged in on_circle have
/// their nodes projected radially onto the unit circle.
[[nodiscard]] GeometricMap place_curved_map(const std::array<Point, 3>& vertices,
                                            const std::array<bool, 3>& on_circle, int m);
/// Uses the mesh boundary facets to decide which edges lie on the circle.
[[nodiscard]] GeometricMap place_curved_map(const Mesh& mesh, std::size_t element, int m);
/// Rebuilds a curved map from stored control points.
[[nodiscard]] GeometricMap curved_map_from_control_points(std::vector<Point> control_points, int m);

[[nodiscard]] MapEval eval_map(const GeometricMap& map, const Point& ref);
/// Same as eval_map without the orientation check.
[[nodiscard]] MapEval eval_map_unchecked(const GeometricMap& map, const Point& ref);

/// Sum of element measures computed with a rule of the given exactness.
[[nodiscard]] double mesh_measure(const Mesh& mesh, int quadrature_degree);
/// Largest vertex-to-vertex distance of an element.
[[nodiscard]] double element_diameter(const Mesh& mesh, std::size_t e);
[[nodiscard]] double max_element_diameter(const Mesh& mesh);

/// Sampled shape-regularity constant gamma with derivatives up to order p+1.
[[nodiscard]] double shape_regularity(const Mesh& mesh, int p);

/// Checks orientation at quadrature points and facet conformity; throws on failure.
void validate_mesh(const Mesh& mesh);

void write_mesh(const Mesh& mesh, const std::filesystem::path& path);
[[nodiscard]] Mesh read_mesh(const std::filesystem::path& path);
void write_mesh(const Mesh& mesh, std::ostream& os);
[[nodiscard]] Mesh read_mesh(std::istream& is);

}  // namespace wavepp
