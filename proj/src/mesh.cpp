#include "wavepp/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "wavepp/error.hpp"
#include "wavepp/reference_element.hpp"

namespace wavepp {

namespace {

double dist(const Point& a, const Point& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

double signed_area(const Point& a, const Point& b, const Point& c) {
    return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
}

void set_derivatives(GeometricMap& m) {
    for (int i = 0; i < 2; ++i) {
        m.dphi_dxh[i] = m.phi[i].dx();
        m.dphi_dyh[i] = m.phi[i].dy();
    }
}

// Reference positions of the 3m edge nodes in control-point order.
std::vector<Point> reference_edge_nodes(int m) {
    std::vector<Point> r = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    for (const auto& [a, b] : triangle_edges)
        for (int k = 1; k < m; ++k) {
            const double t = static_cast<double>(k) / m;
            r.push_back({(1.0 - t) * r[a][0] + t * r[b][0], (1.0 - t) * r[a][1] + t * r[b][1]});
        }
    return r;
}

// lambda_i, then lambda_i lambda_j (lambda_i - lambda_j)^k for i<j and k = 0..m-2.
std::vector<Poly2> curved_basis(int m) {
    const auto lam = barycentric_polys();
    std::vector<Poly2> basis(lam.begin(), lam.end());
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const Poly2 diff = lam[i] - lam[j];
            Poly2 term = lam[i] * lam[j];
            for (int k = 0; k <= m - 2; ++k) {
                basis.push_back(term);
                term = term * diff;
            }
        }
    return basis;
}

std::uint64_t edge_key(std::int32_t a, std::int32_t b) {
    const auto lo = static_cast<std::uint64_t>(std::min(a, b));
    const auto hi = static_cast<std::uint64_t>(std::max(a, b));
    return (lo << 32) | hi;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void build_maps(Mesh& mesh) {
    mesh.maps.clear();
    mesh.maps.reserve(mesh.elements.size());
    for (const auto& el : mesh.elements) {
        std::vector<Point> v;
        for (int i = 0; i < mesh.vertices_per_element(); ++i) v.push_back(mesh.vertices[static_cast<std::size_t>(el[i])]);
        mesh.maps.push_back(affine_map(v));
    }
}

}  // namespace

bool Mesh::has_curved_elements() const noexcept {
    return std::any_of(maps.begin(), maps.end(), [](const GeometricMap& m) { return m.kind == MapKind::curved; });
}

bool Mesh::is_periodic() const noexcept {
    return std::any_of(boundary.begin(), boundary.end(),
                       [](const BoundaryFacet& f) { return f.kind == BoundaryKind::periodic; });
}

Point Mesh::element_center(std::size_t e) const {
    Point c{0.0, 0.0};
    const int nv = vertices_per_element();
    for (int i = 0; i < nv; ++i) {
        const Point& v = vertices[static_cast<std::size_t>(elements[e][i])];
        c[0] += v[0] / nv;
        c[1] += v[1] / nv;
    }
    return c;
}

GeometricMap affine_map(const std::vector<Point>& v) {
    GeometricMap m;
    m.kind = MapKind::affine;
    m.degree = 1;
    m.control_points = v;
    if (v.size() == 2) {
        m.dim = 1;
        m.phi[0] = Poly2::constant(v[0][0]) + Poly2::x() * (v[1][0] - v[0][0]);
        m.phi[1] = Poly2::constant(0.0);
    } else {
        require(v.size() == 3, "affine_map: need 2 or 3 vertices");
        m.dim = 2;
        for (int i = 0; i < 2; ++i)
            m.phi[i] = Poly2::constant(v[0][i]) + Poly2::x() * (v[1][i] - v[0][i]) + Poly2::y() * (v[2][i] - v[0][i]);
    }
    set_derivatives(m);
    return m;
}

GeometricMap curved_map_from_control_points(std::vector<Point> cp, int m) {
    require(m >= 1, "curved map: degree must be positive");
    require(cp.size() == static_cast<std::size_t>(3 * m), "curved map: expected 3m control points");
    const auto ref = reference_edge_nodes(m);
    const auto basis = curved_basis(m);
    const auto n = static_cast<Eigen::Index>(ref.size());
    Eigen::MatrixXd V(n, n);
    Eigen::MatrixXd rhs(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) V(i, j) = basis[static_cast<std::size_t>(j)](ref[static_cast<std::size_t>(i)]);
        rhs(i, 0) = cp[static_cast<std::size_t>(i)][0];
        rhs(i, 1) = cp[static_cast<std::size_t>(i)][1];
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(V);
    if (!lu.isInvertible()) throw Error("curved map: singular interpolation system");
    const Eigen::MatrixXd coef = lu.solve(rhs);
    GeometricMap g;
    g.kind = MapKind::curved;
    g.dim = 2;
    g.degree = m;
    g.control_points = std::move(cp);
    for (int c = 0; c < 2; ++c) {
        Poly2 p(m);
        for (Eigen::Index j = 0; j < n; ++j) p += basis[static_cast<std::size_t>(j)] * coef(j, c);
        g.phi[c] = p;
    }
    set_derivatives(g);
    return g;
}

GeometricMap place_curved_map(const std::array<Point, 3>& v, const std::array<bool, 3>& on_circle, int m) {
    std::vector<Point> cp(v.begin(), v.end());
    for (std::size_t e = 0; e < 3; ++e) {
        const auto [a, b] = triangle_edges[e];
        for (int k = 1; k < m; ++k) {
            const double t = static_cast<double>(k) / m;
            Point x{(1.0 - t) * v[a][0] + t * v[b][0], (1.0 - t) * v[a][1] + t * v[b][1]};
            if (on_circle[e]) {
                const double r = std::hypot(x[0], x[1]);
                x = {x[0] / r, x[1] / r};
            }
            cp.push_back(x);
        }
    }
    return curved_map_from_control_points(std::move(cp), m);
}

GeometricMap place_curved_map(const Mesh& mesh, std::size_t element, int m) {
    require(mesh.dim == 2, "place_curved_map: needs a triangle mesh");
    std::map<std::uint64_t, bool> bnd;
    for (const auto& f : mesh.boundary)
        if (f.vertices.size() == 2 && f.kind == BoundaryKind::dirichlet) bnd[edge_key(f.vertices[0], f.vertices[1])] = true;
    const auto& el = mesh.elements[element];
    std::array<Point, 3> v{};
    std::array<bool, 3> on{};
    bool any = false;
    for (int i = 0; i < 3; ++i) v[i] = mesh.vertices[static_cast<std::size_t>(el[i])];
    for (std::size_t e = 0; e < 3; ++e) {
        const auto [a, b] = triangle_edges[e];
        on[e] = bnd.count(edge_key(el[a], el[b])) > 0;
        any = any || on[e];
    }
    require(any, "place_curved_map: element " + std::to_string(element) + " has no boundary edge");
    return place_curved_map(v, on, m);
}

MapEval eval_map_unchecked(const GeometricMap& map, const Point& ref) {
    MapEval r;
    r.x = {map.phi[0](ref), map.phi[1](ref)};
    if (map.dim == 1) {
        r.J << map.dphi_dxh[0](ref), 0.0, 0.0, 1.0;
        r.det = r.J(0, 0);
        return r;
    }
    r.J << map.dphi_dxh[0](ref), map.dphi_dyh[0](ref), map.dphi_dxh[1](ref), map.dphi_dyh[1](ref);
    r.det = r.J(0, 0) * r.J(1, 1) - r.J(0, 1) * r.J(1, 0);
    return r;
}

MapEval eval_map(const GeometricMap& map, const Point& ref) {
    MapEval r = eval_map_unchecked(map, ref);
    if (!(r.det > 0.0)) throw Error("eval_map: non-positive Jacobian determinant (inverted element)");
    return r;
}

int square_cells_per_side(int level) {
    require(level >= 1, "square mesh: level must be >= 1");
    return 4 << (level - 1);
}

int disk_rings(int level) {
    require(level >= 1, "disk mesh: level must be >= 1");
    return 4 << (level - 1);
}

Mesh generate_interval_mesh(int N) {
    require(N >= 1, "interval mesh: N must be >= 1");
    Mesh m;
    m.dim = 1;
    for (int i = 0; i <= N; ++i) m.vertices.push_back({static_cast<double>(i) / N, 0.0});
    for (int i = 1; i <= N; ++i) m.vertices.push_back({1.0 + 4.0 * static_cast<double>(i) / N, 0.0});
    for (int i = 0; i < 2 * N; ++i) m.elements.push_back({i, i + 1, -1});
    m.boundary.push_back({{0}, BoundaryKind::periodic, 0});
    m.boundary.push_back({{2 * N}, BoundaryKind::periodic, 0});
    build_maps(m);
    return m;
}

Mesh generate_square_mesh(int level, std::uint64_t seed, double jitter) {
    const int n = square_cells_per_side(level);
    const double h = 1.0 / n;
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    Mesh m;
    m.dim = 2;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            Point x{i * h, j * h};
            if (i > 0 && i < n && j > 0 && j < n) {
                x[0] += (2.0 * uniform() - 1.0) * jitter * h;
                x[1] += (2.0 * uniform() - 1.0) * jitter * h;
            }
            m.vertices.push_back(x);
        }
    auto id = [n](int i, int j) { return static_cast<std::int32_t>(j * (n + 1) + i); };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const auto a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
            const double ac = dist(m.vertices[static_cast<std::size_t>(a)], m.vertices[static_cast<std::size_t>(c)]);
            const double bd = dist(m.vertices[static_cast<std::size_t>(b)], m.vertices[static_cast<std::size_t>(d)]);
            const bool use_ac = ac < bd || (ac == bd && (i + j) % 2 == 0);
            if (use_ac) {
                m.elements.push_back({a, b, c});
                m.elements.push_back({a, c, d});
            } else {
                m.elements.push_back({a, b, d});
                m.elements.push_back({b, c, d});
            }
        }
    for (int i = 0; i < n; ++i) {
        m.boundary.push_back({{id(i, 0), id(i + 1, 0)}, BoundaryKind::dirichlet, -1});
        m.boundary.push_back({{id(n, i), id(n, i + 1)}, BoundaryKind::dirichlet, -1});
        m.boundary.push_back({{id(i + 1, n), id(i, n)}, BoundaryKind::dirichlet, -1});
        m.boundary.push_back({{id(0, i + 1), id(0, i)}, BoundaryKind::dirichlet, -1});
    }
    build_maps(m);
    return m;
}

Mesh generate_disk_mesh(int level, int map_degree) {
    require(map_degree >= 1, "disk mesh: map degree must be >= 1");
    const int nr = disk_rings(level);
    Mesh m;
    m.dim = 2;
    m.vertices.push_back({0.0, 0.0});
    std::vector<std::int32_t> ring_start = {0};
    for (int j = 1; j <= nr; ++j) {
        ring_start.push_back(static_cast<std::int32_t>(m.vertices.size()));
        const int cnt = 6 * j;
        const double r = static_cast<double>(j) / nr;
        for (int k = 0; k < cnt; ++k) {
            const double th = 2.0 * std::numbers::pi * k / cnt;
            m.vertices.push_back({r * std::cos(th), r * std::sin(th)});
        }
    }
    auto add = [&m](std::int32_t a, std::int32_t b, std::int32_t c) {
        const auto& va = m.vertices[static_cast<std::size_t>(a)];
        const auto& vb = m.vertices[static_cast<std::size_t>(b)];
        const auto& vc = m.vertices[static_cast<std::size_t>(c)];
        if (signed_area(va, vb, vc) > 0)
            m.elements.push_back({a, b, c});
        else
            m.elements.push_back({a, c, b});
    };
    for (int k = 0; k < 6; ++k) add(0, ring_start[1] + k, ring_start[1] + (k + 1) % 6);
    for (int j = 2; j <= nr; ++j) {
        const int n1 = 6 * (j - 1), n2 = 6 * j;
        auto inner = [&](int i) { return ring_start[static_cast<std::size_t>(j - 1)] + i % n1; };
        auto outer = [&](int i) { return ring_start[static_cast<std::size_t>(j)] + i % n2; };
        int i1 = 0, i2 = 0;
        while (i1 < n1 || i2 < n2) {
            bool advance_outer;
            if (i1 == n1)
                advance_outer = true;
            else if (i2 == n2)
                advance_outer = false;
            else {
                const double d_out = dist(m.vertices[static_cast<std::size_t>(inner(i1))],
                                          m.vertices[static_cast<std::size_t>(outer(i2 + 1))]);
                const double d_in = dist(m.vertices[static_cast<std::size_t>(inner(i1 + 1))],
                                         m.vertices[static_cast<std::size_t>(outer(i2))]);
                advance_outer = d_out <= d_in;
            }
            if (advance_outer) {
                add(inner(i1), outer(i2), outer(i2 + 1));
                ++i2;
            } else {
                add(inner(i1), outer(i2), inner(i1 + 1));
                ++i1;
            }
        }
    }
    const int nb = 6 * nr;
    for (int k = 0; k < nb; ++k)
        m.boundary.push_back({{ring_start.back() + k, ring_start.back() + (k + 1) % nb}, BoundaryKind::dirichlet, -1});
    build_maps(m);
    std::map<std::uint64_t, bool> bnd;
    for (const auto& f : m.boundary) bnd[edge_key(f.vertices[0], f.vertices[1])] = true;
    for (std::size_t e = 0; e < m.elements.size(); ++e) {
        const auto& el = m.elements[e];
        std::array<bool, 3> on{};
        bool any = false;
        for (std::size_t k = 0; k < 3; ++k) {
            on[k] = bnd.count(edge_key(el[triangle_edges[k][0]], el[triangle_edges[k][1]])) > 0;
            any = any || on[k];
        }
        if (!any) continue;
        std::array<Point, 3> v{};
        for (int i = 0; i < 3; ++i) v[i] = m.vertices[static_cast<std::size_t>(el[i])];
        m.maps[e] = place_curved_map(v, on, map_degree);
    }
    return m;
}

double mesh_measure(const Mesh& mesh, int quadrature_degree) {
    const QuadratureRule rule = volume_quadrature(mesh.shape(), quadrature_degree);
    double total = 0.0;
    for (const auto& map : mesh.maps)
        for (std::size_t q = 0; q < rule.size(); ++q) total += rule.weights[q] * eval_map(map, rule.points[q]).det;
    return total;
}

double element_diameter(const Mesh& mesh, std::size_t e) {
    double d = 0.0;
    const int nv = mesh.vertices_per_element();
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            d = std::max(d, dist(mesh.vertices[static_cast<std::size_t>(mesh.elements[e][i])],
                                 mesh.vertices[static_cast<std::size_t>(mesh.elements[e][j])]));
    return d;
}

double max_element_diameter(const Mesh& mesh) {
    double d = 0.0;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) d = std::max(d, element_diameter(mesh, e));
    return d;
}

double shape_regularity(const Mesh& mesh, int p) {
    const int deg = std::min(4 * p, mesh.dim == 1 ? 4 * p : max_triangle_degree);
    const QuadratureRule rule = volume_quadrature(mesh.shape(), deg);
    double gamma = 0.0;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        const auto& map = mesh.maps[e];
        const double h = element_diameter(mesh, e);
        double inv = 0.0;
        for (const Point& x : rule.points) {
            const MapEval me = eval_map(map, x);
            if (mesh.dim == 1) {
                inv = std::max(inv, h / std::abs(me.det));
            } else {
                const Eigen::JacobiSVD<Eigen::Matrix2d> svd(me.J);
                inv = std::max(inv, h / svd.singularValues()(1));
            }
        }
        double higher = 0.0;
        for (int order = 2; order <= p + 1; ++order)
            for (int a = order; a >= 0; --a) {
                const int b = order - a;
                if (mesh.dim == 1 && b > 0) continue;
                const Poly2 dx = map.phi[0].derivative(a, b);
                const Poly2 dy = map.phi[1].derivative(a, b);
                if (dx.max_abs_coeff() == 0.0 && dy.max_abs_coeff() == 0.0) continue;
                double sup = 0.0;
                for (const Point& x : rule.points) sup = std::max(sup, std::hypot(dx(x), dy(x)));
                higher += sup / std::pow(h, order);
            }
        gamma = std::max(gamma, inv + higher);
    }
    return gamma;
}

void validate_mesh(const Mesh& mesh) {
    require(!mesh.elements.empty(), "mesh has no elements");
    require(mesh.maps.size() == mesh.elements.size(), "mesh: one geometric map per element required");
    const int nv = mesh.vertices_per_element();
    const auto nvert = static_cast<std::int32_t>(mesh.vertices.size());
    int max_deg = 1;
    for (const auto& mp : mesh.maps) max_deg = std::max(max_deg, mp.degree);
    const QuadratureRule rule = volume_quadrature(mesh.shape(), std::min(2 * max_deg, max_triangle_degree));
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        for (int i = 0; i < nv; ++i)
            require(mesh.elements[e][i] >= 0 && mesh.elements[e][i] < nvert,
                    "element " + std::to_string(e) + " references a missing vertex");
        std::vector<Point> pts = rule.points;
        pts.push_back({0.0, 0.0});
        pts.push_back({1.0, 0.0});
        if (mesh.dim == 2) pts.push_back({0.0, 1.0});
        for (const Point& x : pts)
            if (!(eval_map_unchecked(mesh.maps[e], x).det > 0.0))
                throw Error("element " + std::to_string(e) + " has non-positive orientation");
    }
    // facet conformity
    std::map<std::uint64_t, int> count;
    if (mesh.dim == 1) {
        for (const auto& el : mesh.elements) {
            ++count[static_cast<std::uint64_t>(el[0])];
            ++count[static_cast<std::uint64_t>(el[1])];
        }
        for (const auto& f : mesh.boundary) {
            require(f.vertices.size() == 1, "1D boundary facets have one vertex");
            require(count[static_cast<std::uint64_t>(f.vertices[0])] == 1, "boundary facet is not on the boundary");
        }
        for (const auto& [v, c] : count) require(c <= 2, "vertex shared by more than two cells");
    } else {
        for (const auto& el : mesh.elements)
            for (const auto& [a, b] : triangle_edges) ++count[edge_key(el[a], el[b])];
        std::map<std::uint64_t, int> tagged;
        for (const auto& f : mesh.boundary) {
            require(f.vertices.size() == 2, "2D boundary facets have two vertices");
            ++tagged[edge_key(f.vertices[0], f.vertices[1])];
        }
        for (const auto& [k, c] : count) {
            require(c <= 2, "non-conforming mesh: edge shared by more than two elements");
            if (c == 1) require(tagged.count(k) == 1, "untagged boundary edge");
        }
        for (const auto& [k, c] : tagged) require(count[k] == 1 && c == 1, "boundary facet is not a boundary edge");
    }
    std::map<int, int> periodic;
    for (const auto& f : mesh.boundary)
        if (f.kind == BoundaryKind::periodic) ++periodic[f.periodic_id];
    for (const auto& [id, c] : periodic)
        require(c == 2, "periodic id " + std::to_string(id) + " must tag exactly two facets");
}

void write_mesh(const Mesh& mesh, std::ostream& os) {
    const int nv = mesh.vertices_per_element();
    os << "wavepp-mesh v1 dim=" << mesh.dim << "\n";
    os << "vertices " << mesh.vertices.size() << "\n";
    for (const Point& v : mesh.vertices) {
        os << fmt17(v[0]);
        if (mesh.dim == 2) os << " " << fmt17(v[1]);
        os << "\n";
    }
    os << "elements " << mesh.elements.size() << "\n";
    for (const auto& el : mesh.elements) {
        for (int i = 0; i < nv; ++i) os << (i ? " " : "") << el[i];
        os << "\n";
    }
    os << "boundary " << mesh.boundary.size() << "\n";
    for (const auto& f : mesh.boundary) {
        os << "facet";
        for (auto v : f.vertices) os << " " << v;
        if (f.kind == BoundaryKind::dirichlet)
            os << " tag=dirichlet\n";
        else
            os << " tag=periodic:" << f.periodic_id << "\n";
    }
    for (std::size_t e = 0; e < mesh.maps.size(); ++e) {
        const auto& mp = mesh.maps[e];
        if (mp.kind != MapKind::curved) continue;
        os << "curved " << e << " degree=" << mp.degree << "\n";
        for (const Point& c : mp.control_points) os << fmt17(c[0]) << " " << fmt17(c[1]) << "\n";
    }
}

void write_mesh(const Mesh& mesh, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    write_mesh(mesh, os);
    if (!os) throw Error("failed writing " + path.string());
}

namespace {

struct LineReader {
    std::istream& is;
    int line = 0;
    std::string text;

    bool next() {
        while (std::getline(is, text)) {
            ++line;
            if (text.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    }
    void expect_next(const char* what) {
        if (!next()) throw MeshFormatError(std::string("unexpected end of file, expected ") + what, line + 1);
    }
    [[noreturn]] void fail(const std::string& msg) const { throw MeshFormatError(msg, line); }
};

double parse_double(const std::string& tok, const LineReader& r) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) r.fail("bad number '" + tok + "'");
        return v;
    } catch (const std::logic_error&) {
        r.fail("bad number '" + tok + "'");
    }
}

long parse_int(const std::string& tok, const LineReader& r) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(tok, &pos);
        if (pos != tok.size()) r.fail("bad integer '" + tok + "'");
        return v;
    } catch (const std::logic_error&) {
        r.fail("bad integer '" + tok + "'");
    }
}

std::vector<std::string> split(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

long section_count(LineReader& r, const char* name) {
    r.expect_next(name);
    const auto tok = split(r.text);
    if (tok.size() != 2 || tok[0] != name) r.fail(std::string("expected '") + name + " <count>'");
    const long n = parse_int(tok[1], r);
    if (n < 0) r.fail("negative count");
    return n;
}

}  // namespace

Mesh read_mesh(std::istream& is) {
    LineReader r{is};
    Mesh m;
    r.expect_next("header");
    {
        const auto tok = split(r.text);
        if (tok.size() != 3 || tok[0] != "wavepp-mesh" || tok[1] != "v1" || tok[2].rfind("dim=", 0) != 0)
            r.fail("expected header 'wavepp-mesh v1 dim=<d>'");
        m.dim = static_cast<int>(parse_int(tok[2].substr(4), r));
        if (m.dim != 1 && m.dim != 2) r.fail("dim must be 1 or 2");
    }
    const long nv = section_count(r, "vertices");
    for (long i = 0; i < nv; ++i) {
        r.expect_next("vertex coordinates");
        const auto tok = split(r.text);
        if (static_cast<int>(tok.size()) != m.dim) r.fail("expected " + std::to_string(m.dim) + " coordinates");
        m.vertices.push_back({parse_double(tok[0], r), m.dim == 2 ? parse_double(tok[1], r) : 0.0});
    }
    const long ne = section_count(r, "elements");
    if (ne == 0) r.fail("mesh has no elements");
    const int per = m.dim + 1;
    for (long i = 0; i < ne; ++i) {
        r.expect_next("element vertices");
        const auto tok = split(r.text);
        if (static_cast<int>(tok.size()) != per) r.fail("expected " + std::to_string(per) + " vertex indices");
        std::array<std::int32_t, 3> el{-1, -1, -1};
        for (int k = 0; k < per; ++k) {
            const long v = parse_int(tok[static_cast<std::size_t>(k)], r);
            if (v < 0 || v >= nv) r.fail("vertex index out of range");
            el[static_cast<std::size_t>(k)] = static_cast<std::int32_t>(v);
        }
        m.elements.push_back(el);
    }
    const long nb = section_count(r, "boundary");
    for (long i = 0; i < nb; ++i) {
        r.expect_next("facet");
        const auto tok = split(r.text);
        if (static_cast<int>(tok.size()) != m.dim + 2 || tok[0] != "facet")
            r.fail("expected 'facet <vertices> tag=<...>'");
        BoundaryFacet f;
        for (int k = 0; k < m.dim; ++k) {
            const long v = parse_int(tok[static_cast<std::size_t>(k + 1)], r);
            if (v < 0 || v >= nv) r.fail("vertex index out of range");
            f.vertices.push_back(static_cast<std::int32_t>(v));
        }
        const std::string& tag = tok.back();
        if (tag == "tag=dirichlet") {
            f.kind = BoundaryKind::dirichlet;
        } else if (tag.rfind("tag=periodic:", 0) == 0) {
            f.kind = BoundaryKind::periodic;
            f.periodic_id = static_cast<int>(parse_int(tag.substr(13), r));
        } else {
            r.fail("unknown boundary tag '" + tag + "'");
        }
        m.boundary.push_back(f);
    }
    build_maps(m);
    while (r.next()) {
        const auto tok = split(r.text);
        if (tok.size() != 3 || tok[0] != "curved" || tok[2].rfind("degree=", 0) != 0)
            r.fail("expected 'curved <element> degree=<m>'");
        if (m.dim != 2) r.fail("curved elements need dim=2");
        const long e = parse_int(tok[1], r);
        if (e < 0 || e >= ne) r.fail("curved element index out of range");
        const long deg = parse_int(tok[2].substr(7), r);
        if (deg < 1 || deg > 12) r.fail("unsupported curved map degree");
        std::vector<Point> cp;
        for (long k = 0; k < 3 * deg; ++k) {
            r.expect_next("control point");
            const auto c = split(r.text);
            if (c.size() != 2) r.fail("expected 2 coordinates");
            cp.push_back({parse_double(c[0], r), parse_double(c[1], r)});
        }
        try {
            m.maps[static_cast<std::size_t>(e)] = curved_map_from_control_points(std::move(cp), static_cast<int>(deg));
        } catch (const Error& ex) {
            r.fail(ex.what());
        }
    }
    try {
        validate_mesh(m);
    } catch (const MeshFormatError&) {
        throw;
    } catch (const Error& ex) {
        throw MeshFormatError(ex.what(), 0);
    }
    return m;
}

Mesh read_mesh(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open " + path.string());
    return read_mesh(is);
}

}  // namespace wavepp
