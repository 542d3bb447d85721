#include "wavepp/reference_element.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "wavepp/error.hpp"

namespace wavepp {

namespace {

void finish_gradients(ReferenceElement& e) {
    e.basis_grad.clear();
    for (const Poly2& b : e.basis) e.basis_grad.push_back({b.dx(), b.dy()});
}

Point on_edge(int edge, double t) {
    static const Point v[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    const auto [a, b] = triangle_edges[static_cast<std::size_t>(edge)];
    return {(1.0 - t) * v[a][0] + t * v[b][0], (1.0 - t) * v[a][1] + t * v[b][1]};
}

void add_vertices(ReferenceElement& e) {
    const Point v[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    for (int i = 0; i < 3; ++i) {
        e.nodes.push_back(v[i]);
        e.topology.push_back({NodeKind::vertex, i, 0.0});
    }
}

void add_edge_nodes(ReferenceElement& e, const std::vector<double>& ts) {
    for (int edge = 0; edge < 3; ++edge)
        for (double t : ts) {
            e.nodes.push_back(on_edge(edge, t));
            e.topology.push_back({NodeKind::edge, edge, t});
        }
}

ReferenceElement build_gll(int p) {
    ReferenceElement e;
    e.shape = Shape::interval;
    e.family = Family::spectral_gll;
    e.degree = p;
    e.basis_degree = p;
    const QuadratureRule gll = gauss_lobatto(p + 1);
    std::vector<double> x;
    std::vector<double> w;
    // vertices first, then interior nodes left to right
    x.push_back(gll.points.front()[0]);
    w.push_back(gll.weights.front());
    x.push_back(gll.points.back()[0]);
    w.push_back(gll.weights.back());
    e.topology.push_back({NodeKind::vertex, 0, 0.0});
    e.topology.push_back({NodeKind::vertex, 1, 0.0});
    for (int i = 1; i < p; ++i) {
        x.push_back(gll.points[static_cast<std::size_t>(i)][0]);
        w.push_back(gll.weights[static_cast<std::size_t>(i)]);
        e.topology.push_back({NodeKind::interior, -1, 0.0});
    }
    for (double xi : x) e.nodes.push_back({xi, 0.0});
    e.lump_weights = w;
    for (std::size_t i = 0; i < x.size(); ++i) {
        Poly2 b = Poly2::constant(1.0);
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (j == i) continue;
            b = b * ((Poly2::x() - Poly2::constant(x[j])) * (1.0 / (x[i] - x[j])));
        }
        e.basis.push_back(b);
    }
    finish_gradients(e);
    return e;
}

// Silvester's formula: product of R_m(p * lambda) factors over barycentric indices.
Poly2 silvester_factor(const Poly2& lambda, int m, int p) {
    Poly2 r = Poly2::constant(1.0);
    for (int s = 0; s < m; ++s) r = r * ((lambda * static_cast<double>(p) - Poly2::constant(s)) * (1.0 / (s + 1)));
    return r;
}

ReferenceElement build_lagrange_triangle(int p) {
    ReferenceElement e;
    e.shape = Shape::triangle;
    e.family = Family::lagrange;
    e.degree = p;
    e.basis_degree = p;
    // barycentric multi-indices in node order
    std::vector<std::array<int, 3>> idx;
    idx.push_back({p, 0, 0});
    idx.push_back({0, p, 0});
    idx.push_back({0, 0, p});
    add_vertices(e);
    std::vector<double> ts;
    for (int k = 1; k < p; ++k) ts.push_back(static_cast<double>(k) / p);
    add_edge_nodes(e, ts);
    for (int edge = 0; edge < 3; ++edge) {
        const auto [a, b] = triangle_edges[static_cast<std::size_t>(edge)];
        for (int k = 1; k < p; ++k) {
            std::array<int, 3> m{0, 0, 0};
            m[static_cast<std::size_t>(a)] = p - k;
            m[static_cast<std::size_t>(b)] = k;
            idx.push_back(m);
        }
    }
    for (int j = 1; j < p; ++j)
        for (int i = 1; i + j < p; ++i) {
            const int k0 = p - i - j;
            idx.push_back({k0, i, j});
            e.nodes.push_back({static_cast<double>(i) / p, static_cast<double>(j) / p});
            e.topology.push_back({NodeKind::interior, -1, 0.0});
        }
    const auto lam = barycentric_polys();
    for (const auto& m : idx)
        e.basis.push_back(silvester_factor(lam[0], m[0], p) * silvester_factor(lam[1], m[1], p) *
                          silvester_factor(lam[2], m[2], p));
    finish_gradients(e);
    return e;
}

ReferenceElement build_lumped_triangle(int p) {
    ReferenceElement e;
    e.shape = Shape::triangle;
    e.family = Family::lumped_triangle;
    e.degree = p;
    add_vertices(e);
    std::vector<Poly2> span;
    for (int d = 0; d <= p; ++d)
        for (int b = 0; b <= d; ++b) span.push_back(Poly2::monomial(d - b, b));
    const auto lam = barycentric_polys();
    const Poly2 bubble = lam[0] * lam[1] * lam[2];
    if (p == 1) {
        e.lump_weights.assign(3, 1.0 / 6.0);
        e.basis_degree = 1;
    } else if (p == 2) {
        add_edge_nodes(e, {0.5});
        e.nodes.push_back({1.0 / 3.0, 1.0 / 3.0});
        e.topology.push_back({NodeKind::interior, -1, 0.0});
        span.push_back(bubble);
        e.lump_weights = {1.0 / 40.0, 1.0 / 40.0, 1.0 / 40.0, 1.0 / 15.0, 1.0 / 15.0, 1.0 / 15.0, 9.0 / 40.0};
        e.basis_degree = 3;
    } else {
        const double a = lumped_p3_alpha;
        const double b = lumped_p3_beta;
        add_edge_nodes(e, {a, 1.0 - a});
        for (const Point& x : {Point{b, 1.0 - 2.0 * b}, Point{1.0 - 2.0 * b, b}, Point{b, b}}) {
            e.nodes.push_back(x);
            e.topology.push_back({NodeKind::interior, -1, 0.0});
        }
        span.push_back(bubble * Poly2::x());
        span.push_back(bubble * Poly2::y());
        const double wv = 0.0074364565124102896;
        const double we = 0.024420840617025494;
        const double wi = 0.11038852892020539;
        e.lump_weights = {wv, wv, wv, we, we, we, we, we, we, wi, wi, wi};
        e.basis_degree = 4;
    }
    const auto n = static_cast<Eigen::Index>(e.nodes.size());
    Eigen::MatrixXd V(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) V(i, j) = span[static_cast<std::size_t>(j)](e.nodes[static_cast<std::size_t>(i)]);
    const Eigen::MatrixXd C = V.fullPivLu().inverse();
    for (Eigen::Index i = 0; i < n; ++i) {
        Poly2 b(e.basis_degree);
        for (Eigen::Index j = 0; j < n; ++j) b += span[static_cast<std::size_t>(j)] * C(j, i);
        e.basis.push_back(b);
    }
    finish_gradients(e);
    return e;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::spectral_gll: return "spectral-GLL";
        case Family::lumped_triangle: return "lumped-triangle";
        case Family::lagrange: return "lagrange";
    }
    return "?";
}

ReferenceElement build_reference_element(Shape shape, Family family, int degree) {
    const std::string what = std::string(shape == Shape::interval ? "interval" : "triangle") + "/" +
                             family_name(family) + " degree " + std::to_string(degree);
    if (shape == Shape::interval && family == Family::spectral_gll && degree >= 1 && degree <= 6)
        return build_gll(degree);
    if (shape == Shape::triangle && family == Family::lumped_triangle && degree >= 1 && degree <= 3)
        return build_lumped_triangle(degree);
    if (shape == Shape::triangle && family == Family::lagrange && degree >= 1 && degree <= 6)
        return build_lagrange_triangle(degree);
    throw Error("unsupported reference element: " + what);
}

QuadratureRule lumped_quadrature(const ReferenceElement& elem) {
    if (elem.lump_weights.empty()) throw Error("lumped_quadrature: " + family_name(elem.family) + " elements are not mass-lumped");
    QuadratureRule r;
    r.points = elem.nodes;
    r.weights = elem.lump_weights;
    if (elem.shape == Shape::interval)
        r.exactness_degree = 2 * elem.degree - 1;
    else
        r.exactness_degree = elem.degree == 1 ? 1 : elem.degree + 1;
    return r;
}

BasisValues eval_basis(const ReferenceElement& elem, const Point& x) {
    BasisValues out;
    out.values.reserve(elem.basis.size());
    out.gradients.reserve(elem.basis.size());
    for (std::size_t i = 0; i < elem.basis.size(); ++i) {
        out.values.push_back(elem.basis[i](x));
        out.gradients.push_back({elem.basis_grad[i][0](x), elem.basis_grad[i][1](x)});
    }
    return out;
}

Tabulation tabulate(const ReferenceElement& elem, const std::vector<Point>& points) {
    Tabulation t;
    t.nq = points.size();
    t.nb = elem.basis.size();
    t.value.resize(t.nq * t.nb);
    t.dx.resize(t.nq * t.nb);
    t.dy.resize(t.nq * t.nb);
    for (std::size_t q = 0; q < t.nq; ++q)
        for (std::size_t i = 0; i < t.nb; ++i) {
            t.value[q * t.nb + i] = elem.basis[i](points[q]);
            t.dx[q * t.nb + i] = elem.basis_grad[i][0](points[q]);
            t.dy[q * t.nb + i] = elem.basis_grad[i][1](points[q]);
        }
    return t;
}

}  // namespace wavepp
