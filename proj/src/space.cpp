#include "wavepp/space.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "wavepp/error.hpp"

namespace wavepp {

namespace {

std::int32_t find_root(std::vector<std::int32_t>& parent, std::int32_t v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
        parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
        v = parent[static_cast<std::size_t>(v)];
    }
    return v;
}

}  // namespace

std::shared_ptr<const DiscreteSpace> build_space(std::shared_ptr<const Mesh> mesh, ReferenceElement element) {
    require(mesh != nullptr, "build_space: null mesh");
    require(element.shape == mesh->shape(), "build_space: element shape does not match mesh dimension");
    auto sp = std::make_shared<DiscreteSpace>();
    const Mesh& m = *mesh;

    // periodic identification of vertices
    std::vector<std::int32_t> parent(m.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::map<int, std::vector<const BoundaryFacet*>> pairs;
    std::set<std::int32_t> dirichlet_vertices;
    std::set<std::pair<std::int32_t, std::int32_t>> dirichlet_edges;
    for (const auto& f : m.boundary) {
        if (f.kind == BoundaryKind::periodic) {
            pairs[f.periodic_id].push_back(&f);
        } else {
            for (auto v : f.vertices) dirichlet_vertices.insert(v);
            if (f.vertices.size() == 2)
                dirichlet_edges.insert({std::min(f.vertices[0], f.vertices[1]), std::max(f.vertices[0], f.vertices[1])});
        }
    }
    for (const auto& [id, facets] : pairs) {
        if (facets.size() != 2)
            throw Error("build_space: periodic id " + std::to_string(id) + " tags " + std::to_string(facets.size()) +
                        " facets, expected 2");
        if (facets[0]->vertices.size() != 1 || facets[1]->vertices.size() != 1)
            throw Error("build_space: periodic identification is only supported for point facets");
        const auto a = find_root(parent, facets[0]->vertices[0]);
        const auto b = find_root(parent, facets[1]->vertices[0]);
        parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
    sp->has_dirichlet = !dirichlet_vertices.empty();

    std::map<std::array<std::int64_t, 4>, std::int32_t> index;
    const std::size_t nb = element.basis_dim();
    sp->element_dofs.assign(m.num_elements(), std::vector<std::int32_t>(nb, -1));
    for (std::size_t e = 0; e < m.num_elements(); ++e) {
        const auto& el = m.elements[e];
        for (std::size_t i = 0; i < nb; ++i) {
            const NodeTopology& t = element.topology[i];
            std::array<std::int64_t, 4> key{};
            bool eliminated = false;
            if (t.kind == NodeKind::vertex) {
                const auto gv = el[static_cast<std::size_t>(t.entity)];
                eliminated = dirichlet_vertices.count(gv) > 0;
                key = {0, find_root(parent, gv), 0, 0};
            } else if (t.kind == NodeKind::edge) {
                const auto [la, lb] = triangle_edges[static_cast<std::size_t>(t.entity)];
                const auto ga = el[static_cast<std::size_t>(la)];
                const auto gb = el[static_cast<std::size_t>(lb)];
                const double tt = ga < gb ? t.t : 1.0 - t.t;
                eliminated = dirichlet_edges.count({std::min(ga, gb), std::max(ga, gb)}) > 0;
                key = {1, std::min(ga, gb), std::max(ga, gb), std::llround(tt * 1e9)};
            } else {
                key = {2, static_cast<std::int64_t>(e), static_cast<std::int64_t>(i), 0};
            }
            if (eliminated) continue;
            auto [it, inserted] = index.try_emplace(key, sp->n_dofs);
            if (inserted) {
                ++sp->n_dofs;
                const MapEval me = eval_map_unchecked(m.maps[e], element.nodes[i]);
                sp->node_coords.push_back(me.x);
                sp->node_owner.push_back(static_cast<std::int32_t>(e));
            }
            sp->element_dofs[e][i] = it->second;
        }
    }
    sp->mesh = std::move(mesh);
    sp->element = std::move(element);
    return sp;
}

FieldVector interpolate(const DiscreteSpace& space, const SpatialFn& f) {
    FieldVector v(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
        v[i] = f(space.node_coords[i], space.mesh->element_center(static_cast<std::size_t>(space.node_owner[i])));
    return v;
}

FieldSample evaluate_field(const DiscreteSpace& space, std::span<const double> u, std::size_t e, const Point& ref) {
    const BasisValues b = eval_basis(space.element, ref);
    const MapEval me = eval_map(space.mesh->maps[e], ref);
    const Eigen::Matrix2d Jinv = me.J.inverse();
    FieldSample s;
    Eigen::Vector2d g = Eigen::Vector2d::Zero();
    for (std::size_t i = 0; i < b.values.size(); ++i) {
        const auto d = space.element_dofs[e][i];
        if (d < 0) continue;
        const double ui = u[static_cast<std::size_t>(d)];
        s.value += ui * b.values[i];
        g += ui * Eigen::Vector2d(b.gradients[i][0], b.gradients[i][1]);
    }
    const Eigen::Vector2d gp = Jinv.transpose() * g;
    s.gradient = {gp(0), space.mesh->dim == 1 ? 0.0 : gp(1)};
    return s;
}

}  // namespace wavepp
