#include "wavepp/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavepp/error.hpp"
#include "wavepp/solvers.hpp"

namespace wavepp {

namespace {

CsrMatrix pattern_for(const DiscreteSpace& space) {
    std::vector<std::vector<std::int32_t>> rows(space.size());
    for (const auto& dofs : space.element_dofs)
        for (auto i : dofs) {
            if (i < 0) continue;
            for (auto j : dofs)
                if (j >= 0) rows[static_cast<std::size_t>(i)].push_back(j);
        }
    return CsrMatrix::from_pattern(space.n_dofs, space.n_dofs, rows);
}

int clamp_degree(const DiscreteSpace& space, int d) {
    return space.mesh->dim == 2 ? std::min(d, max_triangle_degree) : d;
}

void scatter(CsrMatrix& G, const std::vector<std::int32_t>& dofs, const Eigen::MatrixXd& Ke) {
    for (std::size_t i = 0; i < dofs.size(); ++i) {
        if (dofs[i] < 0) continue;
        for (std::size_t j = 0; j < dofs.size(); ++j)
            if (dofs[j] >= 0)
                G.add(dofs[i], dofs[j], Ke(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
}

}  // namespace

int default_quadrature_degree(const DiscreteSpace& space) {
    return clamp_degree(space, 2 * space.element.basis_degree);
}

void WaveOperators::apply_mass(std::span<const double> x, std::span<double> y) const {
    if (lumped())
        kernels::hadamard(M, x, y);
    else
        M_consistent.multiply(x, y);
}

std::vector<double> WaveOperators::apply_mass(std::span<const double> x) const {
    std::vector<double> y(x.size());
    apply_mass(x, y);
    return y;
}

std::vector<double> WaveOperators::apply_stiffness(std::span<const double> x) const { return A.multiply(x); }

double WaveOperators::mass_mean_numerator(std::span<const double> x) const {
    const std::vector<double> mx = apply_mass(x);
    double s = 0.0;
    for (double v : mx) s += v;
    return s;
}

WaveOperators assemble_operators(std::shared_ptr<const DiscreteSpace> sp, const SpatialFn& rho, const SpatialFn& c,
                                 const AssemblyOptions& options) {
    require(sp != nullptr, "assemble_operators: null space");
    const DiscreteSpace& space = *sp;
    const Mesh& mesh = *space.mesh;
    const ReferenceElement& el = space.element;
    const int p = el.degree;
    WaveOperators ops;
    ops.mass_kind = options.mass;
    if (options.mass == MassKind::lumped && el.lump_weights.empty())
        throw Error("assemble_operators: " + family_name(el.family) + " elements cannot be mass-lumped");

    int qdeg = options.quadrature_degree;
    if (qdeg <= 0) {
        if (options.mass == MassKind::consistent)
            qdeg = 2 * el.basis_degree;
        else
            qdeg = (!mesh.has_curved_elements() && options.elementwise_constant_coefficients) ? 2 * p : 4 * p;
    }
    qdeg = clamp_degree(space, qdeg);
    ops.quadrature_degree = qdeg;

    const QuadratureRule rule = volume_quadrature(mesh.shape(), qdeg);
    const Tabulation tab = tabulate(el, rule.points);
    const std::size_t nb = el.basis_dim();
    const std::size_t nq = rule.size();

    ops.A = pattern_for(space);
    if (options.mass == MassKind::consistent) ops.M_consistent = ops.A;
    if (options.mass == MassKind::consistent)
        std::fill(ops.M_consistent.val().begin(), ops.M_consistent.val().end(), 0.0);
    ops.M.assign(space.size(), 0.0);

    const QuadratureRule lump = options.mass == MassKind::lumped ? lumped_quadrature(el) : QuadratureRule{};
    Eigen::MatrixXd Ae(nb, nb), Me(nb, nb);
    std::vector<double> gx(nb), gy(nb);
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        const GeometricMap& map = mesh.maps[e];
        const Point center = mesh.element_center(e);
        Ae.setZero();
        Me.setZero();
        for (std::size_t q = 0; q < nq; ++q) {
            const MapEval me = eval_map(map, rule.points[q]);
            const Eigen::Matrix2d Jinv = me.J.inverse();
            const double wq = rule.weights[q] * me.det;
            const double cq = c(me.x, center) * wq;
            for (std::size_t i = 0; i < nb; ++i) {
                const double rx = tab.gx(q, i), ry = tab.gy(q, i);
                gx[i] = Jinv(0, 0) * rx + Jinv(1, 0) * ry;
                gy[i] = Jinv(0, 1) * rx + Jinv(1, 1) * ry;
            }
            for (std::size_t i = 0; i < nb; ++i)
                for (std::size_t j = i; j < nb; ++j)
                    Ae(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += cq * (gx[i] * gx[j] + gy[i] * gy[j]);
            if (options.mass == MassKind::consistent) {
                const double rq = rho(me.x, center) * wq;
                for (std::size_t i = 0; i < nb; ++i)
                    for (std::size_t j = i; j < nb; ++j)
                        Me(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += rq * tab.v(q, i) * tab.v(q, j);
            }
        }
        for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(nb); ++i)
            for (Eigen::Index j = 0; j < i; ++j) {
                Ae(i, j) = Ae(j, i);
                Me(i, j) = Me(j, i);
            }
        if (options.mass == MassKind::lumped) {
            for (std::size_t i = 0; i < nb; ++i) {
                const MapEval me = eval_map(map, lump.points[i]);
                const double m = lump.weights[i] * me.det * rho(me.x, center);
                if (!(m > 0.0))
                    throw Error("assemble_operators: non-positive lumped mass in element " + std::to_string(e));
                Me(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = m;
                const auto d = space.element_dofs[e][i];
                if (d >= 0) ops.M[static_cast<std::size_t>(d)] += m;
            }
        } else {
            scatter(ops.M_consistent, space.element_dofs[e], Me);
        }
        scatter(ops.A, space.element_dofs[e], Ae);
        if (options.retain_element_matrices) {
            ops.element_stiffness.push_back(Ae);
            ops.element_mass.push_back(Me);
        }
    }
    if (options.mass == MassKind::lumped) {
        ops.M_inv.resize(ops.M.size());
        for (std::size_t i = 0; i < ops.M.size(); ++i) ops.M_inv[i] = 1.0 / ops.M[i];
    } else {
        for (std::int32_t i = 0; i < ops.M_consistent.rows(); ++i) ops.M[static_cast<std::size_t>(i)] = ops.M_consistent.at(i, i);
    }
    ops.space = std::move(sp);
    return ops;
}

FieldVector project_weighted_l2(const DiscreteSpace& space, const SpatialFn& f, const SpatialFn& rho,
                                int quadrature_degree) {
    const Mesh& mesh = *space.mesh;
    const ReferenceElement& el = space.element;
    const int qdeg = quadrature_degree > 0 ? clamp_degree(space, quadrature_degree) : default_quadrature_degree(space);
    const QuadratureRule rule = volume_quadrature(mesh.shape(), qdeg);
    const Tabulation tab = tabulate(el, rule.points);
    const std::size_t nb = el.basis_dim();
    CsrMatrix Mc = pattern_for(space);
    std::vector<double> b(space.size(), 0.0);
    Eigen::MatrixXd Me(nb, nb);
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        const Point center = mesh.element_center(e);
        Me.setZero();
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const MapEval me = eval_map(mesh.maps[e], rule.points[q]);
            const double rq = rho(me.x, center) * rule.weights[q] * me.det;
            const double fq = f(me.x, center);
            for (std::size_t i = 0; i < nb; ++i) {
                const auto d = space.element_dofs[e][i];
                if (d >= 0) b[static_cast<std::size_t>(d)] += rq * fq * tab.v(q, i);
                for (std::size_t j = 0; j < nb; ++j)
                    Me(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += rq * tab.v(q, i) * tab.v(q, j);
            }
        }
        scatter(Mc, space.element_dofs[e], Me);
    }
    FieldVector x(space.size(), 0.0);
    const auto d = rowsum_preconditioner(Mc);
    SolverConfig cfg;
    cfg.max_factor = 10;
    (void)pcg(Mc, b, x, d, cfg);
    return x;
}

CsrMatrix build_prolongation(const DiscreteSpace& low, const DiscreteSpace& high) {
    require(low.mesh == high.mesh || (low.mesh->elements == high.mesh->elements && low.mesh->vertices == high.mesh->vertices),
            "build_prolongation: spaces live on different meshes");
    const Mesh& mesh = *low.mesh;
    const Tabulation tab = tabulate(low.element, high.element.nodes);
    std::vector<Triplet> t;
    std::vector<char> done(high.size(), 0);
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        const auto& hd = high.element_dofs[e];
        const auto& ld = low.element_dofs[e];
        for (std::size_t i = 0; i < hd.size(); ++i) {
            const auto row = hd[i];
            if (row < 0 || done[static_cast<std::size_t>(row)]) continue;
            done[static_cast<std::size_t>(row)] = 1;
            for (std::size_t j = 0; j < ld.size(); ++j) {
                if (ld[j] < 0) continue;
                const double v = tab.v(i, j);
                if (std::abs(v) > 1e-15) t.push_back({row, ld[j], v});
            }
        }
    }
    return CsrMatrix::from_triplets(high.n_dofs, low.n_dofs, std::move(t));
}

}  // namespace wavepp
