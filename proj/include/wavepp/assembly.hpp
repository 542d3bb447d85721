#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <vector>

#include "wavepp/sparse.hpp"
#include "wavepp/space.hpp"

namespace wavepp {

enum class MassKind { lumped, consistent };

struct AssemblyOptions {
    MassKind mass = MassKind::lumped;
    /// Exactness of the stiffness rule (and of the consistent mass rule); 0 picks
    /// 2p on affine elements with elementwise-constant coefficients, 4p otherwise.
    int quadrature_degree = 0;
    bool elementwise_constant_coefficients = false;
    /// Keep per-element matrices (needed by estimate_sigma_max).
    bool retain_element_matrices = true;
};

/// Mass and stiffness for one space; L_h = M^{-1} A.
struct WaveOperators {
    std::shared_ptr<const DiscreteSpace> space;
    MassKind mass_kind = MassKind::lumped;
    std::vector<double> M;        // lumped diagonal, or the diagonal of the consistent matrix
    std::vector<double> M_inv;    // lumped only
    CsrMatrix M_consistent;       // consistent only
    CsrMatrix A;
    int quadrature_degree = 0;
    std::vector<Eigen::MatrixXd> element_stiffness;  // local, all nodes
    std::vector<Eigen::MatrixXd> element_mass;

    [[nodiscard]] std::size_t size() const noexcept { return A.rows() < 0 ? 0 : static_cast<std::size_t>(A.rows()); }
    [[nodiscard]] bool lumped() const noexcept { return mass_kind == MassKind::lumped; }
    /// y <- M x
    void apply_mass(std::span<const double> x, std::span<double> y) const;
    [[nodiscard]] std::vector<double> apply_mass(std::span<const double> x) const;
    /// y <- A x
    [[nodiscard]] std::vector<double> apply_stiffness(std::span<const double> x) const;
    /// 1^T M x, used for zero-mean projection on periodic spaces.
    [[nodiscard]] double mass_mean_numerator(std::span<const double> x) const;
};

[[nodiscard]] WaveOperators assemble_operators(std::shared_ptr<const DiscreteSpace> space, const SpatialFn& rho,
                                               const SpatialFn& c, const AssemblyOptions& options = {});

/// Weighted L2 projection: (P f, w)_rho = (f, w)_rho for all w, solved by CG to 1e-13.
[[nodiscard]] FieldVector project_weighted_l2(const DiscreteSpace& space, const SpatialFn& f, const SpatialFn& rho,
                                              int quadrature_degree = 0);

/// P_ij = w_j(x_i*) for the nodes x_i* of the high space.
[[nodiscard]] CsrMatrix build_prolongation(const DiscreteSpace& low, const DiscreteSpace& high);

/// Quadrature exactness used for integrals in a space: 2 * basis degree, capped
/// at the largest tabulated triangle rule.
[[nodiscard]] int default_quadrature_degree(const DiscreteSpace& space);

}  // namespace wavepp
