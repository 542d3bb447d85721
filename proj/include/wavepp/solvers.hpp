#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wavepp/assembly.hpp"

namespace wavepp {

enum class SolveMode { direct_surrogate, cg_fixed };

[[nodiscard]] std::string solve_mode_name(SolveMode m);

struct SolverConfig {
    SolveMode mode = SolveMode::direct_surrogate;
    int iterations = 100;      // cg_fixed: exact iteration count
    double tolerance = 1e-13;  // direct_surrogate: relative preconditioned residual
    int max_factor = 20;       // direct_surrogate: iteration cap = max_factor * N
};

struct SolveReport {
    int iterations = 0;
    double final_relative_residual = 0.0;
    SolveMode mode = SolveMode::direct_surrogate;
    std::vector<double> residual_history;  // relative preconditioned residual, one entry per iterate
};

/// d_i = sum_j |A_ij|; throws on an empty row.
[[nodiscard]] std::vector<double> rowsum_preconditioner(const CsrMatrix& A);

/// Preconditioned CG on A x = b starting from x. The residual measure is
/// ||D^{-1} r|| / ||D^{-1} b|| with D = diag(precond).
SolveReport pcg(const CsrMatrix& A, std::span<const double> b, std::span<double> x, std::span<const double> precond,
                const SolverConfig& config);

/// M^{-1} A u
[[nodiscard]] FieldVector apply_Lh(const WaveOperators& ops, std::span<const double> u);

/// Solves A x = M rhs from the given guess. On spaces without Dirichlet
/// nodes the rhs is projected to M-mean zero and the result is normalised to
/// M-mean zero. cg_fixed with zero iterations returns the guess untouched.
[[nodiscard]] std::pair<FieldVector, SolveReport> solve_Lh_inverse(const WaveOperators& ops, std::span<const double> rhs,
                                                                   std::span<const double> guess,
                                                                   const SolverConfig& config);

/// Removes the M-weighted mean: x <- x - (1^T M x / 1^T M 1) 1.
void remove_mass_mean(const WaveOperators& ops, std::span<double> x);

/// max over elements of the largest eigenvalue of M_e^{-1} A_e (power iteration).
[[nodiscard]] double estimate_sigma_max(const WaveOperators& ops);

/// Largest eigenvalue of a small symmetric-definite pencil (A, M) by power iteration
/// on the symmetrised operator; tolerance 1e-8 relative, at most 10000 iterations.
[[nodiscard]] double pencil_power_iteration(const Eigen::MatrixXd& A, const Eigen::MatrixXd& M);

}  // namespace wavepp
