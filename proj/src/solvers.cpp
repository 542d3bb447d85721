#include "wavepp/solvers.hpp"

#include <cmath>
#include <string>

#include "wavepp/error.hpp"
#include "wavepp/kernels.hpp"

namespace wavepp {

std::string solve_mode_name(SolveMode m) { return m == SolveMode::direct_surrogate ? "direct" : "cg"; }

std::vector<double> rowsum_preconditioner(const CsrMatrix& A) {
    std::vector<double> d(static_cast<std::size_t>(A.rows()), 0.0);
    const auto rp = A.row_ptr();
    const auto val = A.val();
    for (std::int32_t r = 0; r < A.rows(); ++r) {
        for (std::int32_t k = rp[r]; k < rp[r + 1]; ++k) d[static_cast<std::size_t>(r)] += std::abs(val[k]);
        if (!(d[static_cast<std::size_t>(r)] > 0.0))
            throw Error("rowsum_preconditioner: row " + std::to_string(r) + " is zero");
    }
    return d;
}

SolveReport pcg(const CsrMatrix& A, std::span<const double> b, std::span<double> x, std::span<const double> precond,
                const SolverConfig& config) {
    const std::size_t n = b.size();
    require(x.size() == n && precond.size() == n && static_cast<std::size_t>(A.rows()) == n, "pcg: size mismatch");
    SolveReport rep;
    rep.mode = config.mode;
    std::vector<double> dinv(n), r(n), z(n), p(n), q(n), tmp(n);
    for (std::size_t i = 0; i < n; ++i) dinv[i] = 1.0 / precond[i];
    kernels::hadamard(dinv, b, tmp);
    const double bnorm = std::sqrt(kernels::dot(tmp, tmp));
    if (bnorm == 0.0) {
        if (config.mode == SolveMode::direct_surrogate || config.iterations > 0) std::fill(x.begin(), x.end(), 0.0);
        rep.residual_history.push_back(0.0);
        return rep;
    }
    A.multiply(x, q);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];
    kernels::hadamard(dinv, r, z);
    double rz = kernels::dot(r, z);
    double rel = std::sqrt(kernels::dot(z, z)) / bnorm;
    rep.residual_history.push_back(rel);
    const int cap = config.mode == SolveMode::cg_fixed
                        ? config.iterations
                        : config.max_factor * static_cast<int>(std::max<std::size_t>(n, 1));
    std::copy(z.begin(), z.end(), p.begin());
    int it = 0;
    while (it < cap) {
        if (config.mode == SolveMode::direct_surrogate && rel <= config.tolerance) break;
        if (rz == 0.0) break;
        A.multiply(p, q);
        const double pq = kernels::dot(p, q);
        if (!(pq > 0.0)) break;
        const double alpha = rz / pq;
        kernels::axpy(alpha, p, x);
        kernels::axpy(-alpha, q, r);
        kernels::hadamard(dinv, r, z);
        const double rz_new = kernels::dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        kernels::xpay(z, beta, p);
        ++it;
        rel = std::sqrt(kernels::dot(z, z)) / bnorm;
        rep.residual_history.push_back(rel);
    }
    rep.iterations = it;
    rep.final_relative_residual = rel;
    if (config.mode == SolveMode::direct_surrogate && !(rel <= config.tolerance))
        throw SolverError("CG did not reach relative residual " + std::to_string(config.tolerance) + " in " +
                              std::to_string(it) + " iterations (residual " + std::to_string(rel) + ")",
                          rep.residual_history);
    return rep;
}

FieldVector apply_Lh(const WaveOperators& ops, std::span<const double> u) {
    std::vector<double> y = ops.A.multiply(u);
    if (ops.lumped()) {
        kernels::hadamard(ops.M_inv, y, y);
        return y;
    }
    std::vector<double> x(y.size(), 0.0);
    const auto d = rowsum_preconditioner(ops.M_consistent);
    SolverConfig cfg;
    cfg.tolerance = 1e-14;
    (void)pcg(ops.M_consistent, y, x, d, cfg);
    return x;
}

void remove_mass_mean(const WaveOperators& ops, std::span<double> x) {
    const std::vector<double> ones(x.size(), 1.0);
    const double total = ops.mass_mean_numerator(ones);
    const double mean = ops.mass_mean_numerator(x) / total;
    for (double& v : x) v -= mean;
}

std::pair<FieldVector, SolveReport> solve_Lh_inverse(const WaveOperators& ops, std::span<const double> rhs,
                                                     std::span<const double> guess, const SolverConfig& config) {
    const std::size_t n = ops.size();
    require(rhs.size() == n && guess.size() == n, "solve_Lh_inverse: size mismatch");
    FieldVector x(guess.begin(), guess.end());
    if (config.mode == SolveMode::cg_fixed && config.iterations == 0) {
        SolveReport rep;
        rep.mode = config.mode;
        return {x, rep};
    }
    std::vector<double> r(rhs.begin(), rhs.end());
    if (ops.space->constant_kernel()) remove_mass_mean(ops, r);
    std::vector<double> b = ops.apply_mass(r);
    const auto d = rowsum_preconditioner(ops.A);
    SolveReport rep = pcg(ops.A, b, x, d, config);
    if (ops.space->constant_kernel()) remove_mass_mean(ops, x);
    return {x, rep};
}

double pencil_power_iteration(const Eigen::MatrixXd& A, const Eigen::MatrixXd& M) {
    const Eigen::Index n = A.rows();
    Eigen::MatrixXd S;
    if (M.isDiagonal()) {
        const Eigen::VectorXd s = M.diagonal().cwiseSqrt().cwiseInverse();
        S = s.asDiagonal() * A * s.asDiagonal();
    } else {
        const Eigen::LLT<Eigen::MatrixXd> llt(M);
        if (llt.info() != Eigen::Success) throw Error("pencil_power_iteration: mass matrix is not positive definite");
        const Eigen::MatrixXd L = llt.matrixL();
        const Eigen::MatrixXd Linv = L.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(n, n));
        S = Linv * A * Linv.transpose();
    }
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = std::cos(1.7 * static_cast<double>(i) + 0.3) + 0.1;
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Eigen::VectorXd w = S * v;
        const double next = v.dot(w);
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;
        v = w / nw;
        if (it > 0 && std::abs(next - lambda) <= 1e-8 * std::abs(next)) return std::max(next, nw);
        lambda = next;
    }
    throw Error("power iteration stagnated after 10000 iterations");
}

double estimate_sigma_max(const WaveOperators& ops) {
    require(!ops.element_stiffness.empty(), "estimate_sigma_max: element matrices were not retained");
    double sigma = 0.0;
    for (std::size_t e = 0; e < ops.element_stiffness.size(); ++e)
        sigma = std::max(sigma, pencil_power_iteration(ops.element_stiffness[e], ops.element_mass[e]));
    return sigma;
}

}  // namespace wavepp
