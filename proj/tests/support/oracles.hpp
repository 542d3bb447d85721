#pragma once

// Independent reference computations used by the unit and acceptance tests.

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "wavepp/assembly.hpp"
#include "wavepp/solvers.hpp"

namespace oracle {

inline double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// x^a y^b over the unit triangle: a! b! / (a+b+2)!
inline double triangle_moment(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

/// x^a over [0,1]
inline double interval_moment(int a) { return 1.0 / (a + 1); }

inline std::vector<double> random_vector(std::size_t n, unsigned seed, double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

inline Eigen::MatrixXd dense(const wavepp::CsrMatrix& A) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(A.rows(), A.cols());
    for (std::int32_t i = 0; i < A.rows(); ++i)
        for (auto k = A.row_ptr()[i]; k < A.row_ptr()[i + 1]; ++k) D(i, A.col()[k]) += A.val()[k];
    return D;
}

inline Eigen::MatrixXd dense_mass(const wavepp::WaveOperators& ops) {
    if (ops.lumped()) return Eigen::VectorXd::Map(ops.M.data(), static_cast<Eigen::Index>(ops.M.size())).asDiagonal();
    return dense(ops.M_consistent);
}

/// Generalized eigenvalues of (A, M), ascending.
inline Eigen::VectorXd pencil_eigenvalues(const wavepp::WaveOperators& ops) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(ops.A), dense_mass(ops));
    return es.eigenvalues();
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Classical leapfrog u+ = 2u - u- - dt^2 M^{-1} A u written directly.
inline std::vector<double> leapfrog(const wavepp::WaveOperators& ops, const std::vector<double>& um,
                                    const std::vector<double>& u, double dt) {
    std::vector<double> Au(u.size(), 0.0);
    const auto& A = ops.A;
    for (std::int32_t i = 0; i < A.rows(); ++i)
        for (auto k = A.row_ptr()[i]; k < A.row_ptr()[i + 1]; ++k) Au[i] += A.val()[k] * u[A.col()[k]];
    std::vector<double> up(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) up[i] = 2 * u[i] - um[i] - dt * dt * Au[i] / ops.M[i];
    return up;
}

}  // namespace oracle
