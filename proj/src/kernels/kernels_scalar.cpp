#include "wavepp/kernels.hpp"

#include <cstddef>

namespace wavepp::kernels::scalar {

// Reductions use four interleaved partial sums combined as (s0+s2)+(s1+s3),
// then a sequential tail. The AVX2 variant keeps exactly this lane structure
// so both produce identical bits.

double dot(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += x[i] * y[i];
        s1 += x[i + 1] * y[i + 1];
        s2 += x[i + 2] * y[i + 2];
        s3 += x[i + 3] * y[i + 3];
    }
    double s = (s0 + s2) + (s1 + s3);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpay(std::span<const double> x, double a, std::span<double> y) {
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + a * y[i];
}

void scale(double a, std::span<double> x) {
    for (double& v : x) v *= a;
}

void hadamard(std::span<const double> d, std::span<const double> x, std::span<double> y) {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i) y[i] = d[i] * x[i];
}

void spmv(const CsrView& A, std::span<const double> x, std::span<double> y) {
    for (std::int32_t r = 0; r < A.rows; ++r) {
        const std::int32_t end = A.row_ptr[r + 1];
        std::int32_t k = A.row_ptr[r];
        double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
        for (; k + 4 <= end; k += 4) {
            s0 += A.val[k] * x[A.col[k]];
            s1 += A.val[k + 1] * x[A.col[k + 1]];
            s2 += A.val[k + 2] * x[A.col[k + 2]];
            s3 += A.val[k + 3] * x[A.col[k + 3]];
        }
        double s = (s0 + s2) + (s1 + s3);
        for (; k < end; ++k) s += A.val[k] * x[A.col[k]];
        y[r] = s;
    }
}

}  // namespace wavepp::kernels::scalar
