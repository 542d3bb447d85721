// Compiled with -mavx2 -ffp-contract=off; only reached after a runtime CPU check.
#include "wavepp/kernels.hpp"

#include <immintrin.h>

#include <cstddef>

namespace wavepp::kernels::avx2 {

namespace {

inline double reduce_lanes(__m256d acc) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    return (lane[0] + lane[2]) + (lane[1] + lane[3]);
}

}  // namespace

double dot(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(x.data() + i);
        const __m256d b = _mm256_loadu_pd(y.data() + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(a, b));
    }
    double s = reduce_lanes(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    const std::size_t n = x.size();
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x.data() + i);
        const __m256d vy = _mm256_loadu_pd(y.data() + i);
        _mm256_storeu_pd(y.data() + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void xpay(std::span<const double> x, double a, std::span<double> y) {
    const std::size_t n = x.size();
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x.data() + i);
        const __m256d vy = _mm256_loadu_pd(y.data() + i);
        _mm256_storeu_pd(y.data() + i, _mm256_add_pd(vx, _mm256_mul_pd(va, vy)));
    }
    for (; i < n; ++i) y[i] = x[i] + a * y[i];
}

void scale(double a, std::span<double> x) {
    const std::size_t n = x.size();
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(x.data() + i, _mm256_mul_pd(_mm256_loadu_pd(x.data() + i), va));
    }
    for (; i < n; ++i) x[i] *= a;
}

void hadamard(std::span<const double> d, std::span<const double> x, std::span<double> y) {
    const std::size_t n = d.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vd = _mm256_loadu_pd(d.data() + i);
        const __m256d vx = _mm256_loadu_pd(x.data() + i);
        _mm256_storeu_pd(y.data() + i, _mm256_mul_pd(vd, vx));
    }
    for (; i < n; ++i) y[i] = d[i] * x[i];
}

void spmv(const CsrView& A, std::span<const double> x, std::span<double> y) {
    const double* xv = x.data();
    for (std::int32_t r = 0; r < A.rows; ++r) {
        const std::int32_t end = A.row_ptr[r + 1];
        std::int32_t k = A.row_ptr[r];
        __m256d acc = _mm256_setzero_pd();
        for (; k + 4 <= end; k += 4) {
            const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(A.col.data() + k));
            const __m256d xs = _mm256_i32gather_pd(xv, idx, 8);
            const __m256d vs = _mm256_loadu_pd(A.val.data() + k);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(vs, xs));
        }
        double s = reduce_lanes(acc);
        for (; k < end; ++k) s += A.val[k] * xv[A.col[k]];
        y[r] = s;
    }
}

}  // namespace wavepp::kernels::avx2
