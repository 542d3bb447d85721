#pragma once

// Vector and sparse-matrix kernels used in the time loop and the solvers.
//
// Every kernel has a scalar reference implementation and an AVX2 variant.
// The variant is chosen once at startup from the CPU features; the
// environment variable WAVEPP_SIMD=scalar|avx2 overrides the choice.
//
// Both variants produce identical bits: reductions (dot, spmv rows) use four
// interleaved partial sums combined as (s0+s2)+(s1+s3) in either case.

#include <cstdint>
#include <span>

namespace wavepp::kernels {

enum class Isa { scalar, avx2 };

/// Read-only view of a compressed sparse row matrix.
struct CsrView {
    std::int32_t rows = 0;
    std::span<const std::int32_t> row_ptr;  // rows + 1
    std::span<const std::int32_t> col;
    std::span<const double> val;
};

struct KernelTable {
    double (*dot)(std::span<const double>, std::span<const double>);
    void (*axpy)(double, std::span<const double>, std::span<double>);
    void (*xpay)(std::span<const double>, double, std::span<double>);
    void (*scale)(double, std::span<double>);
    void (*hadamard)(std::span<const double>, std::span<const double>, std::span<double>);
    void (*spmv)(const CsrView&, std::span<const double>, std::span<double>);
};

[[nodiscard]] bool isa_supported(Isa isa) noexcept;
[[nodiscard]] Isa active_isa() noexcept;
/// Throws wavepp::Error if the requested variant is not available on this CPU.
void set_isa(Isa isa);
[[nodiscard]] const char* isa_name(Isa isa) noexcept;
[[nodiscard]] const KernelTable& table(Isa isa);

namespace scalar {
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
void xpay(std::span<const double> x, double a, std::span<double> y);
void scale(double a, std::span<double> x);
void hadamard(std::span<const double> d, std::span<const double> x, std::span<double> y);
void spmv(const CsrView& A, std::span<const double> x, std::span<double> y);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
void xpay(std::span<const double> x, double a, std::span<double> y);
void scale(double a, std::span<double> x);
void hadamard(std::span<const double> d, std::span<const double> x, std::span<double> y);
void spmv(const CsrView& A, std::span<const double> x, std::span<double> y);
}  // namespace avx2
#endif

// Dispatched entry points.

/// Returns sum x_i y_i.
double dot(std::span<const double> x, std::span<const double> y);
/// y <- y + a x
void axpy(double a, std::span<const double> x, std::span<double> y);
/// y <- x + a y
void xpay(std::span<const double> x, double a, std::span<double> y);
void scale(double a, std::span<double> x);
/// y_i <- d_i x_i (y may alias x)
void hadamard(std::span<const double> d, std::span<const double> x, std::span<double> y);
/// y <- A x
void spmv(const CsrView& A, std::span<const double> x, std::span<double> y);

}  // namespace wavepp::kernels
