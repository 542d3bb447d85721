#include <cstdlib>
#include <string>

#include "wavepp/error.hpp"
#include "wavepp/kernels.hpp"

namespace wavepp::kernels {

namespace {

constexpr KernelTable kScalar{&scalar::dot,   &scalar::axpy,     &scalar::xpay,
                              &scalar::scale, &scalar::hadamard, &scalar::spmv};
#if defined(__x86_64__) || defined(_M_X64)
constexpr KernelTable kAvx2{&avx2::dot,   &avx2::axpy,     &avx2::xpay,
                            &avx2::scale, &avx2::hadamard, &avx2::spmv};
#endif

Isa initial_isa() {
    Isa best = isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
    if (const char* env = std::getenv("WAVEPP_SIMD")) {
        const std::string v(env);
        if (v == "scalar") return Isa::scalar;
        if (v == "avx2" && isa_supported(Isa::avx2)) return Isa::avx2;
    }
    return best;
}

Isa& current() {
    static Isa isa = initial_isa();
    return isa;
}

const KernelTable* current_table = nullptr;

const KernelTable& active() {
    if (current_table == nullptr) current_table = &table(current());
    return *current_table;
}

}  // namespace

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

Isa active_isa() noexcept { return current(); }

void set_isa(Isa isa) {
    require(isa_supported(isa), std::string("kernel variant not supported on this CPU: ") + isa_name(isa));
    current() = isa;
    current_table = &table(isa);
}

const char* isa_name(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

const KernelTable& table(Isa isa) {
    require(isa_supported(isa), std::string("kernel variant not supported on this CPU: ") + isa_name(isa));
#if defined(__x86_64__) || defined(_M_X64)
    if (isa == Isa::avx2) return kAvx2;
#endif
    return kScalar;
}

double dot(std::span<const double> x, std::span<const double> y) { return active().dot(x, y); }
void axpy(double a, std::span<const double> x, std::span<double> y) { active().axpy(a, x, y); }
void xpay(std::span<const double> x, double a, std::span<double> y) { active().xpay(x, a, y); }
void scale(double a, std::span<double> x) { active().scale(a, x); }
void hadamard(std::span<const double> d, std::span<const double> x, std::span<double> y) {
    active().hadamard(d, x, y);
}
void spmv(const CsrView& A, std::span<const double> x, std::span<double> y) { active().spmv(A, x, y); }

}  // namespace wavepp::kernels
