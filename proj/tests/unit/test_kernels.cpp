#include <gtest/gtest.h>

#include <cstring>

#include "oracles.hpp"
#include "wavepp/kernels.hpp"
#include "wavepp/sparse.hpp"

namespace k = wavepp::kernels;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

wavepp::CsrMatrix random_csr(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> deg(0, 11), col(0, n - 1);
    std::uniform_real_distribution<double> val(-2, 2);
    std::vector<wavepp::Triplet> t;
    for (int i = 0; i < n; ++i)
        for (int j = deg(rng); j > 0; --j) t.push_back({i, col(rng), val(rng)});
    return wavepp::CsrMatrix::from_triplets(n, n, t);
}

class KernelEquivalence : public ::testing::TestWithParam<int> {
protected:
    void SetUp() override {
        if (!k::isa_supported(k::Isa::avx2)) GTEST_SKIP() << "AVX2 not available";
    }
};

}  // namespace

TEST(Kernels, ScalarAlwaysSupported) { EXPECT_TRUE(k::isa_supported(k::Isa::scalar)); }

TEST(Kernels, SetIsaRoundTrip) {
    const k::Isa before = k::active_isa();
    k::set_isa(k::Isa::scalar);
    EXPECT_EQ(k::active_isa(), k::Isa::scalar);
    EXPECT_STREQ(k::isa_name(k::Isa::scalar), "scalar");
    k::set_isa(before);
}

TEST(Kernels, ScalarDotAgainstLongDouble) {
    const auto x = oracle::random_vector(1001, 1), y = oracle::random_vector(1001, 2);
    long double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<long double>(x[i]) * y[i];
    EXPECT_NEAR(k::scalar::dot(x, y), static_cast<double>(s), 1e-12);
}

TEST(Kernels, ScalarSpmvAgainstDense) {
    const auto A = random_csr(37, 5);
    const auto x = oracle::random_vector(37, 6);
    std::vector<double> y(37);
    k::scalar::spmv(A.view(), x, y);
    const Eigen::VectorXd ref = oracle::dense(A) * Eigen::VectorXd::Map(x.data(), 37);
    for (int i = 0; i < 37; ++i) EXPECT_NEAR(y[i], ref(i), 1e-13);
}

TEST(Kernels, EmptyInputs) {
    std::vector<double> e;
    EXPECT_EQ(k::scalar::dot(e, e), 0.0);
    k::axpy(2.0, e, e);
}

TEST_P(KernelEquivalence, BitwiseIdentical) {
    const int n = GetParam();
    const auto x = oracle::random_vector(n, 10u + n), y0 = oracle::random_vector(n, 20u + n);
    const auto& s = k::table(k::Isa::scalar);
    const auto& v = k::table(k::Isa::avx2);

    EXPECT_TRUE(same_bits(s.dot(x, y0), v.dot(x, y0)));

    auto ys = y0, yv = y0;
    s.axpy(0.37, x, ys);
    v.axpy(0.37, x, yv);
    EXPECT_TRUE(same_bits(ys, yv));

    ys = y0, yv = y0;
    s.xpay(x, -1.3, ys);
    v.xpay(x, -1.3, yv);
    EXPECT_TRUE(same_bits(ys, yv));

    ys = y0, yv = y0;
    s.scale(3.1, ys);
    v.scale(3.1, yv);
    EXPECT_TRUE(same_bits(ys, yv));

    ys = y0, yv = y0;
    s.hadamard(x, ys, ys);  // aliasing allowed
    v.hadamard(x, yv, yv);
    EXPECT_TRUE(same_bits(ys, yv));

    if (n > 0) {
        const auto A = random_csr(n, 30u + n);
        std::vector<double> as(n), av(n);
        s.spmv(A.view(), x, as);
        v.spmv(A.view(), x, av);
        EXPECT_TRUE(same_bits(as, av));
    }
}

INSTANTIATE_TEST_SUITE_P(Lengths, KernelEquivalence, ::testing::Values(0, 1, 3, 4, 5, 7, 8, 9, 63, 64, 65, 1000, 4099));

TEST(Kernels, DispatchFollowsActiveIsa) {
    const auto x = oracle::random_vector(77, 3), y = oracle::random_vector(77, 4);
    const k::Isa before = k::active_isa();
    k::set_isa(k::Isa::scalar);
    const double ds = k::dot(x, y);
    EXPECT_TRUE(same_bits(ds, k::scalar::dot(x, y)));
    k::set_isa(before);
}
