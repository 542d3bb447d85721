#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "wavepp/diagnostics.hpp"
#include "wavepp/error.hpp"
#include "wavepp/experiment.hpp"
#include "wavepp/kernels.hpp"

using namespace wavepp;

namespace {

ErrorReport report(long dof, double eE, double e0) {
    ErrorReport r;
    r.problem = "square2d";
    r.p = 2;
    r.q = 2;
    r.level = static_cast<int>(dof);
    r.dof = dof;
    r.NT = 10 * dof;
    r.eE = eE;
    r.e0 = e0;
    r.wall_s = 0.125;
    return r;
}

ProblemSpec zero_problem(ProblemId id) {
    auto s = get_problem(id);
    s.u = [](const Point&, const Point&, double, int) { return 0.0; };
    s.grad_u = [](const Point&, const Point&, double, int) { return Point{0.0, 0.0}; };
    return s;
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

TEST(Norms, ZeroApproximationGivesRelativeErrorOne) {
    const auto spec = get_problem(ProblemId::square2d);
    const auto ops = fixture::square_high_ops(1, 4);
    const std::vector<double> z(ops.size(), 0.0);
    const auto n = error_norms(*ops.space, z, z, spec, 0.3);
    EXPECT_NEAR(n.e0, 1.0, 1e-14);
    EXPECT_NEAR(n.eE, 1.0, 1e-14);
    EXPECT_GT(n.l2_exact, 0.0);
}

TEST(Norms, InterpolantIsCloseAndImproves) {
    const auto spec = get_problem(ProblemId::periodic1d);
    double prev = 1;
    for (int N : {5, 10}) {
        const auto ops = fixture::periodic_ops(N, 3);
        const auto u = interpolate(*ops.space, spec.u_at(0.7, 0)), v = interpolate(*ops.space, spec.u_at(0.7, 1));
        const auto n = error_norms(*ops.space, u, v, spec, 0.7);
        EXPECT_LT(n.eE, prev);
        prev = n.eE;
    }
    EXPECT_LT(prev, 1e-2);
}

TEST(Norms, SeminormProperties) {
    const auto spec = zero_problem(ProblemId::square2d);
    const auto ops = fixture::square_high_ops(1, 2);
    const auto a = oracle::random_vector(ops.size(), 1), b = oracle::random_vector(ops.size(), 2);
    std::vector<double> sum(a.size()), twice(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum[i] = a[i] + b[i];
        twice[i] = -2 * a[i];
    }
    const auto na = error_norms(*ops.space, a, a, spec, 0.0), nb = error_norms(*ops.space, b, b, spec, 0.0);
    const auto ns = error_norms(*ops.space, sum, sum, spec, 0.0), n2 = error_norms(*ops.space, twice, twice, spec, 0.0);
    EXPECT_NEAR(n2.l2_error, 2 * na.l2_error, 1e-13);
    EXPECT_NEAR(n2.gradient_error, 2 * na.gradient_error, 1e-12);
    EXPECT_NEAR(n2.velocity_error, 2 * na.velocity_error, 1e-13);
    EXPECT_LE(ns.l2_error, na.l2_error + nb.l2_error + 1e-14);
    EXPECT_LE(ns.gradient_error, na.gradient_error + nb.gradient_error + 1e-12);
    // the L2 piece is the consistent mass norm of the coefficients
    EXPECT_NEAR(na.l2_error * na.l2_error, kernels::dot(a, ops.apply_mass(a)), 1e-10);
}

TEST(NegativeNorm, InverseOfLhGivesMassNorm) {
    const auto ops = fixture::square_ops(1, 2);
    const auto w = oracle::random_vector(ops.size(), 3);
    const auto e = apply_Lh(ops, w);
    EXPECT_NEAR(adapted_negative_norm(e, 2, ops), std::sqrt(kernels::dot(w, ops.apply_mass(w))), 1e-10);
    EXPECT_EQ(adapted_negative_norm(std::vector<double>(ops.size(), 0.0), 2, ops), 0.0);
    EXPECT_THROW((void)adapted_negative_norm(e, 0, ops), Error);
}

TEST(NegativeNorm, EigenvectorScaling) {
    const auto ops = fixture::square_ops(1, 2);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::dense(ops.A), oracle::dense_mass(ops));
    for (Eigen::Index j : {Eigen::Index{0}, es.eigenvalues().size() / 2}) {
        const double lam = es.eigenvalues()(j);
        const Eigen::VectorXd phi = es.eigenvectors().col(j);  // M-normalised
        const std::vector<double> e(phi.data(), phi.data() + phi.size());
        for (int m = 1; m <= 4; ++m) {
            const int s = (m + 1) / 2;
            double expected = std::pow(lam, -s);
            if (m % 2) expected *= std::sqrt(1 + lam);
            EXPECT_NEAR(adapted_negative_norm(e, m, ops), expected, 1e-9 * expected) << "m=" << m;
        }
    }
    // general bound from the smallest eigenvalue
    const auto r = oracle::random_vector(ops.size(), 4);
    const double mr = std::sqrt(kernels::dot(r, ops.apply_mass(r)));
    EXPECT_LE(adapted_negative_norm(r, 2, ops), mr / es.eigenvalues()(0) * (1 + 1e-9));
}

TEST(Table, OrdersFromRatios) {
    const auto t = convergence_table({report(10, 1.0, 1.0), report(40, 0.25, 0.0625)});
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_TRUE(std::isnan(t.rows[0].ratio_eE));
    EXPECT_TRUE(std::isnan(t.rows[0].order_eE));
    EXPECT_DOUBLE_EQ(t.rows[1].ratio_eE, 4.0);
    EXPECT_DOUBLE_EQ(t.rows[1].order_eE, 2.0);
    EXPECT_DOUBLE_EQ(t.rows[1].order_e0, 4.0);
    EXPECT_DOUBLE_EQ(t.final_order_eE(), 2.0);
    EXPECT_DOUBLE_EQ(observed_order(8.0), 3.0);
    EXPECT_DOUBLE_EQ(observed_order(9.0, 3.0), 2.0);
    const auto flat = convergence_table({report(10, 0.5, 0.5), report(20, 0.5, 0.5)});
    EXPECT_EQ(flat.rows[1].order_eE, 0.0);
}

TEST(Table, RejectsNonMonotoneRefinement) {
    EXPECT_THROW((void)convergence_table({report(40, 1.0, 1.0), report(10, 0.5, 0.5)}), Error);
    EXPECT_THROW((void)convergence_table({report(10, 1.0, 1.0), report(10, 0.5, 0.5)}), Error);
    auto other = report(5, 1.0, 1.0);
    other.q = 0;  // a new block restarts the ratios
    const auto t = convergence_table({report(10, 1.0, 1.0), other});
    EXPECT_TRUE(std::isnan(t.rows[1].ratio_eE));
}

TEST(Report, JsonRoundTrip) {
    auto a = report(10, 0.1, 0.01), b = report(20, 1.0 / 3.0, 2.0e-7);
    a.solves = 3;
    a.cg_iterations = 123;
    a.dof_high = 99;
    const auto t = convergence_table({a, b});
    std::stringstream ss;
    write_report(t, ReportFormat::json, ss);
    const auto back = read_report(ReportFormat::json, ss);
    ASSERT_EQ(back.rows.size(), t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        EXPECT_EQ(back.rows[i].report, t.rows[i].report);
        EXPECT_TRUE(same(back.rows[i].ratio_eE, t.rows[i].ratio_eE));
        EXPECT_TRUE(same(back.rows[i].order_eE, t.rows[i].order_eE));
        EXPECT_TRUE(same(back.rows[i].ratio_e0, t.rows[i].ratio_e0));
        EXPECT_TRUE(same(back.rows[i].order_e0, t.rows[i].order_e0));
    }
    std::stringstream bad("{\"rows\": [");
    EXPECT_THROW((void)read_report(ReportFormat::json, bad), Error);
}

TEST(Report, CsvStructureAndRoundTrip) {
    std::stringstream empty;
    write_report(ConvergenceTable{}, ReportFormat::csv, empty);
    EXPECT_EQ(empty.str(), "problem,p,q,level,N,dof,NT,e0,eE,ratio_eE,order_eE,wall_s\n");

    const auto t = convergence_table({report(10, 0.1, 0.01), report(20, 0.0123456789012345678, 1e-9)});
    std::stringstream ss;
    write_report(t, ReportFormat::csv, ss);
    const std::string text = ss.str();
    std::stringstream lines(text);
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 11) << line;
        ++n;
    }
    EXPECT_EQ(n, 3);
    std::stringstream in(text);
    const auto back = read_report(ReportFormat::csv, in);
    ASSERT_EQ(back.rows.size(), 2u);
    EXPECT_EQ(back.rows[1].report.eE, t.rows[1].report.eE);
    EXPECT_TRUE(std::isnan(back.rows[0].ratio_eE));
    EXPECT_EQ(back.rows[1].order_eE, t.rows[1].order_eE);
    std::stringstream headless("1,2,3\n");
    EXPECT_THROW((void)read_report(ReportFormat::csv, headless), Error);
    EXPECT_THROW((void)parse_report_format("xml"), Error);
}

TEST(Diagnostics, Periodic1dP2Q2) {
    RunConfig cfg;
    cfg.problem = ProblemId::periodic1d;
    cfg.p = 2;
    cfg.q = 2;
    cfg.N = 10;
    const auto rep = run_single(cfg);
    EXPECT_GT(rep.eE, 3.63e-3 / 2);
    EXPECT_LT(rep.eE, 3.63e-3 * 2);
}
