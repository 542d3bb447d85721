#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "wavepp/error.hpp"
#include "wavepp/experiment.hpp"
#include "wavepp/processing.hpp"

using namespace wavepp;

namespace {

// Initial data that samples nodal vectors exactly: derivative k returns ladder[k] at node x.
InitialData nodal_data(const DiscreteSpace& sp, std::vector<std::vector<double>> ladder) {
    auto index = std::make_shared<std::map<std::pair<double, double>, std::size_t>>();
    for (std::size_t i = 0; i < sp.node_coords.size(); ++i) (*index)[{sp.node_coords[i][0], sp.node_coords[i][1]}] = i;
    auto rungs = std::make_shared<std::vector<std::vector<double>>>(std::move(ladder));
    InitialData d;
    d.derivative = [index, rungs](const Point& x, const Point&, int k) {
        const auto it = index->find({x[0], x[1]});
        return it == index->end() ? 0.0 : (*rungs)[static_cast<std::size_t>(k)][it->second];
    };
    d.rho = fixture::one;
    return d;
}

Eigen::VectorXd vec(const std::vector<double>& v) {
    return Eigen::VectorXd::Map(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

TEST(Counts, AlphaBeta) {
    EXPECT_EQ(processing_counts(0).alpha, 0);
    EXPECT_EQ(processing_counts(0).beta, 0);
    EXPECT_EQ(processing_counts(1).alpha, 1);
    EXPECT_EQ(processing_counts(1).beta, 0);
    EXPECT_EQ(processing_counts(3).alpha, 2);
    EXPECT_EQ(processing_counts(3).beta, 1);
    EXPECT_EQ(processing_counts(10).alpha, 5);
    EXPECT_EQ(processing_counts(10).beta, 5);
    for (int q = 0; q < 12; ++q) EXPECT_EQ(processing_counts(q).alpha + processing_counts(q).beta, q);
    EXPECT_THROW((void)processing_counts(-1), Error);
}

TEST(Plan, PostDegreeMustReachPPlusQ) {
    EXPECT_THROW((void)ProcessingPlan::make(3, 2, {}, 4), Error);
    EXPECT_NO_THROW((void)ProcessingPlan::make(3, 2, {}, 5));
    EXPECT_EQ(ProcessingPlan::make(2, 3).post_degree, 6);
    EXPECT_NO_THROW((void)ProcessingPlan::make(0, 2, {}, 1));
}

TEST(Preprocess, QZeroIsInterpolation) {
    const auto spec = get_problem(ProblemId::periodic1d);
    const auto ops = fixture::periodic_ops(5, 2);
    ProcessingStats st;
    const auto [u, v] = preprocess_initial(InitialData::from_problem(spec), ProcessingPlan::make(0, 2), ops, {}, &st);
    EXPECT_EQ(u, interpolate(*ops.space, spec.u_at(0.0, 0)));
    EXPECT_EQ(v, interpolate(*ops.space, spec.u_at(0.0, 1)));
    EXPECT_EQ(st.solves, 0);
}

TEST(Preprocess, QOneFormula) {
    const auto spec = get_problem(ProblemId::square2d);
    const auto ops = fixture::square_ops(1, 2);
    const auto src = SourceSampler::from_problem(spec, *ops.space);
    ProcessingStats st;
    const auto [u, v] = preprocess_initial(InitialData::from_problem(spec), ProcessingPlan::make(1, 2), ops, src, &st);
    EXPECT_EQ(st.solves, 1);
    EXPECT_EQ(v, interpolate(*ops.space, spec.u_at(0.0, 1)));
    // u = L^{-1}(-interp(u_tt) + interp(f)) with a dense solve
    const auto utt = interpolate(*ops.space, spec.u_at(0.0, 2)), f = interpolate(*ops.space, spec.f_at(0.0, 0));
    const Eigen::VectorXd rhs = oracle::dense_mass(ops) * (vec(f) - vec(utt));
    const Eigen::VectorXd ref = oracle::dense(ops.A).ldlt().solve(rhs);
    EXPECT_LT((vec(u) - ref).cwiseAbs().maxCoeff(), 1e-10 * ref.cwiseAbs().maxCoeff());
}

TEST(Preprocess, RecoversDiscreteEigenvector) {
    const auto ops = fixture::square_ops(1, 2);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::dense(ops.A), oracle::dense_mass(ops));
    const Eigen::VectorXd phi = es.eigenvectors().col(3);
    const double lam = es.eigenvalues()(3);
    for (int q = 1; q <= 4; ++q) {
        std::vector<std::vector<double>> ladder(static_cast<std::size_t>(q + 2));
        for (int k = 0; k <= q + 1; ++k) {
            // u(t) = cos(w t) phi: d^k u(0) = (-lam)^{k/2} phi for even k, zero for odd k
            const double s = k % 2 ? 0.0 : std::pow(-lam, k / 2);
            ladder[static_cast<std::size_t>(k)].resize(ops.size());
            for (std::size_t i = 0; i < ops.size(); ++i) ladder[static_cast<std::size_t>(k)][i] = s * phi(static_cast<Eigen::Index>(i));
        }
        const auto data = nodal_data(*ops.space, ladder);
        const auto [u, v] = preprocess_initial(data, ProcessingPlan::make(q, 2, {}, 8), ops, {});
        EXPECT_LT((vec(u) - phi).cwiseAbs().maxCoeff(), 1e-9 * phi.cwiseAbs().maxCoeff()) << "q=" << q;
        EXPECT_LT(oracle::max_abs(v), 1e-9 * phi.cwiseAbs().maxCoeff()) << "q=" << q;
    }
}

TEST(Preprocess, Linear) {
    const auto ops = fixture::square_ops(1, 2);
    std::vector<std::vector<double>> a(5), b(5), c(5);
    for (int k = 0; k < 5; ++k) {
        a[k] = oracle::random_vector(ops.size(), 10 + k);
        b[k] = oracle::random_vector(ops.size(), 20 + k);
        c[k].resize(ops.size());
        for (std::size_t i = 0; i < ops.size(); ++i) c[k][i] = 2.0 * a[k][i] - 3.0 * b[k][i];
    }
    const auto plan = ProcessingPlan::make(3, 2, {}, 5);
    const auto [ua, va] = preprocess_initial(nodal_data(*ops.space, a), plan, ops, {});
    const auto [ub, vb] = preprocess_initial(nodal_data(*ops.space, b), plan, ops, {});
    const auto [uc, vc] = preprocess_initial(nodal_data(*ops.space, c), plan, ops, {});
    for (std::size_t i = 0; i < ops.size(); ++i) {
        EXPECT_NEAR(uc[i], 2 * ua[i] - 3 * ub[i], 1e-10 * (1 + std::abs(uc[i])));
        EXPECT_NEAR(vc[i], 2 * va[i] - 3 * vb[i], 1e-10 * (1 + std::abs(vc[i])));
    }
}

TEST(Preprocess, PeriodicMeanFollowsGuess) {
    const auto spec = get_problem(ProblemId::periodic1d);
    const auto ops = fixture::periodic_ops(5, 2);
    auto data = InitialData::from_problem(spec);
    const auto base = data.derivative;
    data.derivative = [base](const Point& x, const Point& cc, int k) { return base(x, cc, k) + (k == 0 ? 0.5 : 0.0); };
    const auto [u, v] = preprocess_initial(data, ProcessingPlan::make(2, 2), ops, {});
    const auto guess = interpolate(*ops.space, data.at(0));
    EXPECT_NEAR(ops.mass_mean_numerator(u), ops.mass_mean_numerator(guess), 1e-12);
}

TEST(Postprocess, QZeroIsProlongation) {
    const auto low = fixture::square_ops(1, 2);
    const auto high = fixture::square_high_ops(1, 4);
    const auto P = build_prolongation(*low.space, *high.space);
    const auto u = oracle::random_vector(low.size(), 1), v = oracle::random_vector(low.size(), 2);
    const auto [us, vs] = postprocess_final(u, v, 0.0, ProcessingPlan::make(0, 2), low, {}, high, {}, P);
    EXPECT_EQ(us, P.multiply(u));
    EXPECT_EQ(vs, P.multiply(v));
    // zero CG iterations return the prolonged guesses untouched
    SolverConfig none;
    none.mode = SolveMode::cg_fixed;
    none.iterations = 0;
    ProcessingStats st;
    const auto [u0, v0] = postprocess_final(u, v, 0.0, ProcessingPlan::make(2, 2, none), low, {}, high, {}, P, &st);
    EXPECT_EQ(u0, us);
    EXPECT_EQ(v0, vs);
    EXPECT_EQ(st.iterations, 0);
}

TEST(Postprocess, HighLadderReproducesProlongedRung) {
    const auto low = fixture::square_ops(1, 2);
    const auto high = fixture::square_high_ops(1, 4);
    const auto P = build_prolongation(*low.space, *high.space);
    const auto u = oracle::random_vector(low.size(), 3), v = oracle::random_vector(low.size(), 4);
    for (int q : {1, 2}) {
        ProcessingStats st;
        const auto [us, vs] = postprocess_final(u, v, 0.0, ProcessingPlan::make(q, 2), low, {}, high, {}, P, &st);
        EXPECT_EQ(st.solves, q);
        const auto lo = time_derivative_ladder(low, u, v, {}, 0.0, q + 1);
        const auto hi = time_derivative_ladder(high, us, vs, {}, 0.0, q + 1);
        for (int k : {q, q + 1}) {
            const auto target = P.multiply(lo[static_cast<std::size_t>(k)]);
            EXPECT_LT(oracle::max_abs_diff(hi[static_cast<std::size_t>(k)], target), 1e-8 * oracle::max_abs(target))
                << "q=" << q << " k=" << k;
        }
    }
}

TEST(Processing, P3Q3Convergence) {
    RunConfig cfg;
    cfg.problem = ProblemId::periodic1d;
    cfg.p = 3;
    cfg.q = 3;
    cfg.record_wall_time = false;
    const auto table = run_sweep(cfg, {10, 20});
    EXPECT_GT(table.rows[0].report.eE, 6.41e-6 / 2);
    EXPECT_LT(table.rows[0].report.eE, 6.41e-6 * 2);
    EXPECT_NEAR(table.final_order_eE(), 6.0, 0.5);
}

TEST(Processing, ProjectionSeedingAccurate) {
    RunConfig cfg;
    cfg.problem = ProblemId::periodic1d;
    cfg.p = 2;
    cfg.q = 2;
    cfg.N = 10;
    const auto nodal = run_single(cfg);
    cfg.seeding = Seeding::projection;
    const auto proj = run_single(cfg);
    EXPECT_TRUE(std::isfinite(proj.eE));
    EXPECT_LT(proj.eE, 2 * nodal.eE);
    EXPECT_GT(proj.eE, 0.5 * nodal.eE);
}
