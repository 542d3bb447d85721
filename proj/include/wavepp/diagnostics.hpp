#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wavepp/problems.hpp"
#include "wavepp/solvers.hpp"

namespace wavepp {

struct ErrorNorms {
    double e0 = 0.0;
    double eE = 0.0;
    // absolute pieces
    double l2_error = 0.0;
    double l2_exact = 0.0;
    double velocity_error = 0.0;
    double velocity_exact = 0.0;
    double gradient_error = 0.0;
    double gradient_exact = 0.0;
};

/// Relative weighted L2 and energy errors of (u*, v*) against the exact solution
/// at time T. quadrature_degree 0 picks twice the space degree (capped at 12 on
/// triangles).
[[nodiscard]] ErrorNorms error_norms(const DiscreteSpace& space, std::span<const double> u_star,
                                     std::span<const double> v_star, const ProblemSpec& spec, double T,
                                     int quadrature_degree = 0);

/// ||L^{-ceil(m/2)} e|| in the M-norm (m even) or the (M + A)-norm (m odd).
[[nodiscard]] double adapted_negative_norm(std::span<const double> e, int m, const WaveOperators& ops,
                                           const SolverConfig& config = {});

struct ErrorReport {
    std::string problem;
    int p = 0;
    int q = 0;
    int level = 0;
    int N = 0;
    long dof = 0;
    long dof_high = 0;
    long NT = 0;
    double e0 = 0.0;
    double eE = 0.0;
    double wall_s = 0.0;
    int solves = 0;
    long cg_iterations = 0;

    bool operator==(const ErrorReport&) const = default;
};

struct ConvergenceRow {
    ErrorReport report;
    double ratio_eE = 0.0;  // NaN on the first row
    double order_eE = 0.0;
    double ratio_e0 = 0.0;
    double order_e0 = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    [[nodiscard]] double final_order_eE() const;
    [[nodiscard]] double final_order_e0() const;
};

/// Rows in refinement order; throws unless dof counts strictly increase within
/// each (problem, p, q) block.
[[nodiscard]] ConvergenceTable convergence_table(const std::vector<ErrorReport>& reports);

/// log(ratio) / log(h_ratio); h_ratio 2 gives log2.
[[nodiscard]] double observed_order(double ratio, double h_ratio = 2.0);

enum class ReportFormat { csv, json };
[[nodiscard]] ReportFormat parse_report_format(const std::string& s);

void write_report(const ConvergenceTable& table, ReportFormat format, std::ostream& out);
void write_report(const ConvergenceTable& table, ReportFormat format, const std::filesystem::path& path);
[[nodiscard]] ConvergenceTable read_report(ReportFormat format, std::istream& in);
[[nodiscard]] ConvergenceTable read_report(ReportFormat format, const std::filesystem::path& path);

}  // namespace wavepp
