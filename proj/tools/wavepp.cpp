#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wavepp/experiment.hpp"
#include "wavepp/kernels.hpp"

namespace {

std::vector<int> parse_list(const std::string& s, const char* what) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        const int v = std::stoi(item, &pos);
        if (pos != item.size()) throw wavepp::Error(std::string("bad ") + what + " list '" + s + "'");
        out.push_back(v);
    }
    if (out.empty()) throw wavepp::Error(std::string("empty ") + what + " list");
    return out;
}

std::vector<int> default_refinements(const wavepp::RunConfig& c, bool full) {
    if (c.problem == wavepp::ProblemId::periodic1d) return c.p == 1 ? std::vector{20, 40, 80} : std::vector{5, 10, 20};
    if (c.p == 3 && !full) return {1, 2};
    return {1, 2, 3};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"High-order explicit wave solver with pre- and post-processing"};
    std::string problem = "periodic1d", levels, Ns, solver = "direct", format = "csv", out, trace_file = "trace.csv";
    std::string seeding = "nodal";
    wavepp::RunConfig cfg;
    bool trace = false, assert_orders = false, full = false, no_timing = false;
    app.add_option("--problem", problem, "periodic1d | square2d | circle2d")
        ->check(CLI::IsMember({"periodic1d", "square2d", "circle2d"}));
    app.add_option("--p", cfg.p, "polynomial degree (1..3)")->check(CLI::Range(1, 3));
    app.add_option("--q", cfg.q, "processing steps")->check(CLI::NonNegativeNumber);
    auto* lvl = app.add_option("--level", levels, "2D mesh level(s), comma separated");
    auto* nn = app.add_option("--N", Ns, "1D cells per unit length, comma separated");
    lvl->excludes(nn);
    app.add_option("--solver", solver, "direct | cg")->check(CLI::IsMember({"direct", "cg"}));
    app.add_option("--cg-iters", cfg.cg_iters, "CG iterations per solve with --solver cg")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--safety", cfg.safety, "fraction of the maximal stable step")->check(CLI::PositiveNumber);
    app.add_option("--post-degree", cfg.post_degree, "degree of the post-processing space (default 2p)");
    app.add_option("--seeding", seeding, "nodal | projection")->check(CLI::IsMember({"nodal", "projection"}));
    app.add_option("--out", out, "report path (stdout if omitted)");
    app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--trace", trace, "write the energy trace");
    app.add_option("--trace-file", trace_file, "energy trace path");
    app.add_option("--seed", cfg.seed, "mesh jitter seed");
    app.add_flag("--assert-orders", assert_orders, "exit 1 if an observed order is below target - 0.5");
    app.add_flag("--full", full, "include level 3 for p = 3 in 2D sweeps");
    app.add_flag("--no-timing", no_timing, "write wall_s = 0 for reproducible reports");
    CLI11_PARSE(app, argc, argv);

    try {
        cfg.problem = wavepp::parse_problem(problem);
        cfg.solver = solver == "cg" ? wavepp::SolveMode::cg_fixed : wavepp::SolveMode::direct_surrogate;
        cfg.seeding = seeding == "projection" ? wavepp::Seeding::projection : wavepp::Seeding::nodal;
        cfg.format = wavepp::parse_report_format(format);
        cfg.out = out;
        cfg.record_wall_time = !no_timing;
        if (trace) cfg.trace = trace_file;
        const bool one_d = cfg.problem == wavepp::ProblemId::periodic1d;
        if (one_d && !levels.empty()) throw wavepp::Error("--level applies to 2D problems; use --N");
        if (!one_d && !Ns.empty()) throw wavepp::Error("--N applies to periodic1d; use --level");
        std::vector<int> refs = !levels.empty() ? parse_list(levels, "level")
                                : !Ns.empty()   ? parse_list(Ns, "N")
                                                : default_refinements(cfg, full);
        (one_d ? cfg.N : cfg.level) = refs.front();
        if (const std::string w = wavepp::validate_config(cfg); !w.empty()) std::cerr << "warning: " << w << '\n';
        std::cerr << "kernels: " << wavepp::kernels::isa_name(wavepp::kernels::active_isa()) << '\n';

        wavepp::ConvergenceTable table = refs.size() == 1 ? wavepp::convergence_table({wavepp::run_single(cfg)})
                                                          : wavepp::run_sweep(cfg, refs);
        if (out.empty())
            wavepp::write_report(table, cfg.format, std::cout);
        else
            wavepp::write_report(table, cfg.format, std::filesystem::path(out));

        if (assert_orders) {
            const double target = std::min(cfg.p + cfg.q, 2 * cfg.p);
            bool ok = true;
            for (const auto& row : table.rows) {
                if (std::isnan(row.order_eE)) continue;
                if (row.order_eE < target - 0.5) {
                    std::fprintf(stderr, "order %.3f below target %.1f at %s refinement %d\n", row.order_eE, target,
                                 row.report.problem.c_str(), one_d ? row.report.N : row.report.level);
                    ok = false;
                }
            }
            if (!ok) return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
