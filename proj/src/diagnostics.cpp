#include "wavepp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "wavepp/error.hpp"
#include "wavepp/kernels.hpp"

namespace wavepp {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    if (s.empty()) return nan_v;
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw Error("read_report: bad number '" + s + "'");
    return v;
}

const char* const csv_header = "problem,p,q,level,N,dof,NT,e0,eE,ratio_eE,order_eE,wall_s";

}  // namespace

ErrorNorms error_norms(const DiscreteSpace& space, std::span<const double> u_star, std::span<const double> v_star,
                       const ProblemSpec& spec, double T, int quadrature_degree) {
    require(u_star.size() == space.size() && v_star.size() == space.size(), "error_norms: field size mismatch");
    const Mesh& mesh = *space.mesh;
    int qdeg = quadrature_degree > 0 ? quadrature_degree : 2 * space.element.degree;
    if (mesh.dim == 2) qdeg = std::min(qdeg, max_triangle_degree);
    const QuadratureRule rule = volume_quadrature(mesh.shape(), qdeg);
    const Tabulation tab = tabulate(space.element, rule.points);
    const std::size_t nb = space.element.basis_dim();

    double eu = 0, nu = 0, ev = 0, nv = 0, eg = 0, ng = 0;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        const Point cc = mesh.element_center(e);
        const auto& dofs = space.element_dofs[e];
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const MapEval me = eval_map(mesh.maps[e], rule.points[q]);
            const Eigen::Matrix2d Jinv = me.J.inverse();
            double uh = 0, vh = 0, rx = 0, ry = 0;
            for (std::size_t i = 0; i < nb; ++i) {
                if (dofs[i] < 0) continue;
                const auto d = static_cast<std::size_t>(dofs[i]);
                uh += u_star[d] * tab.v(q, i);
                vh += v_star[d] * tab.v(q, i);
                rx += u_star[d] * tab.gx(q, i);
                ry += u_star[d] * tab.gy(q, i);
            }
            const double gx = Jinv(0, 0) * rx + Jinv(1, 0) * ry;
            const double gy = mesh.dim == 1 ? 0.0 : Jinv(0, 1) * rx + Jinv(1, 1) * ry;
            const double w = rule.weights[q] * me.det;
            const double rho = spec.rho(me.x, cc);
            const double c = spec.c(me.x, cc);
            const double u = spec.u(me.x, cc, T, 0);
            const double v = spec.u(me.x, cc, T, 1);
            const Point g = spec.grad_u(me.x, cc, T, 0);
            eu += w * rho * (u - uh) * (u - uh);
            nu += w * rho * u * u;
            ev += w * rho * (v - vh) * (v - vh);
            nv += w * rho * v * v;
            eg += w * c * ((g[0] - gx) * (g[0] - gx) + (g[1] - gy) * (g[1] - gy));
            ng += w * c * (g[0] * g[0] + g[1] * g[1]);
        }
    }
    ErrorNorms r;
    r.l2_error = std::sqrt(eu);
    r.l2_exact = std::sqrt(nu);
    r.velocity_error = std::sqrt(ev);
    r.velocity_exact = std::sqrt(nv);
    r.gradient_error = std::sqrt(eg);
    r.gradient_exact = std::sqrt(ng);
    r.e0 = r.l2_error / r.l2_exact;
    r.eE = (r.velocity_error + r.gradient_error) / (r.velocity_exact + r.gradient_exact);
    return r;
}

double adapted_negative_norm(std::span<const double> e, int m, const WaveOperators& ops, const SolverConfig& config) {
    require(m >= 1, "adapted_negative_norm: m must be positive");
    require(e.size() == ops.size(), "adapted_negative_norm: size mismatch");
    FieldVector w(e.begin(), e.end());
    const int solves = (m + 1) / 2;
    const FieldVector zero(w.size(), 0.0);
    for (int i = 0; i < solves; ++i) w = solve_Lh_inverse(ops, w, zero, config).first;
    const FieldVector Mw = ops.apply_mass(w);
    double s = kernels::dot(w, Mw);
    if (m % 2 == 1) s += kernels::dot(w, ops.apply_stiffness(w));
    return std::sqrt(std::max(s, 0.0));
}

double observed_order(double ratio, double h_ratio) { return std::log(ratio) / std::log(h_ratio); }

double ConvergenceTable::final_order_eE() const { return rows.empty() ? nan_v : rows.back().order_eE; }
double ConvergenceTable::final_order_e0() const { return rows.empty() ? nan_v : rows.back().order_e0; }

ConvergenceTable convergence_table(const std::vector<ErrorReport>& reports) {
    ConvergenceTable t;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const ErrorReport& r = reports[i];
        ConvergenceRow row{r, nan_v, nan_v, nan_v, nan_v};
        if (i > 0) {
            const ErrorReport& prev = reports[i - 1];
            const bool same_block = prev.problem == r.problem && prev.p == r.p && prev.q == r.q;
            if (same_block) {
                if (r.dof <= prev.dof)
                    throw Error("convergence_table: refinement is not monotone at row " + std::to_string(i));
                row.ratio_eE = prev.eE / r.eE;
                row.order_eE = observed_order(row.ratio_eE);
                row.ratio_e0 = prev.e0 / r.e0;
                row.order_e0 = observed_order(row.ratio_e0);
            }
        }
        t.rows.push_back(row);
    }
    return t;
}

ReportFormat parse_report_format(const std::string& s) {
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    throw Error("unknown report format '" + s + "' (expected csv or json)");
}

void write_report(const ConvergenceTable& table, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::csv) {
        out << csv_header << '\n';
        for (const auto& row : table.rows) {
            const ErrorReport& r = row.report;
            out << r.problem << ',' << r.p << ',' << r.q << ',' << r.level << ',' << r.N << ',' << r.dof << ','
                << r.NT << ',' << fmt17(r.e0) << ',' << fmt17(r.eE) << ',' << fmt17(row.ratio_eE) << ','
                << fmt17(row.order_eE) << ',' << fmt17(r.wall_s) << '\n';
        }
    } else {
        using nlohmann::json;
        auto num = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
        json rows = json::array();
        for (const auto& row : table.rows) {
            const ErrorReport& r = row.report;
            rows.push_back({{"problem", r.problem},
                            {"p", r.p},
                            {"q", r.q},
                            {"level", r.level},
                            {"N", r.N},
                            {"dof", r.dof},
                            {"dof_high", r.dof_high},
                            {"NT", r.NT},
                            {"e0", r.e0},
                            {"eE", r.eE},
                            {"ratio_eE", num(row.ratio_eE)},
                            {"order_eE", num(row.order_eE)},
                            {"ratio_e0", num(row.ratio_e0)},
                            {"order_e0", num(row.order_e0)},
                            {"wall_s", r.wall_s},
                            {"solves", r.solves},
                            {"cg_iterations", r.cg_iterations}});
        }
        // dump() prints doubles in shortest round-trip form
        out << json{{"rows", rows}}.dump(2) << '\n';
    }
    if (!out) throw Error("write_report: output stream failed");
}

void write_report(const ConvergenceTable& table, ReportFormat format, const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw Error("write_report: cannot open " + path.string());
    write_report(table, format, f);
}

ConvergenceTable read_report(ReportFormat format, std::istream& in) {
    ConvergenceTable t;
    if (format == ReportFormat::json) {
        using nlohmann::json;
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw Error(std::string("read_report: ") + e.what());
        }
        auto num = [](const json& v) { return v.is_null() ? nan_v : v.get<double>(); };
        for (const auto& r : j.at("rows")) {
            ConvergenceRow row;
            ErrorReport& e = row.report;
            e.problem = r.at("problem").get<std::string>();
            e.p = r.at("p").get<int>();
            e.q = r.at("q").get<int>();
            e.level = r.at("level").get<int>();
            e.N = r.at("N").get<int>();
            e.dof = r.at("dof").get<long>();
            e.dof_high = r.value("dof_high", 0L);
            e.NT = r.at("NT").get<long>();
            e.e0 = r.at("e0").get<double>();
            e.eE = r.at("eE").get<double>();
            e.wall_s = r.at("wall_s").get<double>();
            e.solves = r.value("solves", 0);
            e.cg_iterations = r.value("cg_iterations", 0L);
            row.ratio_eE = num(r.at("ratio_eE"));
            row.order_eE = num(r.at("order_eE"));
            row.ratio_e0 = r.contains("ratio_e0") ? num(r.at("ratio_e0")) : nan_v;
            row.order_e0 = r.contains("order_e0") ? num(r.at("order_e0")) : nan_v;
            t.rows.push_back(row);
        }
        return t;
    }
    std::string line;
    if (!std::getline(in, line) || line != csv_header) throw Error("read_report: missing CSV header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (!line.empty() && line.back() == ',') f.emplace_back();
        if (f.size() != 12) throw Error("read_report: expected 12 columns, got " + std::to_string(f.size()));
        ConvergenceRow row;
        ErrorReport& e = row.report;
        e.problem = f[0];
        e.p = std::stoi(f[1]);
        e.q = std::stoi(f[2]);
        e.level = std::stoi(f[3]);
        e.N = std::stoi(f[4]);
        e.dof = std::stol(f[5]);
        e.NT = std::stol(f[6]);
        e.e0 = parse_double(f[7]);
        e.eE = parse_double(f[8]);
        row.ratio_eE = parse_double(f[9]);
        row.order_eE = parse_double(f[10]);
        e.wall_s = parse_double(f[11]);
        row.ratio_e0 = nan_v;
        row.order_e0 = nan_v;
        t.rows.push_back(row);
    }
    return t;
}

ConvergenceTable read_report(ReportFormat format, const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw Error("read_report: cannot open " + path.string());
    return read_report(format, f);
}

}  // namespace wavepp
