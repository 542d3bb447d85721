#pragma once

#include <memory>

#include "wavepp/assembly.hpp"
#include "wavepp/mesh.hpp"
#include "wavepp/problems.hpp"

namespace fixture {

inline const wavepp::SpatialFn one = [](const wavepp::Point&, const wavepp::Point&) { return 1.0; };

/// Periodic 1D space of the benchmark mesh with the benchmark coefficients.
inline wavepp::WaveOperators periodic_ops(int N, int p, wavepp::MassKind mass = wavepp::MassKind::lumped) {
    auto mesh = std::make_shared<const wavepp::Mesh>(wavepp::generate_interval_mesh(N));
    auto space = wavepp::build_space(mesh, wavepp::build_reference_element(wavepp::Shape::interval,
                                                                           wavepp::Family::spectral_gll, p));
    const auto spec = wavepp::get_problem(wavepp::ProblemId::periodic1d);
    wavepp::AssemblyOptions o;
    o.mass = mass;
    o.elementwise_constant_coefficients = true;
    return wavepp::assemble_operators(space, spec.rho, spec.c, o);
}

/// Square mesh with lumped triangles and the benchmark coefficients.
inline wavepp::WaveOperators square_ops(int level, int p) {
    auto mesh = std::make_shared<const wavepp::Mesh>(wavepp::generate_square_mesh(level));
    auto space = wavepp::build_space(mesh, wavepp::build_reference_element(wavepp::Shape::triangle,
                                                                           wavepp::Family::lumped_triangle, p));
    const auto spec = wavepp::get_problem(wavepp::ProblemId::square2d);
    return wavepp::assemble_operators(space, spec.rho, spec.c);
}

/// Degree-2p Lagrange space with consistent mass on the square mesh.
inline wavepp::WaveOperators square_high_ops(int level, int degree) {
    auto mesh = std::make_shared<const wavepp::Mesh>(wavepp::generate_square_mesh(level));
    auto space = wavepp::build_space(
        mesh, wavepp::build_reference_element(wavepp::Shape::triangle, wavepp::Family::lagrange, degree));
    const auto spec = wavepp::get_problem(wavepp::ProblemId::square2d);
    wavepp::AssemblyOptions o;
    o.mass = wavepp::MassKind::consistent;
    return wavepp::assemble_operators(space, spec.rho, spec.c, o);
}

}  // namespace fixture
