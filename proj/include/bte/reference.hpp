#pragma once

#include "bte/mesh.hpp"
#include "bte/scattering_table.hpp"
#include "bte/state.hpp"

namespace bte {

// Serial reference evaluation of the collision projections: reconstructs each
// cell-pair coefficient from the per-mechanism radial blocks and the closed
// angular weight, then runs the plain quadruple sum over (s', k', n').
// Kept independent of the factorized production path; used by the tests and
// the benchmark.
void naive_collision(const SolutionState& state, const ScatteringTable& table,
                     const PolarMesh& mesh, int i, double dx, double* Q0, double* Q1);

// Cell-pair coefficient A(src -> dst) assembled the same way, for table
// structure checks.
double naive_pair_coefficient(const ScatteringTable& table, const PolarMesh& mesh,
                              int s_src, int k_src, int n_src,
                              int s_dst, int k_dst, int n_dst);

} // namespace bte
