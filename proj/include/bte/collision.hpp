#pragma once

#include <vector>

#include "bte/mesh.hpp"
#include "bte/scattering_table.hpp"
#include "bte/state.hpp"

namespace bte {

// Reused buffers for one spatial cell; one instance per thread.
struct CollisionScratch {
    // angular moments per band and radial cell: sum, cos- and sin-weighted
    std::vector<double> a0, ac, as;
    std::vector<double> b0, bc, bs;
    std::vector<double> u0, uc, us; // moments of 1-a
    // accumulated radial sums per destination band
    std::vector<double> ga0, gac, gas, gb0, gbc, gbs;
    std::vector<double> la0, lac, las, lb0, lbc, lbs;
    std::vector<double> gimp_a, gimp_b, limp_u, limp_b; // impurity, per (k,n)
    void resize(int N_eps, int N_th, bool impurity);
};

// m = 0 and m = 1 projections of the gain-loss operator at spatial cell i.
// Q0 and Q1 are [s][k][n] arrays of size 2*N_eps*N_th; Q0 carries the dx
// factor of the cell integral, Q1 the -dx/3 combination.
void apply_collision(const SolutionState& state, const ScatteringTable& table,
                     const PolarMesh& mesh, int i, double dx,
                     CollisionScratch& scratch, double* Q0, double* Q1);

} // namespace bte
