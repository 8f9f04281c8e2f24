#pragma once

#include <vector>

#include "bte/mesh.hpp"
#include "bte/state.hpp"
#include "bte/transport.hpp"

namespace bte {

// Cell-integrated weights of the wave-vector averages. Nbar and Tbar carry
// the dth factor and are independent of the angle; Rbar separates into a
// radial part times the sine difference.
struct MomentWeights {
    int N_eps = 0, N_th = 0;
    double degeneracy = 0.0; // g_s g_v / (2 pi)^2
    std::vector<double> Nbar; // [k]
    std::vector<double> Tbar; // [k]
    std::vector<double> Rrad; // [k]  (v_F (eps_+^2-eps_-^2)/(2 (hbar vF)^2))
    std::vector<double> sdn;  // [n]  (sin th_+ - sin th_-)
    double Rbar(int k, int n) const { return Rrad[k] * sdn[n]; }
};

MomentWeights build_moment_weights(const PolarMesh& mesh, double v_F, double hbar_vF);

// Macroscopic quantities per spatial cell, internal units: densities 1/nm^2,
// currents e/(nm ps), energy densities eV/nm^2, velocities nm/ps, mean
// energies eV.
struct CellMoments {
    double n = 0, p = 0;
    double j_n = 0, j_p = 0, j_tot = 0;
    double Edens_n = 0, Edens_p = 0;
    double V_n = 0, V_p = 0;
    double E_n = 0, E_p = 0;
};

// guard_density: mean velocity/energy are reported as zero below
// 1e-3 x guard to avoid dividing by vanishing densities.
CellMoments cell_moments(const SolutionState& state, const MomentWeights& w, int i,
                         double guard_density);

// Boundary-row moments from the inflow Fermi-Dirac data (isotropic, zero
// current); used for the plot rows at x = 0 and x = L.
CellMoments boundary_moments(const BoundarySpec& bc, const MomentWeights& w,
                             double guard_density);

std::vector<double> density_profile(const SolutionState& state, const MomentWeights& w);

// Trace-reconstructed densities on one side of a spatial edge:
// side +1 uses a+b of cell i, side -1 uses a-b of cell i.
double trace_density_n(const SolutionState& state, const MomentWeights& w, int i, int side);
double trace_density_p(const SolutionState& state, const MomentWeights& w, int i, int side);

} // namespace bte
