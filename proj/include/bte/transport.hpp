#pragma once

#include <vector>

#include "bte/collision.hpp"
#include "bte/mesh.hpp"
#include "bte/scattering_table.hpp"
#include "bte/state.hpp"

namespace bte {

// Directed free-streaming coefficient per band and polar cell,
// M = s * v_F/(hbar v_F)^2 * (eps_+^2 - eps_-^2)/2 * (sin th_+ - sin th_-).
// Antisymmetric between bands and across theta = pi/2.
struct FluxCoefficients {
    int N_eps = 0, N_th = 0;
    std::vector<double> M; // [s][k][n]
    double at(int s, int k, int n) const {
        return M[(static_cast<std::size_t>(s) * N_eps + k) * N_th + n];
    }
};

FluxCoefficients build_flux_coefficients(const PolarMesh& mesh, double v_F, double hbar_vF);

// Inflow boundary data: Fermi-Dirac traces per band and energy cell, applied
// on the incoming half-circle at each contact.
struct BoundarySpec {
    std::vector<double> f_bc; // [s][k]
    double at(int s, int k) const { return f_bc[static_cast<std::size_t>(s) * N_eps + k]; }
    int N_eps = 0;
};

BoundarySpec make_fermi_boundary(const PolarMesh& mesh, double eps_F, double T);

// Interface value of the numerical flux in x: central for eta = 1, upwind
// (left trace when M > 0) for eta = 0.
double spatial_flux(double f_minus, double f_plus, double M, double eta);

// UNO interface value with MinMod slopes; w is the wind sign, w = 0 averages
// the two adjacent cells.
double uno_interface(double g_prev, double g, double g_next, double g_next2, int w);

struct TransportContext {
    const SpatialGrid* xg = nullptr;
    const PolarMesh* pm = nullptr;
    const ScatteringTable* table = nullptr;
    const FluxCoefficients* flux = nullptr;
    const BoundarySpec* bc = nullptr;
    double v_F = 0.0;
    double hbar_vF = 0.0;
    double eta = 0.0;
    bool collisions_on = true;
    bool drift_on = true;
};

// Drift contribution (G0, G1) of one spatial cell to the semi-discrete RHS,
// already moved to the right-hand side (added, not subtracted).
void drift_projection(const SolutionState& state, const TransportContext& ctx,
                      double E_x, int i, double* G0, double* G1);

// Semi-discrete RHS for the full system; parallel over spatial cells.
// field[i] is the longitudinal field per cell in V/nm.
void assemble_rhs(const SolutionState& state, const TransportContext& ctx,
                  const std::vector<double>& field, StateDeriv& out);

} // namespace bte
