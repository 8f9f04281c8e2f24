#pragma once

#include <memory>
#include <vector>

#include "bte/mesh.hpp"
#include "bte/moments.hpp"
#include "bte/state.hpp"

namespace bte {

// Piecewise-constant permittivity of the device cross-section, in units of
// eps0: eps_gr on [0,L] x [y2,y3], eps_ox elsewhere.
struct DielectricMap {
    double eps_gr = 3.3;
    double eps_ox = 3.6;
    double y2 = 0.0, y3 = 0.0; // nm
    double value(double y) const { return (y >= y2 && y <= y3) ? eps_gr : eps_ox; }
    // face permittivity: material at the face midpoint; exact interface hits
    // take the harmonic mean
    double face(double y) const;
};

// Dirichlet mask/value per node plus homogeneous Neumann elsewhere.
struct PoissonBC {
    std::vector<uint8_t> dirichlet; // [node]
    std::vector<double> value;      // [node]
};

PoissonBC device_boundary(const PoissonGrid& grid, double V_b, double V_G_up, double V_G_down,
                          double x2, double x3);

struct PoissonRHS {
    std::vector<double> h; // [node], V/nm^2 scale (charge / eps0)
};

struct PotentialField {
    std::vector<double> phi; // [node] V, node (i,j) at i*(N_y+1)+j
    std::vector<double> E_x; // [cell] V/nm along the graphene row
};

// Five-point variable-coefficient solve; the sparse factorization is reused
// across right-hand sides.
class PoissonSolver {
  public:
    PoissonSolver(const PoissonGrid& grid, const DielectricMap& diel, const PoissonBC& bc);
    ~PoissonSolver();
    PoissonSolver(PoissonSolver&&) noexcept;

    PotentialField solve(const PoissonRHS& rhs) const;
    double last_residual() const { return residual_; }

    const PoissonGrid& grid() const { return grid_; }

  private:
    PoissonGrid grid_;
    PoissonBC bc_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
    mutable double residual_ = 0.0;
};

// Charge term from edge carrier densities: h = (e/eps0) (n - p - n_dope)/t_gr
// on the graphene row, 0 elsewhere. Boundary edges use the inflow traces.
PoissonRHS rhs_from_state(const SolutionState& state, const MomentWeights& weights,
                          const PoissonGrid& grid, const std::vector<double>& bc_density_n,
                          const std::vector<double>& bc_density_p, double n_dope,
                          double t_gr);

} // namespace bte
