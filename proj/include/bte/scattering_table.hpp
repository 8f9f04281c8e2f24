#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "bte/mesh.hpp"
#include "bte/physics.hpp"

namespace bte {

// Radial part of the cell-pair collision coefficients for one mechanism and
// one ordered band pair (source -> destination). r[ks*N_eps + kd] is the
// energy double integral over the clipped intervals, with the Bose factors,
// the |G|^2 magnitude and the 1/(hbar v_F)^4 Jacobian folded in. Each
// destination column touches only a few source cells; [lo,hi) bounds are kept
// per column so the apply loops skip the zeros.
struct RadialBlock {
    int N_eps = 0;
    std::vector<double> r; // [k_src][k_dst], dense (dumps and oracles)
    bool empty = true;
    // compressed adjacency for the hot loops: nonzeros by destination column
    // (gain gathers) and by source row (loss gathers)
    std::vector<int> col_ptr, col_idx;
    std::vector<double> col_val;
    std::vector<int> row_ptr, row_idx;
    std::vector<double> row_val;

    double at(int k_src, int k_dst) const { return r[static_cast<std::size_t>(k_src) * N_eps + k_dst]; }
};

struct MechanismTable {
    MechanismSpec spec;
    // blocks[src][dst], band index 0 = conduction, 1 = valence
    std::array<std::array<RadialBlock, 2>, 2> blocks;
};

// Full scattering table: per-mechanism blocks plus band-pair aggregates
// pre-split into the isotropic and cos(theta-theta') angular parts, so a
// collision evaluation reduces to banded matrix products on three angular
// moments. The impurity channel keeps its own per-energy angular kernel.
struct ScatteringTable {
    int N_eps = 0;
    int N_th = 0;
    double dth = 0.0;
    std::vector<MechanismTable> mechanisms;

    // aggregate over mechanisms: A = iso[src][dst] + cosp[src][dst] * cos(th_n - th_n')
    std::array<std::array<RadialBlock, 2>, 2> iso;
    std::array<std::array<RadialBlock, 2>, 2> cosp;

    // impurity: A(k, n -> k, n') = K_imp[k][(n - n') mod N_th]; elastic,
    // intraband, same kernel for both bands
    bool has_impurity = false;
    std::vector<double> K_imp; // [k][dn]

    double imp(int k, int dn) const { return K_imp[static_cast<std::size_t>(k) * N_th + dn]; }
};

// Closed form of the angular double integral of D + E cos(theta - theta')
// over two cells offset by dn: D dth^2 + 4 E sin^2(dth/2) cos(dn dth).
double angular_weight(int dn, double D, double E, double dth);

// Energy double integral over the clipped intervals for one (k_src -> k_dst)
// pair: n_q weighting on the absorption branch (source below destination),
// n_q+1 on emission (source above). hw = 0 collapses both branches onto the
// elastic diagonal with unit weight folded into the caller's prefactor.
double energy_block(int k_src, int k_dst, int s_src, int s_dst, double hw, double n_q,
                    const PolarMesh& mesh);

ScatteringTable build_scattering_table(const PolarMesh& mesh, const PhysicalParams& params,
                                       bool substrate_on);

// CSV dump: mechanism, s_src, s_dst, k_src, k_dst, value (nonzero radial
// entries); impurity rows use mechanism "impurity" with k_src=k_dst=k and the
// angular offset in the k_dst column slot replaced by dn via a second file.
void dump_table(const ScatteringTable& table, std::ostream& radial_out, std::ostream& impurity_out);

} // namespace bte
