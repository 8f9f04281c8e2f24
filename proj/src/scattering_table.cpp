#include "bte/scattering_table.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "bte/constants.hpp"

namespace bte {

namespace c = constants;
using std::numbers::pi;

double angular_weight(int dn, double D, double E, double dth) {
    const double s = std::sin(0.5 * dth);
    return D * dth * dth + 4.0 * E * s * s * std::cos(dn * dth);
}

namespace {

// integral of eps * (c_ratio*eps + shift) over [lo, hi]
double pair_integral(double lo, double hi, double c_ratio, double shift) {
    if (hi <= lo) return 0.0;
    const double cube = (hi * hi * hi - lo * lo * lo) / 3.0;
    const double square = (hi * hi - lo * lo) / 2.0;
    return c_ratio * cube + shift * square;
}

// clip cell k_dst against the preimage of cell k_src under eps' = c*eps + d
double clipped_block(int k_src, int k_dst, double c_ratio, double shift, const PolarMesh& m) {
    double lo_src = m.eps_edge[k_src], hi_src = m.eps_edge[k_src + 1];
    double lo, hi;
    if (c_ratio > 0) {
        lo = lo_src - shift;
        hi = hi_src - shift;
    } else {
        lo = shift - hi_src;
        hi = shift - lo_src;
    }
    lo = std::max(lo, m.eps_edge[k_dst]);
    hi = std::min(hi, m.eps_edge[k_dst + 1]);
    return pair_integral(lo, hi, c_ratio, shift);
}

} // namespace

double energy_block(int k_src, int k_dst, int s_src, int s_dst, double hw, double n_q,
                    const PolarMesh& mesh) {
    const double c_ratio = static_cast<double>(s_src) * s_dst; // s/s' for eps' = (s/s') eps +- hw/s'
    if (hw == 0.0)
        return clipped_block(k_src, k_dst, c_ratio, 0.0, mesh);
    // absorption: source below destination, eps' = c*eps - hw/s'
    const double abs_part = clipped_block(k_src, k_dst, c_ratio, -hw * s_src, mesh);
    // emission: source above destination, eps' = c*eps + hw/s'
    const double em_part = clipped_block(k_src, k_dst, c_ratio, +hw * s_src, mesh);
    return n_q * abs_part + (n_q + 1.0) * em_part;
}

namespace {

void finalize_block(RadialBlock& blk) {
    const int N = blk.N_eps;
    blk.empty = true;
    blk.col_ptr.assign(N + 1, 0);
    blk.row_ptr.assign(N + 1, 0);
    blk.col_idx.clear();
    blk.col_val.clear();
    blk.row_idx.clear();
    blk.row_val.clear();
    for (int kd = 0; kd < N; ++kd) {
        for (int ks = 0; ks < N; ++ks) {
            const double v = blk.r[static_cast<std::size_t>(ks) * N + kd];
            if (v != 0.0) {
                blk.col_idx.push_back(ks);
                blk.col_val.push_back(v);
                blk.empty = false;
            }
        }
        blk.col_ptr[kd + 1] = static_cast<int>(blk.col_idx.size());
    }
    for (int ks = 0; ks < N; ++ks) {
        const double* row = &blk.r[static_cast<std::size_t>(ks) * N];
        for (int kd = 0; kd < N; ++kd)
            if (row[kd] != 0.0) {
                blk.row_idx.push_back(kd);
                blk.row_val.push_back(row[kd]);
            }
        blk.row_ptr[ks + 1] = static_cast<int>(blk.row_idx.size());
    }
}

RadialBlock build_block(const MechanismSpec& mech, int s_src, int s_dst,
                        const PolarMesh& mesh, const PhysicalParams& params) {
    RadialBlock blk;
    blk.N_eps = mesh.N_eps;
    blk.r.assign(static_cast<std::size_t>(mesh.N_eps) * mesh.N_eps, 0.0);
    const double hv = params.hbar_vF();
    const double jac = 1.0 / (hv * hv * hv * hv);
    const double n_q = mech.hw > 0.0 ? bose_einstein(mech.hw, params.T_K) : 0.0;
    const double pref = mech.prefactor * jac;
    #pragma omp parallel for schedule(static)
    for (int ks = 0; ks < mesh.N_eps; ++ks)
        for (int kd = 0; kd < mesh.N_eps; ++kd) {
            const double v = energy_block(ks, kd, s_src, s_dst, mech.hw, n_q, mesh);
            if (v != 0.0) blk.r[static_cast<std::size_t>(ks) * mesh.N_eps + kd] = pref * v;
        }
    finalize_block(blk);
    return blk;
}

std::vector<double> build_impurity_kernel(const PolarMesh& mesh, const PhysicalParams& params) {
    const double hv = params.hbar_vF();
    const double jac = 1.0 / (hv * hv * hv * hv);
    // 2 pi / hbar * n_i / (2 pi)^2 = n_i / (2 pi hbar)
    const double rate_pref = params.n_imp() / (2.0 * pi * c::hbar);
    const double amp0 = 2.0 * pi * c::coulomb / params.kappa_bar();
    const double d = params.d_imp_nm;
    // density only matters for the low-Fermi-level screening fallback
    const double n_2d = params.kF_from_density
                            ? equilibrium_density(params.eps_F_screen_eV, params)
                            : 0.0;

    const int refine = 8;
    const double h = mesh.dth / refine;
    std::vector<double> K(static_cast<std::size_t>(mesh.N_eps) * mesh.N_th, 0.0);
    #pragma omp parallel for schedule(static)
    for (int k = 0; k < mesh.N_eps; ++k) {
        const double eps_k = mesh.eps_mid[k];
        const double two_k = 2.0 * eps_k / hv;
        const double radial = (std::pow(mesh.eps_edge[k + 1], 3) - std::pow(mesh.eps_edge[k], 3)) / 3.0;
        for (int dn = 0; dn < mesh.N_th; ++dn) {
            double acc = 0.0;
            for (int p = 0; p < refine; ++p)
                for (int q = 0; q < refine; ++q) {
                    const double vt = dn * mesh.dth + (p + 0.5) * h - (q + 0.5) * h;
                    const double mom = two_k * std::abs(std::sin(0.5 * vt));
                    const double screened =
                        amp0 * std::exp(-d * mom) / rpa_q_eps(mom, params, n_2d);
                    acc += screened * screened * 0.5 * (1.0 + std::cos(vt));
                }
            K[static_cast<std::size_t>(k) * mesh.N_th + dn] =
                rate_pref * jac * radial * acc * h * h;
        }
    }
    return K;
}

} // namespace

ScatteringTable build_scattering_table(const PolarMesh& mesh, const PhysicalParams& params,
                                       bool substrate_on) {
    params.validate();
    if (substrate_on && (params.kappa_top <= 0.0 || params.kappa_bottom <= 0.0 ||
                         params.n_i_cm2 <= 0.0 || params.hw_Osub_eV <= 0.0))
        throw std::invalid_argument("scattering table: substrate scattering needs substrate parameters");

    ScatteringTable tab;
    tab.N_eps = mesh.N_eps;
    tab.N_th = mesh.N_th;
    tab.dth = mesh.dth;

    for (const auto& mech : phonon_mechanisms(params, substrate_on)) {
        MechanismTable mt;
        mt.spec = mech;
        for (int ss = 0; ss < 2; ++ss)
            for (int sd = 0; sd < 2; ++sd) {
                if (!mech.interband && ss != sd) continue;
                const int s_src = ss == 0 ? +1 : -1;
                const int s_dst = sd == 0 ? +1 : -1;
                mt.blocks[ss][sd] = build_block(mech, s_src, s_dst, mesh, params);
            }
        tab.mechanisms.push_back(std::move(mt));
    }

    // aggregate into isotropic and cosine parts; angular_weight(dn) splits as
    // D dth^2 (constant) + 4 E sin^2(dth/2) cos(dn dth)
    const double s2 = std::sin(0.5 * mesh.dth) * std::sin(0.5 * mesh.dth);
    const std::size_t n2 = static_cast<std::size_t>(mesh.N_eps) * mesh.N_eps;
    for (int ss = 0; ss < 2; ++ss)
        for (int sd = 0; sd < 2; ++sd) {
            auto& iso = tab.iso[ss][sd];
            auto& cop = tab.cosp[ss][sd];
            iso.N_eps = cop.N_eps = mesh.N_eps;
            iso.r.assign(n2, 0.0);
            cop.r.assign(n2, 0.0);
            for (const auto& mt : tab.mechanisms) {
                const auto& blk = mt.blocks[ss][sd];
                if (blk.empty) continue;
                const double wD = mt.spec.D_shape * mesh.dth * mesh.dth;
                const double wE = 4.0 * mt.spec.E_shape * s2;
                for (std::size_t idx = 0; idx < n2; ++idx) {
                    iso.r[idx] += wD * blk.r[idx];
                    cop.r[idx] += wE * blk.r[idx];
                }
            }
            finalize_block(iso);
            finalize_block(cop);
        }

    if (substrate_on) {
        tab.has_impurity = true;
        tab.K_imp = build_impurity_kernel(mesh, params);
    }
    return tab;
}

void dump_table(const ScatteringTable& table, std::ostream& radial_out, std::ostream& impurity_out) {
    radial_out << "mechanism,s_src,s_dst,k_src,k_dst,value\n";
    auto band = [](int s) { return s == 0 ? +1 : -1; };
    for (const auto& mt : table.mechanisms)
        for (int ss = 0; ss < 2; ++ss)
            for (int sd = 0; sd < 2; ++sd) {
                const auto& blk = mt.blocks[ss][sd];
                if (blk.empty) continue;
                for (int ks = 0; ks < blk.N_eps; ++ks)
                    for (int kd = 0; kd < blk.N_eps; ++kd) {
                        const double v = blk.at(ks, kd);
                        if (v != 0.0)
                            radial_out << mt.spec.id << ',' << band(ss) << ',' << band(sd) << ','
                                       << ks + 1 << ',' << kd + 1 << ',' << v << '\n';
                    }
            }
    impurity_out << "k,dn,value\n";
    if (table.has_impurity)
        for (int k = 0; k < table.N_eps; ++k)
            for (int dn = 0; dn < table.N_th; ++dn)
                impurity_out << k + 1 << ',' << dn << ',' << table.imp(k, dn) << '\n';
}

} // namespace bte
