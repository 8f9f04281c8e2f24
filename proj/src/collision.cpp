#include "bte/collision.hpp"

#include <cmath>

namespace bte {

void CollisionScratch::resize(int N_eps, int N_th, bool impurity) {
    const std::size_t nb = static_cast<std::size_t>(2) * N_eps;
    for (auto* v : {&a0, &ac, &as, &b0, &bc, &bs, &u0, &uc, &us,
                    &ga0, &gac, &gas, &gb0, &gbc, &gbs,
                    &la0, &lac, &las, &lb0, &lbc, &lbs})
        v->assign(nb, 0.0);
    const std::size_t nk = impurity ? static_cast<std::size_t>(2) * N_eps * N_th : 0;
    for (auto* v : {&gimp_a, &gimp_b, &limp_u, &limp_b}) v->assign(nk, 0.0);
}

namespace {

// y[kd] += sum_ks blk[ks][kd] * x[ks] over the stored nonzeros
inline void gather_gain(const RadialBlock& blk, const double* x, double* y) {
    for (int kd = 0; kd < blk.N_eps; ++kd) {
        double acc = 0.0;
        for (int p = blk.col_ptr[kd]; p < blk.col_ptr[kd + 1]; ++p)
            acc += blk.col_val[p] * x[blk.col_idx[p]];
        y[kd] += acc;
    }
}

// y[ks] += sum_kd blk[ks][kd] * x[kd]
inline void gather_loss(const RadialBlock& blk, const double* x, double* y) {
    for (int ks = 0; ks < blk.N_eps; ++ks) {
        double acc = 0.0;
        for (int p = blk.row_ptr[ks]; p < blk.row_ptr[ks + 1]; ++p)
            acc += blk.row_val[p] * x[blk.row_idx[p]];
        y[ks] += acc;
    }
}

} // namespace

void apply_collision(const SolutionState& state, const ScatteringTable& table,
                     const PolarMesh& mesh, int i, double dx,
                     CollisionScratch& scr, double* Q0, double* Q1) {
    const int Ne = state.N_eps, Nt = state.N_th;
    scr.resize(Ne, Nt, table.has_impurity);

    // angular moments per band and radial cell
    for (int s = 0; s < 2; ++s) {
        const std::size_t base = state.idx(s, i, 0, 0);
        for (int k = 0; k < Ne; ++k) {
            const double* av = &state.a[base + static_cast<std::size_t>(k) * Nt];
            const double* bv = &state.b[base + static_cast<std::size_t>(k) * Nt];
            double s_a0 = 0, s_ac = 0, s_as = 0, s_b0 = 0, s_bc = 0, s_bs = 0;
            double s_u0 = 0, s_uc = 0, s_us = 0;
            for (int n = 0; n < Nt; ++n) {
                const double cn = mesh.cos_mid[n];
                const double sn = mesh.sin_mid[n];
                const double a = av[n], b = bv[n], u = 1.0 - a;
                s_a0 += a;      s_ac += cn * a; s_as += sn * a;
                s_b0 += b;      s_bc += cn * b; s_bs += sn * b;
                s_u0 += u;      s_uc += cn * u; s_us += sn * u;
            }
            const std::size_t m = static_cast<std::size_t>(s) * Ne + k;
            scr.a0[m] = s_a0; scr.ac[m] = s_ac; scr.as[m] = s_as;
            scr.b0[m] = s_b0; scr.bc[m] = s_bc; scr.bs[m] = s_bs;
            scr.u0[m] = s_u0; scr.uc[m] = s_uc; scr.us[m] = s_us;
        }
    }

    // radial gathers: gain into band sd from band ss, loss of band ss to sd
    for (int ss = 0; ss < 2; ++ss)
        for (int sd = 0; sd < 2; ++sd) {
            const auto& iso = table.iso[ss][sd];
            const auto& cop = table.cosp[ss][sd];
            if (iso.empty && cop.empty) continue;
            const std::size_t src = static_cast<std::size_t>(ss) * Ne;
            const std::size_t dst = static_cast<std::size_t>(sd) * Ne;
            gather_gain(iso, &scr.a0[src], &scr.ga0[dst]);
            gather_gain(cop, &scr.ac[src], &scr.gac[dst]);
            gather_gain(cop, &scr.as[src], &scr.gas[dst]);
            gather_gain(iso, &scr.b0[src], &scr.gb0[dst]);
            gather_gain(cop, &scr.bc[src], &scr.gbc[dst]);
            gather_gain(cop, &scr.bs[src], &scr.gbs[dst]);
            gather_loss(iso, &scr.u0[dst], &scr.la0[src]);
            gather_loss(cop, &scr.uc[dst], &scr.lac[src]);
            gather_loss(cop, &scr.us[dst], &scr.las[src]);
            gather_loss(iso, &scr.b0[dst], &scr.lb0[src]);
            gather_loss(cop, &scr.bc[dst], &scr.lbc[src]);
            gather_loss(cop, &scr.bs[dst], &scr.lbs[src]);
        }

    // impurity channel: elastic, intraband, per-energy circulant kernel
    if (table.has_impurity) {
        for (int s = 0; s < 2; ++s) {
            const std::size_t base = state.idx(s, i, 0, 0);
            for (int k = 0; k < Ne; ++k) {
                const double* av = &state.a[base + static_cast<std::size_t>(k) * Nt];
                const double* bv = &state.b[base + static_cast<std::size_t>(k) * Nt];
                const double* kr = &table.K_imp[static_cast<std::size_t>(k) * Nt];
                const std::size_t out = (static_cast<std::size_t>(s) * Ne + k) * Nt;
                for (int n = 0; n < Nt; ++n) {
                    double sa = 0, sb = 0, su = 0;
                    for (int np = 0; np < Nt; ++np) {
                        const double w = kr[(n - np + Nt) % Nt];
                        sa += w * av[np];
                        sb += w * bv[np];
                        su += w * (1.0 - av[np]);
                    }
                    scr.gimp_a[out + n] = sa;
                    scr.gimp_b[out + n] = sb;
                    scr.limp_u[out + n] = su;
                    scr.limp_b[out + n] = sb; // symmetric kernel, same sum
                }
            }
        }
    }

    // assemble the two projections
    for (int s = 0; s < 2; ++s) {
        const std::size_t base = state.idx(s, i, 0, 0);
        for (int k = 0; k < Ne; ++k) {
            const std::size_t m = static_cast<std::size_t>(s) * Ne + k;
            const double* av = &state.a[base + static_cast<std::size_t>(k) * Nt];
            const double* bv = &state.b[base + static_cast<std::size_t>(k) * Nt];
            const std::size_t out = (static_cast<std::size_t>(s) * Ne + k) * Nt;
            for (int n = 0; n < Nt; ++n) {
                const double cn = mesh.cos_mid[n];
                const double sn = mesh.sin_mid[n];
                double Ga = scr.ga0[m] + cn * scr.gac[m] + sn * scr.gas[m];
                double Gb = scr.gb0[m] + cn * scr.gbc[m] + sn * scr.gbs[m];
                double Lu = scr.la0[m] + cn * scr.lac[m] + sn * scr.las[m];
                double Lb = scr.lb0[m] + cn * scr.lbc[m] + sn * scr.lbs[m];
                if (table.has_impurity) {
                    Ga += scr.gimp_a[out + n];
                    Gb += scr.gimp_b[out + n];
                    Lu += scr.limp_u[out + n];
                    Lb += scr.limp_b[out + n];
                }
                const double a = av[n], b = bv[n];
                Q0[out + n] = dx * ((1.0 - a) * Ga - a * Lu - (b / 3.0) * (Gb - Lb));
                Q1[out + n] = -(dx / 3.0) * (b * Ga - (1.0 - a) * Gb - a * Lb + b * Lu);
            }
        }
    }
}

} // namespace bte
