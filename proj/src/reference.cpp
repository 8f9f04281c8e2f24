#include "bte/reference.hpp"

#include <cmath>

namespace bte {

double naive_pair_coefficient(const ScatteringTable& table, const PolarMesh& mesh,
                              int s_src, int k_src, int n_src,
                              int s_dst, int k_dst, int n_dst) {
    const int dn = ((n_dst - n_src) % mesh.N_th + mesh.N_th) % mesh.N_th;
    double A = 0.0;
    for (const auto& mt : table.mechanisms) {
        const auto& blk = mt.blocks[s_src][s_dst];
        if (blk.empty) continue;
        A += blk.at(k_src, k_dst) * angular_weight(dn, mt.spec.D_shape, mt.spec.E_shape, mesh.dth);
    }
    if (table.has_impurity && s_src == s_dst && k_src == k_dst)
        A += table.imp(k_dst, dn);
    return A;
}

void naive_collision(const SolutionState& state, const ScatteringTable& table,
                     const PolarMesh& mesh, int i, double dx, double* Q0, double* Q1) {
    const int Ne = state.N_eps, Nt = state.N_th;
    for (int s = 0; s < 2; ++s)
        for (int k = 0; k < Ne; ++k)
            for (int n = 0; n < Nt; ++n) {
                const double a = state.a[state.idx(s, i, k, n)];
                const double b = state.b[state.idx(s, i, k, n)];
                double q0 = 0.0, q1 = 0.0;
                for (int sp = 0; sp < 2; ++sp)
                    for (int kp = 0; kp < Ne; ++kp)
                        for (int np = 0; np < Nt; ++np) {
                            const double Ag = naive_pair_coefficient(table, mesh, sp, kp, np, s, k, n);
                            const double Al = naive_pair_coefficient(table, mesh, s, k, n, sp, kp, np);
                            if (Ag == 0.0 && Al == 0.0) continue;
                            const double ap = state.a[state.idx(sp, i, kp, np)];
                            const double bp = state.b[state.idx(sp, i, kp, np)];
                            q0 += (Ag * ap * (1.0 - a) - Al * a * (1.0 - ap))
                                  - (1.0 / 3.0) * (Ag * bp * b - Al * b * bp);
                            q1 += Ag * (ap * b - (1.0 - a) * bp)
                                  - Al * (a * bp - (1.0 - ap) * b);
                        }
                const std::size_t out = (static_cast<std::size_t>(s) * Ne + k) * Nt + n;
                Q0[out] = dx * q0;
                Q1[out] = -(dx / 3.0) * q1;
            }
}

} // namespace bte
