#include "bte/moments.hpp"

#include <cmath>
#include <numbers>

namespace bte {

using std::numbers::pi;

MomentWeights build_moment_weights(const PolarMesh& mesh, double v_F, double hbar_vF) {
    MomentWeights w;
    w.N_eps = mesh.N_eps;
    w.N_th = mesh.N_th;
    w.degeneracy = 1.0 / (pi * pi); // g_s = g_v = 2
    const double hv2 = hbar_vF * hbar_vF;
    w.Nbar.resize(mesh.N_eps);
    w.Tbar.resize(mesh.N_eps);
    w.Rrad.resize(mesh.N_eps);
    for (int k = 0; k < mesh.N_eps; ++k) {
        const double e2 = mesh.eps_edge[k + 1] * mesh.eps_edge[k + 1]
                          - mesh.eps_edge[k] * mesh.eps_edge[k];
        const double e3 = std::pow(mesh.eps_edge[k + 1], 3) - std::pow(mesh.eps_edge[k], 3);
        w.Nbar[k] = mesh.dth * e2 / (2.0 * hv2);
        w.Tbar[k] = mesh.dth * e3 / (3.0 * hv2);
        w.Rrad[k] = v_F * e2 / (2.0 * hv2);
    }
    w.sdn.resize(mesh.N_th);
    for (int n = 0; n < mesh.N_th; ++n)
        w.sdn[n] = std::sin(mesh.th_edge[n + 1]) - std::sin(mesh.th_edge[n]);
    return w;
}

CellMoments cell_moments(const SolutionState& state, const MomentWeights& w, int i,
                         double guard_density) {
    CellMoments m;
    double nN = 0, nR = 0, nT = 0, pN = 0, pR = 0, pT = 0;
    for (int k = 0; k < w.N_eps; ++k) {
        double se = 0, sr = 0, sh = 0, shr = 0;
        const std::size_t be = state.idx(0, i, k, 0);
        const std::size_t bh = state.idx(1, i, k, 0);
        for (int n = 0; n < w.N_th; ++n) {
            se += state.a[be + n];
            sr += state.a[be + n] * w.sdn[n];
            sh += 1.0 - state.a[bh + n];
            shr += (1.0 - state.a[bh + n]) * w.sdn[n];
        }
        nN += se * w.Nbar[k];
        nR += sr * w.Rrad[k];
        nT += se * w.Tbar[k];
        pN += sh * w.Nbar[k];
        pR += shr * w.Rrad[k];
        pT += sh * w.Tbar[k];
    }
    const double g = w.degeneracy;
    m.n = g * nN;
    m.p = g * pN;
    m.j_n = -g * nR; // electron charge -e
    m.j_p = +g * pR;
    m.j_tot = m.j_n - m.j_p;
    m.Edens_n = g * nT;
    m.Edens_p = g * pT;
    const double guard = 1e-3 * guard_density;
    if (m.n > guard) {
        m.V_n = -m.j_n / m.n;
        m.E_n = m.Edens_n / m.n;
    }
    if (m.p > guard) {
        m.V_p = +m.j_p / m.p;
        m.E_p = m.Edens_p / m.p;
    }
    return m;
}

CellMoments boundary_moments(const BoundarySpec& bc, const MomentWeights& w,
                             double guard_density) {
    CellMoments m;
    double nN = 0, nT = 0, pN = 0, pT = 0;
    for (int k = 0; k < w.N_eps; ++k) {
        nN += bc.at(0, k) * w.Nbar[k] * w.N_th;
        nT += bc.at(0, k) * w.Tbar[k] * w.N_th;
        pN += (1.0 - bc.at(1, k)) * w.Nbar[k] * w.N_th;
        pT += (1.0 - bc.at(1, k)) * w.Tbar[k] * w.N_th;
    }
    const double g = w.degeneracy;
    m.n = g * nN;
    m.p = g * pN;
    m.Edens_n = g * nT;
    m.Edens_p = g * pT;
    const double guard = 1e-3 * guard_density;
    if (m.n > guard) m.E_n = m.Edens_n / m.n;
    if (m.p > guard) m.E_p = m.Edens_p / m.p;
    return m;
}

std::vector<double> density_profile(const SolutionState& state, const MomentWeights& w) {
    std::vector<double> out(state.N_x);
    for (int i = 0; i < state.N_x; ++i) {
        double nN = 0;
        for (int k = 0; k < w.N_eps; ++k) {
            double se = 0;
            const std::size_t be = state.idx(0, i, k, 0);
            for (int n = 0; n < w.N_th; ++n) se += state.a[be + n];
            nN += se * w.Nbar[k];
        }
        out[i] = w.degeneracy * nN;
    }
    return out;
}

double trace_density_n(const SolutionState& state, const MomentWeights& w, int i, int side) {
    double nN = 0;
    for (int k = 0; k < w.N_eps; ++k) {
        double se = 0;
        const std::size_t be = state.idx(0, i, k, 0);
        for (int n = 0; n < w.N_th; ++n)
            se += state.a[be + n] + side * state.b[be + n];
        nN += se * w.Nbar[k];
    }
    return w.degeneracy * nN;
}

double trace_density_p(const SolutionState& state, const MomentWeights& w, int i, int side) {
    double pN = 0;
    for (int k = 0; k < w.N_eps; ++k) {
        double sh = 0;
        const std::size_t bh = state.idx(1, i, k, 0);
        for (int n = 0; n < w.N_th; ++n)
            sh += 1.0 - (state.a[bh + n] + side * state.b[bh + n]);
        pN += sh * w.Nbar[k];
    }
    return w.degeneracy * pN;
}

} // namespace bte
