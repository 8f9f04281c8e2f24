#include "bte/transport.hpp"

#include <cmath>
#include <stdexcept>

namespace bte {

FluxCoefficients build_flux_coefficients(const PolarMesh& mesh, double v_F, double hbar_vF) {
    FluxCoefficients fc;
    fc.N_eps = mesh.N_eps;
    fc.N_th = mesh.N_th;
    fc.M.resize(static_cast<std::size_t>(2) * mesh.N_eps * mesh.N_th);
    const double c0 = v_F / (hbar_vF * hbar_vF);
    for (int s = 0; s < 2; ++s) {
        const double sgn = s == 0 ? 1.0 : -1.0;
        for (int k = 0; k < mesh.N_eps; ++k) {
            const double e2 = 0.5 * (mesh.eps_edge[k + 1] * mesh.eps_edge[k + 1]
                                     - mesh.eps_edge[k] * mesh.eps_edge[k]);
            for (int n = 0; n < mesh.N_th; ++n) {
                const double sd = mesh.sin_edge[n + 1] - mesh.sin_edge[n];
                fc.M[(static_cast<std::size_t>(s) * mesh.N_eps + k) * mesh.N_th + n] =
                    sgn * c0 * e2 * sd;
            }
        }
    }
    return fc;
}

BoundarySpec make_fermi_boundary(const PolarMesh& mesh, double eps_F, double T) {
    BoundarySpec bc;
    bc.N_eps = mesh.N_eps;
    bc.f_bc.resize(static_cast<std::size_t>(2) * mesh.N_eps);
    for (int k = 0; k < mesh.N_eps; ++k) {
        bc.f_bc[k] = fermi_dirac(mesh.eps_mid[k], eps_F, Band::conduction, T);
        bc.f_bc[mesh.N_eps + k] = fermi_dirac(mesh.eps_mid[k], eps_F, Band::valence, T);
    }
    return bc;
}

double spatial_flux(double f_minus, double f_plus, double M, double eta) {
    if (eta < 0.0 || eta > 1.0)
        throw std::invalid_argument("spatial_flux: eta must lie in [0,1]");
    const double sgn = M > 0.0 ? 1.0 : (M < 0.0 ? -1.0 : 0.0);
    return 0.5 * (f_minus + f_plus) + 0.5 * (1.0 - eta) * sgn * (f_minus - f_plus);
}

namespace {

inline double minmod(double alpha, double beta) {
    if (alpha * beta <= 0.0) return 0.0;
    return std::min(std::abs(alpha), std::abs(beta)) * (alpha > 0.0 ? 1.0 : -1.0);
}

} // namespace

double uno_interface(double g_prev, double g, double g_next, double g_next2, int w) {
    if (w > 0) return g + 0.5 * minmod(g - g_prev, g_next - g);
    if (w < 0) return g_next - 0.5 * minmod(g_next - g, g_next2 - g_next);
    return 0.5 * (g + g_next);
}

namespace {

struct DriftScratch {
    std::vector<double> rad_a, rad_b; // [N_eps+1][N_th]
    std::vector<double> ang_a, ang_b; // [N_eps][N_th] edge j at theta = j*dth
};

// UNO interface values in both polar directions for one (s, i) slice.
// Radial ghosts continue the band reservoir: empty above eps_max for the
// conduction band, full for the valence band (both match the Fermi-Dirac
// boundary data to well under 1e-9 at a converged cap). The eps = 0 edge
// carries an eps factor, so its flux vanishes identically; the bottom ghosts
// are zero-gradient. The angular direction is periodic.
void polar_interfaces(const SolutionState& st, const PolarMesh& m, int s, int i,
                      double E_x, DriftScratch& scr) {
    const int Ne = m.N_eps, Nt = m.N_th;
    scr.rad_a.assign(static_cast<std::size_t>(Ne + 1) * Nt, 0.0);
    scr.rad_b.assign(static_cast<std::size_t>(Ne + 1) * Nt, 0.0);
    scr.ang_a.assign(static_cast<std::size_t>(Ne) * Nt, 0.0);
    scr.ang_b.assign(static_cast<std::size_t>(Ne) * Nt, 0.0);
    const double cap = s == 0 ? 0.0 : 1.0;
    const std::size_t base = st.idx(s, i, 0, 0);
    auto aval = [&](int k, int n) -> double {
        if (k < 0) k = 0;
        if (k >= Ne) return cap;
        return st.a[base + static_cast<std::size_t>(k) * Nt + n];
    };
    auto bval = [&](int k, int n) -> double {
        if (k < 0) k = 0;
        if (k >= Ne) return 0.0;
        return st.b[base + static_cast<std::size_t>(k) * Nt + n];
    };
    for (int n = 0; n < Nt; ++n) {
        const double cw = -E_x * m.cos_mid[n];
        const int w = cw > 0.0 ? 1 : (cw < 0.0 ? -1 : 0);
        for (int r = 1; r <= Ne; ++r) {
            scr.rad_a[static_cast<std::size_t>(r) * Nt + n] =
                uno_interface(aval(r - 2, n), aval(r - 1, n), aval(r, n), aval(r + 1, n), w);
            scr.rad_b[static_cast<std::size_t>(r) * Nt + n] =
                uno_interface(bval(r - 2, n), bval(r - 1, n), bval(r, n), bval(r + 1, n), w);
        }
    }
    for (int j = 0; j < Nt; ++j) {
        const double cw = E_x * m.sin_edge[j];
        const int w = cw > 0.0 ? 1 : (cw < 0.0 ? -1 : 0);
        const int jm2 = (j - 2 + Nt) % Nt, jm1 = (j - 1 + Nt) % Nt, jp1 = j % Nt;
        const int jp2 = (j + 1) % Nt;
        for (int k = 0; k < Ne; ++k) {
            scr.ang_a[static_cast<std::size_t>(k) * Nt + j] =
                uno_interface(aval(k, jm2), aval(k, jm1), aval(k, jp1), aval(k, jp2), w);
            scr.ang_b[static_cast<std::size_t>(k) * Nt + j] =
                uno_interface(bval(k, jm2), bval(k, jm1), bval(k, jp1), bval(k, jp2), w);
        }
    }
}

void drift_terms(const SolutionState& st, const TransportContext& ctx, double E_x,
                 int s, int i, DriftScratch& scr, double* G0, double* G1) {
    const PolarMesh& m = *ctx.pm;
    const int Ne = m.N_eps, Nt = m.N_th;
    if (E_x == 0.0) {
        std::fill(G0, G0 + static_cast<std::size_t>(Ne) * Nt, 0.0);
        std::fill(G1, G1 + static_cast<std::size_t>(Ne) * Nt, 0.0);
        return;
    }
    polar_interfaces(st, m, s, i, E_x, scr);
    const double pref = E_x * ctx.v_F / (ctx.hbar_vF * ctx.hbar_vF) * ctx.xg->dx;
    for (int k = 0; k < Ne; ++k) {
        const double el = m.eps_edge[k], eu = m.eps_edge[k + 1];
        for (int n = 0; n < Nt; ++n) {
            const int ju = (n + 1) % Nt;
            const double sl = m.sin_edge[n], su = m.sin_edge[n + 1];
            const double sd = su - sl;
            const std::size_t rlo = static_cast<std::size_t>(k) * Nt + n;
            const std::size_t rup = static_cast<std::size_t>(k + 1) * Nt + n;
            const std::size_t alo = static_cast<std::size_t>(k) * Nt + n;
            const std::size_t aup = static_cast<std::size_t>(k) * Nt + ju;
            const double rad0 = eu * scr.rad_a[rup] - el * scr.rad_a[rlo];
            const double ang0 = su * scr.ang_a[aup] - sl * scr.ang_a[alo];
            const double rad1 = eu * scr.rad_b[rup] - el * scr.rad_b[rlo];
            const double ang1 = su * scr.ang_b[aup] - sl * scr.ang_b[alo];
            G0[rlo] = pref * (rad0 * sd - ang0 * m.deps);
            G1[rlo] = (pref / 3.0) * (rad1 * sd - ang1 * m.deps);
        }
    }
}

} // namespace

void drift_projection(const SolutionState& state, const TransportContext& ctx,
                      double E_x, int i, double* G0, double* G1) {
    DriftScratch scr;
    const std::size_t slice = static_cast<std::size_t>(ctx.pm->N_eps) * ctx.pm->N_th;
    for (int s = 0; s < 2; ++s)
        drift_terms(state, ctx, E_x, s, i, scr, G0 + s * slice, G1 + s * slice);
}

void assemble_rhs(const SolutionState& state, const TransportContext& ctx,
                  const std::vector<double>& field, StateDeriv& out) {
    const SpatialGrid& xg = *ctx.xg;
    const PolarMesh& pm = *ctx.pm;
    const int Nx = xg.N_x, Ne = pm.N_eps, Nt = pm.N_th;
    out.resize(state.size());

    // cell mass per radial index: dth (eps_+^2 - eps_-^2) / (2 (hbar vF)^2)
    std::vector<double> mass(Ne);
    for (int k = 0; k < Ne; ++k)
        mass[k] = pm.dth * (pm.eps_edge[k + 1] * pm.eps_edge[k + 1]
                            - pm.eps_edge[k] * pm.eps_edge[k])
                  / (2.0 * ctx.hbar_vF * ctx.hbar_vF);

    const std::size_t slice = static_cast<std::size_t>(Ne) * Nt;

    #pragma omp parallel
    {
        CollisionScratch cscr;
        DriftScratch dscr;
        std::vector<double> Q0(2 * slice), Q1(2 * slice), G0(slice), G1(slice);

        #pragma omp for schedule(static)
        for (int i = 0; i < Nx; ++i) {
            if (ctx.collisions_on)
                apply_collision(state, *ctx.table, pm, i, xg.dx, cscr, Q0.data(), Q1.data());
            else {
                std::fill(Q0.begin(), Q0.end(), 0.0);
                std::fill(Q1.begin(), Q1.end(), 0.0);
            }
            const double E_x = field[i];
            for (int s = 0; s < 2; ++s) {
                if (ctx.drift_on)
                    drift_terms(state, ctx, E_x, s, i, dscr, G0.data(), G1.data());
                else {
                    std::fill(G0.begin(), G0.end(), 0.0);
                    std::fill(G1.begin(), G1.end(), 0.0);
                }
                for (int k = 0; k < Ne; ++k) {
                    const double m0 = xg.dx * mass[k];
                    for (int n = 0; n < Nt; ++n) {
                        const std::size_t id = state.idx(s, i, k, n);
                        const std::size_t kn = static_cast<std::size_t>(k) * Nt + n;
                        const double M = ctx.flux->at(s, k, n);
                        const double a = state.a[id];
                        // left interface traces
                        const double fLm = i == 0 ? ctx.bc->at(s, k)
                                                  : state.a[state.idx(s, i - 1, k, n)]
                                                        + state.b[state.idx(s, i - 1, k, n)];
                        const double fLp = a - state.b[id];
                        // right interface traces
                        const double fRm = a + state.b[id];
                        const double fRp = i == Nx - 1 ? ctx.bc->at(s, k)
                                                       : state.a[state.idx(s, i + 1, k, n)]
                                                             - state.b[state.idx(s, i + 1, k, n)];
                        const double FL = spatial_flux(fLm, fLp, M, ctx.eta);
                        const double FR = spatial_flux(fRm, fRp, M, ctx.eta);
                        out.da[id] = (-(FR - FL) * M + G0[kn] + Q0[s * slice + kn]) / m0;
                        out.db[id] = (-(FR + FL - 2.0 * a) * M + G1[kn] + Q1[s * slice + kn])
                                     * 3.0 / m0;
                    }
                }
            }
        }
    }
}

} // namespace bte
