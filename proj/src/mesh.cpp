#include "bte/mesh.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bte {

SpatialGrid build_spatial_grid(double L, int N_x) {
    if (L <= 0.0)
        throw std::invalid_argument("spatial grid: L must be positive");
    if (N_x < 2)
        throw std::invalid_argument("spatial grid: need at least 2 cells");
    SpatialGrid g;
    g.L = L;
    g.N_x = N_x;
    g.dx = L / N_x;
    g.edge.resize(N_x + 1);
    g.mid.resize(N_x);
    for (int i = 0; i <= N_x; ++i) g.edge[i] = i * g.dx;
    g.edge[N_x] = L; // exact last edge
    for (int i = 0; i < N_x; ++i) g.mid[i] = (i + 0.5) * g.dx;
    return g;
}

PolarMesh build_polar_mesh(double eps_max, int N_eps, int N_th) {
    if (eps_max <= 0.0)
        throw std::invalid_argument("polar mesh: eps_max must be positive");
    if (N_eps < 2)
        throw std::invalid_argument("polar mesh: need at least 2 energy cells");
    if (N_th < 4 || N_th % 2 != 0)
        throw std::invalid_argument(
            "polar mesh: N_theta must be even and >= 4 so the inflow half-circles "
            "split along cell edges");
    PolarMesh m;
    m.eps_max = eps_max;
    m.N_eps = N_eps;
    m.N_th = N_th;
    m.deps = eps_max / N_eps;
    m.dth = 2.0 * std::numbers::pi / N_th;
    m.eps_edge.resize(N_eps + 1);
    m.eps_mid.resize(N_eps);
    for (int k = 0; k <= N_eps; ++k) m.eps_edge[k] = k * m.deps;
    m.eps_edge[N_eps] = eps_max;
    for (int k = 0; k < N_eps; ++k) m.eps_mid[k] = (k + 0.5) * m.deps;
    m.th_edge.resize(N_th + 1);
    m.th_mid.resize(N_th);
    for (int n = 0; n <= N_th; ++n) m.th_edge[n] = n * m.dth;
    m.th_edge[N_th] = 2.0 * std::numbers::pi;
    for (int n = 0; n < N_th; ++n) m.th_mid[n] = (n + 0.5) * m.dth;
    m.cos_mid.resize(N_th);
    m.sin_mid.resize(N_th);
    m.sin_edge.resize(N_th + 1);
    for (int n = 0; n < N_th; ++n) {
        m.cos_mid[n] = std::cos(m.th_mid[n]);
        m.sin_mid[n] = std::sin(m.th_mid[n]);
    }
    for (int n = 0; n <= N_th; ++n) m.sin_edge[n] = std::sin(m.th_edge[n]);
    return m;
}

PoissonGrid build_poisson_grid(const SpatialGrid& xg, double H, int N_y, double y_gr) {
    if (H <= 0.0 || N_y < 2)
        throw std::invalid_argument("poisson grid: bad height or row count");
    PoissonGrid g;
    g.N_x = xg.N_x;
    g.N_y = N_y;
    g.H = H;
    g.dx = xg.dx;
    g.dy = H / N_y;
    g.x_node = xg.edge;
    g.y_node.resize(N_y + 1);
    for (int j = 0; j <= N_y; ++j) g.y_node[j] = j * g.dy;
    const double jr = y_gr / g.dy;
    g.j_gr = static_cast<int>(std::lround(jr));
    if (g.j_gr < 1 || g.j_gr > N_y - 1 ||
        std::abs(jr - g.j_gr) > 1e-9)
        throw std::invalid_argument(
            "poisson grid: graphene row y_gr must coincide with an interior node row");
    return g;
}

} // namespace bte
