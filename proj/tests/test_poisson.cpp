#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "bte/poisson.hpp"

using namespace bte;
using std::numbers::pi;

namespace {

PoissonBC all_dirichlet(const PoissonGrid& g, const std::function<double(double, double)>& f) {
    const int nx = g.N_x + 1, ny = g.N_y + 1;
    PoissonBC bc;
    bc.dirichlet.assign(static_cast<std::size_t>(nx) * ny, 0);
    bc.value.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            if (i == 0 || i == nx - 1 || j == 0 || j == ny - 1) {
                bc.dirichlet[static_cast<std::size_t>(i) * ny + j] = 1;
                bc.value[static_cast<std::size_t>(i) * ny + j] = f(g.x_node[i], g.y_node[j]);
            }
    return bc;
}

} // namespace

TEST_CASE("uniform dielectric, zero charge: linear potential and constant field") {
    const SpatialGrid xg = build_spatial_grid(100.0, 20);
    const PoissonGrid pg = build_poisson_grid(xg, 21.0, 22, 10.5);
    DielectricMap diel{3.6, 3.6, 10.0, 11.0};
    const double Vb = 0.25;
    // contacts only, no gates
    PoissonBC bc = device_boundary(pg, Vb, 0.0, 0.0, -1.0, -1.0);
    // remove the (empty) gate segment markers at negative positions
    const PoissonSolver solver(pg, diel, bc);
    PoissonRHS rhs;
    rhs.h.assign(static_cast<std::size_t>(21) * 23, 0.0);
    const PotentialField pf = solver.solve(rhs);
    CHECK(solver.last_residual() <= 1e-10);
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= 22; ++j)
            CHECK(pf.phi[static_cast<std::size_t>(i) * 23 + j] ==
                  doctest::Approx(Vb * pg.x_node[i] / 100.0).epsilon(1e-10));
    for (double e : pf.E_x) CHECK(e == doctest::Approx(-Vb / 100.0).epsilon(1e-10));
}

TEST_CASE("dirichlet rows echo their boundary values exactly") {
    const SpatialGrid xg = build_spatial_grid(100.0, 16);
    const PoissonGrid pg = build_poisson_grid(xg, 21.0, 22, 10.5);
    DielectricMap diel{3.3, 3.6, 10.0, 11.0};
    const PoissonBC bc = device_boundary(pg, 0.1, 0.4, 0.4, 25.0, 75.0);
    const PoissonSolver solver(pg, diel, bc);
    PoissonRHS rhs;
    rhs.h.assign(static_cast<std::size_t>(17) * 23, 0.0);
    const PotentialField pf = solver.solve(rhs);
    const int ny = 23;
    for (int j = 0; j < ny; ++j) {
        CHECK(pf.phi[j] == 0.0);
        CHECK(pf.phi[static_cast<std::size_t>(16) * ny + j] == 0.1);
    }
    for (int i = 4; i <= 12; ++i) { // gate span 25..75 nm at dx = 6.25
        CHECK(pf.phi[static_cast<std::size_t>(i) * ny + 0] == 0.4);
        CHECK(pf.phi[static_cast<std::size_t>(i) * ny + 22] == 0.4);
    }
}

TEST_CASE("uniform dielectric stencil reduces to the five-point laplacian") {
    const SpatialGrid xg = build_spatial_grid(10.0, 10);
    const PoissonGrid pg = build_poisson_grid(xg, 10.0, 10, 5.0);
    DielectricMap diel{2.0, 2.0, 4.0, 6.0};
    auto exact = [](double x, double y) { return 0.3 * x + 0.1 * y - 0.07 * x * y + 1.0; };
    const PoissonBC bc = all_dirichlet(pg, exact);
    const PoissonSolver solver(pg, diel, bc);
    PoissonRHS rhs;
    rhs.h.assign(static_cast<std::size_t>(11) * 11, 0.0); // harmonic polynomial
    const PotentialField pf = solver.solve(rhs);
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j)
            CHECK(pf.phi[static_cast<std::size_t>(i) * 11 + j] ==
                  doctest::Approx(exact(pg.x_node[i], pg.y_node[j])).epsilon(1e-9));
}

TEST_CASE("manufactured solution converges at second order in L2") {
    const double L = 100.0, H = 21.0;
    auto exact = [&](double x, double y) { return std::sin(pi * x / L) * std::cos(pi * y / H); };
    const double eps_r = 3.6;
    const double lap = -eps_r * (pi * pi / (L * L) + pi * pi / (H * H));
    std::vector<double> errs;
    for (int N : {8, 16, 32, 64}) {
        const SpatialGrid xg = build_spatial_grid(L, N);
        const int Ny = N;
        const PoissonGrid pg = build_poisson_grid(xg, H, Ny, H / 2.0);
        DielectricMap diel{eps_r, eps_r, 0.0, 0.0};
        const PoissonBC bc = all_dirichlet(pg, exact);
        const PoissonSolver solver(pg, diel, bc);
        PoissonRHS rhs;
        rhs.h.assign(static_cast<std::size_t>(N + 1) * (Ny + 1), 0.0);
        for (int i = 0; i <= N; ++i)
            for (int j = 0; j <= Ny; ++j)
                rhs.h[static_cast<std::size_t>(i) * (Ny + 1) + j] =
                    lap * exact(pg.x_node[i], pg.y_node[j]);
        const PotentialField pf = solver.solve(rhs);
        double e2 = 0.0;
        for (int i = 0; i <= N; ++i)
            for (int j = 0; j <= Ny; ++j) {
                const double d = pf.phi[static_cast<std::size_t>(i) * (Ny + 1) + j]
                                 - exact(pg.x_node[i], pg.y_node[j]);
                e2 += d * d * pg.dx * pg.dy;
            }
        errs.push_back(std::sqrt(e2));
    }
    for (std::size_t j = 0; j + 1 < errs.size(); ++j) {
        const double order = std::log2(errs[j] / errs[j + 1]);
        CHECK(order >= 1.8);
        CHECK(order <= 2.2);
    }
}

TEST_CASE("mirrored bias negates the graphene-row field") {
    const SpatialGrid xg = build_spatial_grid(100.0, 20);
    const PoissonGrid pg = build_poisson_grid(xg, 21.0, 22, 10.5);
    DielectricMap diel{3.3, 3.6, 10.0, 11.0};
    PoissonRHS rhs;
    rhs.h.assign(static_cast<std::size_t>(21) * 23, 0.0);
    const PoissonSolver fwd(pg, diel, device_boundary(pg, 0.2, 0.0, 0.0, -1.0, -1.0));
    const PotentialField a = fwd.solve(rhs);
    // swap contacts: left at V_b, right at 0 is the mirror of the forward setup
    PoissonBC mirrored = device_boundary(pg, 0.0, 0.0, 0.0, -1.0, -1.0);
    const int ny = 23;
    for (int j = 0; j < ny; ++j) mirrored.value[j] = 0.2;
    const PoissonSolver bwd(pg, diel, mirrored);
    const PotentialField b = bwd.solve(rhs);
    for (int i = 0; i < 20; ++i)
        CHECK(a.E_x[i] == doctest::Approx(-b.E_x[19 - i]).epsilon(1e-10));
}

TEST_CASE("gfet grid 81 x 23 is accepted and gate snapping works") {
    const SpatialGrid xg = build_spatial_grid(100.0, 80);
    const PoissonGrid pg = build_poisson_grid(xg, 21.0, 22, 10.5);
    CHECK(pg.N_x + 1 == 81);
    CHECK(pg.N_y + 1 == 23);
    DielectricMap diel{3.3, 3.6, 10.0, 11.0};
    const PoissonBC bc = device_boundary(pg, 0.1, 0.4, 0.4, 25.0, 75.0);
    const PoissonSolver solver(pg, diel, bc);
    PoissonRHS rhs;
    rhs.h.assign(static_cast<std::size_t>(81) * 23, 0.0);
    const PotentialField pf = solver.solve(rhs);
    CHECK(solver.last_residual() <= 1e-10);
    // the potential under the gates pulls toward V_G
    const int ny = 23;
    const double mid = pf.phi[static_cast<std::size_t>(40) * ny + 11];
    CHECK(mid > 0.05);
    CHECK(mid < 0.4);
}

TEST_CASE("all-neumann boundary is rejected") {
    const SpatialGrid xg = build_spatial_grid(10.0, 4);
    const PoissonGrid pg = build_poisson_grid(xg, 4.0, 4, 2.0);
    DielectricMap diel{1.0, 1.0, 0.0, 0.0};
    PoissonBC bc;
    bc.dirichlet.assign(25, 0);
    bc.value.assign(25, 0.0);
    CHECK_THROWS(PoissonSolver(pg, diel, bc));
}
