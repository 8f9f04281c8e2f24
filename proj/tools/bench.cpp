#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include <omp.h>

#include "bte/collision.hpp"
#include "bte/reference.hpp"
#include "bte/transport.hpp"

// Timing comparison between the serial reference collision sum, the
// factorized kernel, and the OpenMP-parallel RHS assembly.

using clk = std::chrono::steady_clock;

static double seconds(clk::time_point a, clk::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

int main() {
    const int Nx = 16, Ne = 64, Nt = 32;
    bte::PhysicalParams params;
    const bte::SpatialGrid xg = bte::build_spatial_grid(100.0, Nx);
    const bte::PolarMesh pm = bte::build_polar_mesh(1.2, Ne, Nt);
    const bte::ScatteringTable table = bte::build_scattering_table(pm, params, true);
    const bte::FluxCoefficients flux = bte::build_flux_coefficients(pm, params.v_F(), params.hbar_vF());
    const bte::BoundarySpec bc = bte::make_fermi_boundary(pm, 0.25, params.T_K);

    bte::SolutionState st(Nx, Ne, Nt);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ua(0.0, 1.0);
    for (auto& v : st.a) v = ua(rng);
    for (std::size_t i = 0; i < st.b.size(); ++i) {
        const double room = std::min(st.a[i], 1.0 - st.a[i]);
        st.b[i] = (2.0 * ua(rng) - 1.0) * room;
    }

    const std::size_t slice = static_cast<std::size_t>(2) * Ne * Nt;
    std::vector<double> Q0(slice), Q1(slice);

    auto t0 = clk::now();
    bte::naive_collision(st, table, pm, 0, xg.dx, Q0.data(), Q1.data());
    auto t1 = clk::now();
    const double naive_one = seconds(t0, t1);

    bte::CollisionScratch scr;
    const int reps = 50;
    t0 = clk::now();
    for (int r = 0; r < reps; ++r)
        for (int i = 0; i < Nx; ++i)
            bte::apply_collision(st, table, pm, i, xg.dx, scr, Q0.data(), Q1.data());
    t1 = clk::now();
    const double fact_cell = seconds(t0, t1) / (reps * Nx);

    bte::TransportContext ctx;
    ctx.xg = &xg;
    ctx.pm = &pm;
    ctx.table = &table;
    ctx.flux = &flux;
    ctx.bc = &bc;
    ctx.v_F = params.v_F();
    ctx.hbar_vF = params.hbar_vF();
    ctx.eta = 0.0;
    std::vector<double> field(Nx, 1e-3);
    bte::StateDeriv d;

    omp_set_dynamic(0);
    const int max_threads = omp_get_max_threads();

    omp_set_num_threads(1);
    t0 = clk::now();
    for (int r = 0; r < reps; ++r) bte::assemble_rhs(st, ctx, field, d);
    t1 = clk::now();
    const double rhs_serial = seconds(t0, t1) / reps;

    omp_set_num_threads(max_threads);
    t0 = clk::now();
    for (int r = 0; r < reps; ++r) bte::assemble_rhs(st, ctx, field, d);
    t1 = clk::now();
    const double rhs_par = seconds(t0, t1) / reps;

    std::printf("mesh %d x %d x %d, substrate on\n", Nx, Ne, Nt);
    std::printf("naive collision, one spatial cell      %12.3f ms\n", 1e3 * naive_one);
    std::printf("factorized collision, one spatial cell %12.6f ms  (x%.0f)\n", 1e3 * fact_cell,
                naive_one / fact_cell);
    std::printf("assemble_rhs, 1 thread                 %12.3f ms\n", 1e3 * rhs_serial);
    std::printf("assemble_rhs, %2d threads               %12.3f ms  (x%.2f)\n", max_threads,
                1e3 * rhs_par, rhs_serial / rhs_par);
    return 0;
}
