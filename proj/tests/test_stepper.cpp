#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "bte/stepper.hpp"
#include "bte/transport.hpp"

using namespace bte;
using std::numbers::pi;

TEST_CASE("zhang-shu limiter") {
    LimiterDiagnostics diag;
    double a = 0.5;
    CHECK(zhang_shu_limit(a, 0.2, diag) == doctest::Approx(0.2).epsilon(1e-15));
    a = 0.9;
    CHECK(zhang_shu_limit(a, 0.3, diag) == doctest::Approx(0.1).epsilon(1e-14));
    a = 0.9; // average untouched
    zhang_shu_limit(a, 0.3, diag);
    CHECK(a == 0.9);
    for (double av : {0.0, 0.3, 1.0}) {
        a = av;
        CHECK(zhang_shu_limit(a, 0.0, diag) == 0.0);
    }
    CHECK(diag.clamped_averages == 0);
    a = 1.2;
    CHECK(zhang_shu_limit(a, 0.4, diag) == 0.0);
    CHECK(a == 1.0);
    CHECK(diag.clamped_averages == 1);
    a = -0.1;
    zhang_shu_limit(a, 0.4, diag);
    CHECK(a == 0.0);
    CHECK(diag.clamped_averages == 2);
}

TEST_CASE("limited endpoints stay in the box and theta stays in [0,1]") {
    LimiterDiagnostics diag;
    for (double a0 : {0.01, 0.2, 0.5, 0.77, 0.99})
        for (double b0 : {-1.5, -0.4, -0.01, 0.0, 0.3, 0.9}) {
            double a = a0;
            const double b = zhang_shu_limit(a, b0, diag);
            CHECK(a - std::abs(b) >= -1e-15);
            CHECK(a + std::abs(b) <= 1.0 + 1e-15);
            if (b0 != 0.0) {
                const double theta = b / b0;
                CHECK(theta >= 0.0);
                CHECK(theta <= 1.0);
                // no-op whenever the endpoints already fit
                if (a0 - std::abs(b0) >= 0.0 && a0 + std::abs(b0) <= 1.0)
                    CHECK(theta == 1.0);
            }
        }
}

namespace {

// scalar ODE embedded in the state container
void scalar_rhs(const SolutionState& st, StateDeriv& d) {
    d.resize(st.size());
    for (std::size_t i = 0; i < st.size(); ++i) d.da[i] = -st.a[i];
}

} // namespace

TEST_CASE("ssp-rk3 scalar decay matches the hand-expanded polynomial") {
    SolutionState st(2, 2, 4);
    for (auto& v : st.a) v = 1.0;
    LimiterDiagnostics diag;
    ssp_rk3_step(st, 0.1, scalar_rhs, diag);
    // 1 - dt + dt^2/2 - dt^3/6 at dt = 0.1
    CHECK(st.a[0] == doctest::Approx(0.9048333333333333).epsilon(1e-14));
    CHECK(st.t == doctest::Approx(0.1).epsilon(1e-15));

    // L = 0 leaves the state untouched up to the rounding of the stage
    // convex combinations
    SolutionState fixed(2, 2, 4);
    for (auto& v : fixed.a) v = 0.42;
    ssp_rk3_step(fixed, 0.05, [](const SolutionState& s, StateDeriv& d) { d.resize(s.size()); },
                 diag);
    for (double v : fixed.a) CHECK(v == doctest::Approx(0.42).epsilon(1e-14));
}

TEST_CASE("nan in a stage aborts with cell information") {
    SolutionState st(2, 2, 4);
    LimiterDiagnostics diag;
    try {
        ssp_rk3_step(st, 0.1,
                     [](const SolutionState& s, StateDeriv& d) {
                         d.resize(s.size());
                         d.da[5] = std::numeric_limits<double>::quiet_NaN();
                     },
                     diag);
        FAIL("expected a throw");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("non-finite") != std::string::npos);
        CHECK(std::string(e.what()).find("k=") != std::string::npos);
    }
}

TEST_CASE("compute_dt constraints") {
    const SpatialGrid xg = build_spatial_grid(100.0, 80);
    const PolarMesh pm = build_polar_mesh(1.2, 100, 32);
    StepControl ctl{1.0, 1.0};
    // no field: spatial constraint only, dx / v_F = 1.25 fs
    CHECK(compute_dt(xg, pm, 1000.0, 0.0, ctl) == doctest::Approx(1.25e-3).epsilon(1e-12));
    // strong field: angular constraint at the first radial midpoint dominates
    const double E = 1e-2;
    const double expected = pm.eps_mid[0] * pm.dth / (E * 1000.0);
    CHECK(compute_dt(xg, pm, 1000.0, E, ctl) == doctest::Approx(expected).epsilon(1e-12));
    // doubling N_theta halves the angular bound
    const PolarMesh pm2 = build_polar_mesh(1.2, 100, 64);
    CHECK(compute_dt(xg, pm2, 1000.0, E, ctl) ==
          doctest::Approx(0.5 * expected).epsilon(1e-12));
    StepControl half{0.5, 1.0};
    CHECK(compute_dt(xg, pm, 1000.0, 0.0, half) == doctest::Approx(0.625e-3).epsilon(1e-12));
}

namespace {

struct AdvectionSetup {
    SpatialGrid xg;
    PolarMesh pm;
    PhysicalParams params;
    ScatteringTable table;
    FluxCoefficients flux;
    BoundarySpec bc;
    TransportContext ctx;
    std::vector<double> field;

    explicit AdvectionSetup(int Nx) : xg(build_spatial_grid(100.0, Nx)), pm(build_polar_mesh(1.2, 2, 4)) {
        table = build_scattering_table(pm, params, false);
        flux = build_flux_coefficients(pm, params.v_F(), params.hbar_vF());
        bc.N_eps = 2;
        bc.f_bc.assign(4, 0.0);
        ctx.xg = &xg;
        ctx.pm = &pm;
        ctx.table = &table;
        ctx.flux = &flux;
        ctx.bc = &bc;
        ctx.v_F = params.v_F();
        ctx.hbar_vF = params.hbar_vF();
        ctx.eta = 0.0;
        ctx.collisions_on = false;
        ctx.drift_on = false;
        field.assign(Nx, 0.0);
    }

    // effective transport speed of one polar cell: the angular average of
    // v_F cos(theta) over the cell
    double speed(int s, int k, int n) const {
        const double mass = pm.dth
            * (pm.eps_edge[k + 1] * pm.eps_edge[k + 1] - pm.eps_edge[k] * pm.eps_edge[k])
            / (2.0 * params.hbar_vF() * params.hbar_vF());
        return flux.at(s, k, n) / mass;
    }
};

double smooth_profile(double x, double L) {
    return 0.5 + 0.2 * std::sin(2.0 * pi * x / L);
}

// exact inflow trace for the advected profile
double advected(double x, double t, double v, double L) {
    return smooth_profile(x - v * t, L);
}

} // namespace

TEST_CASE("free-streaming order on a smooth profile is at least 1.8 in L1") {
    const int k = 1, n = 0; // forward-moving conduction cell
    std::vector<double> errs;
    for (int Nx : {40, 80, 160}) {
        AdvectionSetup s(Nx);
        const double v = s.speed(0, k, n);
        const double t_end = 0.02; // transit of ~1/5 of the domain
        SolutionState st(Nx, 2, 4);
        for (int i = 0; i < Nx; ++i) {
            // cell averages of the initial profile (2-point Gauss)
            const double xl = s.xg.edge[i], xr = s.xg.edge[i + 1];
            const double g1 = 0.5 * (xl + xr) - (xr - xl) / (2.0 * std::sqrt(3.0));
            const double g2 = 0.5 * (xl + xr) + (xr - xl) / (2.0 * std::sqrt(3.0));
            st.a[st.idx(0, i, k, n)] = 0.5 * (smooth_profile(g1, 100.0) + smooth_profile(g2, 100.0));
        }
        LimiterDiagnostics diag;
        const double dt0 = 0.2 * s.xg.dx / s.params.v_F();
        double t = 0.0;
        while (t < t_end - 1e-15) {
            const double dt = std::min(dt0, t_end - t);
            // time-exact inflow trace at the left contact
            ssp_rk3_step(st, dt, [&](const SolutionState& u, StateDeriv& d) {
                s.bc.f_bc[k] = advected(0.0, u.t, v, 100.0);
                assemble_rhs(u, s.ctx, s.field, d);
            }, diag);
            t += dt;
        }
        double err = 0.0;
        for (int i = 0; i < Nx; ++i) {
            const double xl = s.xg.edge[i], xr = s.xg.edge[i + 1];
            const double g1 = 0.5 * (xl + xr) - (xr - xl) / (2.0 * std::sqrt(3.0));
            const double g2 = 0.5 * (xl + xr) + (xr - xl) / (2.0 * std::sqrt(3.0));
            const double exact = 0.5 * (advected(g1, t_end, v, 100.0) + advected(g2, t_end, v, 100.0));
            err += std::abs(st.a[st.idx(0, i, k, n)] - exact) * s.xg.dx;
        }
        errs.push_back(err);
    }
    const double order1 = std::log2(errs[0] / errs[1]);
    const double order2 = std::log2(errs[1] / errs[2]);
    CHECK(order1 >= 1.8);
    CHECK(order2 >= 1.8);
}

TEST_CASE("temporal order of ssp-rk3 is at least 2.9 with frozen spatial error") {
    const int Nx = 24;
    AdvectionSetup s(Nx);
    SolutionState init(Nx, 2, 4);
    // the same boundary-compatible profile in every polar cell keeps the
    // limiter inactive, so the semi-discrete system is smooth in time
    for (int sb = 0; sb < 2; ++sb)
        for (int i = 0; i < Nx; ++i)
            for (int kk = 0; kk < 2; ++kk)
                for (int nn = 0; nn < 4; ++nn)
                    init.a[init.idx(sb, i, kk, nn)] = smooth_profile(s.xg.mid[i], 100.0);
    for (int id = 0; id < 4; ++id) s.bc.f_bc[id] = smooth_profile(0.0, 100.0);
    const double t_end = 0.01;
    auto rhs = [&](const SolutionState& u, StateDeriv& d) { assemble_rhs(u, s.ctx, s.field, d); };
    auto run = [&](int steps) {
        SolutionState st = init;
        LimiterDiagnostics diag;
        const double dt = t_end / steps;
        for (int m = 0; m < steps; ++m) ssp_rk3_step(st, dt, rhs, diag);
        return st;
    };
    const SolutionState ref = run(512);
    std::vector<double> errs;
    for (int steps : {8, 16, 32}) {
        const SolutionState st = run(steps);
        double e = 0.0;
        for (std::size_t id = 0; id < st.size(); ++id) e += std::abs(st.a[id] - ref.a[id]);
        errs.push_back(e);
    }
    CHECK(std::log2(errs[0] / errs[1]) >= 2.9);
    CHECK(std::log2(errs[1] / errs[2]) >= 2.9);
}
