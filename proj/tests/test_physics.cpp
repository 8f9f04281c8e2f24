#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bte/constants.hpp"
#include "bte/physics.hpp"

using namespace bte;
namespace c = bte::constants;
using std::numbers::pi;

TEST_CASE("fermi dirac symmetry points") {
    CHECK(fermi_dirac(0.25, 0.25, Band::conduction, 300.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(fermi_dirac(0.0, 0.0, Band::valence, 300.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("fermi dirac tail below 1e-9 at the energy cap") {
    for (double e = 1.2; e <= 2.0; e += 0.1)
        CHECK(fermi_dirac(e, 0.25, Band::conduction, 300.0) < 1e-9);
}

TEST_CASE("particle-hole symmetry at the Dirac point") {
    for (double e = 0.0; e <= 1.2; e += 0.01) {
        const double fp = fermi_dirac(e, 0.0, Band::conduction, 300.0);
        const double fm = fermi_dirac(e, 0.0, Band::valence, 300.0);
        CHECK(fp == doctest::Approx(1.0 - fm).epsilon(1e-14));
    }
}

TEST_CASE("bose einstein") {
    const double kT = c::k_B * 300.0;
    CHECK(bose_einstein(kT * std::log(2.0), 300.0) == doctest::Approx(1.0).epsilon(1e-12));
    // direct evaluation with k_B T = 25.852 meV
    CHECK(bose_einstein(0.1646, 300.0) == doctest::Approx(1.7202364656e-3).epsilon(1e-9));
    CHECK_THROWS(bose_einstein(0.0, 300.0));
}

TEST_CASE("rpa dielectric branch continuity at q = 2 kF") {
    PhysicalParams p;
    const double kF = p.k_F();
    const double qs = p.q_s();
    const double q = 2.0 * kF;
    // both branch formulas evaluated at the switch point
    const double low = 1.0 + qs / q - pi * qs / (8.0 * kF);
    const double high = 1.0 + qs / q - qs * std::sqrt(q * q - 4.0 * kF * kF) / (2.0 * q * q)
                        - qs / (4.0 * kF) * std::asin(2.0 * kF / q);
    CHECK(std::abs(low - high) / low < 1e-12);
    CHECK(rpa_dielectric(q, p) == doctest::Approx(low).epsilon(1e-12));
    // the cusp is square-root-like, so a small window stays close
    CHECK(rpa_dielectric(q * (1.0 + 1e-8), p) == doctest::Approx(low).epsilon(1e-4));
    CHECK(rpa_dielectric(q * (1.0 - 1e-8), p) == doctest::Approx(low).epsilon(1e-4));
}

TEST_CASE("rpa dielectric decays to 1 from above") {
    PhysicalParams p;
    const double far = rpa_dielectric(1e3 * p.k_F(), p);
    CHECK(far > 1.0);
    CHECK(far == doctest::Approx(1.0).epsilon(1e-2));
    CHECK_THROWS(rpa_dielectric(0.0, p));
}

TEST_CASE("rpa dielectric, first branch against the raw formula") {
    PhysicalParams p;
    p.kappa_top = 3.9;
    p.kappa_bottom = 1.0; // SiO2 over vacuum
    const double kF = p.eps_F_screen_eV / p.hbar_vF();
    const double kappa_bar = 0.5 * (3.9 + 1.0);
    const double qs = 4.0 * c::coulomb * kF / (kappa_bar * p.hbar_vF());
    const double q = kF;
    const double expected = 1.0 + qs / q - pi * qs / (8.0 * kF);
    CHECK(rpa_dielectric(q, p) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("impurity potential scaling laws") {
    PhysicalParams p;
    const double q = 2.0 * p.k_F();
    const double base = impurity_potential(q, 0.0, p);
    // d = 0 leaves the bare screened amplitude
    const double amp = 2.0 * pi * c::coulomb / p.kappa_bar() / (q * rpa_dielectric(q, p));
    CHECK(base == doctest::Approx(amp * amp).epsilon(1e-13));
    // doubling d multiplies by exp(-2 d q)
    const double d = 1.0;
    CHECK(impurity_potential(q, 2.0 * d, p) ==
          doctest::Approx(impurity_potential(q, d, p) * std::exp(-2.0 * d * q)).epsilon(1e-12));
    // independent evaluation at q = 2 kF, d = 1 nm
    const double v = 2.0 * pi * c::coulomb / p.kappa_bar() * std::exp(-d * q) / q
                     / rpa_dielectric(q, p);
    CHECK(impurity_potential(q, d, p) == doctest::Approx(v * v).epsilon(1e-13));
    CHECK_THROWS(impurity_potential(0.0, 1.0, p));
}

TEST_CASE("mechanism list and parameter validation") {
    PhysicalParams p;
    p.validate();
    auto suspended = phonon_mechanisms(p, false);
    CHECK(suspended.size() == 3);
    auto gfet = phonon_mechanisms(p, true);
    CHECK(gfet.size() == 4);
    // acoustic is elastic with matrix element 1 + cos
    CHECK(suspended[0].hw == 0.0);
    CHECK(suspended[0].D_shape == suspended[0].E_shape);
    CHECK_FALSE(suspended[0].interband);
    // LO+TO isotropic interband, K carries 1 - cos
    CHECK(suspended[1].E_shape == 0.0);
    CHECK(suspended[1].interband);
    CHECK(suspended[2].E_shape == -suspended[2].D_shape);

    PhysicalParams bad;
    bad.T_K = 0.0;
    CHECK_THROWS(bad.validate());
}

TEST_CASE("low-fermi-level screening fallback") {
    PhysicalParams p;
    p.kF_from_density = true;
    // inert at the default screening level
    CHECK(p.k_F(1.0) == doctest::Approx(0.25 / p.hbar_vF()).epsilon(1e-12));
    // active below 0.04 eV: k_F = sqrt(pi n) for g_s = g_v = 2
    p.eps_F_screen_eV = 0.01;
    const double n = equilibrium_density(0.01, p);
    CHECK(n > 0.0);
    CHECK(p.k_F(n) == doctest::Approx(std::sqrt(std::numbers::pi * n)).epsilon(1e-12));
    // intrinsic density scale: (pi/12)(kT/hbar vF)^2 per spin-valley pattern
    const double kT = p.kT();
    const double n0 = equilibrium_density(0.0, p);
    const double analytic = std::numbers::pi / 12.0 * kT * kT / (p.hbar_vF() * p.hbar_vF());
    CHECK(n0 == doctest::Approx(analytic).epsilon(1e-3));
}

TEST_CASE("internal unit conversions") {
    PhysicalParams p;
    CHECK(p.v_F() == doctest::Approx(1000.0).epsilon(1e-12));          // nm/ps
    CHECK(p.hbar_vF() == doctest::Approx(0.6582119569).epsilon(1e-10)); // eV nm
    CHECK(p.sigma_m() == doctest::Approx(4.74354689659).epsilon(1e-9));
    CHECK(p.n_imp() == doctest::Approx(2.5e-3).epsilon(1e-12));
    CHECK(p.k_F() == doctest::Approx(0.379816862).epsilon(1e-8));
}
