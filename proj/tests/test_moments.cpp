#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bte/moments.hpp"

using namespace bte;
using std::numbers::pi;

namespace {

struct Setup {
    PolarMesh pm;
    PhysicalParams params;
    MomentWeights w;
    Setup(int Ne, int Nt, double cap = 1.2)
        : pm(build_polar_mesh(cap, Ne, Nt)),
          w(build_moment_weights(pm, params.v_F(), params.hbar_vF())) {}
};

} // namespace

TEST_CASE("full conduction band gives the closed-form density") {
    Setup s(40, 16);
    SolutionState st(2, 40, 16);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 40; ++k)
            for (int n = 0; n < 16; ++n) st.a[st.idx(0, i, k, n)] = 1.0;
    const CellMoments m = cell_moments(st, s.w, 0, 1.0);
    const double hv = s.params.hbar_vF();
    CHECK(m.n == doctest::Approx(1.2 * 1.2 / (pi * hv * hv)).epsilon(1e-12));
    // mean energy approaches (2/3) eps_max; exact discrete ratio of the sums
    double num = 0.0, den = 0.0;
    for (int k = 0; k < 40; ++k) {
        num += s.w.Tbar[k] * 16;
        den += s.w.Nbar[k] * 16;
    }
    CHECK(m.E_n == doctest::Approx(num / den).epsilon(1e-12));
    CHECK(m.E_n == doctest::Approx(2.0 / 3.0 * 1.2).epsilon(1e-3));
    // isotropic state: the sine differences telescope to rounding noise
    CHECK(std::abs(m.j_n) <= 1e-13 * s.params.v_F() * m.n);
    CHECK(std::abs(m.V_n) <= 1e-13 * s.params.v_F());
}

TEST_CASE("hole moments mirror the electron ones") {
    Setup s(30, 8);
    SolutionState st(1, 30, 8);
    // full valence band: no holes
    for (int k = 0; k < 30; ++k)
        for (int n = 0; n < 8; ++n) st.a[st.idx(1, 0, k, n)] = 1.0;
    CellMoments m = cell_moments(st, s.w, 0, 1.0);
    CHECK(m.p == 0.0);
    // empty valence band: the closed-form hole density
    for (int k = 0; k < 30; ++k)
        for (int n = 0; n < 8; ++n) st.a[st.idx(1, 0, k, n)] = 0.0;
    m = cell_moments(st, s.w, 0, 1.0);
    const double hv = s.params.hbar_vF();
    CHECK(m.p == doctest::Approx(1.2 * 1.2 / (pi * hv * hv)).epsilon(1e-12));
    CHECK(std::abs(m.j_p) <= 1e-13 * s.params.v_F() * m.p);
}

TEST_CASE("total current is the plain difference") {
    Setup s(10, 8);
    SolutionState st(1, 10, 8);
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& v : st.a) v = u(rng);
    const CellMoments m = cell_moments(st, s.w, 0, 1.0);
    CHECK(m.j_tot == doctest::Approx(m.j_n - m.j_p).epsilon(1e-15));
}

TEST_CASE("moments are linear in the coefficients") {
    Setup s(12, 8);
    SolutionState a(1, 12, 8), b(1, 12, 8), mix(1, 12, 8);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t id = 0; id < a.size(); ++id) {
        a.a[id] = u(rng);
        b.a[id] = u(rng);
        mix.a[id] = 0.25 * a.a[id] + 0.75 * b.a[id];
    }
    const CellMoments ma = cell_moments(a, s.w, 0, 1e9); // guard off: densities only
    const CellMoments mb = cell_moments(b, s.w, 0, 1e9);
    const CellMoments mm = cell_moments(mix, s.w, 0, 1e9);
    CHECK(mm.n == doctest::Approx(0.25 * ma.n + 0.75 * mb.n).epsilon(1e-12));
    CHECK(mm.j_n == doctest::Approx(0.25 * ma.j_n + 0.75 * mb.j_n).epsilon(1e-10));
    CHECK(mm.Edens_n == doctest::Approx(0.25 * ma.Edens_n + 0.75 * mb.Edens_n).epsilon(1e-12));
}

TEST_CASE("density bound and speed bound hold for box states") {
    Setup s(16, 12);
    const double hv = s.params.hbar_vF();
    const double nmax = 1.2 * 1.2 / (pi * hv * hv);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        SolutionState st(1, 16, 12);
        for (auto& v : st.a) v = u(rng);
        const CellMoments m = cell_moments(st, s.w, 0, nmax);
        CHECK(m.n >= 0.0);
        CHECK(m.n <= nmax + 1e-15);
        CHECK(m.p >= 0.0);
        CHECK(m.p <= nmax + 1e-15);
        // |sum a Rbar| <= v_F sum a Nbar
        CHECK(std::abs(m.j_n) <= s.params.v_F() * m.n * (1.0 + 1e-13));
        if (m.V_n != 0.0) CHECK(std::abs(m.V_n) <= s.params.v_F() * (1.0 + 1e-13));
    }
}

TEST_CASE("guarded division flags near-empty cells") {
    Setup s(8, 8);
    SolutionState st(1, 8, 8);
    st.a[st.idx(0, 0, 3, 2)] = 1e-9;
    const CellMoments m = cell_moments(st, s.w, 0, 0.02);
    CHECK(m.n > 0.0);
    CHECK(m.V_n == 0.0);
    CHECK(m.E_n == 0.0);
}

TEST_CASE("trace densities reduce to the mean of adjacent cells for flat slopes") {
    Setup s(10, 8);
    SolutionState st(3, 10, 8);
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& v : st.a) v = u(rng);
    const double left = trace_density_n(st, s.w, 0, +1);
    const double right = trace_density_n(st, s.w, 1, -1);
    const std::vector<double> prof = density_profile(st, s.w);
    // b = 0: the one-sided traces equal the cell densities
    CHECK(left == doctest::Approx(prof[0]).epsilon(1e-13));
    CHECK(right == doctest::Approx(prof[1]).epsilon(1e-13));
}

TEST_CASE("single-cell state matches the hand-computed weighted sum") {
    Setup s(6, 4);
    SolutionState st(1, 6, 4);
    st.a[st.idx(0, 0, 2, 1)] = 0.7;
    st.b[st.idx(0, 0, 2, 1)] = 0.1;
    const CellMoments m = cell_moments(st, s.w, 0, 1e9);
    CHECK(m.n == doctest::Approx(0.7 * s.w.Nbar[2] / (pi * pi)).epsilon(1e-13));
    CHECK(m.j_n == doctest::Approx(-0.7 * s.w.Rbar(2, 1) / (pi * pi)).epsilon(1e-13));
    const double tr = trace_density_n(st, s.w, 0, +1);
    CHECK(tr == doctest::Approx(0.8 * s.w.Nbar[2] / (pi * pi)).epsilon(1e-13));
}
