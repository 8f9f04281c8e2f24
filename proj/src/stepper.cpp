#include "bte/stepper.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bte {

double zhang_shu_limit(double& a, double b, LimiterDiagnostics& diag) {
    if (a < 0.0 || a > 1.0) {
        a = a < 0.0 ? 0.0 : 1.0;
        ++diag.clamped_averages;
        return 0.0;
    }
    // |theta b| = min(|b|, a, 1-a); shave ulps until both endpoint values sit
    // inside the box even after rounding
    double cap = std::min(std::abs(b), std::min(a, 1.0 - a));
    if (cap == 0.0) return 0.0;
    while (a + cap > 1.0 || a - cap < 0.0) cap = std::nextafter(cap, 0.0);
    return std::copysign(cap, b);
}

namespace {

bool limit_state_checked(SolutionState& state, LimiterDiagnostics& diag) {
    const std::size_t n = state.size();
    std::int64_t clamps = 0;
    int bad = 0;
    #pragma omp parallel for schedule(static) reduction(+ : clamps) reduction(| : bad)
    for (std::size_t id = 0; id < n; ++id) {
        LimiterDiagnostics local;
        state.b[id] = zhang_shu_limit(state.a[id], state.b[id], local);
        clamps += local.clamped_averages;
        bad |= !std::isfinite(state.a[id]) || !std::isfinite(state.b[id]);
    }
    diag.clamped_averages += clamps;
    return bad == 0;
}

} // namespace

void limit_state(SolutionState& state, LimiterDiagnostics& diag) {
    limit_state_checked(state, diag);
}

double compute_dt(const SpatialGrid& xg, const PolarMesh& pm, double v_F, double max_E,
                  const StepControl& ctl) {
    double dt = xg.dx / v_F;
    if (max_E > 0.0) {
        const double drive = max_E * v_F; // e |E| v_F in eV/ps
        dt = std::min(dt, pm.deps / drive);
        dt = std::min(dt, pm.eps_mid[0] * pm.dth / drive);
    }
    return ctl.cfl * dt;
}

namespace {

void check_finite(const SolutionState& st) {
    const std::size_t n = st.size();
    for (std::size_t id = 0; id < n; ++id)
        if (!std::isfinite(st.a[id]) || !std::isfinite(st.b[id])) {
            const std::size_t per_band = n / 2;
            const int s = static_cast<int>(id / per_band);
            std::size_t r = id % per_band;
            const int nn = static_cast<int>(r % st.N_th);
            r /= st.N_th;
            const int kk = static_cast<int>(r % st.N_eps);
            const int ii = static_cast<int>(r / st.N_eps);
            std::ostringstream msg;
            msg << "non-finite coefficient at band " << (s == 0 ? '+' : '-') << " cell (i=" << ii
                << ", k=" << kk << ", n=" << nn << ") t=" << st.t
                << " a=" << st.a[id] << " b=" << st.b[id];
            throw std::runtime_error(msg.str());
        }
}

void axpy_update(SolutionState& st, double c_old, const SolutionState& old, double c_stage,
                 double dt, const StateDeriv& d) {
    const std::size_t n = st.size();
    #pragma omp parallel for schedule(static)
    for (std::size_t id = 0; id < n; ++id) {
        st.a[id] = c_old * old.a[id] + c_stage * (st.a[id] + dt * d.da[id]);
        st.b[id] = c_old * old.b[id] + c_stage * (st.b[id] + dt * d.db[id]);
    }
}

} // namespace

void ssp_rk3_step(SolutionState& state, double dt, const RhsFn& rhs,
                  LimiterDiagnostics& diag) {
    static thread_local StateDeriv deriv;
    SolutionState u0 = state;

    rhs(state, deriv);
    axpy_update(state, 0.0, u0, 1.0, dt, deriv);
    state.t = u0.t + dt;
    if (!limit_state_checked(state, diag)) check_finite(state);

    rhs(state, deriv);
    axpy_update(state, 0.75, u0, 0.25, dt, deriv);
    state.t = u0.t + 0.5 * dt;
    if (!limit_state_checked(state, diag)) check_finite(state);

    rhs(state, deriv);
    axpy_update(state, 1.0 / 3.0, u0, 2.0 / 3.0, dt, deriv);
    state.t = u0.t + dt;
    if (!limit_state_checked(state, diag)) check_finite(state);
}

} // namespace bte
