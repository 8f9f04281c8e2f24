#pragma once

#include <cstdint>
#include <functional>

#include "bte/mesh.hpp"
#include "bte/state.hpp"

namespace bte {

struct StepControl {
    double cfl = 0.3;
    double t_end = 1.0; // ps
};

struct LimiterDiagnostics {
    std::int64_t clamped_averages = 0; // cell averages pushed back into [0,1]
};

// Linear scaling of the slope about the cell average so both endpoint values
// stay in [0,1]. Averages outside the box are clamped with the slope zeroed
// and counted.
double zhang_shu_limit(double& a, double b, LimiterDiagnostics& diag);

void limit_state(SolutionState& state, LimiterDiagnostics& diag);

// CFL step from the free-streaming speed and the drift speeds at the first
// radial midpoint; max_E in V/nm.
double compute_dt(const SpatialGrid& xg, const PolarMesh& pm, double v_F, double max_E,
                  const StepControl& ctl);

using RhsFn = std::function<void(const SolutionState&, StateDeriv&)>;

// Classic three-stage SSP-RK3 with stage-wise limiting. Throws on NaN/Inf
// with the offending cell in the message.
void ssp_rk3_step(SolutionState& state, double dt, const RhsFn& rhs,
                  LimiterDiagnostics& diag);

} // namespace bte
