#pragma once

#include <array>
#include <string>
#include <vector>

#include "bte/config.hpp"
#include "bte/mesh.hpp"
#include "bte/moments.hpp"
#include "bte/poisson.hpp"
#include "bte/scattering_table.hpp"
#include "bte/state.hpp"
#include "bte/stepper.hpp"
#include "bte/transport.hpp"

namespace bte {

struct Frame {
    double t = 0.0;
    CellMoments left_bc, right_bc;
    std::vector<CellMoments> cells;
    double steady_metric = 0.0; // max_i |n_i - n_i(prev frame)| / max_i n_i
};

struct RunResult {
    RunConfig cfg;
    SpatialGrid xg;
    PolarMesh pm;
    MomentWeights weights;
    std::vector<Frame> frames;
    SolutionState state;
    std::vector<double> field;       // V/nm per cell
    std::vector<double> phi;         // node potentials (coupled mode)
    LimiterDiagnostics limiter;
    double min_endpoint = 0.0;       // reconstructed endpoint range over the run
    double max_endpoint = 1.0;
    long steps = 0;

    double final_steady_metric() const {
        return frames.empty() ? 0.0 : frames.back().steady_metric;
    }
};

RunResult run_scenario(const RunConfig& cfg);

// Energy-weighted angular marginal of the band-s average coefficients at
// spatial cell i.
std::vector<double> theta_marginal(const SolutionState& state, const MomentWeights& w,
                                   int i, int s);

// Local maxima of a periodic sequence; a plateau of equal values flanked by
// strictly smaller neighbours counts once. Values are quantized to
// rel_tol * (max - min) first so sub-tolerance ripple does not split or
// fabricate peaks.
int count_periodic_maxima(const std::vector<double>& v, double rel_tol = 0.02);

struct NormTriple {
    double l1 = 0, l2 = 0, linf = 0;
};

enum class Axis { x, eps, theta };

struct ConvergenceReport {
    Axis axis = Axis::x;
    std::vector<int> levels; // refined mesh sizes, coarsest first
    // errors between consecutive levels, per quantity {n, V, E}
    std::vector<std::array<NormTriple, 3>> errors;
    // rates log2(err_j / err_{j+1}), per quantity and norm
    std::vector<std::array<NormTriple, 3>> rates;
    std::array<NormTriple, 3> slope; // least-squares over all error pairs
};

ConvergenceReport convergence_study(const RunConfig& base, Axis axis,
                                    const std::vector<int>& levels);

void export_run(const RunResult& run, const std::string& out_dir);
void export_report(const ConvergenceReport& rep, const std::string& out_dir);

} // namespace bte
