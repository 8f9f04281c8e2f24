#pragma once

#include <cstddef>
#include <vector>

namespace bte {

// DG unknowns: a = cell average, b = linear slope in x, per band, spatial
// cell, and polar cell. Layout [s][i][k][n] with n fastest; band index 0 is
// the conduction band, 1 the valence band.
struct SolutionState {
    int N_x = 0, N_eps = 0, N_th = 0;
    double t = 0.0; // ps
    std::vector<double> a;
    std::vector<double> b;

    SolutionState() = default;
    SolutionState(int nx, int neps, int nth)
        : N_x(nx), N_eps(neps), N_th(nth),
          a(static_cast<std::size_t>(2) * nx * neps * nth, 0.0),
          b(static_cast<std::size_t>(2) * nx * neps * nth, 0.0) {}

    std::size_t idx(int s, int i, int k, int n) const {
        return ((static_cast<std::size_t>(s) * N_x + i) * N_eps + k) * N_th + n;
    }
    std::size_t size() const { return a.size(); }
};

// Time derivatives of (a, b); same layout.
struct StateDeriv {
    std::vector<double> da;
    std::vector<double> db;
    void resize(std::size_t n) {
        da.assign(n, 0.0);
        db.assign(n, 0.0);
    }
};

} // namespace bte
