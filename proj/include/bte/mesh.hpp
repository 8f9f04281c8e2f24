#pragma once

#include <vector>

namespace bte {

// Uniform 1D grid along the transport direction. Edges x_{i+1/2} = i*dx,
// midpoints x_i = (i-1/2)*dx (0-based storage, cell i spans [edge[i], edge[i+1]]).
struct SpatialGrid {
    double L = 0.0;   // nm
    int N_x = 0;
    double dx = 0.0;
    std::vector<double> edge;  // size N_x+1
    std::vector<double> mid;   // size N_x
};

// Tensor mesh in (energy, angle). Radial edges k*deps on [0, eps_max],
// angular edges n*dth on [0, 2pi). The angular index is periodic; radial
// reconstructions see two zero ghost layers at each end.
struct PolarMesh {
    double eps_max = 0.0; // eV
    int N_eps = 0;
    int N_th = 0;
    double deps = 0.0;
    double dth = 0.0;
    std::vector<double> eps_edge; // size N_eps+1
    std::vector<double> eps_mid;  // size N_eps
    std::vector<double> th_edge;  // size N_th+1 (th_edge[N_th] = 2pi)
    std::vector<double> th_mid;   // size N_th
    // cached trigonometry of the angular grid
    std::vector<double> cos_mid, sin_mid; // size N_th
    std::vector<double> sin_edge;         // size N_th+1
};

// Node mesh for the 2D Poisson solve; shares x edges with the spatial grid.
// Node (i,j) sits at (i*dx, j*dy), i = 0..N_x, j = 0..N_y. j_gr is the row
// index of the graphene layer and must coincide with a node row.
struct PoissonGrid {
    int N_x = 0;
    int N_y = 0;
    double H = 0.0;  // nm
    double dx = 0.0;
    double dy = 0.0;
    int j_gr = 0;
    std::vector<double> x_node; // size N_x+1
    std::vector<double> y_node; // size N_y+1
};

SpatialGrid build_spatial_grid(double L, int N_x);
PolarMesh build_polar_mesh(double eps_max, int N_eps, int N_th);
PoissonGrid build_poisson_grid(const SpatialGrid& xg, double H, int N_y, double y_gr);

} // namespace bte
