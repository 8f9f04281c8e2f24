#include "bte/poisson.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>

namespace bte {

double DielectricMap::face(double y) const {
    if (y == y2 || y == y3)
        return 2.0 * eps_gr * eps_ox / (eps_gr + eps_ox);
    return value(y);
}

PoissonBC device_boundary(const PoissonGrid& g, double V_b, double V_G_up, double V_G_down,
                          double x2, double x3) {
    const int nx = g.N_x + 1, ny = g.N_y + 1;
    PoissonBC bc;
    bc.dirichlet.assign(static_cast<std::size_t>(nx) * ny, 0);
    bc.value.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    auto set = [&](int i, int j, double v) {
        bc.dirichlet[static_cast<std::size_t>(i) * ny + j] = 1;
        bc.value[static_cast<std::size_t>(i) * ny + j] = v;
    };
    // gate endpoints snap to the nearest node; an empty or negative span
    // disables the gates
    if (x3 >= x2 && x3 > 0.0) {
        const int i2 = std::max(0, static_cast<int>(std::lround(x2 / g.dx)));
        const int i3 = std::min(g.N_x, static_cast<int>(std::lround(x3 / g.dx)));
        for (int i = i2; i <= i3; ++i) {
            set(i, 0, V_G_down);
            set(i, g.N_y, V_G_up);
        }
    }
    // contact columns take precedence at corners
    for (int j = 0; j < ny; ++j) {
        set(0, j, 0.0);
        set(g.N_x, j, V_b);
    }
    return bc;
}

struct PoissonSolver::Impl {
    Eigen::SparseMatrix<double> A;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
};

PoissonSolver::~PoissonSolver() = default;
PoissonSolver::PoissonSolver(PoissonSolver&&) noexcept = default;

PoissonSolver::PoissonSolver(const PoissonGrid& grid, const DielectricMap& diel,
                             const PoissonBC& bc)
    : grid_(grid), bc_(bc), impl_(std::make_unique<Impl>()) {
    const int nx = grid.N_x + 1, ny = grid.N_y + 1;
    const int N = nx * ny;
    bool any_dirichlet = false;
    for (auto d : bc.dirichlet) any_dirichlet |= d != 0;
    if (!any_dirichlet)
        throw std::invalid_argument("poisson: all-Neumann boundary is singular");

    auto id = [&](int i, int j) { return i * ny + j; };
    const double ax = 1.0 / (grid.dx * grid.dx);
    const double ay = 1.0 / (grid.dy * grid.dy);

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(5) * N);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            const int row = id(i, j);
            if (bc.dirichlet[row]) {
                trip.emplace_back(row, row, 1.0);
                continue;
            }
            // face permittivities at the midpoints between node columns/rows;
            // Neumann sides mirror the interior neighbour (zero flux)
            const double y = grid.y_node[j];
            const double exm = diel.face(y); // faces along x sit at the node's y
            const double exp_ = exm;
            const double eym = j > 0 ? diel.face(0.5 * (y + grid.y_node[j - 1])) : 0.0;
            const double eyp = j < ny - 1 ? diel.face(0.5 * (y + grid.y_node[j + 1])) : 0.0;

            double diag = 0.0;
            auto couple = [&](int ii, int jj, double w) {
                if (w == 0.0) return;
                diag -= w;
                trip.emplace_back(row, id(ii, jj), w);
            };
            // Neumann sides use the mirror ghost, doubling the interior coupling
            if (i == 0) couple(i + 1, j, 2.0 * ax * exp_);
            else if (i == nx - 1) couple(i - 1, j, 2.0 * ax * exm);
            else {
                couple(i - 1, j, ax * exm);
                couple(i + 1, j, ax * exp_);
            }
            if (j == 0) couple(i, j + 1, 2.0 * ay * eyp);
            else if (j == ny - 1) couple(i, j - 1, 2.0 * ay * eym);
            else {
                couple(i, j - 1, ay * eym);
                couple(i, j + 1, ay * eyp);
            }
            trip.emplace_back(row, row, diag);
        }
    impl_->A.resize(N, N);
    impl_->A.setFromTriplets(trip.begin(), trip.end());
    impl_->A.makeCompressed();
    impl_->lu.compute(impl_->A);
    if (impl_->lu.info() != Eigen::Success)
        throw std::runtime_error("poisson: sparse factorization failed");
}

PotentialField PoissonSolver::solve(const PoissonRHS& rhs) const {
    const int nx = grid_.N_x + 1, ny = grid_.N_y + 1;
    const int N = nx * ny;
    Eigen::VectorXd b(N);
    for (int row = 0; row < N; ++row)
        b[row] = bc_.dirichlet[row] ? bc_.value[row] : rhs.h[row];
    Eigen::VectorXd phi = impl_->lu.solve(b);
    const double bn = b.norm();
    residual_ = (impl_->A * phi - b).norm() / (bn > 0.0 ? bn : 1.0);
    if (!(residual_ <= 1e-10))
        throw std::runtime_error("poisson: solve residual " + std::to_string(residual_) +
                                 " exceeds 1e-10");

    PotentialField out;
    out.phi.assign(phi.data(), phi.data() + N);
    // boundary values are data; pin them bit-exactly
    for (int row = 0; row < N; ++row)
        if (bc_.dirichlet[row]) out.phi[row] = bc_.value[row];
    out.E_x.resize(grid_.N_x);
    for (int i = 0; i < grid_.N_x; ++i) {
        const double pl = out.phi[static_cast<std::size_t>(i) * ny + grid_.j_gr];
        const double pr = out.phi[static_cast<std::size_t>(i + 1) * ny + grid_.j_gr];
        out.E_x[i] = -(pr - pl) / grid_.dx;
    }
    return out;
}

PoissonRHS rhs_from_state(const SolutionState& state, const MomentWeights& weights,
                          const PoissonGrid& grid, const std::vector<double>& bc_density_n,
                          const std::vector<double>& bc_density_p, double n_dope,
                          double t_gr) {
    const int nx = grid.N_x + 1, ny = grid.N_y + 1;
    PoissonRHS rhs;
    rhs.h.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    constexpr double e_over_eps0 = 18.095128179727826; // V nm
    for (int e = 0; e <= grid.N_x; ++e) {
        double n_edge, p_edge;
        if (e == 0) {
            n_edge = 0.5 * (bc_density_n[0] + trace_density_n(state, weights, 0, -1));
            p_edge = 0.5 * (bc_density_p[0] + trace_density_p(state, weights, 0, -1));
        } else if (e == grid.N_x) {
            n_edge = 0.5 * (trace_density_n(state, weights, grid.N_x - 1, +1) + bc_density_n[1]);
            p_edge = 0.5 * (trace_density_p(state, weights, grid.N_x - 1, +1) + bc_density_p[1]);
        } else {
            n_edge = 0.5 * (trace_density_n(state, weights, e - 1, +1)
                            + trace_density_n(state, weights, e, -1));
            p_edge = 0.5 * (trace_density_p(state, weights, e - 1, +1)
                            + trace_density_p(state, weights, e, -1));
        }
        rhs.h[static_cast<std::size_t>(e) * ny + grid.j_gr] =
            e_over_eps0 * (n_edge - p_edge - n_dope) / t_gr;
    }
    return rhs;
}

} // namespace bte
