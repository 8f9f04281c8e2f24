#include "bte/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>

namespace bte {

namespace {

void track_endpoints(const SolutionState& st, double& lo, double& hi) {
    const std::size_t n = st.size();
    double l = lo, h = hi;
    #pragma omp parallel for schedule(static) reduction(min : l) reduction(max : h)
    for (std::size_t id = 0; id < n; ++id) {
        const double a = st.a[id], b = std::abs(st.b[id]);
        l = std::min(l, a - b);
        h = std::max(h, a + b);
    }
    lo = l;
    hi = h;
}

Frame make_frame(const SolutionState& st, const MomentWeights& w, const BoundarySpec& bc,
                 double guard, const std::vector<double>* prev_n) {
    Frame f;
    f.t = st.t;
    f.cells.resize(st.N_x);
    for (int i = 0; i < st.N_x; ++i) f.cells[i] = cell_moments(st, w, i, guard);
    f.left_bc = f.right_bc = boundary_moments(bc, w, guard);
    if (prev_n) {
        double num = 0.0, den = 0.0;
        for (int i = 0; i < st.N_x; ++i) {
            num = std::max(num, std::abs(f.cells[i].n - (*prev_n)[i]));
            den = std::max(den, std::abs(f.cells[i].n));
        }
        f.steady_metric = den > 0.0 ? num / den : 0.0;
    }
    return f;
}

} // namespace

RunResult run_scenario(const RunConfig& cfg) {
    cfg.physics.validate();
    RunResult res;
    res.cfg = cfg;
    res.xg = build_spatial_grid(cfg.L, cfg.N_x);
    res.pm = build_polar_mesh(cfg.eps_max, cfg.N_eps, cfg.N_th);

    const PhysicalParams& ph = cfg.physics;
    const ScatteringTable table = build_scattering_table(res.pm, ph, cfg.substrate);
    const FluxCoefficients flux = build_flux_coefficients(res.pm, ph.v_F(), ph.hbar_vF());
    const BoundarySpec bc = make_fermi_boundary(res.pm, cfg.eps_F_contact, ph.T_K);
    res.weights = build_moment_weights(res.pm, ph.v_F(), ph.hbar_vF());

    TransportContext ctx;
    ctx.xg = &res.xg;
    ctx.pm = &res.pm;
    ctx.table = &table;
    ctx.flux = &flux;
    ctx.bc = &bc;
    ctx.v_F = ph.v_F();
    ctx.hbar_vF = ph.hbar_vF();
    ctx.eta = cfg.eta;

    // initial data: x-independent equilibrium
    res.state = SolutionState(cfg.N_x, cfg.N_eps, cfg.N_th);
    for (int s = 0; s < 2; ++s) {
        const Band band = s == 0 ? Band::conduction : Band::valence;
        for (int i = 0; i < cfg.N_x; ++i)
            for (int k = 0; k < cfg.N_eps; ++k) {
                const double f0 = fermi_dirac(res.pm.eps_mid[k], cfg.init_eps_F, band, ph.T_K);
                for (int n = 0; n < cfg.N_th; ++n)
                    res.state.a[res.state.idx(s, i, k, n)] = f0;
            }
    }

    // field setup
    res.field.assign(cfg.N_x, 0.0);
    std::optional<PoissonGrid> pgrid;
    std::optional<PoissonSolver> psolver;
    std::vector<double> bc_n(2), bc_p(2);
    const CellMoments bmom = boundary_moments(bc, res.weights, 1.0);
    bc_n[0] = bc_n[1] = bmom.n;
    bc_p[0] = bc_p[1] = bmom.p;
    if (cfg.field_mode == FieldMode::frozen) {
        std::fill(res.field.begin(), res.field.end(), cfg.frozen_field());
    } else {
        pgrid = build_poisson_grid(res.xg, cfg.H, cfg.N_y, cfg.y_gr);
        DielectricMap diel{cfg.eps_gr, cfg.eps_ox, cfg.y2, cfg.y3};
        psolver.emplace(*pgrid, diel, device_boundary(*pgrid, cfg.V_b, cfg.V_G_up,
                                                      cfg.V_G_down, cfg.x2, cfg.x3));
    }

    auto refresh_field = [&](const SolutionState& st) {
        if (!psolver) return;
        const PoissonRHS rhs = rhs_from_state(st, res.weights, *pgrid, bc_n, bc_p,
                                              cfg.n_dope(), cfg.t_gr);
        PotentialField pf = psolver->solve(rhs);
        res.field = pf.E_x;
        res.phi = std::move(pf.phi);
    };
    refresh_field(res.state);

    const RhsFn rhs_fn = [&](const SolutionState& st, StateDeriv& d) {
        refresh_field(st);
        assemble_rhs(st, ctx, res.field, d);
    };

    const double guard = bmom.n;
    std::vector<double> prev_n;
    res.frames.push_back(make_frame(res.state, res.weights, bc, guard, nullptr));
    prev_n.resize(cfg.N_x);
    for (int i = 0; i < cfg.N_x; ++i) prev_n[i] = res.frames.back().cells[i].n;

    StepControl ctl{cfg.cfl, cfg.t_end};
    res.min_endpoint = 1.0;
    res.max_endpoint = 0.0;
    track_endpoints(res.state, res.min_endpoint, res.max_endpoint);

    double next_frame = cfg.frame_dt;
    while (res.state.t < cfg.t_end - 1e-12) {
        double maxE = 0.0;
        for (double e : res.field) maxE = std::max(maxE, std::abs(e));
        double dt = compute_dt(res.xg, res.pm, ctx.v_F, maxE, ctl);
        dt = std::min(dt, cfg.t_end - res.state.t);
        ssp_rk3_step(res.state, dt, rhs_fn, res.limiter);
        ++res.steps;
        track_endpoints(res.state, res.min_endpoint, res.max_endpoint);
        if (res.state.t >= next_frame - 1e-12 || res.state.t >= cfg.t_end - 1e-12) {
            res.frames.push_back(make_frame(res.state, res.weights, bc, guard, &prev_n));
            for (int i = 0; i < cfg.N_x; ++i) prev_n[i] = res.frames.back().cells[i].n;
            while (next_frame <= res.state.t + 1e-12) next_frame += cfg.frame_dt;
        }
    }
    refresh_field(res.state);
    return res;
}

std::vector<double> theta_marginal(const SolutionState& state, const MomentWeights& w,
                                   int i, int s) {
    std::vector<double> out(state.N_th, 0.0);
    for (int n = 0; n < state.N_th; ++n) {
        double acc = 0.0;
        for (int k = 0; k < state.N_eps; ++k)
            acc += state.a[state.idx(s, i, k, n)] * w.Nbar[k];
        out[n] = acc;
    }
    return out;
}

int count_periodic_maxima(const std::vector<double>& v, double rel_tol) {
    const int N = static_cast<int>(v.size());
    if (N == 0) return 0;
    const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
    const double range = *hi_it - *lo_it;
    std::vector<long long> q(N);
    if (range > 0.0)
        for (int n = 0; n < N; ++n)
            q[n] = llround((v[n] - *lo_it) / (rel_tol * range));
    int start = -1;
    for (int n = 0; n < N; ++n)
        if (q[n] != q[(n - 1 + N) % N]) {
            start = n;
            break;
        }
    if (start < 0) return 1; // constant sequence
    // walk runs of equal values, starting at a run boundary
    int count = 0, seen = 0, n = start;
    while (seen < N) {
        int len = 1;
        while (q[(n + len) % N] == q[n]) ++len;
        const long long before = q[(n - 1 + N) % N];
        const long long after = q[(n + len) % N];
        if (before < q[n] && after < q[n]) ++count;
        n = (n + len) % N;
        seen += len;
    }
    return count;
}

namespace {

NormTriple norms(const std::vector<double>& d, double dx) {
    NormTriple t;
    for (double v : d) {
        t.l1 += std::abs(v) * dx;
        t.l2 += v * v * dx;
        t.linf = std::max(t.linf, std::abs(v));
    }
    t.l2 = std::sqrt(t.l2);
    return t;
}

struct Profiles {
    std::vector<double> n, V, E;
    double dx = 0.0;
};

Profiles extract_profiles(const RunResult& run) {
    Profiles p;
    p.dx = run.xg.dx;
    const Frame& f = run.frames.back();
    for (const auto& c : f.cells) {
        p.n.push_back(c.n);
        p.V.push_back(c.V_n);
        p.E.push_back(c.E_n);
    }
    return p;
}

std::vector<double> project_pairwise(const std::vector<double>& fine) {
    std::vector<double> out(fine.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = 0.5 * (fine[2 * i] + fine[2 * i + 1]);
    return out;
}

} // namespace

ConvergenceReport convergence_study(const RunConfig& base, Axis axis,
                                    const std::vector<int>& levels) {
    if (levels.size() < 3)
        throw std::invalid_argument("convergence study needs at least 3 mesh levels");
    for (std::size_t j = 1; j < levels.size(); ++j)
        if (levels[j] != 2 * levels[j - 1])
            throw std::invalid_argument("convergence levels must halve the step size");

    ConvergenceReport rep;
    rep.axis = axis;
    rep.levels = levels;

    std::vector<Profiles> prof;
    for (int N : levels) {
        RunConfig cfg = base;
        switch (axis) {
            case Axis::x: cfg.N_x = N; break;
            case Axis::eps: cfg.N_eps = N; break;
            case Axis::theta: cfg.N_th = N; break;
        }
        prof.push_back(extract_profiles(run_scenario(cfg)));
    }

    for (std::size_t j = 0; j + 1 < prof.size(); ++j) {
        const Profiles& coarse = prof[j];
        Profiles fine = prof[j + 1];
        if (axis == Axis::x) {
            fine.n = project_pairwise(fine.n);
            fine.V = project_pairwise(fine.V);
            fine.E = project_pairwise(fine.E);
        } else if (coarse.n.size() != fine.n.size()) {
            throw std::invalid_argument("convergence study: mismatched spatial meshes");
        }
        std::array<NormTriple, 3> e;
        const std::array<const std::vector<double>*, 3> cs = {&coarse.n, &coarse.V, &coarse.E};
        const std::array<const std::vector<double>*, 3> fs = {&fine.n, &fine.V, &fine.E};
        for (int q = 0; q < 3; ++q) {
            std::vector<double> d(cs[q]->size());
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = (*cs[q])[i] - (*fs[q])[i];
            e[q] = norms(d, coarse.dx);
        }
        rep.errors.push_back(e);
    }

    for (std::size_t j = 0; j + 1 < rep.errors.size(); ++j) {
        std::array<NormTriple, 3> r;
        for (int q = 0; q < 3; ++q) {
            r[q].l1 = std::log2(rep.errors[j][q].l1 / rep.errors[j + 1][q].l1);
            r[q].l2 = std::log2(rep.errors[j][q].l2 / rep.errors[j + 1][q].l2);
            r[q].linf = std::log2(rep.errors[j][q].linf / rep.errors[j + 1][q].linf);
        }
        rep.rates.push_back(r);
    }

    // least-squares slope of log2(err) against the refinement index
    const std::size_t m = rep.errors.size();
    for (int q = 0; q < 3; ++q) {
        auto fit = [&](auto pick) {
            if (m == 1) return 0.0;
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (std::size_t j = 0; j < m; ++j) {
                const double x = static_cast<double>(j);
                const double y = std::log2(pick(rep.errors[j][q]));
                sx += x; sy += y; sxx += x * x; sxy += x * y;
            }
            const double beta = (m * sxy - sx * sy) / (m * sxx - sx * sx);
            return -beta;
        };
        rep.slope[q].l1 = fit([](const NormTriple& t) { return t.l1; });
        rep.slope[q].l2 = fit([](const NormTriple& t) { return t.l2; });
        rep.slope[q].linf = fit([](const NormTriple& t) { return t.linf; });
    }
    return rep;
}

namespace {

constexpr double nm2_to_m2 = 1e18;
constexpr double j_to_A_per_m = 160.2176634;
constexpr double nmps_to_ms = 1e3;

void write_frame(const Frame& f, const SpatialGrid& xg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "x_nm,n_m2,p_m2,j_n_A_m,j_p_A_m,j_tot_A_m,E_n_eV,E_p_eV,V_n_m_s,V_p_m_s\n";
    char buf[512];
    auto row = [&](double x, const CellMoments& c) {
        std::snprintf(buf, sizeof buf,
                      "%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e\n", x,
                      c.n * nm2_to_m2, c.p * nm2_to_m2, c.j_n * j_to_A_per_m,
                      c.j_p * j_to_A_per_m, c.j_tot * j_to_A_per_m, c.E_n, c.E_p,
                      c.V_n * nmps_to_ms, c.V_p * nmps_to_ms);
        out << buf;
    };
    row(0.0, f.left_bc);
    for (int i = 0; i < static_cast<int>(f.cells.size()); ++i) row(xg.mid[i], f.cells[i]);
    row(xg.L, f.right_bc);
}

} // namespace

void export_run(const RunResult& run, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(fs::path(out_dir) / "frames");

    {
        std::ofstream meta(fs::path(out_dir) / "meta.txt");
        if (!meta) throw std::runtime_error("cannot write meta.txt in " + out_dir);
        write_meta(run.cfg, meta);
        meta << "steps = " << run.steps << "\n";
        meta << "clamped_averages = " << run.limiter.clamped_averages << "\n";
        meta << "min_endpoint = " << run.min_endpoint << "\n";
        meta << "max_endpoint = " << run.max_endpoint << "\n";
        meta << "final_steady_metric = " << run.final_steady_metric() << "\n";
    }

    char name[64];
    for (std::size_t j = 0; j < run.frames.size(); ++j) {
        std::snprintf(name, sizeof name, "frames/%04zu.csv", j);
        write_frame(run.frames[j], run.xg, (fs::path(out_dir) / name).string());
    }

    const std::array<std::pair<const char*, int>, 3> positions = {
        std::pair<const char*, int>{"x0", 0},
        {"xmid", run.state.N_x / 2},
        {"xL", run.state.N_x - 1}};
    for (int s = 0; s < 2; ++s)
        for (const auto& [tag, i] : positions) {
            std::snprintf(name, sizeof name, "snapshot_%s_%s.csv", s == 0 ? "cond" : "val", tag);
            std::ofstream out(fs::path(out_dir) / name);
            out << "eps_eV,theta_rad,a,b\n";
            char buf[160];
            for (int k = 0; k < run.state.N_eps; ++k)
                for (int n = 0; n < run.state.N_th; ++n) {
                    std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e,%.12e\n",
                                  run.pm.eps_mid[k], run.pm.th_mid[n],
                                  run.state.a[run.state.idx(s, i, k, n)],
                                  run.state.b[run.state.idx(s, i, k, n)]);
                    out << buf;
                }
        }

    if (!run.phi.empty()) {
        std::ofstream out(fs::path(out_dir) / "phi.csv");
        out << "x_nm,y_nm,phi_V\n";
        const int ny = static_cast<int>(run.phi.size()) / (run.xg.N_x + 1);
        char buf[128];
        for (int i = 0; i <= run.xg.N_x; ++i)
            for (int j = 0; j < ny; ++j) {
                std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e\n", run.xg.edge[i],
                              run.cfg.H * j / (ny - 1), run.phi[static_cast<std::size_t>(i) * ny + j]);
                out << buf;
            }
    }
    {
        std::ofstream out(fs::path(out_dir) / "field.csv");
        out << "x_nm,E_x_V_um\n";
        char buf[96];
        for (int i = 0; i < run.xg.N_x; ++i) {
            std::snprintf(buf, sizeof buf, "%.12e,%.12e\n", run.xg.mid[i], run.field[i] * 1e3);
            out << buf;
        }
    }
}

void export_report(const ConvergenceReport& rep, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / "report.csv");
    if (!out) throw std::runtime_error("cannot write report.csv in " + out_dir);
    const char* axis = rep.axis == Axis::x ? "x" : (rep.axis == Axis::eps ? "eps" : "theta");
    const std::array<const char*, 3> qname = {"n", "V_x", "E"};
    out << "axis,quantity,level,err_l1,err_l2,err_linf,rate_l1,rate_l2,rate_linf\n";
    for (std::size_t j = 0; j < rep.errors.size(); ++j)
        for (int q = 0; q < 3; ++q) {
            out << axis << ',' << qname[q] << ',' << rep.levels[j] << ','
                << rep.errors[j][q].l1 << ',' << rep.errors[j][q].l2 << ','
                << rep.errors[j][q].linf;
            if (j > 0)
                out << ',' << rep.rates[j - 1][q].l1 << ',' << rep.rates[j - 1][q].l2 << ','
                    << rep.rates[j - 1][q].linf;
            else
                out << ",,,";
            out << '\n';
        }
    for (int q = 0; q < 3; ++q)
        out << axis << ',' << qname[q] << ",slope," << rep.slope[q].l1 << ','
            << rep.slope[q].l2 << ',' << rep.slope[q].linf << ",,,\n";
}

} // namespace bte
