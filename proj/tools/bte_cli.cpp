#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "bte/harness.hpp"

namespace {

bte::RunConfig resolve_config(const std::string& scenario, const std::string& config_path,
                              double frozen_field, bool have_frozen) {
    bte::RunConfig cfg = bte::preset(scenario);
    if (!config_path.empty()) bte::apply_config_file(cfg, config_path);
    if (have_frozen) {
        cfg.field_mode = bte::FieldMode::frozen;
        cfg.E_frozen_V_um = frozen_field;
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic DG solver for bipolar charge transport in monolayer graphene"};
    app.require_subcommand(1);

    std::string scenario = "suspended";
    std::string config_path;
    std::string out_dir = "out";
    std::string axis = "x";
    double frozen_field = 0.0;
    bool have_frozen = false;
    std::vector<int> levels;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", scenario, "preset: suspended, gfet, custom");
        cmd->add_option("--config", config_path, "key=value overrides")->check(CLI::ExistingFile);
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--frozen-field", frozen_field, "frozen field in V/um")
            ->each([&](const std::string&) { have_frozen = true; });
    };

    CLI::App* run = app.add_subcommand("run", "run one scenario and export frames");
    add_common(run);

    CLI::App* conv = app.add_subcommand("converge", "mesh refinement study");
    add_common(conv);
    conv->add_option("--axis", axis, "refinement axis: x, eps, theta")
        ->check(CLI::IsMember({"x", "eps", "theta"}));
    conv->add_option("--levels", levels, "mesh sizes, each double the previous");

    CLI::App* dump = app.add_subcommand("dump-tables", "write scattering tables as CSV");
    add_common(dump);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const bte::RunConfig cfg = resolve_config(scenario, config_path, frozen_field, have_frozen);
            const bte::RunResult res = bte::run_scenario(cfg);
            bte::export_run(res, out_dir);
            std::cout << "steps " << res.steps << ", final steady metric "
                      << res.final_steady_metric() << ", outputs in " << out_dir << "\n";
        } else if (conv->parsed()) {
            bte::RunConfig cfg = resolve_config(scenario, config_path, frozen_field, have_frozen);
            const bte::Axis ax = axis == "x" ? bte::Axis::x
                                             : (axis == "eps" ? bte::Axis::eps : bte::Axis::theta);
            if (levels.empty()) {
                if (ax == bte::Axis::x) { levels = {40, 80, 160}; cfg.N_eps = 80; cfg.N_th = 32; }
                else if (ax == bte::Axis::eps) { levels = {40, 80, 160}; cfg.N_x = 40; cfg.N_th = 32; }
                else { levels = {32, 64, 128}; cfg.N_x = 40; cfg.N_eps = 40; }
            }
            const bte::ConvergenceReport rep = bte::convergence_study(cfg, ax, levels);
            bte::export_report(rep, out_dir);
            std::cout << "L1 slopes: n " << rep.slope[0].l1 << ", V_x " << rep.slope[1].l1
                      << ", E " << rep.slope[2].l1 << "; report in " << out_dir << "\n";
        } else if (dump->parsed()) {
            const bte::RunConfig cfg = resolve_config(scenario, config_path, frozen_field, have_frozen);
            const bte::PolarMesh pm = bte::build_polar_mesh(cfg.eps_max, cfg.N_eps, cfg.N_th);
            const bte::ScatteringTable tab =
                bte::build_scattering_table(pm, cfg.physics, cfg.substrate);
            std::filesystem::create_directories(out_dir);
            std::ofstream rad(std::filesystem::path(out_dir) / "tables_radial.csv");
            std::ofstream imp(std::filesystem::path(out_dir) / "tables_impurity.csv");
            bte::dump_table(tab, rad, imp);
            std::cout << "tables in " << out_dir << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
