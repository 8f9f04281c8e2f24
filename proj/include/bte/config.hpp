#pragma once

#include <iosfwd>
#include <string>

#include "bte/physics.hpp"

namespace bte {

enum class FieldMode { frozen, coupled };

// Resolved run parameters. Presets fill everything; a config file and CLI
// flags override individual keys.
struct RunConfig {
    std::string scenario = "suspended";

    // geometry (nm)
    double L = 100.0;
    double H = 21.0;
    double x2 = 25.0, x3 = 75.0;
    double y2 = 10.0, y3 = 11.0;
    double y_gr = 10.5;
    double t_gr = 1.0;

    // meshes
    int N_x = 80;
    int N_eps = 100;
    int N_th = 32;
    int N_y = 22;
    double eps_max = 1.2; // eV

    PhysicalParams physics;
    bool substrate = false;

    FieldMode field_mode = FieldMode::frozen;
    double E_frozen_V_um = 1.0;

    double V_b = 0.1;
    double V_G_up = 0.4;
    double V_G_down = 0.4;
    double eps_gr = 3.3;
    double eps_ox = 3.6;
    double n_dope_um2 = 2.5e3; // interface charge sheet, 1/um^2

    double eps_F_contact = 0.25; // eV (suspended Fermi level / e phi_W)

    double eta = 0.0;
    double cfl = 0.3;
    double t_end = 1.0;           // ps
    double frame_dt = 0.01;       // ps
    double init_eps_F = 0.0;      // eV; 0 is the intrinsic equilibrium start

    double frozen_field() const { return E_frozen_V_um * 1e-3; } // V/nm
    double n_dope() const { return n_dope_um2 * 1e-6; }          // 1/nm^2
};

RunConfig preset(const std::string& name);

// key = value lines grouped in [section] headers; '#' starts a comment.
void apply_config_file(RunConfig& cfg, const std::string& path);
void apply_config_text(RunConfig& cfg, const std::string& text);

// Full parameter echo, one key per line, doubles printed round-trip exact.
void write_meta(const RunConfig& cfg, std::ostream& out);

} // namespace bte
