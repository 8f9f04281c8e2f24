#include "bte/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bte {

RunConfig preset(const std::string& name) {
    RunConfig cfg;
    cfg.scenario = name;
    if (name == "suspended") {
        cfg.substrate = false;
        cfg.field_mode = FieldMode::frozen;
        cfg.E_frozen_V_um = 1.0;
        cfg.eps_F_contact = 0.25;
        cfg.t_end = 1.0;
    } else if (name == "gfet") {
        cfg.substrate = true;
        cfg.field_mode = FieldMode::coupled;
        cfg.V_b = 0.1;
        cfg.V_G_up = 0.4;
        cfg.V_G_down = 0.4;
        cfg.eps_F_contact = 0.25; // e phi_W for copper contacts
        cfg.t_end = 0.5;
    } else if (name == "custom") {
        // defaults as declared
    } else {
        throw std::invalid_argument("unknown scenario preset: " + name);
    }
    return cfg;
}

namespace {

using Setter = std::function<void(RunConfig&, const std::string&)>;

double to_double(const std::string& v) {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    while (pos < v.size() && std::isspace(static_cast<unsigned char>(v[pos]))) ++pos;
    if (pos != v.size()) throw std::invalid_argument("bad number: " + v);
    return x;
}

int to_int(const std::string& v) {
    const double x = to_double(v);
    const int i = static_cast<int>(x);
    if (i != x) throw std::invalid_argument("expected integer: " + v);
    return i;
}

bool to_bool(const std::string& v) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw std::invalid_argument("expected boolean: " + v);
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"scenario.name", [](RunConfig& c, const std::string& v) { c = preset(v); }},
        {"geometry.L_nm", [](RunConfig& c, const std::string& v) { c.L = to_double(v); }},
        {"geometry.H_nm", [](RunConfig& c, const std::string& v) { c.H = to_double(v); }},
        {"geometry.x2_nm", [](RunConfig& c, const std::string& v) { c.x2 = to_double(v); }},
        {"geometry.x3_nm", [](RunConfig& c, const std::string& v) { c.x3 = to_double(v); }},
        {"geometry.y2_nm", [](RunConfig& c, const std::string& v) { c.y2 = to_double(v); }},
        {"geometry.y3_nm", [](RunConfig& c, const std::string& v) { c.y3 = to_double(v); }},
        {"geometry.y_gr_nm", [](RunConfig& c, const std::string& v) { c.y_gr = to_double(v); }},
        {"geometry.t_gr_nm", [](RunConfig& c, const std::string& v) { c.t_gr = to_double(v); }},
        {"mesh.N_x", [](RunConfig& c, const std::string& v) { c.N_x = to_int(v); }},
        {"mesh.N_eps", [](RunConfig& c, const std::string& v) { c.N_eps = to_int(v); }},
        {"mesh.N_theta", [](RunConfig& c, const std::string& v) { c.N_th = to_int(v); }},
        {"mesh.N_y", [](RunConfig& c, const std::string& v) { c.N_y = to_int(v); }},
        {"mesh.eps_max_eV", [](RunConfig& c, const std::string& v) { c.eps_max = to_double(v); }},
        {"physics.v_F_cm_s", [](RunConfig& c, const std::string& v) { c.physics.v_F_cm_s = to_double(v); }},
        {"physics.sigma_m_g_cm2", [](RunConfig& c, const std::string& v) { c.physics.sigma_m_g_cm2 = to_double(v); }},
        {"physics.hbar_omega_O_eV", [](RunConfig& c, const std::string& v) { c.physics.hw_O_eV = to_double(v); }},
        {"physics.hbar_omega_K_eV", [](RunConfig& c, const std::string& v) { c.physics.hw_K_eV = to_double(v); }},
        {"physics.v_p_cm_s", [](RunConfig& c, const std::string& v) { c.physics.v_p_cm_s = to_double(v); }},
        {"physics.D_ac_eV", [](RunConfig& c, const std::string& v) { c.physics.D_ac_eV = to_double(v); }},
        {"physics.D_O_eV_cm", [](RunConfig& c, const std::string& v) { c.physics.D_O_eV_cm = to_double(v); }},
        {"physics.D_K_eV_cm", [](RunConfig& c, const std::string& v) { c.physics.D_K_eV_cm = to_double(v); }},
        {"physics.hbar_omega_Osub_eV", [](RunConfig& c, const std::string& v) { c.physics.hw_Osub_eV = to_double(v); }},
        {"physics.D_Osub_eV_cm", [](RunConfig& c, const std::string& v) { c.physics.D_Osub_eV_cm = to_double(v); }},
        {"physics.n_i_cm2", [](RunConfig& c, const std::string& v) { c.physics.n_i_cm2 = to_double(v); }},
        {"physics.kappa_top", [](RunConfig& c, const std::string& v) { c.physics.kappa_top = to_double(v); }},
        {"physics.kappa_bottom", [](RunConfig& c, const std::string& v) { c.physics.kappa_bottom = to_double(v); }},
        {"physics.d_imp_nm", [](RunConfig& c, const std::string& v) { c.physics.d_imp_nm = to_double(v); }},
        {"physics.T_K", [](RunConfig& c, const std::string& v) { c.physics.T_K = to_double(v); }},
        {"physics.eps_F_screen_eV", [](RunConfig& c, const std::string& v) { c.physics.eps_F_screen_eV = to_double(v); }},
        {"physics.kF_from_density", [](RunConfig& c, const std::string& v) { c.physics.kF_from_density = to_bool(v); }},
        {"physics.substrate", [](RunConfig& c, const std::string& v) { c.substrate = to_bool(v); }},
        {"field.mode", [](RunConfig& c, const std::string& v) {
             if (v == "frozen") c.field_mode = FieldMode::frozen;
             else if (v == "coupled") c.field_mode = FieldMode::coupled;
             else throw std::invalid_argument("field.mode must be frozen or coupled");
         }},
        {"field.E_frozen_V_um", [](RunConfig& c, const std::string& v) { c.E_frozen_V_um = to_double(v); }},
        {"voltages.V_b", [](RunConfig& c, const std::string& v) { c.V_b = to_double(v); }},
        {"voltages.V_G_up", [](RunConfig& c, const std::string& v) { c.V_G_up = to_double(v); }},
        {"voltages.V_G_down", [](RunConfig& c, const std::string& v) { c.V_G_down = to_double(v); }},
        {"poisson.eps_gr", [](RunConfig& c, const std::string& v) { c.eps_gr = to_double(v); }},
        {"poisson.eps_ox", [](RunConfig& c, const std::string& v) { c.eps_ox = to_double(v); }},
        {"poisson.n_dope_um2", [](RunConfig& c, const std::string& v) { c.n_dope_um2 = to_double(v); }},
        {"contacts.e_phi_W_eV", [](RunConfig& c, const std::string& v) { c.eps_F_contact = to_double(v); }},
        {"numerics.eta", [](RunConfig& c, const std::string& v) { c.eta = to_double(v); }},
        {"numerics.CFL", [](RunConfig& c, const std::string& v) { c.cfl = to_double(v); }},
        {"numerics.t_end_ps", [](RunConfig& c, const std::string& v) { c.t_end = to_double(v); }},
        {"numerics.init_eps_F_eV", [](RunConfig& c, const std::string& v) { c.init_eps_F = to_double(v); }},
        {"output.frame_dt_ps", [](RunConfig& c, const std::string& v) { c.frame_dt = to_double(v); }},
    };
    return table;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

void apply_config_text(RunConfig& cfg, const std::string& text) {
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = section + "." + trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key " + key);
        it->second(cfg, val);
    }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    apply_config_text(cfg, ss.str());
}

namespace {

std::string fmt(double v) {
    char buf[40];
    const auto res = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, res);
}

} // namespace

void write_meta(const RunConfig& c, std::ostream& out) {
    out << "scenario = " << c.scenario << "\n";
    out << "L_nm = " << fmt(c.L) << "\nH_nm = " << fmt(c.H) << "\n";
    out << "x2_nm = " << fmt(c.x2) << "\nx3_nm = " << fmt(c.x3) << "\n";
    out << "y2_nm = " << fmt(c.y2) << "\ny3_nm = " << fmt(c.y3) << "\n";
    out << "y_gr_nm = " << fmt(c.y_gr) << "\nt_gr_nm = " << fmt(c.t_gr) << "\n";
    out << "N_x = " << c.N_x << "\nN_eps = " << c.N_eps << "\nN_theta = " << c.N_th
        << "\nN_y = " << c.N_y << "\n";
    out << "eps_max_eV = " << fmt(c.eps_max) << "\n";
    out << "v_F_cm_s = " << fmt(c.physics.v_F_cm_s) << "\n";
    out << "sigma_m_g_cm2 = " << fmt(c.physics.sigma_m_g_cm2) << "\n";
    out << "hbar_omega_O_eV = " << fmt(c.physics.hw_O_eV) << "\n";
    out << "hbar_omega_K_eV = " << fmt(c.physics.hw_K_eV) << "\n";
    out << "v_p_cm_s = " << fmt(c.physics.v_p_cm_s) << "\n";
    out << "D_ac_eV = " << fmt(c.physics.D_ac_eV) << "\n";
    out << "D_O_eV_cm = " << fmt(c.physics.D_O_eV_cm) << "\n";
    out << "D_K_eV_cm = " << fmt(c.physics.D_K_eV_cm) << "\n";
    out << "hbar_omega_Osub_eV = " << fmt(c.physics.hw_Osub_eV) << "\n";
    out << "D_Osub_eV_cm = " << fmt(c.physics.D_Osub_eV_cm) << "\n";
    out << "n_i_cm2 = " << fmt(c.physics.n_i_cm2) << "\n";
    out << "kappa_top = " << fmt(c.physics.kappa_top) << "\n";
    out << "kappa_bottom = " << fmt(c.physics.kappa_bottom) << "\n";
    out << "d_imp_nm = " << fmt(c.physics.d_imp_nm) << "\n";
    out << "T_K = " << fmt(c.physics.T_K) << "\n";
    out << "eps_F_screen_eV = " << fmt(c.physics.eps_F_screen_eV) << "\n";
    out << "kF_from_density = " << (c.physics.kF_from_density ? "on" : "off") << "\n";
    out << "substrate = " << (c.substrate ? "on" : "off") << "\n";
    out << "field_mode = " << (c.field_mode == FieldMode::frozen ? "frozen" : "coupled") << "\n";
    out << "E_frozen_V_um = " << fmt(c.E_frozen_V_um) << "\n";
    out << "V_b = " << fmt(c.V_b) << "\nV_G_up = " << fmt(c.V_G_up)
        << "\nV_G_down = " << fmt(c.V_G_down) << "\n";
    out << "eps_gr = " << fmt(c.eps_gr) << "\neps_ox = " << fmt(c.eps_ox) << "\n";
    out << "n_dope_um2 = " << fmt(c.n_dope_um2) << "\n";
    out << "e_phi_W_eV = " << fmt(c.eps_F_contact) << "\n";
    out << "eta = " << fmt(c.eta) << "\nCFL = " << fmt(c.cfl) << "\n";
    out << "t_end_ps = " << fmt(c.t_end) << "\nframe_dt_ps = " << fmt(c.frame_dt) << "\n";
    out << "init_eps_F_eV = " << fmt(c.init_eps_F) << "\n";
}

} // namespace bte
