#include "bte/physics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bte/constants.hpp"

namespace bte {

namespace c = constants;
using std::numbers::pi;

void PhysicalParams::validate() const {
    auto pos = [](double v, const char* name) {
        if (!(v > 0.0))
            throw std::invalid_argument(std::string("physical parameter must be positive: ") + name);
    };
    pos(v_F_cm_s, "v_F");
    pos(sigma_m_g_cm2, "sigma_m");
    pos(hw_O_eV, "hw_O");
    pos(hw_K_eV, "hw_K");
    pos(v_p_cm_s, "v_p");
    pos(D_ac_eV, "D_ac");
    pos(D_O_eV_cm, "D_O");
    pos(D_K_eV_cm, "D_K");
    pos(hw_Osub_eV, "hw_Osub");
    pos(D_Osub_eV_cm, "D_Osub");
    pos(n_i_cm2, "n_i");
    pos(kappa_top, "kappa_top");
    pos(kappa_bottom, "kappa_bottom");
    pos(T_K, "T");
    if (d_imp_nm < 0.0)
        throw std::invalid_argument("impurity distance d must be nonnegative");
}

double PhysicalParams::v_F() const { return v_F_cm_s * c::cm_s_to_nm_ps; }
double PhysicalParams::hbar_vF() const { return c::hbar * v_F(); }
double PhysicalParams::sigma_m() const { return sigma_m_g_cm2 * c::g_cm2_to_internal; }
double PhysicalParams::v_p() const { return v_p_cm_s * c::cm_s_to_nm_ps; }
double PhysicalParams::D_O() const { return D_O_eV_cm * c::eV_cm_to_eV_nm; }
double PhysicalParams::D_K() const { return D_K_eV_cm * c::eV_cm_to_eV_nm; }
double PhysicalParams::D_Osub() const { return D_Osub_eV_cm * c::eV_cm_to_eV_nm; }
double PhysicalParams::n_imp() const { return n_i_cm2 * c::per_cm2_to_per_nm2; }
double PhysicalParams::kT() const { return c::k_B * T_K; }
double PhysicalParams::kappa_bar() const { return 0.5 * (kappa_top + kappa_bottom); }

double PhysicalParams::k_F(double n_2d) const {
    if (kF_from_density && std::abs(eps_F_screen_eV) < 0.04)
        return std::sqrt(4.0 * pi * n_2d / 4.0); // g_s = g_v = 2
    return std::abs(eps_F_screen_eV) / hbar_vF();
}

double PhysicalParams::q_s(double n_2d) const {
    // 4 e^2 k_F / (kappa_tilde hbar v_F), kappa_tilde = 4 pi eps0 kappa_bar
    return 4.0 * c::coulomb * k_F(n_2d) / (kappa_bar() * hbar_vF());
}

double fermi_dirac(double eps, double eps_F, Band s, double T) {
    const double x = (sign(s) * eps - eps_F) / (c::k_B * T);
    if (x > 0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

double bose_einstein(double hw, double T) {
    if (hw <= 0.0)
        throw std::domain_error("bose_einstein: phonon quantum must be positive");
    return 1.0 / std::expm1(hw / (c::k_B * T));
}

double equilibrium_density(double eps_F, const PhysicalParams& p) {
    // (1/pi) int k f_FD dk over the conduction band, k = eps/(hbar vF)
    const double hv = p.hbar_vF();
    const double kT = p.kT();
    const double cap = std::max(std::abs(eps_F), 0.0) + 30.0 * kT;
    const int N = 4000;
    const double h = cap / N;
    double acc = 0.0;
    for (int i = 0; i < N; ++i) {
        const double eps = (i + 0.5) * h;
        acc += eps * fermi_dirac(eps, eps_F, Band::conduction, p.T_K);
    }
    return acc * h / (pi * hv * hv);
}

double rpa_q_eps(double q, const PhysicalParams& p, double n_2d) {
    const double kF = p.k_F(n_2d);
    const double qs = p.q_s(n_2d);
    if (q < 2.0 * kF)
        return q + qs - pi * qs * q / (8.0 * kF);
    return q + qs - qs * std::sqrt(q * q - 4.0 * kF * kF) / (2.0 * q)
             - qs * q / (4.0 * kF) * std::asin(2.0 * kF / q);
}

double rpa_dielectric(double q, const PhysicalParams& p, double n_2d) {
    if (q <= 0.0)
        throw std::domain_error("rpa_dielectric: q must be positive");
    return rpa_q_eps(q, p, n_2d) / q;
}

double impurity_potential(double q, double d, const PhysicalParams& p, double n_2d) {
    if (q <= 0.0)
        throw std::domain_error("impurity_potential: q must be positive");
    // V_i = 2 pi e^2 exp(-d q)/(kappa_tilde q); the screened ratio uses q*eps(q).
    const double amp = 2.0 * pi * c::coulomb / p.kappa_bar() * std::exp(-d * q);
    const double v = amp / rpa_q_eps(q, p, n_2d);
    return v * v;
}

std::vector<MechanismSpec> phonon_mechanisms(const PhysicalParams& p, bool substrate_on) {
    std::vector<MechanismSpec> out;
    const double inv4pi2 = 1.0 / (4.0 * pi * pi);

    MechanismSpec ac;
    ac.id = "acoustic";
    ac.hw = 0.0;
    // elastic lumping 2 n_q |G|^2, matrix element proportional to 1 + cos
    ac.prefactor = inv4pi2 * pi * p.D_ac_eV * p.D_ac_eV * p.kT()
                   / (2.0 * c::hbar * p.sigma_m() * p.v_p() * p.v_p());
    ac.D_shape = 1.0;
    ac.E_shape = 1.0;
    ac.interband = false;
    out.push_back(ac);

    MechanismSpec opt;
    opt.id = "optical-LO+TO";
    opt.hw = p.hw_O_eV;
    opt.prefactor = 2.0 * inv4pi2 * pi * p.D_O() * p.D_O() / (p.sigma_m() * (p.hw_O_eV / c::hbar));
    opt.D_shape = 1.0;
    opt.E_shape = 0.0;
    opt.interband = true;
    out.push_back(opt);

    MechanismSpec kph;
    kph.id = "optical-K";
    kph.hw = p.hw_K_eV;
    kph.prefactor = inv4pi2 * 2.0 * pi * p.D_K() * p.D_K() / (p.sigma_m() * (p.hw_K_eV / c::hbar));
    kph.D_shape = 1.0;
    kph.E_shape = -1.0; // 1 - cos
    kph.interband = true;
    out.push_back(kph);

    if (substrate_on) {
        MechanismSpec sub;
        sub.id = "remote-oxide";
        sub.hw = p.hw_Osub_eV;
        sub.prefactor = 2.0 * inv4pi2 * pi * p.D_Osub() * p.D_Osub()
                        / (p.sigma_m() * (p.hw_Osub_eV / c::hbar));
        sub.D_shape = 1.0;
        sub.E_shape = 0.0;
        sub.interband = true;
        sub.substrate_only = true;
        out.push_back(sub);
    }
    return out;
}

} // namespace bte
