#pragma once

#include <string>
#include <vector>

namespace bte {

// Material and scattering parameters. Fields are stored in the units they are
// usually quoted in; the *_i() accessors convert once to internal units
// (eV, nm, ps). Defaults are the standard monolayer set.
struct PhysicalParams {
    double v_F_cm_s = 1.0e8;
    double sigma_m_g_cm2 = 7.6e-8;
    double hw_O_eV = 0.1646;
    double hw_K_eV = 0.124;
    double v_p_cm_s = 2.0e6;
    double D_ac_eV = 6.8;
    double D_O_eV_cm = 1.0e9;
    double D_K_eV_cm = 3.5e8;
    double hw_Osub_eV = 0.055;
    double D_Osub_eV_cm = 5.14e7;
    double n_i_cm2 = 2.5e11;       // impurity sheet density
    double kappa_top = 3.9;
    double kappa_bottom = 3.9;
    double d_imp_nm = 1.0;         // impurity plane distance
    double T_K = 300.0;
    double eps_F_screen_eV = 0.25; // Fermi level entering the RPA screening
    bool kF_from_density = false;  // low-eps_F fallback switch, inert by default

    void validate() const;

    double v_F() const;        // nm/ps
    double hbar_vF() const;    // eV nm
    double sigma_m() const;    // eV ps^2 / nm^4
    double v_p() const;        // nm/ps
    double D_O() const;        // eV/nm
    double D_K() const;        // eV/nm
    double D_Osub() const;     // eV/nm
    double n_imp() const;      // 1/nm^2
    double kT() const;         // eV
    double kappa_bar() const;  // (top+bottom)/2

    // Thomas-Fermi screening inputs. n_2d only matters when the density
    // fallback is enabled and |eps_F| < 0.04 eV.
    double k_F(double n_2d = 0.0) const;  // 1/nm
    double q_s(double n_2d = 0.0) const;  // 1/nm
};

enum class Band : int { conduction = +1, valence = -1 };
inline int sign(Band s) { return static_cast<int>(s); }

double fermi_dirac(double eps, double eps_F, Band s, double T);
double bose_einstein(double hw, double T);

// Equilibrium sheet density at the given Fermi level, 1/nm^2.
double equilibrium_density(double eps_F, const PhysicalParams& p);

// Static RPA dielectric function; q in 1/nm. Continuous across q = 2 k_F.
// n_2d feeds the low-Fermi-level screening fallback when it is enabled.
double rpa_dielectric(double q, const PhysicalParams& p, double n_2d = 0.0);

// q * eps(q), finite as q -> 0 (limit q_s). Used where the bare 1/q of the
// Coulomb potential must cancel against the screening.
double rpa_q_eps(double q, const PhysicalParams& p, double n_2d = 0.0);

// |V_i(q,d)/eps(q)|^2 in (eV nm^2)^2.
double impurity_potential(double q, double d, const PhysicalParams& p, double n_2d = 0.0);

// One scattering channel in the D + E cos(theta-theta') family.
// prefactor carries the full |G|^2 magnitude (and, for the elastic acoustic
// channel, the lumped 2 n_q factor) in eV nm^2 / ps; D_shape/E_shape are the
// dimensionless angular weights.
struct MechanismSpec {
    std::string id;
    double hw = 0.0;         // eV, 0 for elastic
    double prefactor = 0.0;  // eV nm^2 / ps
    double D_shape = 1.0;
    double E_shape = 0.0;
    bool interband = false;
    bool substrate_only = false;
};

std::vector<MechanismSpec> phonon_mechanisms(const PhysicalParams& p, bool substrate_on);

} // namespace bte
