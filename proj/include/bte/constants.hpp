#pragma once

// Internal unit system: energies in eV, lengths in nm, times in ps,
// potentials in V. With the elementary charge set to 1, a field in V/nm
// is numerically an energy gradient in eV/nm.
namespace bte::constants {

inline constexpr double hbar = 6.582119569e-4;      // eV ps
inline constexpr double k_B = 8.617333262e-5;       // eV/K
inline constexpr double coulomb = 1.439964548;      // e^2/(4 pi eps0), eV nm
inline constexpr double e_over_eps0 = 18.095128179727826; // V nm
inline constexpr double kg_to_internal = 6.241509074e24;  // eV ps^2 / nm^2 per kg

inline constexpr double cm_s_to_nm_ps = 1.0e-5;     // 1 cm/s = 1e7 nm / 1e12 ps
inline constexpr double eV_cm_to_eV_nm = 1.0e-7;
inline constexpr double per_cm2_to_per_nm2 = 1.0e-14;
inline constexpr double g_cm2_to_internal = 1.0e-3 * 1.0e-14 * kg_to_internal;

} // namespace bte::constants
