#pragma once

// Internal unit system: mass in amu, length in Angstrom, time in fs.
// Energy unit is amu*A^2/fs^2, action unit amu*A^2/fs. CODATA 2018 seeds.

namespace vibmode {
namespace constants {

inline constexpr double amu_kg = 1.66053906660e-27;
inline constexpr double planck_js = 6.62607015e-34;     // exact
inline constexpr double c_m_per_s = 2.99792458e8;       // exact
inline constexpr double pi = 3.14159265358979323846;

inline constexpr double energy_unit_j = amu_kg * 1e10;  // 1 amu*A^2/fs^2 in J
inline constexpr double action_unit_js = amu_kg * 1e-5; // 1 amu*A^2/fs in J*s

inline constexpr double planck = planck_js / action_unit_js;
inline constexpr double hbar = planck / (2.0 * pi);
inline constexpr double c_angstrom_per_fs = c_m_per_s * 1e-5;

// Energy of one cm^-1 quantum: h*c*(1 cm^-1), with 1 cm^-1 = 1e-8 A^-1.
inline constexpr double internal_energy_per_wavenumber =
    planck * c_angstrom_per_fs * 1e-8;

inline constexpr double aj_per_internal_energy = energy_unit_j / 1e-18;

}  // namespace constants

struct PhysicalConstants {
    double hbar = constants::hbar;
    double planck = constants::planck;
    double c_angstrom_per_fs = constants::c_angstrom_per_fs;
    double aj_per_internal_energy = constants::aj_per_internal_energy;
    double wavenumber_per_internal_energy =
        1.0 / constants::internal_energy_per_wavenumber;
};

inline double aj_to_internal(double e_aj) {
    return e_aj / constants::aj_per_internal_energy;
}

inline double internal_to_aj(double e) {
    return e * constants::aj_per_internal_energy;
}

inline double wavenumber_to_internal(double e_cm) {
    return e_cm * constants::internal_energy_per_wavenumber;
}

inline double internal_energy_to_wavenumber(double e) {
    return e / constants::internal_energy_per_wavenumber;
}

inline double deg_to_rad(double deg) { return deg * constants::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / constants::pi; }

}  // namespace vibmode
