#pragma once

// Triatomic A2B molecule parameters and stationary derived quantities:
// Wilson kinetic matrix elements, coupling ratios, normal frequencies,
// and the stationary locality parameter zeta.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "vibmode/constants.hpp"
#include "vibmode/errors.hpp"

namespace vibmode {

struct MoleculeSpec {
    std::string name;
    double m_terminal = 0.0;  // amu
    double m_central = 0.0;   // amu
    double f_rr = 0.0;        // amu/fs^2 (converted from aJ/A^2 on ingestion)
    double f_rrp = 0.0;       // amu/fs^2
    double f_rr_aj = 0.0;     // ingestion value, kept so config echoes
    double f_rrp_aj = 0.0;    // round-trip bitwise
    double theta0 = 0.0;      // degrees
    double thetaf = 0.0;      // degrees
    double e_nu1 = 0.0;       // observed fundamental, cm^-1; 0 if absent
    double e_nu3 = 0.0;       // observed fundamental, cm^-1; 0 if absent

    void validate() const {
        if (!(m_terminal > 0.0) || !(m_central > 0.0))
            throw ConfigError("molecule '" + name + "': masses must be positive");
        if (!(f_rr > 0.0))
            throw ConfigError("molecule '" + name + "': f_rr must be positive");
        if (!(std::abs(f_rrp) < f_rr))
            throw ConfigError("molecule '" + name + "': |f_rrp| must be < f_rr");
        if (!(theta0 > 0.0 && theta0 <= 180.0) || !(thetaf > 0.0 && thetaf <= 180.0))
            throw ConfigError("molecule '" + name + "': angles must lie in (0, 180]");
    }
};

struct GMatrixElements {
    double g_rr = 0.0;   // amu^-1
    double g_rrp = 0.0;  // amu^-1
};

struct CouplingRatios {
    double x_f = 0.0;
    double x_g = 0.0;
};

inline MoleculeSpec make_molecule(std::string name, double m_terminal,
                                  double m_central, double f_rr_aj,
                                  double f_rrp_aj, double theta0, double thetaf,
                                  double e_nu1 = 0.0, double e_nu3 = 0.0) {
    MoleculeSpec m;
    m.name = std::move(name);
    m.m_terminal = m_terminal;
    m.m_central = m_central;
    m.f_rr = aj_to_internal(f_rr_aj);
    m.f_rrp = aj_to_internal(f_rrp_aj);
    m.f_rr_aj = f_rr_aj;
    m.f_rrp_aj = f_rrp_aj;
    m.theta0 = theta0;
    m.thetaf = thetaf;
    m.e_nu1 = e_nu1;
    m.e_nu3 = e_nu3;
    m.validate();
    return m;
}

// Reference columns as tabulated (for regression reports); g in amu^-1.
struct TableReference {
    double g_rr, g_rrp, x_f, x_g, zeta;
};

struct BuiltinMolecule {
    MoleculeSpec spec;
    TableReference ref;
};

// Masses chosen so the computed g_rr reproduces the tabulated g columns.
inline const std::vector<BuiltinMolecule>& builtin_table() {
    static const std::vector<BuiltinMolecule> table = {
        {make_molecule("CO2", 15.995, 12.0, 15.97, 1.232, 180.0, 104.5,
                       1285.4, 2349.1),
         {0.1458, -0.083, 0.077, -0.571, 0.337}},
        {make_molecule("NO2", 15.995, 14.003, 10.91, 1.935, 134.3, 104.5,
                       1319.8, 1619.0),
         {0.1339, -0.050, 0.177, -0.373, 0.128}},
        {make_molecule("O3", 16.0, 16.0, 6.164, 1.603, 116.8, 180.0,
                       1104.3, 1038.7),
         {0.125, -0.028, 0.260, -0.225, 0.039}},
        {make_molecule("H2O", 1.0, 16.0, 8.093, -0.157, 104.5, 180.0,
                       3657.1, 3755.9),
         {1.063, -0.016, -0.019, -0.015, 0.017}},
    };
    return table;
}

inline const BuiltinMolecule* find_builtin(const std::string& name) {
    for (const auto& b : builtin_table())
        if (b.spec.name == name) return &b;
    return nullptr;
}

inline GMatrixElements g_matrix(double m_terminal, double m_central,
                                double theta_deg) {
    GMatrixElements g;
    g.g_rr = 1.0 / m_terminal + 1.0 / m_central;
    g.g_rrp = std::cos(deg_to_rad(theta_deg)) / m_central;
    return g;
}

inline CouplingRatios coupling_ratios(double f_rr, double f_rrp,
                                      const GMatrixElements& g) {
    return {f_rrp / f_rr, g.g_rrp / g.g_rr};
}

inline CouplingRatios coupling_ratios(const MoleculeSpec& m, double theta_deg) {
    return coupling_ratios(m.f_rr, m.f_rrp,
                           g_matrix(m.m_terminal, m.m_central, theta_deg));
}

// omega_g = omega0*sqrt((1+x_f)(1+x_g)), omega_u = omega0*sqrt((1-x_f)(1-x_g)),
// omega0 = sqrt(g_rr*f_rr). Throws when either radicand is non-positive.
inline std::pair<double, double> normal_frequencies(const MoleculeSpec& m,
                                                    double theta_deg) {
    const GMatrixElements g = g_matrix(m.m_terminal, m.m_central, theta_deg);
    const CouplingRatios x = coupling_ratios(m.f_rr, m.f_rrp, g);
    const double omega0 = std::sqrt(g.g_rr * m.f_rr);
    const double rad_g = (1.0 + x.x_f) * (1.0 + x.x_g);
    const double rad_u = (1.0 - x.x_f) * (1.0 - x.x_g);
    if (!(rad_g > 0.0) || !(rad_u > 0.0))
        throw DegenerateFrequency("non-positive frequency radicand at theta = " +
                                  std::to_string(theta_deg));
    return {omega0 * std::sqrt(rad_g), omega0 * std::sqrt(rad_u)};
}

// zeta = (2/pi) atan(dE/Ebar); dimensionless measure of locality.
inline double zeta_stationary(double e_low, double e_high) {
    const double de = std::abs(e_high - e_low);
    const double ebar = 0.5 * (e_high + e_low);
    return (2.0 / constants::pi) * std::atan(de / ebar);
}

}  // namespace vibmode
