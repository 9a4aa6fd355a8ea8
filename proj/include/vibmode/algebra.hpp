#pragma once

// Stationary local <-> normal mode connection: r/s parameters, normal-mode
// spectroscopic parameters, polyad-relation coefficients, local-limit
// diagnostics, and the operator-map coefficients between stationary local
// bosons and invariant-mode operators.

#include <cmath>
#include <complex>

#include "vibmode/errors.hpp"
#include "vibmode/molecule.hpp"

namespace vibmode {

struct BogoliubovParams {
    double r = 1.0;
    double s = 1.0;
};

struct PolyadCoefficients {
    double zeta0 = 0.0;
    double beta0 = 1.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    double beta3 = 0.0;
};

struct ResonanceWeights {
    double eta1 = 1.0;
    double eta2 = 1.0;
};

// omega_nor/lambda_nor parametrize the normal-mode two-boson Hamiltonian;
// local_lambda/local_lambda_prime are the local-representation couplings.
struct NormalModeParams {
    double omega_nor = 0.0;        // fs^-1
    double lambda_nor = 0.0;       // fs^-1
    double local_lambda = 0.0;       // x_f + x_g
    double local_lambda_prime = 0.0; // x_f - x_g
};

struct LocalLimitDiagnostics {
    double taylor_err_omega = 0.0;
    double taylor_err_lambda = 0.0;
    double dev_beta0 = 0.0;
    double dev_zeta0 = 0.0;
};

struct MapCoefficients {
    std::complex<double> chi;
    std::complex<double> zeta_c;
};

// r = sqrt((1+x_f)/(1+x_g)), s = sqrt((1-x_f)/(1-x_g)); requires |x| < 1.
inline BogoliubovParams rs_params(const CouplingRatios& x) {
    return {std::sqrt((1.0 + x.x_f) / (1.0 + x.x_g)),
            std::sqrt((1.0 - x.x_f) / (1.0 - x.x_g))};
}

inline PolyadCoefficients polyad_coefficients(const BogoliubovParams& p,
                                              const ResonanceWeights& w) {
    const double r = p.r, s = p.s;
    const double e1 = static_cast<double>(w.eta1);
    const double e2 = static_cast<double>(w.eta2);
    const double pre = 1.0 / (8.0 * r * s);
    PolyadCoefficients c;
    c.zeta0 = 2.0 * pre * (e1 * s * (r - 1.0) * (r - 1.0) +
                           e2 * r * (s - 1.0) * (s - 1.0));
    c.beta0 = 2.0 * pre * (e1 * s * (r * r + 1.0) + e2 * r * (s * s + 1.0));
    c.beta1 = 2.0 * pre * (e1 * s * (r * r + 1.0) - e2 * r * (s * s + 1.0));
    c.beta2 = pre * (e1 * s * (r * r - 1.0) + e2 * r * (s * s - 1.0));
    c.beta3 = pre * (e1 * s * (r * r - 1.0) - e2 * r * (s * s - 1.0));
    return c;
}

// omega_nor = (omega_g + omega_u)/2 and lambda_nor = omega_g - omega_u,
// expressed through the coupling ratios.
inline NormalModeParams normal_mode_params(const CouplingRatios& x,
                                           double omega0) {
    const double wg = std::sqrt((1.0 + x.x_f) * (1.0 + x.x_g));
    const double wu = std::sqrt((1.0 - x.x_f) * (1.0 - x.x_g));
    NormalModeParams p;
    p.omega_nor = 0.5 * omega0 * (wg + wu);
    p.lambda_nor = omega0 * (wg - wu);
    p.local_lambda = x.x_f + x.x_g;
    p.local_lambda_prime = x.x_f - x.x_g;
    return p;
}

// Residuals of the small-coupling expansions and of the polyad-coefficient
// limit (beta0 -> 1, zeta0 -> 0 at unit weights); all vanish as x -> 0.
inline LocalLimitDiagnostics local_limit_diagnostics(const CouplingRatios& x) {
    const NormalModeParams p = normal_mode_params(x, 1.0);
    const double d = x.x_f - x.x_g;
    LocalLimitDiagnostics out;
    out.taylor_err_omega = std::abs(p.omega_nor - 1.0 + d * d / 8.0);
    out.taylor_err_lambda = std::abs(p.lambda_nor - (x.x_f + x.x_g));
    const PolyadCoefficients c = polyad_coefficients(rs_params(x), {1, 1});
    out.dev_beta0 = std::abs(c.beta0 - 1.0);
    out.dev_zeta0 = std::abs(c.zeta0);
    return out;
}

// chi = (alpha/2) e^{-i phi}; zeta_c = (e^{-i phi}/2i)(1/alpha + i alphadot/G).
// These satisfy -4 Im(conj(chi) * zeta_c) = 1 for any (alpha, alphadot, phi, G),
// the bosonic commutator normalization of the map.
inline MapCoefficients appendix_map_coeffs(double alpha, double alpha_dot,
                                           double phi, double G) {
    const std::complex<double> rot = std::polar(1.0, -phi);
    const std::complex<double> i1(0.0, 1.0);
    MapCoefficients m;
    m.chi = 0.5 * alpha * rot;
    m.zeta_c = rot / (2.0 * i1) * (1.0 / alpha + i1 * alpha_dot / G);
    return m;
}

}  // namespace vibmode
