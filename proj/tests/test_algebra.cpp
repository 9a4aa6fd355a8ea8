#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "vibmode/algebra.hpp"
#include "vibmode/molecule.hpp"

using namespace vibmode;

TEST_CASE("mode-mixing parameters match frozen references") {
    const BogoliubovParams p = rs_params(CouplingRatios{-0.0194, -0.01505});
    CHECK(p.r == Catch::Approx(0.9977893225).epsilon(1e-9));
    CHECK(p.s == Catch::Approx(1.0021404608).epsilon(1e-9));
}

TEST_CASE("polyad coefficient identities") {
    // beta0 + beta1 = (eta1/2)(r + 1/r) and beta0 - beta1 = (eta2/2)(s + 1/s)
    // hold for any mixing parameters and any resonance weights.
    for (double xf : {-0.3, -0.02, 0.0, 0.15}) {
        for (double xg : {-0.45, -0.015, 0.1}) {
            const BogoliubovParams p = rs_params(CouplingRatios{xf, xg});
            for (const ResonanceWeights w :
                 {ResonanceWeights{1.0, 1.0}, ResonanceWeights{2.0, 1.0}}) {
                const PolyadCoefficients c = polyad_coefficients(p, w);
                CHECK(c.beta0 + c.beta1 ==
                      Catch::Approx(0.5 * w.eta1 * (p.r + 1.0 / p.r))
                          .epsilon(1e-13));
                CHECK(c.beta0 - c.beta1 ==
                      Catch::Approx(0.5 * w.eta2 * (p.s + 1.0 / p.s))
                          .epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("identity limit") {
    // x_f = x_g = 0 gives r = s = 1: the stationary polyad operator reduces
    // to the number operator (beta0 = (eta1+eta2)/2 ... with equal weights
    // beta0 = 1 and every other coefficient vanishes).
    const BogoliubovParams p = rs_params(CouplingRatios{0.0, 0.0});
    CHECK(p.r == 1.0);
    CHECK(p.s == 1.0);
    const PolyadCoefficients c = polyad_coefficients(p, ResonanceWeights{});
    CHECK(c.zeta0 == Catch::Approx(0.0).margin(1e-15));
    CHECK(c.beta0 == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(c.beta1 == Catch::Approx(0.0).margin(1e-15));
    CHECK(c.beta2 == Catch::Approx(0.0).margin(1e-15));
    CHECK(c.beta3 == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("local-limit deviations shrink quadratically with the coupling") {
    const CouplingRatios x1{-0.08, -0.06};
    const CouplingRatios x2{-0.04, -0.03};
    const LocalLimitDiagnostics d1 = local_limit_diagnostics(x1);
    const LocalLimitDiagnostics d2 = local_limit_diagnostics(x2);
    // Halving the couplings must shrink each deviation by about 4 (allow 3).
    CHECK(d2.dev_beta0 < d1.dev_beta0 / 3.0);
    CHECK(d2.dev_zeta0 < d1.dev_zeta0 / 3.0);
    // Taylor remainders of the normal-mode parameters are higher order
    // still.
    CHECK(d2.taylor_err_omega < d1.taylor_err_omega / 3.0);
    CHECK(d2.taylor_err_lambda < d1.taylor_err_lambda / 3.0);
}

TEST_CASE("normal-mode parameters") {
    const double omega0 = 0.7;
    const CouplingRatios x{-0.02, -0.015};
    const NormalModeParams nm = normal_mode_params(x, omega0);
    const double wg = omega0 * std::sqrt((1.0 + x.x_f) * (1.0 + x.x_g));
    const double wu = omega0 * std::sqrt((1.0 - x.x_f) * (1.0 - x.x_g));
    CHECK(nm.omega_nor == Catch::Approx(0.5 * (wg + wu)).epsilon(1e-14));
    CHECK(nm.lambda_nor == Catch::Approx(wg - wu).epsilon(1e-12));
    CHECK(nm.local_lambda == Catch::Approx(x.x_f + x.x_g).epsilon(1e-14));
    CHECK(nm.local_lambda_prime ==
          Catch::Approx(x.x_f - x.x_g).epsilon(1e-14));
    // Crossing condition: lambda changes sign exactly when x_f + x_g does.
    CHECK(normal_mode_params(CouplingRatios{0.02, -0.02}, omega0).local_lambda ==
          Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("mode-map coefficients satisfy the symplectic constraint") {
    // -4 Im(conj(chi) zeta_c) = 1 for every phase-space point: the map from
    // instantaneous ladder operators to invariant ones is canonical.
    for (double alpha : {0.5, 1.0, 1.3}) {
        for (double alpha_dot : {-0.4, 0.0, 0.25}) {
            for (double phi : {0.0, 1.1, 9.7}) {
                const MapCoefficients mc =
                    appendix_map_coeffs(alpha, alpha_dot, phi, 1.0625);
                const double sym =
                    -4.0 * std::imag(std::conj(mc.chi) * mc.zeta_c);
                CHECK(sym == Catch::Approx(1.0).epsilon(1e-13));
            }
        }
    }
}
