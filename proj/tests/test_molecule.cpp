#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "vibmode/ermakov.hpp"
#include "vibmode/molecule.hpp"

using namespace vibmode;

TEST_CASE("builtin catalogue") {
    CHECK(builtin_table().size() == 4);
    CHECK(find_builtin("H2O") != nullptr);
    CHECK(find_builtin("CO2") != nullptr);
    CHECK(find_builtin("NO2") != nullptr);
    CHECK(find_builtin("O3") != nullptr);
    CHECK(find_builtin("XY2") == nullptr);
}

TEST_CASE("kinetic matrix elements") {
    // g_rr = 1/m_terminal + 1/m_central is angle independent; the coupling
    // element is cos(theta)/m_central.
    const GMatrixElements g = g_matrix(1.0, 16.0, 104.5);
    CHECK(g.g_rr == Catch::Approx(1.0625).epsilon(1e-15));
    CHECK(g.g_rrp ==
          Catch::Approx(std::cos(deg_to_rad(104.5)) / 16.0).epsilon(1e-15));
    const GMatrixElements g180 = g_matrix(1.0, 16.0, 180.0);
    CHECK(g180.g_rr == Catch::Approx(1.0625).epsilon(1e-15));
    CHECK(g180.g_rrp == Catch::Approx(-1.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("mode constants at the initial geometry match frozen references") {
    const MoleculeSpec& h2o = find_builtin("H2O")->spec;
    {
        const GMatrixElements g = g_matrix(h2o.m_terminal, h2o.m_central,
                                           h2o.theta0);
        const double G_g = g.g_rr + g.g_rrp;
        const double G_u = g.g_rr - g.g_rrp;
        const double F_g = h2o.f_rr + h2o.f_rrp;
        const double F_u = h2o.f_rr - h2o.f_rrp;
        CHECK(G_g == Catch::Approx(1.04685124975).epsilon(1e-9));
        CHECK(F_g == Catch::Approx(0.477917090879).epsilon(1e-9));
        CHECK(initial_conditions(G_g, F_g).alpha ==
              Catch::Approx(1.21655879717).epsilon(1e-9));
        CHECK(G_u == Catch::Approx(1.07814875025).epsilon(1e-9));
        CHECK(F_u == Catch::Approx(0.496826612872).epsilon(1e-9));
        CHECK(initial_conditions(G_u, F_u).alpha ==
              Catch::Approx(1.2137198596).epsilon(1e-9));
        const auto [wg, wu] = normal_frequencies(h2o, h2o.theta0);
        CHECK(wg == Catch::Approx(0.707324609965).epsilon(1e-9));
        CHECK(wu == Catch::Approx(0.731883181772).epsilon(1e-9));
        // Model fundamentals in wavenumbers.
        CHECK(internal_energy_to_wavenumber(constants::hbar * wg) ==
              Catch::Approx(3755.0714).epsilon(1e-6));
        CHECK(internal_energy_to_wavenumber(constants::hbar * wu) ==
              Catch::Approx(3885.4489).epsilon(1e-6));
    }
    const MoleculeSpec& co2 = find_builtin("CO2")->spec;
    {
        const GMatrixElements g = g_matrix(co2.m_terminal, co2.m_central,
                                           co2.theta0);
        CHECK(g.g_rr + g.g_rrp == Catch::Approx(0.0625195373554).epsilon(1e-9));
        CHECK(co2.f_rr + co2.f_rrp == Catch::Approx(1.03592865389).epsilon(1e-9));
        CHECK(g.g_rr - g.g_rrp == Catch::Approx(0.229186204022).epsilon(1e-9));
        CHECK(co2.f_rr - co2.f_rrp == Catch::Approx(0.887543105516).epsilon(1e-9));
        const auto [wg, wu] = normal_frequencies(co2, co2.theta0);
        CHECK(wg == Catch::Approx(0.254491218266).epsilon(1e-9));
        CHECK(wu == Catch::Approx(0.451012899216).epsilon(1e-9));
    }
}

TEST_CASE("frequencies factorize through the coupling ratios") {
    // omega_gamma = omega0 sqrt((1 +/- x_f)(1 +/- x_g)) must agree with the
    // direct sqrt(G_gamma F_gamma) route at any angle.
    const MoleculeSpec& m = find_builtin("O3")->spec;
    for (double th : {116.8, 130.0, 150.0, 180.0}) {
        const GMatrixElements g = g_matrix(m.m_terminal, m.m_central, th);
        const auto [wg, wu] = normal_frequencies(m, th);
        CHECK(wg == Catch::Approx(std::sqrt((g.g_rr + g.g_rrp) *
                                            (m.f_rr + m.f_rrp)))
                        .epsilon(1e-14));
        CHECK(wu == Catch::Approx(std::sqrt((g.g_rr - g.g_rrp) *
                                            (m.f_rr - m.f_rrp)))
                        .epsilon(1e-14));
    }
}

TEST_CASE("ingestion validation rejects unphysical parameters") {
    CHECK_THROWS_AS(make_molecule("bad", -1.0, 12.0, 15.97, 1.2, 180, 104.5),
                    ConfigError);
    CHECK_THROWS_AS(make_molecule("bad", 16.0, 12.0, -15.97, 1.2, 180, 104.5),
                    ConfigError);
    // Coupling cannot reach or exceed the diagonal force constant.
    CHECK_THROWS_AS(make_molecule("bad", 16.0, 12.0, 1.0, 1.0, 180, 104.5),
                    ConfigError);
    CHECK_THROWS_AS(make_molecule("bad", 16.0, 12.0, 15.97, 1.2, 0.0, 104.5),
                    ConfigError);
    CHECK_THROWS_AS(make_molecule("bad", 16.0, 12.0, 15.97, 1.2, 180, 190.0),
                    ConfigError);
}

TEST_CASE("degenerate-frequency guard") {
    // Valid molecules always have |x_f|, |x_g| < 1; a hand-built spec that
    // violates the bound must be rejected by the frequency evaluation.
    MoleculeSpec m = find_builtin("H2O")->spec;
    m.f_rrp = 1.5 * m.f_rr;
    CHECK_THROWS_AS(normal_frequencies(m, 104.5), DegenerateFrequency);
}

TEST_CASE("stationary locality measure") {
    // Symmetric in the two fundamentals, zero at degeneracy, -> 2/pi * atan
    // of the gap over the mean.
    CHECK(zeta_stationary(1.0, 1.0) == 0.0);
    CHECK(zeta_stationary(1.0, 1.1) ==
          Catch::Approx(zeta_stationary(1.1, 1.0)).epsilon(1e-15));
    CHECK(zeta_stationary(1.0, 3.0) ==
          Catch::Approx((2.0 / constants::pi) * std::atan(1.0)).epsilon(1e-15));
}
