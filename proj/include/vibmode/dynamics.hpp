#pragma once

// Observables over Ermakov trajectories: quantum uncertainties, mean energy,
// local/normal polyad expectations, the time-dependent locality parameter
// zeta(t), and stationary energy-correlation sweeps over the bond angle.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "vibmode/algebra.hpp"
#include "vibmode/constants.hpp"
#include "vibmode/ermakov.hpp"
#include "vibmode/errors.hpp"
#include "vibmode/molecule.hpp"

namespace vibmode {

struct ModeOccupation {
    int n_g = 0;
    int n_u = 0;
};

struct Uncertainties {
    double sigma2_S = 0.0;  // A^2 (in the mass-weighted internal scale)
    double sigma2_P = 0.0;
    double sigma_SP = 0.0;
};

// sigma2_S = (hbar/2) alpha^2 (2n+1); sigma2_P = (hbar/2)[(alpha_dot/G)^2 +
// 1/alpha^2](2n+1); sigma_SP = (hbar/2)(alpha_dot alpha / G)(2n+1).
// These satisfy sigma2_S*sigma2_P - sigma_SP^2 = (hbar/2)^2 (2n+1)^2
// identically in (alpha, alpha_dot).
inline Uncertainties uncertainties(const ErmakovState& st, double G, int n) {
    const double f = 0.5 * constants::hbar * (2.0 * n + 1.0);
    const double r = st.alpha_dot / G;
    return {f * st.alpha * st.alpha,
            f * (r * r + 1.0 / (st.alpha * st.alpha)),
            f * r * st.alpha};
}

inline void check_aligned(const ErmakovTrajectory& a,
                          const ErmakovTrajectory& b) {
    if (a.times.size() != b.times.size())
        throw MisalignedSeries("trajectories have different sample counts");
    for (std::size_t i = 0; i < a.times.size(); ++i)
        if (a.times[i] != b.times[i])
            throw MisalignedSeries("trajectory time grids differ at index " +
                                   std::to_string(i));
}

// Energy carried per half quantum of one mode:
// e(t) = (hbar/4)[alpha_dot^2/G + G/alpha^2 + F alpha^2], so that
// <H> = sum_modes (2n+1) e(t). Constant whenever G is frozen.
inline std::vector<double> mode_energy_series(const ErmakovTrajectory& traj) {
    std::vector<double> e(traj.times.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        const ErmakovState& s = traj.states[i];
        const double G = traj.G_at_sample(i);
        e[i] = 0.25 * constants::hbar *
               (s.alpha_dot * s.alpha_dot / G + G / (s.alpha * s.alpha) +
                traj.potential * s.alpha * s.alpha);
    }
    return e;
}

// <H>(t) = sum_gamma [G(t)/2 sigma2_P + F/2 sigma2_S].
inline std::vector<double> mean_hamiltonian(const ModePair& trajs,
                                            const ModeOccupation& occ) {
    check_aligned(trajs.g, trajs.u);
    const std::vector<double> eg = mode_energy_series(trajs.g);
    const std::vector<double> eu = mode_energy_series(trajs.u);
    std::vector<double> h(eg.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        h[i] = (2.0 * occ.n_g + 1.0) * eg[i] + (2.0 * occ.n_u + 1.0) * eu[i];
    return h;
}

// <P_L>(t) = (1/2 hbar) sum_gamma [mu w_ref sigma2_S + sigma2_P/(mu w_ref)]
// - 1, the stationary local-polyad operator's expectation; equals n_1 + n_2
// at the initial time in the exact local limit and oscillates otherwise.
inline std::vector<double> local_polyad_mean(const ModePair& trajs,
                                             const ModeOccupation& occ,
                                             double mu, double omega_ref) {
    check_aligned(trajs.g, trajs.u);
    std::vector<double> p(trajs.g.times.size(), -1.0);
    const double mw = mu * omega_ref;
    const ErmakovTrajectory* ts[2] = {&trajs.g, &trajs.u};
    const int ns[2] = {occ.n_g, occ.n_u};
    for (int m = 0; m < 2; ++m) {
        const ErmakovTrajectory& tr = *ts[m];
        const double q = 0.25 * (2.0 * ns[m] + 1.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            const ErmakovState& s = tr.states[i];
            const double G = tr.G_at_sample(i);
            const double r = s.alpha_dot / G;
            p[i] += q * (mw * s.alpha * s.alpha +
                         (r * r + 1.0 / (s.alpha * s.alpha)) / mw);
        }
    }
    return p;
}

struct NormalPolyadSeries {
    // Expectation of the stationary normal-polyad operator (time-dependent).
    std::vector<double> stationary_op;
    // Expectation of the invariant-operator polyad: eta1 n_g + eta2 n_u,
    // constant by construction; coincides with stationary_op at the initial
    // time when the run starts from stationary data.
    double invariant = 0.0;
};

inline NormalPolyadSeries normal_polyad_mean(const ModePair& trajs,
                                             const ModeOccupation& occ,
                                             const ResonanceWeights& w,
                                             double alpha0_g, double alpha0_u) {
    check_aligned(trajs.g, trajs.u);
    NormalPolyadSeries out;
    out.invariant = w.eta1 * occ.n_g + w.eta2 * occ.n_u;
    out.stationary_op.assign(trajs.g.times.size(),
                             -0.5 * (w.eta1 + w.eta2));
    const ErmakovTrajectory* ts[2] = {&trajs.g, &trajs.u};
    const int ns[2] = {occ.n_g, occ.n_u};
    const double etas[2] = {static_cast<double>(w.eta1),
                            static_cast<double>(w.eta2)};
    const double a0s[2] = {alpha0_g, alpha0_u};
    for (int m = 0; m < 2; ++m) {
        const ErmakovTrajectory& tr = *ts[m];
        const double q = 0.25 * etas[m] * (2.0 * ns[m] + 1.0);
        const double a0 = a0s[m];
        for (std::size_t i = 0; i < out.stationary_op.size(); ++i) {
            const ErmakovState& s = tr.states[i];
            const double G = tr.G_at_sample(i);
            const double r = s.alpha_dot / G;
            out.stationary_op[i] +=
                q * (a0 * a0 * (r * r + 1.0 / (s.alpha * s.alpha)) +
                     s.alpha * s.alpha / (a0 * a0));
        }
    }
    return out;
}

// Convenience overload: stationary alpha0 taken from the trajectory starts
// (valid when the run began from stationary initial data).
inline NormalPolyadSeries normal_polyad_mean(const ModePair& trajs,
                                             const ModeOccupation& occ,
                                             const ResonanceWeights& w = {}) {
    return normal_polyad_mean(trajs, occ, w, trajs.g.states.front().alpha,
                              trajs.u.states.front().alpha);
}

struct ZetaSeries {
    std::vector<double> times;
    std::vector<double> zeta;
    // Degeneracy measure dE/Ebar at each sample (the arctan argument).
    std::vector<double> gap_ratio;
};

// zeta(t) from ground-referenced fundamental energies: E_nu_gamma(t) =
// <H>_(gamma fundamental)(t) - <H>_(0,0)(t); zeta = (2/pi) atan(dE/Ebar).
inline ZetaSeries zeta_series(const ModePair& trajs) {
    const std::vector<double> e00 = mean_hamiltonian(trajs, {0, 0});
    const std::vector<double> e10 = mean_hamiltonian(trajs, {1, 0});
    const std::vector<double> e01 = mean_hamiltonian(trajs, {0, 1});
    ZetaSeries out;
    out.times = trajs.g.times;
    out.zeta.resize(e00.size());
    out.gap_ratio.resize(e00.size());
    for (std::size_t i = 0; i < e00.size(); ++i) {
        const double fg = e10[i] - e00[i];
        const double fu = e01[i] - e00[i];
        const double de = std::abs(fg - fu);
        const double eb = 0.5 * (fg + fu);
        out.gap_ratio[i] = de / eb;
        out.zeta[i] = (2.0 / constants::pi) * std::atan(de / eb);
    }
    return out;
}

inline ZetaSeries zeta_t(const MoleculeSpec& spec, const AngleSchedule& sched,
                         const SolverConfig& cfg, double t_start,
                         double t_end) {
    return zeta_series(integrate(spec, sched, cfg, t_start, t_end));
}

struct CorrelationTable {
    std::vector<double> theta_deg;
    std::vector<ModeOccupation> states;
    // energies[i][j]: stationary energy of states[j] at theta_deg[i].
    std::vector<std::vector<double>> energies;
};

// Stationary energies E(n_g, n_u; theta) = hbar w_g(theta)(n_g + 1/2) +
// hbar w_u(theta)(n_u + 1/2) over an angle grid (potential constants stay
// at their initial values; only the kinetic elements follow theta).
inline CorrelationTable energy_correlation(
    const MoleculeSpec& spec, const std::vector<double>& theta_grid,
    const std::vector<ModeOccupation>& states) {
    CorrelationTable tab;
    tab.theta_deg = theta_grid;
    tab.states = states;
    tab.energies.reserve(theta_grid.size());
    for (double th : theta_grid) {
        const auto [wg, wu] = normal_frequencies(spec, th);
        std::vector<double> row;
        row.reserve(states.size());
        for (const ModeOccupation& occ : states)
            row.push_back(constants::hbar *
                          (wg * (occ.n_g + 0.5) + wu * (occ.n_u + 0.5)));
        tab.energies.push_back(std::move(row));
    }
    return tab;
}

// Relative drift of the uncertainty-product identity along a trajectory;
// n-independent, so evaluated in per-(2n+1) form.
inline double uncertainty_product_drift(const ErmakovTrajectory& traj) {
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const Uncertainties u =
            uncertainties(traj.states[i], traj.G_at_sample(i), 0);
        const double ref = 0.25 * constants::hbar * constants::hbar;
        const double dev =
            std::abs(u.sigma2_S * u.sigma2_P - u.sigma_SP * u.sigma_SP - ref) /
            ref;
        worst = std::max(worst, dev);
    }
    return worst;
}

}  // namespace vibmode
