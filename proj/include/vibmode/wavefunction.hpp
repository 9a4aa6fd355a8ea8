#pragma once

// Exact time-dependent Fock wavefunctions reconstructed from (alpha,
// alpha_dot, phi), plus quadrature checks: norm, overlap, variances, and a
// finite-difference residual of the time-dependent Schrodinger equation.

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "vibmode/constants.hpp"
#include "vibmode/dynamics.hpp"
#include "vibmode/ermakov.hpp"
#include "vibmode/errors.hpp"

namespace vibmode {

struct WavefunctionGrid {
    std::vector<double> coordinate;           // symmetry coordinate S
    std::vector<std::complex<double>> values;  // psi_n(S, t)
    double time = 0.0;
    char mode = 'g';
    int n = 0;
};

// Width of |psi_n|^2: sigma_S(n) = sqrt((hbar/2)(2n+1)) * alpha.
inline double sigma_S(const ErmakovState& st, int n) {
    return std::sqrt(0.5 * constants::hbar * (2.0 * n + 1.0)) * st.alpha;
}

// Uniform symmetric grid of npts points spanning +/- halfwidth_sigmas
// standard deviations of the target state.
inline std::vector<double> default_grid(const ErmakovState& st, int n,
                                        std::size_t npts = 4096,
                                        double halfwidth_sigmas = 10.0) {
    const double half = halfwidth_sigmas * sigma_S(st, n);
    std::vector<double> S(npts);
    for (std::size_t i = 0; i < npts; ++i)
        S[i] = -half + 2.0 * half * static_cast<double>(i) /
                           static_cast<double>(npts - 1);
    return S;
}

// psi_n(S, t) = htilde_n(S/(sqrt(hbar) alpha)) / sqrt(sqrt(hbar) alpha)
//             * exp(i alpha_dot S^2 / (2 hbar G alpha))
//             * exp(-i (n + 1/2) phi),
// with htilde_n the orthonormal Hermite functions (Gaussian folded in via
// the stable recurrence, overflow-free at any n).
inline WavefunctionGrid eval_psi(const ErmakovState& st, double G, int n,
                                 const std::vector<double>& grid) {
    const double sig = sigma_S(st, n);
    if (grid.size() < 2 || grid.back() - grid.front() < 6.0 * sig)
        throw GridTooNarrow("wavefunction grid narrower than 6 sigma_S");
    WavefunctionGrid out;
    out.coordinate = grid;
    out.values.resize(grid.size());
    out.n = n;

    const double root_h_alpha = std::sqrt(constants::hbar) * st.alpha;
    const double norm = 1.0 / std::sqrt(root_h_alpha);
    const double chirp_coef =
        st.alpha_dot / (2.0 * constants::hbar * G * st.alpha);
    const double inv_pi4 = std::pow(constants::pi, -0.25);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double S = grid[i];
        const double x = S / root_h_alpha;
        double hk = inv_pi4 * std::exp(-0.5 * x * x);  // htilde_0
        double hk_prev = 0.0;
        for (int k = 0; k < n; ++k) {
            const double hk_next =
                x * std::sqrt(2.0 / (k + 1.0)) * hk -
                std::sqrt(k / (k + 1.0)) * hk_prev;
            hk_prev = hk;
            hk = hk_next;
        }
        const double phase = chirp_coef * S * S - (n + 0.5) * st.phi;
        out.values[i] = norm * hk * std::polar(1.0, phase);
    }
    return out;
}

// Convenience evaluation at a recorded trajectory sample on the default grid.
inline WavefunctionGrid eval_psi(const ErmakovTrajectory& traj,
                                 std::size_t sample, int n,
                                 std::size_t npts = 4096) {
    WavefunctionGrid g = eval_psi(traj.states[sample],
                                  traj.G_at_sample(sample), n,
                                  default_grid(traj.states[sample], n, npts));
    g.time = traj.times[sample];
    g.mode = traj.mode;
    return g;
}

namespace detail {
template <class F>
std::complex<double> trapezoid(const std::vector<double>& x, const F& f) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        acc += 0.5 * (x[i + 1] - x[i]) * (f(i) + f(i + 1));
    return acc;
}
}  // namespace detail

inline std::complex<double> grid_overlap(const WavefunctionGrid& a,
                                         const WavefunctionGrid& b) {
    return detail::trapezoid(a.coordinate, [&](std::size_t i) {
        return std::conj(a.values[i]) * b.values[i];
    });
}

inline double grid_norm(const WavefunctionGrid& a) {
    return grid_overlap(a, a).real();
}

inline double grid_position_variance(const WavefunctionGrid& a) {
    return detail::trapezoid(a.coordinate, [&](std::size_t i) {
               const double s = a.coordinate[i];
               return std::complex<double>(s * s * std::norm(a.values[i]), 0.0);
           })
        .real();
}

// <P^2> = hbar^2 integral |dpsi/dS|^2 dS, with a 4th-order interior stencil
// (the quadratic chirp makes psi' stiff enough that a 2nd-order stencil
// saturates near 1e-5 relative error). The two outermost points on each
// side carry negligible amplitude and are skipped.
inline double grid_momentum_variance(const WavefunctionGrid& a) {
    const std::size_t n = a.coordinate.size();
    const double h = a.coordinate[1] - a.coordinate[0];
    std::vector<std::complex<double>> d(n, 0.0);
    for (std::size_t i = 2; i + 2 < n; ++i)
        d[i] = (-a.values[i + 2] + 8.0 * a.values[i + 1] -
                8.0 * a.values[i - 1] + a.values[i - 2]) /
               (12.0 * h);
    const double integral =
        detail::trapezoid(a.coordinate, [&](std::size_t i) {
            return std::complex<double>(std::norm(d[i]), 0.0);
        }).real();
    return constants::hbar * constants::hbar * integral;
}

// Relative residual || i hbar d_t psi - H psi || / || H psi || at one
// recorded sample, using the two neighboring samples for the time stencil
// and a 3-point Laplacian in S. The neighbors must be equispaced in time
// and share this sample's smooth schedule piece.
inline double schrodinger_residual_at(const ErmakovTrajectory& traj, int n,
                                      std::size_t sample, std::size_t npts) {
    if (sample == 0 || sample + 1 >= traj.times.size())
        throw Error("residual stencil needs interior sample");
    const double dtp = traj.times[sample + 1] - traj.times[sample];
    const double dtm = traj.times[sample] - traj.times[sample - 1];
    if (std::abs(dtp - dtm) > 1e-9 * std::max(dtp, dtm))
        throw MisalignedSeries("residual stencil needs equispaced samples");

    const std::vector<double> S =
        default_grid(traj.states[sample], n, npts);
    const double h = S[1] - S[0];
    const WavefunctionGrid pm =
        eval_psi(traj.states[sample - 1], traj.G_at_sample(sample - 1), n, S);
    const WavefunctionGrid pc =
        eval_psi(traj.states[sample], traj.G_at_sample(sample), n, S);
    const WavefunctionGrid pp =
        eval_psi(traj.states[sample + 1], traj.G_at_sample(sample + 1), n, S);

    const double G = traj.G_at_sample(sample);
    const double F = traj.potential;
    const std::complex<double> ih(0.0, constants::hbar);
    std::vector<std::complex<double>> resid(npts, 0.0), hpsi(npts, 0.0);
    for (std::size_t i = 1; i + 1 < npts; ++i) {
        const std::complex<double> lap =
            (pc.values[i + 1] - 2.0 * pc.values[i] + pc.values[i - 1]) /
            (h * h);
        hpsi[i] = -0.5 * constants::hbar * constants::hbar * G * lap +
                  0.5 * F * S[i] * S[i] * pc.values[i];
        const std::complex<double> dpsidt =
            (pp.values[i] - pm.values[i]) / (dtp + dtm);
        resid[i] = ih * dpsidt - hpsi[i];
    }
    const double rnorm =
        std::sqrt(detail::trapezoid(S, [&](std::size_t i) {
                      return std::complex<double>(std::norm(resid[i]), 0.0);
                  }).real());
    const double hnorm =
        std::sqrt(detail::trapezoid(S, [&](std::size_t i) {
                      return std::complex<double>(std::norm(hpsi[i]), 0.0);
                  }).real());
    return rnorm / hnorm;
}

// Max residual over up to nprobes interior samples, skipping samples whose
// stencil would straddle non-uniform spacing or a schedule discontinuity.
inline double schrodinger_residual(const ErmakovTrajectory& traj, int n,
                                   std::size_t npts = 4096,
                                   std::size_t nprobes = 8) {
    const std::size_t m = traj.times.size();
    if (m < 3) throw Error("residual needs at least three samples");
    double worst = 0.0;
    bool any = false;
    for (std::size_t p = 0; p < nprobes; ++p) {
        const std::size_t i =
            1 + p * (m - 3) / (nprobes > 1 ? nprobes - 1 : 1);
        const double dtp = traj.times[i + 1] - traj.times[i];
        const double dtm = traj.times[i] - traj.times[i - 1];
        if (std::abs(dtp - dtm) > 1e-9 * std::max(dtp, dtm)) continue;
        if (traj.problem.sched.kind == ScheduleKind::sudden &&
            traj.times[i - 1] < traj.problem.sched.t0 &&
            traj.times[i + 1] >= traj.problem.sched.t0)
            continue;
        worst = std::max(worst, schrodinger_residual_at(traj, n, i, npts));
        any = true;
    }
    if (!any) throw Error("no usable residual probe found");
    return worst;
}

}  // namespace vibmode
