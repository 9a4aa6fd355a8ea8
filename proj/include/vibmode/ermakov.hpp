#pragma once

// Solves the nonlinear Ermakov equation per normal mode along an angle
// schedule,
//     alpha'' - (Gdot/G) alpha' + G F alpha = G^2 / alpha^3,
// jointly with the phase integral phi' = G / alpha^2, using an adaptive
// embedded Dormand-Prince 5(4) stepper that lands exactly on sample times
// and never steps across a schedule discontinuity. Also provides the
// constant-coefficient closed-form solution (independent oracle) and a
// companion linear-system cross-check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "vibmode/errors.hpp"
#include "vibmode/molecule.hpp"
#include "vibmode/schedule.hpp"

namespace vibmode {

struct ErmakovState {
    double alpha = 1.0;      // (fs/amu)^(1/2)
    double alpha_dot = 0.0;  // (fs/amu)^(1/2) fs^-1
    double phi = 0.0;        // radians
};

struct SolverConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 1.0;       // fs
    double output_stride = 0.1;  // fs

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol <= 1e-2) ||
            !(abs_tol > 0.0 && abs_tol <= 1e-2))
            throw ConfigError("solver tolerances must lie in (0, 1e-2]");
        if (!(max_step > 0.0)) throw ConfigError("max_step must be positive");
        if (!(output_stride > 0.0))
            throw ConfigError("output_stride must be positive");
    }
};

struct SolverStats {
    long long steps = 0;
    long long rejections = 0;
};

// Coefficient functions of one normal mode: G(t) = g_rr + sign*cos(theta)/m_c
// with sign = +1 (gerade) or -1 (ungerade), and the frozen potential F.
struct ModeProblem {
    double g_rr = 1.0;          // amu^-1
    double inv_m_central = 0.0; // amu^-1
    double sign = 1.0;
    double F = 1.0;             // amu fs^-2
    AngleSchedule sched;

    double G_of_theta(double theta_deg) const {
        return g_rr + sign * std::cos(deg_to_rad(theta_deg)) * inv_m_central;
    }
    double G_at(const SchedulePiece& p, double t) const {
        return G_of_theta(p.theta(t));
    }
    double Gdot_at(const SchedulePiece& p, double t) const {
        const double th = deg_to_rad(p.theta(t));
        const double thd = deg_to_rad(p.theta_rate(t));
        return -sign * std::sin(th) * thd * inv_m_central;
    }
};

struct ErmakovTrajectory {
    char mode = 'g';  // 'g' or 'u'
    std::vector<double> times;
    std::vector<ErmakovState> states;
    std::vector<KineticElements> kinetic;
    double potential = 1.0;  // frozen F for this mode
    ModeProblem problem;
    SolverConfig config;
    SolverStats stats;

    // G entering this mode's observables at sample i.
    double G_at_sample(std::size_t i) const {
        return mode == 'g' ? kinetic[i].G_gg : kinetic[i].G_uu;
    }
};

struct ModePair {
    ErmakovTrajectory g;
    ErmakovTrajectory u;
};

// alpha = (G0/F0)^(1/4), alpha_dot = 0, phi = 0: the stationary-state data
// for which the Ermakov right-hand side vanishes identically.
inline ErmakovState initial_conditions(double G0, double F0) {
    return {std::pow(G0 / F0, 0.25), 0.0, 0.0};
}

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double dp_c[7] = {0.0,       1.0 / 5,  3.0 / 10, 4.0 / 5,
                                   8.0 / 9,   1.0,      1.0};
inline constexpr double dp_a2[1] = {1.0 / 5};
inline constexpr double dp_a3[2] = {3.0 / 40, 9.0 / 40};
inline constexpr double dp_a4[3] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
inline constexpr double dp_a5[4] = {19372.0 / 6561, -25360.0 / 2187,
                                    64448.0 / 6561, -212.0 / 729};
inline constexpr double dp_a6[5] = {9017.0 / 3168, -355.0 / 33,
                                    46732.0 / 5247, 49.0 / 176,
                                    -5103.0 / 18656};
inline constexpr double dp_b[6] = {35.0 / 384,     0.0,        500.0 / 1113,
                                   125.0 / 192,    -2187.0 / 6784, 11.0 / 84};
inline constexpr double dp_e[7] = {71.0 / 57600,  0.0,
                                   -71.0 / 16695, 71.0 / 1920,
                                   -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

// Advances y from t through each stop in order, calling observe(stop, y)
// as each is reached exactly. Stops must be strictly monotone starting from
// t (either direction). validate(t, y) may throw to abort on bad states.
template <std::size_t N, class RHS, class Observe, class Validate>
void integrate_span(const RHS& rhs, std::array<double, N>& y, double& t,
                    const double* stops, std::size_t nstops,
                    const SolverConfig& cfg, SolverStats& stats,
                    const Observe& observe, const Validate& validate) {
    if (nstops == 0) return;
    const double dir = stops[nstops - 1] > t ? 1.0 : -1.0;
    using Vec = std::array<double, N>;
    Vec k[7], ytmp, ynew;
    rhs(t, y, k[0]);

    // Initial step size from the scaled magnitudes of y and f (standard
    // two-sample heuristic), refined by one explicit Euler probe.
    double h;
    {
        double d0 = 0.0, d1 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y[i]);
            d0 += (y[i] / sc) * (y[i] / sc);
            d1 += (k[0][i] / sc) * (k[0][i] / sc);
        }
        d0 = std::sqrt(d0 / N);
        d1 = std::sqrt(d1 / N);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, cfg.max_step);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + dir * h0 * k[0][i];
        Vec f1;
        rhs(t + dir * h0, ytmp, f1);
        double d2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y[i]);
            d2 += ((f1[i] - k[0][i]) / sc) * ((f1[i] - k[0][i]) / sc);
        }
        d2 = std::sqrt(d2 / N) / h0;
        const double dm = std::max(d1, d2);
        const double h1 =
            dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                        : std::pow(0.01 / dm, 0.2);
        h = std::min({100.0 * h0, h1, cfg.max_step});
    }

    for (std::size_t is = 0; is < nstops; ++is) {
        const double target = stops[is];
        while (dir * (target - t) > 0.0) {
            const double dist = std::abs(target - t);
            const bool hit = h >= dist;
            const double htry = hit ? dist : h;
            if (htry <= 1e-14 * std::max(1.0, std::abs(t)))
                throw StepSizeUnderflow(
                    "step size collapsed at t = " + std::to_string(t) + " fs");
            const double hs = dir * htry;

            for (std::size_t i = 0; i < N; ++i)
                ytmp[i] = y[i] + hs * dp_a2[0] * k[0][i];
            rhs(t + dp_c[1] * hs, ytmp, k[1]);
            for (std::size_t i = 0; i < N; ++i)
                ytmp[i] = y[i] + hs * (dp_a3[0] * k[0][i] + dp_a3[1] * k[1][i]);
            rhs(t + dp_c[2] * hs, ytmp, k[2]);
            for (std::size_t i = 0; i < N; ++i)
                ytmp[i] = y[i] + hs * (dp_a4[0] * k[0][i] + dp_a4[1] * k[1][i] +
                                       dp_a4[2] * k[2][i]);
            rhs(t + dp_c[3] * hs, ytmp, k[3]);
            for (std::size_t i = 0; i < N; ++i)
                ytmp[i] = y[i] + hs * (dp_a5[0] * k[0][i] + dp_a5[1] * k[1][i] +
                                       dp_a5[2] * k[2][i] + dp_a5[3] * k[3][i]);
            rhs(t + dp_c[4] * hs, ytmp, k[4]);
            for (std::size_t i = 0; i < N; ++i)
                ytmp[i] = y[i] + hs * (dp_a6[0] * k[0][i] + dp_a6[1] * k[1][i] +
                                       dp_a6[2] * k[2][i] + dp_a6[3] * k[3][i] +
                                       dp_a6[4] * k[4][i]);
            rhs(t + dp_c[5] * hs, ytmp, k[5]);
            for (std::size_t i = 0; i < N; ++i)
                ynew[i] = y[i] + hs * (dp_b[0] * k[0][i] + dp_b[2] * k[2][i] +
                                       dp_b[3] * k[3][i] + dp_b[4] * k[4][i] +
                                       dp_b[5] * k[5][i]);
            rhs(t + hs, ynew, k[6]);

            double err = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double e =
                    hs * (dp_e[0] * k[0][i] + dp_e[2] * k[2][i] +
                          dp_e[3] * k[3][i] + dp_e[4] * k[4][i] +
                          dp_e[5] * k[5][i] + dp_e[6] * k[6][i]);
                const double sc =
                    cfg.abs_tol +
                    cfg.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                err += (e / sc) * (e / sc);
            }
            err = std::sqrt(err / N);
            if (!std::isfinite(err)) {
                ++stats.rejections;
                h = 0.2 * htry;
                continue;
            }
            if (err > 1.0) {
                ++stats.rejections;
                h = htry * std::max(0.2, 0.9 * std::pow(err, -0.2));
                continue;
            }

            t = hit ? target : t + hs;
            y = ynew;
            k[0] = k[6];  // first-same-as-last
            ++stats.steps;
            validate(t, y);
            const double factor =
                err == 0.0 ? 5.0
                           : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            // A stop-clamped step says nothing about the natural step size,
            // so never let the clamp shrink h.
            const double proposed = htry * factor;
            h = std::min(cfg.max_step, hit ? std::max(h, proposed) : proposed);
        }
        observe(target, y);
    }
}

// Output sample times: a uniform stride grid from t_start toward t_end plus
// the schedule's interior discontinuities and the exact endpoint. The first
// entry is always t_start.
inline std::vector<double> sample_grid(double t_start, double t_end,
                                       double stride, const AngleSchedule& s) {
    const double dir = t_end >= t_start ? 1.0 : -1.0;
    const double span = std::abs(t_end - t_start);
    std::vector<double> grid;
    const auto n = static_cast<std::size_t>(span / stride);
    grid.reserve(n + 4);
    grid.push_back(t_start);
    for (std::size_t i = 1; i <= n; ++i) grid.push_back(t_start + dir * (static_cast<double>(i) * stride));
    if (std::abs(grid.back() - t_end) > 1e-12 * std::max(1.0, span))
        grid.push_back(t_end);
    else
        grid.back() = t_end;

    std::vector<double> cuts;
    if (s.kind == ScheduleKind::sudden) cuts = {s.t0};
    if (s.kind == ScheduleKind::linear) cuts = {s.t0, s.tf};
    const double lo = std::min(t_start, t_end), hi = std::max(t_start, t_end);
    for (double c : cuts) {
        if (c <= lo || c >= hi) continue;
        bool present = false;
        for (double gpt : grid)
            if (std::abs(gpt - c) <= 1e-9) { present = true; break; }
        if (!present) grid.push_back(c);
    }
    std::sort(grid.begin(), grid.end());
    if (dir < 0) std::reverse(grid.begin(), grid.end());
    return grid;
}

// Core driver shared by the schedule-driven and constant-coefficient entry
// points. snapshot(t) supplies the recorded kinetic elements.
template <class Snapshot>
ErmakovTrajectory integrate_path(char mode, const ModeProblem& problem,
                                 const Snapshot& snapshot,
                                 const ErmakovState& y0,
                                 const SolverConfig& cfg, double t_start,
                                 double t_end) {
    cfg.validate();
    ErmakovTrajectory traj;
    traj.mode = mode;
    traj.potential = problem.F;
    traj.problem = problem;
    traj.config = cfg;

    const std::vector<double> grid =
        sample_grid(t_start, t_end, cfg.output_stride, problem.sched);
    traj.times.reserve(grid.size());
    traj.states.reserve(grid.size());
    traj.kinetic.reserve(grid.size());

    auto record = [&](double t, const ErmakovState& st) {
        traj.times.push_back(t);
        traj.states.push_back(st);
        traj.kinetic.push_back(snapshot(t));
    };
    record(t_start, y0);
    if (t_start == t_end) return traj;

    const bool backward = t_end < t_start;
    std::vector<SchedulePiece> pieces = schedule_pieces(
        problem.sched, std::min(t_start, t_end), std::max(t_start, t_end));
    if (backward && pieces.size() > 1)
        throw Error("backward integration across a schedule discontinuity "
                    "is not defined");
    if (backward) std::reverse(pieces.begin(), pieces.end());

    std::array<double, 3> y = {y0.alpha, y0.alpha_dot, y0.phi};
    const double alpha_floor = 1e-6 * y0.alpha;
    double t = t_start;
    std::size_t ig = 1;  // grid[0] == t_start already recorded

    for (const SchedulePiece& piece : pieces) {
        const double piece_stop = backward ? piece.t_begin : piece.t_end;
        const std::size_t first = ig;
        while (ig < grid.size() &&
               (backward ? grid[ig] >= piece_stop : grid[ig] <= piece_stop))
            ++ig;
        const std::size_t nstops = ig - first;

        auto rhs = [&problem, &piece](double tt, const std::array<double, 3>& yy,
                                      std::array<double, 3>& dy) {
            const double g = problem.G_at(piece, tt);
            const double gd = problem.Gdot_at(piece, tt);
            const double a = yy[0];
            dy[0] = yy[1];
            dy[1] = (gd / g) * yy[1] - g * problem.F * a + g * g / (a * a * a);
            dy[2] = g / (a * a);
        };
        auto validate = [&](double tt, const std::array<double, 3>& yy) {
            if (!(std::isfinite(yy[0]) && std::isfinite(yy[1]) &&
                  std::isfinite(yy[2])))
                throw StepSizeUnderflow("non-finite state at t = " +
                                        std::to_string(tt) + " fs");
            if (!(yy[0] > alpha_floor))
                throw StepSizeUnderflow("alpha collapsed below guard at t = " +
                                        std::to_string(tt) + " fs");
            if (!(problem.G_at(piece, tt) > 0.0))
                throw NonPositiveKinetic("G(t) <= 0 at t = " +
                                         std::to_string(tt) + " fs");
        };
        auto observe = [&](double tt, const std::array<double, 3>& yy) {
            record(tt, {yy[0], yy[1], yy[2]});
        };
        if (nstops > 0)
            integrate_span<3>(rhs, y, t, grid.data() + first, nstops, cfg,
                              traj.stats, observe, validate);
        // Finish the piece exactly even when its end is not a sample, so the
        // next piece's coefficients take over at precisely the right time.
        if (t != piece_stop)
            integrate_span<3>(rhs, y, t, &piece_stop, 1, cfg, traj.stats,
                              [](double, const std::array<double, 3>&) {},
                              validate);
    }
    return traj;
}

}  // namespace detail

// Angle of the Hamiltonian the initial state is prepared in: the value of
// theta just before t_start, so a window starting exactly at a sudden jump
// still starts from the pre-jump stationary state.
inline double initial_theta(const AngleSchedule& s, double t_start) {
    if (s.kind == ScheduleKind::sudden && t_start <= s.t0) return s.theta0;
    return theta_at(s, t_start);
}

// Default window start: at the first schedule event, or well inside the
// saturated tail of the logistic profile.
inline double default_t_start(const AngleSchedule& s) {
    return s.kind == ScheduleKind::adiabatic ? -10.0 / s.k : s.t0;
}

// Integrates one normal mode ('g' or 'u'). If init is null, the trajectory
// starts from the stationary data of the pre-window Hamiltonian.
inline ErmakovTrajectory integrate_mode(const MoleculeSpec& spec,
                                        const AngleSchedule& sched,
                                        const SolverConfig& cfg, char mode,
                                        double t_start, double t_end,
                                        const ErmakovState* init = nullptr) {
    spec.validate();
    sched.validate();
    ModeProblem problem;
    problem.g_rr = 1.0 / spec.m_terminal + 1.0 / spec.m_central;
    problem.inv_m_central = 1.0 / spec.m_central;
    problem.sign = mode == 'g' ? 1.0 : -1.0;
    problem.F = spec.f_rr + problem.sign * spec.f_rrp;
    problem.sched = sched;

    ErmakovState y0;
    if (init) {
        y0 = *init;
    } else {
        const double G0 = problem.G_of_theta(initial_theta(sched, t_start));
        y0 = initial_conditions(G0, problem.F);
    }
    auto snapshot = [&spec, &sched](double t) {
        return kinetic_at(spec, sched, t);
    };
    return detail::integrate_path(mode, problem, snapshot, y0, cfg, t_start,
                                  t_end);
}

inline ModePair integrate(const MoleculeSpec& spec, const AngleSchedule& sched,
                          const SolverConfig& cfg, double t_start,
                          double t_end) {
    return {integrate_mode(spec, sched, cfg, 'g', t_start, t_end),
            integrate_mode(spec, sched, cfg, 'u', t_start, t_end)};
}

inline ModePair integrate(const MoleculeSpec& spec, const AngleSchedule& sched,
                          const SolverConfig& cfg, double t_end) {
    return integrate(spec, sched, cfg, default_t_start(sched), t_end);
}

// Constant-coefficient integration from arbitrary initial data (used by the
// closed-form cross-checks; exact constant G, no angle dependence).
inline ErmakovTrajectory integrate_constant(double G, double F,
                                            const ErmakovState& init,
                                            const SolverConfig& cfg,
                                            double t_start, double t_end) {
    if (!(G > 0.0)) throw NonPositiveKinetic("constant G must be positive");
    ModeProblem problem;
    problem.g_rr = G;
    problem.inv_m_central = 0.0;
    problem.sign = 1.0;
    problem.F = F;
    problem.sched.kind = ScheduleKind::adiabatic;
    problem.sched.theta0 = problem.sched.thetaf = 90.0;
    problem.sched.k = 1.0;
    auto snapshot = [G](double) {
        return KineticElements{G, G, 0.0, 0.0};
    };
    return detail::integrate_path('g', problem, snapshot, init, cfg, t_start,
                                  t_end);
}

// Closed-form Ermakov-Pinney solution for constant G, F from arbitrary
// initial data, evaluated a time t after the initial instant. Uses the
// complex linear solution z(t) = alpha e^{i phi}: the phase is unwrapped
// exactly because z advances by exactly pi per half-period of omega, and
// Im z >= 0 within each half-period.
inline ErmakovState pinney_closed_form(const ErmakovState& init, double G,
                                       double F, double t) {
    const double w = std::sqrt(G * F);
    const double c = init.alpha;
    const double v = init.alpha_dot;
    const double b = G / c;  // Im zdot(0)

    const double cwt = std::cos(w * t), swt = std::sin(w * t);
    const double zr = c * cwt + (v / w) * swt;
    const double zi = (b / w) * swt;
    const double alpha = std::hypot(zr, zi);
    const double zdr = -c * w * swt + v * cwt;
    const double zdi = b * cwt;
    const double alpha_dot = (zr * zdr + zi * zdi) / alpha;

    const double m = std::floor(w * t / constants::pi);
    const double tau = t - m * constants::pi / w;
    const double pr = c * std::cos(w * tau) + (v / w) * std::sin(w * tau);
    const double pi_ = std::max(0.0, (b / w) * std::sin(w * tau));
    const double phi = m * constants::pi + std::atan2(pi_, pr);
    return {alpha, alpha_dot, init.phi + phi};
}

struct CompanionCheck {
    // Max |W - 1| of the scaled Wronskian W = Im(conj(w) wdot)/G along an
    // independent integration of the equivalent linear system.
    double wronskian_drift = 0.0;
    // Max relative |w| vs alpha mismatch between the linear solution and the
    // recorded nonlinear trajectory.
    double amplitude_mismatch = 0.0;
};

// Re-integrates the equivalent linear system w'' - (Gdot/G) w' + G F w = 0
// per smooth schedule piece, seeded from the trajectory at each piece start
// (w = alpha e^{i phi}, w' = (alpha_dot + i G/alpha) e^{i phi}), and checks
// the conservation law W = Im(conj(w) w')/G = 1 at every recorded sample.
inline CompanionCheck companion_linear_check(const ErmakovTrajectory& traj) {
    CompanionCheck out;
    if (traj.times.size() < 2) return out;
    const double lo = std::min(traj.times.front(), traj.times.back());
    const double hi = std::max(traj.times.front(), traj.times.back());
    if (traj.times.back() < traj.times.front())
        throw Error("companion check expects a forward trajectory");
    const std::vector<SchedulePiece> pieces =
        schedule_pieces(traj.problem.sched, lo, hi);
    const ModeProblem& problem = traj.problem;

    std::size_t i = 0;
    for (const SchedulePiece& piece : pieces) {
        // Seed from the first sample inside this piece.
        while (i + 1 < traj.times.size() && traj.times[i] < piece.t_begin) ++i;
        if (i >= traj.times.size() || traj.times[i] > piece.t_end) continue;
        double t = traj.times[i];
        const ErmakovState& s0 = traj.states[i];
        const double G0 = problem.G_at(piece, t);
        const double cph = std::cos(s0.phi), sph = std::sin(s0.phi);
        // w = alpha e^{i phi}; wdot = (alpha_dot + i G/alpha) e^{i phi}
        std::array<double, 4> y = {
            s0.alpha * cph, s0.alpha * sph,
            s0.alpha_dot * cph - (G0 / s0.alpha) * sph,
            s0.alpha_dot * sph + (G0 / s0.alpha) * cph};

        auto rhs = [&problem, &piece](double tt, const std::array<double, 4>& yy,
                                      std::array<double, 4>& dy) {
            const double g = problem.G_at(piece, tt);
            const double gd = problem.Gdot_at(piece, tt);
            dy[0] = yy[2];
            dy[1] = yy[3];
            dy[2] = (gd / g) * yy[2] - g * problem.F * yy[0];
            dy[3] = (gd / g) * yy[3] - g * problem.F * yy[1];
        };
        auto validate = [](double tt, const std::array<double, 4>& yy) {
            for (double v : yy)
                if (!std::isfinite(v))
                    throw StepSizeUnderflow("companion state non-finite at t = " +
                                            std::to_string(tt) + " fs");
        };
        std::vector<double> stops;
        std::size_t j = i + 1;
        while (j < traj.times.size() && traj.times[j] <= piece.t_end)
            stops.push_back(traj.times[j++]);

        std::size_t next = i + 1;
        SolverStats stats;
        auto observe = [&](double tt, const std::array<double, 4>& yy) {
            const double g = problem.G_at(piece, tt);
            const double W = (yy[0] * yy[3] - yy[1] * yy[2]) / g;
            out.wronskian_drift = std::max(out.wronskian_drift, std::abs(W - 1.0));
            const double amp = std::hypot(yy[0], yy[1]);
            const double a_ref = traj.states[next].alpha;
            out.amplitude_mismatch = std::max(
                out.amplitude_mismatch, std::abs(amp - a_ref) / a_ref);
            ++next;
        };
        if (!stops.empty())
            detail::integrate_span<4>(rhs, y, t, stops.data(), stops.size(),
                                      traj.config, stats, observe, validate);
        i = next - 1;  // last checked sample seeds the next piece
    }
    return out;
}

}  // namespace vibmode
