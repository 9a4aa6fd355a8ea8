#pragma once

// Time-dependent bond-angle profiles theta(t) (sudden, linear, adiabatic)
// and the induced kinetic matrix elements G_gg(t), G_uu(t) with their
// analytic time derivatives.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "vibmode/constants.hpp"
#include "vibmode/errors.hpp"
#include "vibmode/molecule.hpp"

namespace vibmode {

enum class ScheduleKind { sudden, linear, adiabatic };

inline std::string to_string(ScheduleKind k) {
    switch (k) {
        case ScheduleKind::sudden: return "sudden";
        case ScheduleKind::linear: return "linear";
        default: return "adiabatic";
    }
}

struct AngleSchedule {
    ScheduleKind kind = ScheduleKind::adiabatic;
    double theta0 = 0.0;  // degrees
    double thetaf = 0.0;  // degrees
    double t0 = 0.0;      // fs; jump time (sudden) or ramp start (linear)
    double tf = 0.0;      // fs; ramp end (linear only)
    double k = 0.05;      // fs^-1; rate constant (adiabatic only)

    void validate() const {
        if (kind == ScheduleKind::linear && !(tf > t0))
            throw ConfigError("linear schedule requires tf > t0");
        if (kind == ScheduleKind::adiabatic && !(k > 0.0))
            throw ConfigError("adiabatic schedule requires k > 0");
    }
};

struct KineticElements {
    double G_gg = 0.0;     // amu^-1
    double G_uu = 0.0;     // amu^-1
    double Gdot_gg = 0.0;  // amu^-1 fs^-1
    double Gdot_uu = 0.0;  // amu^-1 fs^-1
};

// theta(t) in degrees. Sudden: theta0 for t < t0, thetaf for t >= t0.
// Linear: ramp on [t0, tf]. Adiabatic: logistic theta0 + d/(1 + 2 e^{-2kt}).
inline double theta_at(const AngleSchedule& s, double t) {
    const double d = s.thetaf - s.theta0;
    switch (s.kind) {
        case ScheduleKind::sudden:
            return t < s.t0 ? s.theta0 : s.thetaf;
        case ScheduleKind::linear:
            if (t < s.t0) return s.theta0;
            if (t >= s.tf) return s.thetaf;
            return s.theta0 + d * (t - s.t0) / (s.tf - s.t0);
        default:
            return s.theta0 + d / (1.0 + 2.0 * std::exp(-2.0 * s.k * t));
    }
}

// d theta/dt in degrees/fs; zero for the sudden profile (the jump is a
// boundary condition, not a rate). The adiabatic form is written so that
// saturated tails evaluate to exactly 0 instead of inf/inf.
inline double theta_rate_at(const AngleSchedule& s, double t) {
    const double d = s.thetaf - s.theta0;
    switch (s.kind) {
        case ScheduleKind::sudden:
            return 0.0;
        case ScheduleKind::linear:
            return (t >= s.t0 && t < s.tf) ? d / (s.tf - s.t0) : 0.0;
        default:
            return 4.0 * s.k * d /
                   (std::exp(2.0 * s.k * t) + 4.0 + 4.0 * std::exp(-2.0 * s.k * t));
    }
}

// G_gg = g_rr + cos(theta)/m_central, G_uu = g_rr - cos(theta)/m_central,
// with chain-rule derivatives through theta(t).
inline KineticElements kinetic_at(const MoleculeSpec& spec,
                                  const AngleSchedule& s, double t) {
    const double g_rr = 1.0 / spec.m_terminal + 1.0 / spec.m_central;
    const double th = deg_to_rad(theta_at(s, t));
    const double thd = deg_to_rad(theta_rate_at(s, t));
    const double c = std::cos(th) / spec.m_central;
    const double cd = -std::sin(th) * thd / spec.m_central;
    return {g_rr + c, g_rr - c, cd, -cd};
}

// One maximal interval on which theta(t) is smooth. Adaptive integrators
// must not step across a schedule discontinuity (sudden jump, ramp kink),
// so integration proceeds piece by piece; within a piece theta and its rate
// are evaluated by the piece's own closed form, which at the piece ends
// yields the correct one-sided limits (theta_at/theta_rate_at would leak
// the neighboring branch there).
struct SchedulePiece {
    double t_begin = 0.0;
    double t_end = 0.0;
    bool logistic = false;
    double a = 0.0, b = 0.0, t_ref = 0.0;        // theta = a + b*(t - t_ref)
    double theta0 = 0.0, dtheta = 0.0, k = 0.0;  // logistic branch

    double theta(double t) const {
        if (!logistic) return a + b * (t - t_ref);
        return theta0 + dtheta / (1.0 + 2.0 * std::exp(-2.0 * k * t));
    }
    double theta_rate(double t) const {
        if (!logistic) return b;
        return 4.0 * k * dtheta /
               (std::exp(2.0 * k * t) + 4.0 + 4.0 * std::exp(-2.0 * k * t));
    }
};

// Splits [lo, hi] at the schedule's interior discontinuities and returns the
// ascending smooth pieces covering it.
inline std::vector<SchedulePiece> schedule_pieces(const AngleSchedule& s,
                                                  double lo, double hi) {
    std::vector<double> cuts = {lo};
    if (s.kind == ScheduleKind::sudden) {
        if (s.t0 > lo && s.t0 < hi) cuts.push_back(s.t0);
    } else if (s.kind == ScheduleKind::linear) {
        if (s.t0 > lo && s.t0 < hi) cuts.push_back(s.t0);
        if (s.tf > lo && s.tf < hi) cuts.push_back(s.tf);
    }
    cuts.push_back(hi);

    std::vector<SchedulePiece> pieces;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        SchedulePiece p;
        p.t_begin = cuts[i];
        p.t_end = cuts[i + 1];
        const double mid = 0.5 * (p.t_begin + p.t_end);
        if (s.kind == ScheduleKind::adiabatic) {
            p.logistic = true;
            p.theta0 = s.theta0;
            p.dtheta = s.thetaf - s.theta0;
            p.k = s.k;
        } else if (s.kind == ScheduleKind::linear && mid >= s.t0 && mid < s.tf) {
            p.a = s.theta0;
            p.b = (s.thetaf - s.theta0) / (s.tf - s.t0);
            p.t_ref = s.t0;
        } else {
            p.a = theta_at(s, mid);  // constant branch
        }
        pieces.push_back(p);
    }
    return pieces;
}

}  // namespace vibmode
