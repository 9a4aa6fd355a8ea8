#pragma once

// Scenario orchestration: execute a parsed RunConfig, write the requested
// CSV artifacts plus a manifest, enforce the runtime invariant budgets, and
// provide the reference-table report, the schedule comparison, and the
// correlation-diagram export used by the command-line tool.
//
// Determinism: integration is sequential with a fixed Runge-Kutta tableau
// and no randomness, CSV cells are printed with "%.17g", and the manifest
// echoes the fully resolved configuration in the config syntax itself (the
// stats block is comments), so re-running a manifest reproduces every CSV
// byte for byte.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "vibmode/config.hpp"
#include "vibmode/csv.hpp"
#include "vibmode/dynamics.hpp"
#include "vibmode/ermakov.hpp"
#include "vibmode/molecule.hpp"
#include "vibmode/wavefunction.hpp"

namespace vibmode {

inline constexpr const char* artifact_version = "1.0.0";

// Runtime invariant budgets. A run whose drifts exceed these is reported
// as failed (the CLI exits nonzero).
struct InvariantBudgets {
    double wronskian = 1e-7;            // companion-check drift per piece
    double uncertainty_product = 1e-9;  // relative deviation from (hbar/2)^2
    double normal_polyad_start = 1e-10; // operator-vs-invariant at t_start
};

struct InvariantSummary {
    double wronskian_drift_g = 0.0;
    double wronskian_drift_u = 0.0;
    double amplitude_mismatch_g = 0.0;
    double amplitude_mismatch_u = 0.0;
    double uncertainty_drift_g = 0.0;
    double uncertainty_drift_u = 0.0;
    double normal_polyad_start_dev = 0.0;

    double max_wronskian_drift() const {
        return std::max(wronskian_drift_g, wronskian_drift_u);
    }
    double max_uncertainty_drift() const {
        return std::max(uncertainty_drift_g, uncertainty_drift_u);
    }
};

struct RunReport {
    RunConfig config;
    ModePair modes;
    InvariantSummary invariants;
    std::vector<std::string> artifacts;   // files written (absolute paths)
    std::vector<std::string> violations;  // budget violations, if any
    bool ok() const { return violations.empty(); }
};

namespace detail {

inline std::string state_suffix(const ModeOccupation& s) {
    return std::to_string(s.n_g) + "_" + std::to_string(s.n_u);
}

inline std::string join_path(const std::string& dir, const std::string& leaf) {
    return (std::filesystem::path(dir) / leaf).string();
}

inline void check_budgets(const InvariantSummary& inv,
                          const InvariantBudgets& budgets,
                          std::vector<std::string>& violations) {
    if (inv.max_wronskian_drift() > budgets.wronskian)
        violations.push_back("wronskian drift " +
                             format_double(inv.max_wronskian_drift()) +
                             " exceeds budget " +
                             format_double(budgets.wronskian));
    if (inv.max_uncertainty_drift() > budgets.uncertainty_product)
        violations.push_back("uncertainty-product drift " +
                             format_double(inv.max_uncertainty_drift()) +
                             " exceeds budget " +
                             format_double(budgets.uncertainty_product));
    if (inv.normal_polyad_start_dev > budgets.normal_polyad_start)
        violations.push_back("normal-polyad start deviation " +
                             format_double(inv.normal_polyad_start_dev) +
                             " exceeds budget " +
                             format_double(budgets.normal_polyad_start));
}

inline InvariantSummary collect_invariants(const ModePair& modes,
                                           const RunConfig& cfg) {
    InvariantSummary inv;
    const CompanionCheck cg = companion_linear_check(modes.g);
    const CompanionCheck cu = companion_linear_check(modes.u);
    inv.wronskian_drift_g = cg.wronskian_drift;
    inv.wronskian_drift_u = cu.wronskian_drift;
    inv.amplitude_mismatch_g = cg.amplitude_mismatch;
    inv.amplitude_mismatch_u = cu.amplitude_mismatch;
    inv.uncertainty_drift_g = uncertainty_product_drift(modes.g);
    inv.uncertainty_drift_u = uncertainty_product_drift(modes.u);
    for (const ModeOccupation& s : cfg.states) {
        const NormalPolyadSeries pn =
            normal_polyad_mean(modes, s, cfg.weights);
        const double dev = std::abs(pn.stationary_op.front() - pn.invariant) /
                           std::max(1.0, std::abs(pn.invariant));
        inv.normal_polyad_start_dev =
            std::max(inv.normal_polyad_start_dev, dev);
    }
    return inv;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Manifest: resolved config echoed in config syntax + a comment block with
// constants, solver statistics, invariant drifts, and artifact list.
// ---------------------------------------------------------------------------

inline void write_manifest(const std::string& path, const RunReport& rep) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    const RunConfig& c = rep.config;
    const MoleculeSpec& m = c.molecule;
    auto g = [](double v) { return format_double(v); };

    out << "# run manifest, artifact version " << artifact_version << "\n";
    out << "# re-running this file reproduces the CSV artifacts byte for"
           " byte\n";
    out << "#\n";
    out << "# constants (amu/Angstrom/fs internal units):\n";
    out << "#   hbar = " << g(constants::hbar) << "\n";
    out << "#   planck = " << g(constants::planck) << "\n";
    out << "#   c_angstrom_per_fs = " << g(constants::c_angstrom_per_fs)
        << "\n";
    out << "#   internal_energy_per_wavenumber = "
        << g(constants::internal_energy_per_wavenumber) << "\n";
    out << "#   aj_per_internal_energy = "
        << g(constants::aj_per_internal_energy) << "\n";
    out << "#\n";
    out << "# solver stats: g-mode steps = " << rep.modes.g.stats.steps
        << ", rejections = " << rep.modes.g.stats.rejections
        << "; u-mode steps = " << rep.modes.u.stats.steps
        << ", rejections = " << rep.modes.u.stats.rejections << "\n";
    const InvariantSummary& inv = rep.invariants;
    out << "# invariants:\n";
    out << "#   wronskian_drift_g = " << g(inv.wronskian_drift_g) << "\n";
    out << "#   wronskian_drift_u = " << g(inv.wronskian_drift_u) << "\n";
    out << "#   amplitude_mismatch_g = " << g(inv.amplitude_mismatch_g)
        << "\n";
    out << "#   amplitude_mismatch_u = " << g(inv.amplitude_mismatch_u)
        << "\n";
    out << "#   uncertainty_product_drift_g = " << g(inv.uncertainty_drift_g)
        << "\n";
    out << "#   uncertainty_product_drift_u = " << g(inv.uncertainty_drift_u)
        << "\n";
    out << "#   normal_polyad_start_dev = " << g(inv.normal_polyad_start_dev)
        << "\n";
    out << "# status: " << (rep.ok() ? "ok" : "invariant budget exceeded")
        << "\n";
    for (const std::string& v : rep.violations) out << "#   " << v << "\n";
    out << "# artifacts:";
    for (const std::string& a : rep.artifacts)
        out << " " << std::filesystem::path(a).filename().string();
    out << "\n\n";

    out << "[molecule]\n";
    out << "name = " << m.name << "\n";
    out << "m_terminal = " << g(m.m_terminal) << "\n";
    out << "m_central = " << g(m.m_central) << "\n";
    out << "f_rr_aj = " << g(m.f_rr_aj) << "\n";
    out << "f_rrp_aj = " << g(m.f_rrp_aj) << "\n";
    out << "theta0_deg = " << g(m.theta0) << "\n";
    out << "thetaf_deg = " << g(m.thetaf) << "\n";
    out << "e_nu1_cm = " << g(m.e_nu1) << "\n";
    out << "e_nu3_cm = " << g(m.e_nu3) << "\n\n";

    out << "[schedule]\n";
    out << "kind = " << to_string(c.schedule.kind) << "\n";
    out << "theta0_deg = " << g(c.schedule.theta0) << "\n";
    out << "thetaf_deg = " << g(c.schedule.thetaf) << "\n";
    out << "t0_fs = " << g(c.schedule.t0) << "\n";
    out << "tf_fs = " << g(c.schedule.tf) << "\n";
    out << "k_per_fs = " << g(c.schedule.k) << "\n\n";

    out << "[solver]\n";
    out << "rel_tol = " << g(c.solver.rel_tol) << "\n";
    out << "abs_tol = " << g(c.solver.abs_tol) << "\n";
    out << "max_step_fs = " << g(c.solver.max_step) << "\n";
    out << "output_stride_fs = " << g(c.solver.output_stride) << "\n\n";

    out << "[run]\n";
    out << "t_start_fs = " << g(c.t_start) << "\n";
    out << "t_end_fs = " << g(c.t_end) << "\n";
    out << "states =";
    for (const ModeOccupation& s : c.states)
        out << " " << s.n_g << "," << s.n_u;
    out << "\n";
    out << "outputs =";
    for (OutputKind k : c.outputs) out << " " << to_string(k);
    out << "\n";
    out << "eta1 = " << g(c.weights.eta1) << "\n";
    out << "eta2 = " << g(c.weights.eta2) << "\n";
    out << "cm1 = " << (c.cm1 ? "true" : "false") << "\n";
    if (!c.theta_grid_spec.empty())
        out << "theta_grid = " << c.theta_grid_spec << "\n";
    out.close();
    if (!out) throw Error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Individual artifact writers.
// ---------------------------------------------------------------------------

namespace detail {

inline void write_energies_csv(const std::string& path, const RunConfig& cfg,
                               const ModePair& modes, bool cm1) {
    CsvWriter csv(path);
    std::vector<std::string> header = {"t_fs", "theta_deg"};
    for (const ModeOccupation& s : cfg.states)
        header.push_back("E_" + state_suffix(s));
    if (cm1)
        for (const ModeOccupation& s : cfg.states)
            header.push_back("E_" + state_suffix(s) + "_cm1");
    csv.write_header(header);

    std::vector<std::vector<double>> energy;
    energy.reserve(cfg.states.size());
    for (const ModeOccupation& s : cfg.states)
        energy.push_back(mean_hamiltonian(modes, s));

    std::vector<double> row;
    for (std::size_t i = 0; i < modes.g.times.size(); ++i) {
        row.clear();
        row.push_back(modes.g.times[i]);
        row.push_back(theta_at(cfg.schedule, modes.g.times[i]));
        for (const std::vector<double>& e : energy) row.push_back(e[i]);
        if (cm1)
            for (const std::vector<double>& e : energy)
                row.push_back(internal_energy_to_wavenumber(e[i]));
        csv.write_row(row);
    }
    csv.close();
}

inline void write_uncertainties_csv(const std::string& path,
                                    const RunConfig& cfg,
                                    const ModePair& modes) {
    CsvWriter csv(path);
    std::vector<std::string> header = {"t_fs"};
    for (const ModeOccupation& s : cfg.states) {
        const std::string suf = state_suffix(s);
        for (const char* mode : {"g", "u"}) {
            header.push_back("sigma2_S_" + std::string(mode) + "_" + suf);
            header.push_back("sigma2_P_" + std::string(mode) + "_" + suf);
            header.push_back("sigma_SP_" + std::string(mode) + "_" + suf);
        }
    }
    csv.write_header(header);
    std::vector<double> row;
    for (std::size_t i = 0; i < modes.g.times.size(); ++i) {
        row.clear();
        row.push_back(modes.g.times[i]);
        for (const ModeOccupation& s : cfg.states) {
            const Uncertainties ug = uncertainties(
                modes.g.states[i], modes.g.G_at_sample(i), s.n_g);
            const Uncertainties uu = uncertainties(
                modes.u.states[i], modes.u.G_at_sample(i), s.n_u);
            for (const Uncertainties& u : {ug, uu}) {
                row.push_back(u.sigma2_S);
                row.push_back(u.sigma2_P);
                row.push_back(u.sigma_SP);
            }
        }
        csv.write_row(row);
    }
    csv.close();
}

inline void write_polyads_csv(const std::string& path, const RunConfig& cfg,
                              const ModePair& modes) {
    const GMatrixElements g0 = g_matrix(cfg.molecule.m_terminal,
                                        cfg.molecule.m_central,
                                        cfg.schedule.theta0);
    const double mu = 1.0 / g0.g_rr;
    const double omega_ref = std::sqrt(g0.g_rr * cfg.molecule.f_rr);

    CsvWriter csv(path);
    std::vector<std::string> header = {"t_fs"};
    std::vector<std::vector<double>> pl;
    std::vector<NormalPolyadSeries> pn;
    for (const ModeOccupation& s : cfg.states) {
        const std::string suf = state_suffix(s);
        header.push_back("PL_mean_" + suf);
        header.push_back("PN_invariant_" + suf);
        header.push_back("PN_stationary_op_" + suf);
        pl.push_back(local_polyad_mean(modes, s, mu, omega_ref));
        pn.push_back(normal_polyad_mean(modes, s, cfg.weights));
    }
    csv.write_header(header);
    std::vector<double> row;
    for (std::size_t i = 0; i < modes.g.times.size(); ++i) {
        row.clear();
        row.push_back(modes.g.times[i]);
        for (std::size_t j = 0; j < cfg.states.size(); ++j) {
            row.push_back(pl[j][i]);
            row.push_back(pn[j].invariant);
            row.push_back(pn[j].stationary_op[i]);
        }
        csv.write_row(row);
    }
    csv.close();
}

inline void write_zeta_csv(const std::string& path, const ModePair& modes) {
    const ZetaSeries z = zeta_series(modes);
    CsvWriter csv(path);
    csv.write_header({"t_fs", "zeta"});
    for (std::size_t i = 0; i < z.times.size(); ++i)
        csv.write_row({z.times[i], z.zeta[i]});
    csv.close();
}

// |psi|^2 slices at five evenly spaced sample times for one mode, using the
// first configured state's occupation of that mode.
inline void write_wavefunction_csv(const std::string& path,
                                   const ErmakovTrajectory& traj, int n,
                                   std::size_t npts = 1024) {
    CsvWriter csv(path);
    csv.write_header({"t_fs", "S", "density"});
    const std::size_t m = traj.times.size();
    for (int slice = 0; slice < 5; ++slice) {
        const std::size_t i =
            m < 5 ? std::min<std::size_t>(slice, m - 1)
                  : slice * (m - 1) / 4;
        const WavefunctionGrid psi = eval_psi(traj, i, n, npts);
        for (std::size_t j = 0; j < psi.coordinate.size(); ++j)
            csv.write_row({traj.times[i], psi.coordinate[j],
                           std::norm(psi.values[j])});
    }
    csv.close();
}

inline void write_correlation_csv(const std::string& path,
                                  const RunConfig& cfg, bool cm1) {
    if (cfg.theta_grid.empty())
        throw ConfigError(
            "correlation output requires theta_grid in the [run] section");
    const CorrelationTable tab =
        energy_correlation(cfg.molecule, cfg.theta_grid, cfg.states);
    CsvWriter csv(path);
    std::vector<std::string> header = {"theta_deg"};
    for (const ModeOccupation& s : tab.states)
        header.push_back("E_" + state_suffix(s));
    if (cm1)
        for (const ModeOccupation& s : tab.states)
            header.push_back("E_" + state_suffix(s) + "_cm1");
    csv.write_header(header);
    std::vector<double> row;
    for (std::size_t i = 0; i < tab.theta_deg.size(); ++i) {
        row.clear();
        row.push_back(tab.theta_deg[i]);
        for (double e : tab.energies[i]) row.push_back(e);
        if (cm1)
            for (double e : tab.energies[i])
                row.push_back(internal_energy_to_wavenumber(e));
        csv.write_row(row);
    }
    csv.close();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// run: integrate both modes once, emit the requested artifacts + manifest,
// and enforce the invariant budgets.
// ---------------------------------------------------------------------------

inline RunReport run(const RunConfig& cfg_in, const std::string& out_dir,
                     bool cm1 = false,
                     const InvariantBudgets& budgets = {}) {
    RunConfig cfg = cfg_in;
    cfg.cm1 = cfg.cm1 || cm1;  // flag and config key are equivalent
    cfg.validate();
    std::filesystem::create_directories(out_dir);

    RunReport rep;
    rep.config = cfg;
    rep.modes =
        integrate(cfg.molecule, cfg.schedule, cfg.solver, cfg.t_start,
                  cfg.t_end);
    rep.invariants = detail::collect_invariants(rep.modes, cfg);
    detail::check_budgets(rep.invariants, budgets, rep.violations);

    bool done[6] = {false, false, false, false, false, false};
    for (OutputKind kind : cfg.outputs) {
        if (done[static_cast<int>(kind)]) continue;
        done[static_cast<int>(kind)] = true;
        switch (kind) {
            case OutputKind::energies: {
                const std::string p = detail::join_path(out_dir,
                                                        "energies.csv");
                detail::write_energies_csv(p, cfg, rep.modes, cfg.cm1);
                rep.artifacts.push_back(p);
                break;
            }
            case OutputKind::uncertainties: {
                const std::string p =
                    detail::join_path(out_dir, "uncertainties.csv");
                detail::write_uncertainties_csv(p, cfg, rep.modes);
                rep.artifacts.push_back(p);
                break;
            }
            case OutputKind::polyads: {
                const std::string p = detail::join_path(out_dir,
                                                        "polyads.csv");
                detail::write_polyads_csv(p, cfg, rep.modes);
                rep.artifacts.push_back(p);
                break;
            }
            case OutputKind::zeta: {
                const std::string p = detail::join_path(out_dir, "zeta.csv");
                detail::write_zeta_csv(p, rep.modes);
                rep.artifacts.push_back(p);
                break;
            }
            case OutputKind::wavefunction: {
                const std::string pg =
                    detail::join_path(out_dir, "wavefunction_g.csv");
                const std::string pu =
                    detail::join_path(out_dir, "wavefunction_u.csv");
                detail::write_wavefunction_csv(pg, rep.modes.g,
                                               cfg.states.front().n_g);
                detail::write_wavefunction_csv(pu, rep.modes.u,
                                               cfg.states.front().n_u);
                rep.artifacts.push_back(pg);
                rep.artifacts.push_back(pu);
                break;
            }
            case OutputKind::correlation: {
                const std::string p =
                    detail::join_path(out_dir, "correlation.csv");
                detail::write_correlation_csv(p, cfg, cfg.cm1);
                rep.artifacts.push_back(p);
                break;
            }
        }
    }
    write_manifest(detail::join_path(out_dir, "manifest.txt"), rep);
    return rep;
}

// ---------------------------------------------------------------------------
// table1_report: computed vs tabulated reference values for the builtin
// molecules (kinetic elements, coupling ratios, stationary locality at the
// initial geometry), with deviations.
// ---------------------------------------------------------------------------

inline std::string table1_report() {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "%-5s %-6s %13s %13s %11s\n", "mol",
                  "qty", "computed", "tabulated", "deviation");
    out += line;
    double max_dev_gx = 0.0, max_dev_zeta = 0.0;
    for (const BuiltinMolecule& b : builtin_table()) {
        const MoleculeSpec& m = b.spec;
        const GMatrixElements g =
            g_matrix(m.m_terminal, m.m_central, m.theta0);
        const CouplingRatios x = coupling_ratios(m.f_rr, m.f_rrp, g);
        // The tabulated locality parameter is derived from the observed
        // fundamentals, not from the harmonic model frequencies.
        const double zeta = zeta_stationary(m.e_nu1, m.e_nu3);
        const struct {
            const char* name;
            double computed, tabulated;
        } rows[5] = {
            {"g_rr", g.g_rr, b.ref.g_rr},
            {"g_rrp", g.g_rrp, b.ref.g_rrp},
            {"x_f", x.x_f, b.ref.x_f},
            {"x_g", x.x_g, b.ref.x_g},
            {"zeta", zeta, b.ref.zeta},
        };
        for (const auto& r : rows) {
            const double dev = std::abs(r.computed - r.tabulated);
            (r.name == std::string("zeta") ? max_dev_zeta : max_dev_gx) =
                std::max(r.name == std::string("zeta") ? max_dev_zeta
                                                       : max_dev_gx,
                         dev);
            std::snprintf(line, sizeof line,
                          "%-5s %-6s %13.6f %13.6f %11.2e\n", m.name.c_str(),
                          r.name, r.computed, r.tabulated, dev);
            out += line;
        }
    }
    std::snprintf(line, sizeof line,
                  "max deviation: g/x columns %.2e, zeta %.2e\n", max_dev_gx,
                  max_dev_zeta);
    out += line;
    return out;
}

// ---------------------------------------------------------------------------
// compare_schedules: the three transition schedules on a shared molecule,
// occupation list, and time window; <H> columns aligned on the common
// sample grid (schedule-specific breakpoint samples are dropped).
// ---------------------------------------------------------------------------

struct CompareReport {
    std::vector<std::string> artifacts;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

inline CompareReport compare_schedules(const RunConfig& cfg,
                                       const std::string& out_dir,
                                       const InvariantBudgets& budgets = {}) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);

    AngleSchedule variants[3] = {cfg.schedule, cfg.schedule, cfg.schedule};
    variants[0].kind = ScheduleKind::sudden;
    variants[1].kind = ScheduleKind::linear;
    variants[2].kind = ScheduleKind::adiabatic;
    if (variants[1].tf <= variants[1].t0)
        variants[1].tf = variants[1].t0 + 100.0;
    for (AngleSchedule& v : variants) v.validate();

    double t_start = cfg.t_start;
    if (!cfg.t_start_given)
        for (const AngleSchedule& v : variants)
            t_start = std::min(t_start, default_t_start(v));

    CompareReport rep;
    ModePair runs[3];
    for (int v = 0; v < 3; ++v) {
        runs[v] = integrate(cfg.molecule, variants[v], cfg.solver, t_start,
                            cfg.t_end);
        const CompanionCheck cg = companion_linear_check(runs[v].g);
        const CompanionCheck cu = companion_linear_check(runs[v].u);
        const double drift = std::max(cg.wronskian_drift, cu.wronskian_drift);
        if (drift > budgets.wronskian)
            rep.violations.push_back(
                to_string(variants[v].kind) + ": wronskian drift " +
                format_double(drift) + " exceeds budget " +
                format_double(budgets.wronskian));
    }

    std::vector<std::vector<std::vector<double>>> energy(3);
    for (int v = 0; v < 3; ++v)
        for (const ModeOccupation& s : cfg.states)
            energy[v].push_back(mean_hamiltonian(runs[v], s));

    const std::string path = detail::join_path(out_dir, "compare.csv");
    CsvWriter csv(path);
    std::vector<std::string> header = {"t_fs"};
    for (const ModeOccupation& s : cfg.states)
        for (const char* v : {"sudden", "linear", "adiabatic"})
            header.push_back("E_" + detail::state_suffix(s) + "_" + v);
    csv.write_header(header);

    // Common-grid merge: shared stride samples are generated identically in
    // all three runs, so exact equality identifies them; breakpoint-inserted
    // extras (sudden t0, ramp ends) are schedule-specific and skipped.
    const std::vector<double>& ta = runs[0].g.times;
    const std::vector<double>& tb = runs[1].g.times;
    const std::vector<double>& tc = runs[2].g.times;
    std::size_t i = 0, j = 0, k = 0;
    std::vector<double> row;
    while (i < ta.size() && j < tb.size() && k < tc.size()) {
        const double t = std::max(ta[i], std::max(tb[j], tc[k]));
        if (ta[i] < t) { ++i; continue; }
        if (tb[j] < t) { ++j; continue; }
        if (tc[k] < t) { ++k; continue; }
        row.clear();
        row.push_back(t);
        const std::size_t idx[3] = {i, j, k};
        for (std::size_t s = 0; s < cfg.states.size(); ++s)
            for (int v = 0; v < 3; ++v)
                row.push_back(energy[v][s][idx[v]]);
        csv.write_row(row);
        ++i; ++j; ++k;
    }
    csv.close();
    rep.artifacts.push_back(path);
    return rep;
}

// ---------------------------------------------------------------------------
// correlate: stationary-energy correlation diagram over the configured
// bond-angle grid.
// ---------------------------------------------------------------------------

struct CorrelateReport {
    std::vector<std::string> artifacts;
};

inline CorrelateReport correlate(const RunConfig& cfg,
                                 const std::string& out_dir,
                                 bool cm1 = false) {
    if (cfg.theta_grid.empty())
        throw ConfigError("correlate requires theta_grid in [run]");
    std::filesystem::create_directories(out_dir);
    CorrelateReport rep;
    const std::string path = detail::join_path(out_dir, "correlation.csv");
    detail::write_correlation_csv(path, cfg, cm1 || cfg.cm1);
    rep.artifacts.push_back(path);
    return rep;
}

}  // namespace vibmode
