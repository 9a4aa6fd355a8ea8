#pragma once

// Plain-text configuration: a small strict INI dialect for run configs
// ([molecule] / [schedule] / [solver] / [run] sections) and a flat
// key-value format for molecule definition files. Unknown keys and unknown
// sections are hard errors with line diagnostics; every diagnostic names
// the offending file, line, and key.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vibmode/dynamics.hpp"
#include "vibmode/ermakov.hpp"
#include "vibmode/errors.hpp"
#include "vibmode/molecule.hpp"
#include "vibmode/schedule.hpp"

namespace vibmode {

enum class OutputKind {
    energies,
    uncertainties,
    polyads,
    zeta,
    wavefunction,
    correlation,
};

inline std::string to_string(OutputKind k) {
    switch (k) {
        case OutputKind::energies: return "energies";
        case OutputKind::uncertainties: return "uncertainties";
        case OutputKind::polyads: return "polyads";
        case OutputKind::zeta: return "zeta";
        case OutputKind::wavefunction: return "wavefunction";
        case OutputKind::correlation: return "correlation";
    }
    return "?";
}

struct RunConfig {
    MoleculeSpec molecule;
    AngleSchedule schedule;
    SolverConfig solver;
    ResonanceWeights weights;
    std::vector<ModeOccupation> states;
    std::vector<OutputKind> outputs;
    double t_start = 0.0;
    double t_end = 0.0;
    bool t_start_given = false;
    bool cm1 = false;                // append wavenumber energy columns
    std::vector<double> theta_grid;  // correlation diagram abscissa (deg)
    std::string theta_grid_spec;     // raw "start stop npoints" for echo

    void validate() const {
        molecule.validate();
        schedule.validate();
        solver.validate();
        if (!(t_start < t_end))
            throw ConfigError("run window requires t_start_fs < t_end_fs");
        if (states.empty())
            throw ConfigError("run requires a non-empty states list");
        for (const ModeOccupation& s : states)
            if (s.n_g < 0 || s.n_u < 0)
                throw ConfigError("mode occupations must be non-negative");
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

struct KeyValue {
    std::string value;
    int line = 0;
    bool used = false;
};

// One parsed section: ordered key -> (value, line) with usage tracking so
// unparsed keys can be reported as errors afterwards.
struct Section {
    std::map<std::string, KeyValue> entries;
    int line = 0;
};

struct ParsedFile {
    std::string origin;
    std::map<std::string, Section> sections;

    [[noreturn]] void fail(int line, const std::string& what) const {
        throw ConfigError(origin + ":" + std::to_string(line) + ": " + what);
    }

    const Section* find(const std::string& name) const {
        auto it = sections.find(name);
        return it == sections.end() ? nullptr : &it->second;
    }

    void check_all_used() const {
        for (const auto& [sname, sec] : sections)
            for (const auto& [key, kv] : sec.entries)
                if (!kv.used)
                    fail(kv.line, "unknown key '" + key + "' in section [" +
                                      sname + "]");
    }
};

// sections=false parses a flat key-value file into a single "" section.
inline ParsedFile parse_keyvalue_text(std::istream& in,
                                      const std::string& origin,
                                      bool sections) {
    ParsedFile pf;
    pf.origin = origin;
    std::string current;
    pf.sections[current] = Section{};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const std::size_t hash = raw.find_first_of("#;");
        std::string text = trim(hash == std::string::npos
                                    ? raw
                                    : raw.substr(0, hash));
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (!sections)
                pf.fail(line, "sections are not allowed in this file");
            if (text.back() != ']')
                pf.fail(line, "unterminated section header");
            current = trim(text.substr(1, text.size() - 2));
            if (current.empty()) pf.fail(line, "empty section name");
            if (pf.sections.count(current))
                pf.fail(line, "duplicate section [" + current + "]");
            pf.sections[current].line = line;
            continue;
        }
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos)
            pf.fail(line, "expected 'key = value'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) pf.fail(line, "empty key");
        if (value.empty()) pf.fail(line, "empty value for key '" + key + "'");
        Section& sec = pf.sections[current];
        if (sec.entries.count(key))
            pf.fail(line, "duplicate key '" + key + "'");
        sec.entries[key] = KeyValue{value, line, false};
    }
    return pf;
}

// Typed accessors. Each take() marks the key used; leftover keys become
// "unknown key" errors in check_all_used().
class SectionReader {
  public:
    SectionReader(const ParsedFile& pf, const std::string& name)
        : pf_(pf), name_(name),
          sec_(const_cast<Section*>(pf.find(name))) {}

    bool exists() const { return sec_ != nullptr; }

    std::optional<std::string> take(const std::string& key) {
        if (!sec_) return std::nullopt;
        auto it = sec_->entries.find(key);
        if (it == sec_->entries.end()) return std::nullopt;
        it->second.used = true;
        last_line_ = it->second.line;
        return it->second.value;
    }

    std::optional<double> take_number(const std::string& key) {
        auto v = take(key);
        if (!v) return std::nullopt;
        return parse_number(*v, key);
    }

    double require_number(const std::string& key) {
        auto v = take_number(key);
        if (!v) missing(key);
        return *v;
    }

    std::string require(const std::string& key) {
        auto v = take(key);
        if (!v) missing(key);
        return *v;
    }

    int last_line() const { return last_line_; }

    [[noreturn]] void fail(const std::string& what) const {
        pf_.fail(last_line_ ? last_line_ : (sec_ ? sec_->line : 0),
                 "[" + name_ + "] " + what);
    }

  private:
    double parse_number(const std::string& text, const std::string& key) {
        std::size_t pos = 0;
        double out = 0.0;
        try {
            out = std::stod(text, &pos);
        } catch (const std::exception&) {
            fail("key '" + key + "': not a number: '" + text + "'");
        }
        if (trim(text.substr(pos)).size())
            fail("key '" + key + "': trailing text after number: '" + text +
                 "'");
        return out;
    }

    [[noreturn]] void missing(const std::string& key) const {
        pf_.fail(sec_ ? sec_->line : 0,
                 "section [" + name_ + "] is missing required key '" + key +
                     "'");
    }

    const ParsedFile& pf_;
    std::string name_;
    Section* sec_;
    int last_line_ = 0;
};

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Molecule definition files: flat key = value, strict key set.
//   name, m_terminal, m_central  (amu)
//   f_rr_aj, f_rrp_aj            (aJ / Angstrom^2)
//   theta0_deg, thetaf_deg       (degrees)
//   e_nu1_cm, e_nu3_cm           (optional reference fundamentals, cm^-1)
// ---------------------------------------------------------------------------

inline MoleculeSpec parse_molecule_stream(std::istream& in,
                                          const std::string& origin) {
    detail::ParsedFile pf =
        detail::parse_keyvalue_text(in, origin, /*sections=*/false);
    detail::SectionReader r(pf, "");
    const std::string name = r.require("name");
    const double m_t = r.require_number("m_terminal");
    const double m_c = r.require_number("m_central");
    const double f_rr_aj = r.require_number("f_rr_aj");
    const double f_rrp_aj = r.require_number("f_rrp_aj");
    const double th0 = r.require_number("theta0_deg");
    const double thf = r.require_number("thetaf_deg");
    const double e1 = r.take_number("e_nu1_cm").value_or(0.0);
    const double e3 = r.take_number("e_nu3_cm").value_or(0.0);
    pf.check_all_used();
    MoleculeSpec spec =
        make_molecule(name, m_t, m_c, f_rr_aj, f_rrp_aj, th0, thf, e1, e3);
    spec.validate();
    return spec;
}

inline MoleculeSpec parse_molecule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open molecule file: " + path);
    return parse_molecule_stream(in, path);
}

// ---------------------------------------------------------------------------
// Run configs.
//
// [molecule]   name = H2O                      (builtin lookup)
//              file = o3.mol                   (definition file), or the
//              full inline key set of the definition format.
// [schedule]   kind = sudden|linear|adiabatic, theta0_deg, thetaf_deg
//              (default: molecule values), t0_fs, tf_fs, k_per_fs
// [solver]     rel_tol, abs_tol, max_step_fs, output_stride_fs
// [run]        t_start_fs (default: schedule-dependent), t_end_fs,
//              states = ng,nu ng,nu ...  and/or  max_polyad = P,
//              outputs = energies uncertainties polyads zeta wavefunction
//                        correlation,
//              eta1, eta2, theta_grid = start_deg stop_deg npoints
// ---------------------------------------------------------------------------

inline RunConfig parse_run_config_stream(std::istream& in,
                                         const std::string& origin) {
    detail::ParsedFile pf =
        detail::parse_keyvalue_text(in, origin, /*sections=*/true);
    for (const auto& [name, sec] : pf.sections) {
        if (name.empty()) {
            if (!sec.entries.empty())
                pf.fail(sec.entries.begin()->second.line,
                        "keys must appear inside a section");
            continue;
        }
        if (name != "molecule" && name != "schedule" && name != "solver" &&
            name != "run")
            pf.fail(sec.line, "unknown section [" + name + "]");
    }

    RunConfig cfg;

    // --- molecule ---
    detail::SectionReader mol(pf, "molecule");
    if (!mol.exists()) throw ConfigError(origin + ": missing [molecule]");
    if (auto file = mol.take("file")) {
        // Relative paths are tried against the config file's directory
        // first, then against the working directory.
        std::filesystem::path p(*file);
        if (p.is_relative()) {
            const std::filesystem::path base =
                std::filesystem::path(origin).parent_path();
            if (!base.empty() && std::filesystem::exists(base / p))
                p = base / p;
        }
        cfg.molecule = parse_molecule_file(p.string());
    } else if (auto m_t = mol.take_number("m_terminal")) {
        // Inline definition: same key set as the definition file.
        cfg.molecule = make_molecule(
            mol.require("name"), *m_t, mol.require_number("m_central"),
            mol.require_number("f_rr_aj"), mol.require_number("f_rrp_aj"),
            mol.require_number("theta0_deg"), mol.require_number("thetaf_deg"),
            mol.take_number("e_nu1_cm").value_or(0.0),
            mol.take_number("e_nu3_cm").value_or(0.0));
    } else {
        const std::string name = mol.require("name");
        const BuiltinMolecule* b = find_builtin(name);
        if (!b) {
            std::string known;
            for (const BuiltinMolecule& m : builtin_table())
                known += (known.empty() ? "" : ", ") + m.spec.name;
            mol.fail("unknown molecule '" + name + "' (known: " + known +
                     ")");
        }
        cfg.molecule = b->spec;
    }
    cfg.molecule.validate();

    // --- schedule ---
    detail::SectionReader sch(pf, "schedule");
    cfg.schedule.theta0 = cfg.molecule.theta0;
    cfg.schedule.thetaf = cfg.molecule.thetaf;
    if (sch.exists()) {
        if (auto kind = sch.take("kind")) {
            if (*kind == "sudden") cfg.schedule.kind = ScheduleKind::sudden;
            else if (*kind == "linear")
                cfg.schedule.kind = ScheduleKind::linear;
            else if (*kind == "adiabatic")
                cfg.schedule.kind = ScheduleKind::adiabatic;
            else
                sch.fail("unknown schedule kind '" + *kind +
                         "' (sudden, linear, adiabatic)");
        }
        if (auto v = sch.take_number("theta0_deg")) cfg.schedule.theta0 = *v;
        if (auto v = sch.take_number("thetaf_deg")) cfg.schedule.thetaf = *v;
        if (auto v = sch.take_number("t0_fs")) cfg.schedule.t0 = *v;
        if (auto v = sch.take_number("tf_fs")) cfg.schedule.tf = *v;
        if (auto v = sch.take_number("k_per_fs")) cfg.schedule.k = *v;
    }
    cfg.schedule.validate();

    // --- solver ---
    detail::SectionReader sol(pf, "solver");
    if (sol.exists()) {
        if (auto v = sol.take_number("rel_tol")) cfg.solver.rel_tol = *v;
        if (auto v = sol.take_number("abs_tol")) cfg.solver.abs_tol = *v;
        if (auto v = sol.take_number("max_step_fs")) cfg.solver.max_step = *v;
        if (auto v = sol.take_number("output_stride_fs"))
            cfg.solver.output_stride = *v;
    }
    cfg.solver.validate();

    // --- run ---
    detail::SectionReader run(pf, "run");
    if (!run.exists()) throw ConfigError(origin + ": missing [run]");
    if (auto v = run.take_number("t_start_fs")) {
        cfg.t_start = *v;
        cfg.t_start_given = true;
    } else {
        cfg.t_start = default_t_start(cfg.schedule);
    }
    cfg.t_end = run.require_number("t_end_fs");

    if (auto states = run.take("states")) {
        for (const std::string& tok : detail::split_ws(*states)) {
            const std::size_t comma = tok.find(',');
            if (comma == std::string::npos)
                run.fail("states entries must look like ng,nu (got '" + tok +
                         "')");
            try {
                cfg.states.push_back(
                    ModeOccupation{std::stoi(tok.substr(0, comma)),
                                   std::stoi(tok.substr(comma + 1))});
            } catch (const std::exception&) {
                run.fail("states entries must be integer pairs (got '" + tok +
                         "')");
            }
        }
    }
    if (auto mp = run.take_number("max_polyad")) {
        const int pmax = static_cast<int>(*mp);
        if (pmax < 0 || *mp != pmax)
            run.fail("max_polyad must be a non-negative integer");
        for (int p = 0; p <= pmax; ++p)
            for (int ng = p; ng >= 0; --ng)
                cfg.states.push_back(ModeOccupation{ng, p - ng});
    }

    if (auto outs = run.take("outputs")) {
        for (const std::string& tok : detail::split_ws(*outs)) {
            if (tok == "energies") cfg.outputs.push_back(OutputKind::energies);
            else if (tok == "uncertainties")
                cfg.outputs.push_back(OutputKind::uncertainties);
            else if (tok == "polyads")
                cfg.outputs.push_back(OutputKind::polyads);
            else if (tok == "zeta") cfg.outputs.push_back(OutputKind::zeta);
            else if (tok == "wavefunction")
                cfg.outputs.push_back(OutputKind::wavefunction);
            else if (tok == "correlation")
                cfg.outputs.push_back(OutputKind::correlation);
            else
                run.fail("unknown output '" + tok + "'");
        }
    } else {
        cfg.outputs = {OutputKind::energies, OutputKind::polyads,
                       OutputKind::zeta};
    }

    if (auto v = run.take_number("eta1")) cfg.weights.eta1 = *v;
    if (auto v = run.take_number("eta2")) cfg.weights.eta2 = *v;

    if (auto v = run.take("cm1")) {
        if (*v == "true") cfg.cm1 = true;
        else if (*v == "false") cfg.cm1 = false;
        else run.fail("cm1 must be 'true' or 'false'");
    }

    if (auto tg = run.take("theta_grid")) {
        cfg.theta_grid_spec = *tg;
        const std::vector<std::string> tok = detail::split_ws(*tg);
        if (tok.size() != 3)
            run.fail("theta_grid must be 'start_deg stop_deg npoints'");
        double a = 0, b = 0;
        long npts = 0;
        try {
            a = std::stod(tok[0]);
            b = std::stod(tok[1]);
            npts = std::stol(tok[2]);
        } catch (const std::exception&) {
            run.fail("theta_grid must be 'start_deg stop_deg npoints'");
        }
        if (npts < 2) run.fail("theta_grid needs at least 2 points");
        for (long i = 0; i < npts; ++i)
            cfg.theta_grid.push_back(
                a + (b - a) * static_cast<double>(i) /
                        static_cast<double>(npts - 1));
    }

    pf.check_all_used();
    cfg.validate();
    return cfg;
}

inline RunConfig parse_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_run_config_stream(in, path);
}

}  // namespace vibmode
