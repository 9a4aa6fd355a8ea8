// Command-line front end.
//
//   vibmode run <config>        integrate and write CSV artifacts + manifest
//   vibmode table1              computed vs tabulated reference columns
//   vibmode compare <config>    sudden/linear/adiabatic on one molecule
//   vibmode correlate <config>  stationary-energy correlation diagram
//
// Common flags: --out-dir DIR, --tolerance-override REL, --cm1.
// Exit codes: 0 ok, 1 usage/config/runtime error, 2 invariant budget
// exceeded.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "vibmode/vibmode.hpp"

namespace {

// --tolerance-override REL: replace the solver's relative tolerance and set
// the absolute tolerance two decades tighter, overriding the config file.
void apply_tolerance_override(vibmode::RunConfig& cfg, double rel) {
    cfg.solver.rel_tol = rel;
    cfg.solver.abs_tol = rel / 100.0;
    cfg.solver.validate();
}

int report_violations(const std::vector<std::string>& violations) {
    for (const std::string& v : violations)
        std::fprintf(stderr, "invariant violation: %s\n", v.c_str());
    return violations.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Time-dependent local/normal stretching dynamics of symmetric "
        "triatomics"};
    app.require_subcommand(1);
    // Global flags (--out-dir, --cm1, ...) may appear after the subcommand.
    app.fallthrough();

    std::string out_dir = ".";
    double tol_override = 0.0;
    bool cm1 = false;
    app.add_option("--out-dir", out_dir, "Directory for output artifacts")
        ->capture_default_str();
    app.add_option("--tolerance-override", tol_override,
                   "Override solver rel_tol (abs_tol = rel/100)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--cm1", cm1, "Append wavenumber (cm^-1) energy columns");

    std::string run_config_path, compare_config_path, correlate_config_path;
    CLI::App* cmd_run =
        app.add_subcommand("run", "Integrate a run config, write artifacts");
    cmd_run->add_option("config", run_config_path, "Run config file")
        ->required();
    CLI::App* cmd_table1 = app.add_subcommand(
        "table1", "Print computed vs tabulated reference columns");
    CLI::App* cmd_compare = app.add_subcommand(
        "compare", "Run all three schedules, write aligned energies");
    cmd_compare->add_option("config", compare_config_path, "Run config file")
        ->required();
    CLI::App* cmd_correlate = app.add_subcommand(
        "correlate", "Write the stationary-energy correlation diagram");
    cmd_correlate
        ->add_option("config", correlate_config_path, "Run config file")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            vibmode::RunConfig cfg =
                vibmode::parse_run_config(run_config_path);
            if (tol_override > 0.0)
                apply_tolerance_override(cfg, tol_override);
            const vibmode::RunReport rep = vibmode::run(cfg, out_dir, cm1);
            for (const std::string& a : rep.artifacts)
                std::printf("wrote %s\n", a.c_str());
            std::printf("wrote %s\n",
                        (std::filesystem::path(out_dir) / "manifest.txt")
                            .string()
                            .c_str());
            return report_violations(rep.violations);
        }
        if (cmd_table1->parsed()) {
            std::fputs(vibmode::table1_report().c_str(), stdout);
            return 0;
        }
        if (cmd_compare->parsed()) {
            vibmode::RunConfig cfg =
                vibmode::parse_run_config(compare_config_path);
            if (tol_override > 0.0)
                apply_tolerance_override(cfg, tol_override);
            const vibmode::CompareReport rep =
                vibmode::compare_schedules(cfg, out_dir);
            for (const std::string& a : rep.artifacts)
                std::printf("wrote %s\n", a.c_str());
            return report_violations(rep.violations);
        }
        if (cmd_correlate->parsed()) {
            vibmode::RunConfig cfg =
                vibmode::parse_run_config(correlate_config_path);
            const vibmode::CorrelateReport rep =
                vibmode::correlate(cfg, out_dir, cm1);
            for (const std::string& a : rep.artifacts)
                std::printf("wrote %s\n", a.c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
