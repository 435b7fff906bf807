#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fracms/reproduce.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSolver = 1;
constexpr int kExitUsage = 2;

fracms::SchemeKind parse_scheme(const std::string& s) {
    if (s == "explicit") return fracms::SchemeKind::explicit_euler;
    if (s == "implicit") return fracms::SchemeKind::implicit_euler;
    throw CLI::ValidationError("--scheme", "must be 'explicit' or 'implicit'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver toolkit for coupled fast/slow fractional ODE systems"};
    app.require_subcommand(1);

    // ---- run ----
    auto* run_cmd = app.add_subcommand("run", "Run one solver on a catalog problem");
    std::string problem, method = "direct", scheme = "implicit", out = "run";
    std::string format = "json", cells = "keep", avg = "mean", l1 = "mean";
    std::string window = "centered";
    std::optional<double> alpha, eps, horizon, dT;
    double dt = 1.0 / 32.0, tol = 1e-5;
    run_cmd->add_option("--problem", problem, "Catalog problem (example1..example4)")
        ->required();
    run_cmd->add_option("--method", method, "direct or multiscale")
        ->check(CLI::IsMember({"direct", "multiscale"}));
    run_cmd->add_option("--alpha", alpha, "Override the fractional order (0,1)");
    run_cmd->add_option("--eps", eps, "Override the scale separation parameter");
    run_cmd->add_option("--horizon", horizon, "Override the time horizon");
    run_cmd->add_option("--dt", dt, "Micro time step");
    run_cmd->add_option("--dT", dT, "Macro time step (multiscale only)");
    run_cmd->add_option("--tol", tol, "Periodic shooting tolerance");
    run_cmd->add_option("--scheme", scheme, "Fast-variable stepper: explicit or implicit")
        ->check(CLI::IsMember({"explicit", "implicit"}));
    run_cmd->add_option("--out", out, "Output file prefix");
    run_cmd->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}));
    run_cmd->add_option("--cells", cells, "Retain cell solutions: keep or discard")
        ->check(CLI::IsMember({"keep", "discard"}));
    run_cmd->add_option("--avg", avg, "Cell averaging rule")
        ->check(CLI::IsMember({"mean", "trapezoid"}));
    run_cmd->add_option("--l1", l1, "L1 error convention")
        ->check(CLI::IsMember({"mean", "integral"}));
    run_cmd->add_option("--window", window, "Cell window placement")
        ->check(CLI::IsMember({"centered", "leading"}));

    // ---- reproduce-table ----
    auto* table_cmd =
        app.add_subcommand("reproduce-table", "Re-run the sweep behind a reference table");
    std::string which, table_out;
    std::optional<double> truncate;
    table_cmd->add_option("which", which, "table1 | table2 | table3 | table4")->required();
    table_cmd->add_option("--out", table_out, "Output CSV path (default <which>.csv)");
    table_cmd->add_option("--truncate-horizon", truncate,
                          "Shorten the fully resolved reference runs (tables 3/4)");
    table_cmd->add_option("--avg", avg, "Cell averaging rule")
        ->check(CLI::IsMember({"mean", "trapezoid"}));
    table_cmd->add_option("--l1", l1, "L1 error convention")
        ->check(CLI::IsMember({"mean", "integral"}));
    table_cmd->add_option("--window", window, "Cell window placement")
        ->check(CLI::IsMember({"centered", "leading"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run_cmd->parsed()) {
            fracms::RunConfig cfg;
            cfg.problem = problem;
            cfg.method =
                method == "direct" ? fracms::Method::direct : fracms::Method::multiscale;
            cfg.overrides.alpha = alpha;
            cfg.overrides.eps = eps;
            cfg.overrides.horizon = horizon;
            cfg.dt = dt;
            cfg.dT = dT;
            cfg.tol = tol;
            cfg.scheme = parse_scheme(scheme);
            cfg.out_path = out;
            cfg.format =
                format == "json" ? fracms::ReportFormat::json : fracms::ReportFormat::csv;
            cfg.window = window == "centered" ? fracms::CellWindow::centered
                                              : fracms::CellWindow::leading;
            cfg.average = avg == "mean" ? fracms::CellAverage::mean
                                        : fracms::CellAverage::trapezoid;
            cfg.l1 =
                l1 == "mean" ? fracms::L1Convention::mean : fracms::L1Convention::integral;
            cfg.keep_cells = cells == "keep";
            const fracms::RunArtifacts artifacts = fracms::run(cfg);
            for (const auto& f : artifacts.files) {
                std::cout << f << "\n";
            }
            return kExitOk;
        }

        fracms::TableOptions opts;
        opts.truncate_horizon = truncate;
        opts.out_path = table_out;
        opts.window = window == "centered" ? fracms::CellWindow::centered
                                           : fracms::CellWindow::leading;
        opts.average =
            avg == "mean" ? fracms::CellAverage::mean : fracms::CellAverage::trapezoid;
        opts.l1 = l1 == "mean" ? fracms::L1Convention::mean : fracms::L1Convention::integral;
        const fracms::TableResult result = fracms::reproduce_table(which, opts);
        std::cout << result.file << "\n";
        int passed = 0;
        for (const auto& c : result.cells) {
            passed += c.pass ? 1 : 0;
        }
        std::cout << passed << "/" << result.cells.size() << " cells match\n";
        return kExitOk;
    } catch (const fracms::InvalidArgument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fracms::NonconvergenceError& e) {
        std::cerr << "nonconvergence: " << e.what() << "\n";
        return kExitSolver;
    } catch (const fracms::DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return kExitSolver;
    } catch (const fracms::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
}
