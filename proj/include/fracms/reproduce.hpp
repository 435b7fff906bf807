#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracms/direct_solver.hpp"
#include "fracms/multiscale_solver.hpp"
#include "fracms/run_io.hpp"

namespace fracms {

enum class Method { direct, multiscale };
enum class ReportFormat { csv, json };

/// One CLI run: a catalog problem, a solver, parameter overrides, and
/// output destinations. All runs are deterministic.
struct RunConfig {
    std::string problem;
    Method method = Method::direct;
    ProblemOverrides overrides;
    double dt = 1.0 / 32.0;
    std::optional<double> dT;  // required for the multiscale method
    double tol = 1e-5;
    SchemeKind scheme = SchemeKind::implicit_euler;
    std::string out_path = "run";  // file prefix
    ReportFormat format = ReportFormat::json;
    CellWindow window = CellWindow::centered;
    CellAverage average = CellAverage::mean;
    L1Convention l1 = L1Convention::mean;
    bool keep_cells = true;
    long record_stride = 32;
};

struct RunArtifacts {
    std::vector<std::string> files;  // everything written, report last
    RunReport report;
};

/// Execute a run and write trajectory file(s) plus a report file.
/// Throws on malformed configs and propagates solver errors.
RunArtifacts run(const RunConfig& config);

struct TableOptions {
    std::optional<double> truncate_horizon;  // desk-scale fully resolved reference
    std::string out_path;                    // defaults to "<which>.csv"
    CellWindow window = CellWindow::centered;
    CellAverage average = CellAverage::mean;
    L1Convention l1 = L1Convention::mean;
};

struct TableResult {
    std::string which;
    std::vector<TableCell> cells;
    std::string file;

    bool all_pass() const;
    const TableCell* find(const std::string& param, const std::string& metric) const;
};

/// Re-run the full sweep behind one of the four reference error tables
/// and emit a CSV with computed values, reference values, and pass/fail
/// per cell. Solver errors mark cells failed rather than aborting.
TableResult reproduce_table(const std::string& which, const TableOptions& opts = {});

}  // namespace fracms
