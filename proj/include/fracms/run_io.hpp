#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fracms/analysis.hpp"

namespace fracms {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Ordered key=value metadata written as '# key=value' comment lines.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Trajectory CSV: metadata comments, a 't,value' header, then rows.
/// Files are written atomically (tmp file + rename).
void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const Metadata& meta);

struct TrajectoryFile {
    Trajectory trajectory;
    Metadata meta;
};

TrajectoryFile read_trajectory_csv(const std::string& path);

/// Report files hold one flat object of run parameters and results,
/// as JSON or as 'key,value' CSV rows.
void write_report_json(const std::string& path, const Metadata& fields);
void write_report_csv(const std::string& path, const Metadata& fields);
Metadata read_report(const std::string& path);  // detects format by extension

/// One cell of a reproduced reference table.
struct TableCell {
    std::string param;   // e.g. "dT=20" or "fully_resolved"
    std::string metric;  // "l1", "linf", "order_l1", "order_linf"
    double value = 0.0;  // NaN when the underlying run failed
    double reference = 0.0;
    bool pass = false;
    std::string note;  // failure class when the run errored
};

/// Long-format table CSV: param,metric,value,paper_value,pass rows.
void write_table_csv(const std::string& path, const Metadata& meta,
                     const std::vector<TableCell>& cells);
std::vector<TableCell> read_table_csv(const std::string& path);

std::string format_double(double x);

}  // namespace fracms
