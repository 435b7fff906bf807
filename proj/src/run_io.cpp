#include "fracms/run_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fracms {

namespace {

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw InvalidArgument("cannot open '" + tmp + "' for writing");
        }
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep)) {
        fields.push_back(item);
    }
    return fields;
}

Metadata parse_comment_meta(std::istream& in, std::string& first_data_line) {
    Metadata meta;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            const auto eq = line.find('=');
            if (eq != std::string::npos) {
                meta.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
            }
        } else {
            first_data_line = line;
            break;
        }
    }
    return meta;
}

}  // namespace

std::string format_double(double x) {
    // shortest representation that round-trips exactly
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const Metadata& meta) {
    std::ostringstream out;
    for (const auto& [k, v] : meta) {
        out << "# " << k << "=" << v << "\n";
    }
    out << "t,value\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        out << format_double(traj.times[i]) << "," << format_double(traj.values[i]) << "\n";
    }
    atomic_write(path, out.str());
}

TrajectoryFile read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open '" + path + "'");
    }
    TrajectoryFile file;
    std::string header;
    file.meta = parse_comment_meta(in, header);
    if (header != "t,value") {
        throw InvalidArgument("'" + path + "': expected 't,value' header, got '" + header +
                              "'");
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 2) {
            throw InvalidArgument("'" + path + "': malformed row '" + line + "'");
        }
        file.trajectory.times.push_back(std::stod(fields[0]));
        file.trajectory.values.push_back(std::stod(fields[1]));
    }
    for (const auto& [k, v] : file.meta) {
        if (k == "variable") file.trajectory.label = v;
    }
    return file;
}

void write_report_json(const std::string& path, const Metadata& fields) {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : fields) {
        // store numerics as numbers when they parse cleanly
        char* end = nullptr;
        const double num = std::strtod(v.c_str(), &end);
        if (end && *end == '\0' && !v.empty()) {
            j[k] = num;
        } else {
            j[k] = v;
        }
    }
    atomic_write(path, j.dump(2) + "\n");
}

void write_report_csv(const std::string& path, const Metadata& fields) {
    std::ostringstream out;
    out << "key,value\n";
    for (const auto& [k, v] : fields) {
        out << k << "," << v << "\n";
    }
    atomic_write(path, out.str());
}

Metadata read_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open '" + path + "'");
    }
    Metadata fields;
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        nlohmann::ordered_json j;
        in >> j;
        for (const auto& [k, v] : j.items()) {
            if (v.is_string()) {
                fields.emplace_back(k, v.get<std::string>());
            } else {
                fields.emplace_back(k, v.dump());
            }
        }
        return fields;
    }
    std::string line;
    std::getline(in, line);
    if (line != "key,value") {
        throw InvalidArgument("'" + path + "': expected 'key,value' header");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw InvalidArgument("'" + path + "': malformed row '" + line + "'");
        }
        fields.emplace_back(line.substr(0, comma), line.substr(comma + 1));
    }
    return fields;
}

void write_table_csv(const std::string& path, const Metadata& meta,
                     const std::vector<TableCell>& cells) {
    std::ostringstream out;
    for (const auto& [k, v] : meta) {
        out << "# " << k << "=" << v << "\n";
    }
    out << "param,metric,value,paper_value,pass\n";
    for (const auto& c : cells) {
        out << c.param << "," << c.metric << "," << format_double(c.value) << ","
            << format_double(c.reference) << "," << (c.pass ? "1" : "0") << "\n";
    }
    atomic_write(path, out.str());
}

std::vector<TableCell> read_table_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open '" + path + "'");
    }
    std::string header;
    parse_comment_meta(in, header);
    if (header != "param,metric,value,paper_value,pass") {
        throw InvalidArgument("'" + path + "': unexpected table header '" + header + "'");
    }
    std::vector<TableCell> cells;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 5) {
            throw InvalidArgument("'" + path + "': malformed row '" + line + "'");
        }
        TableCell c;
        c.param = fields[0];
        c.metric = fields[1];
        c.value = std::stod(fields[2]);
        c.reference = std::stod(fields[3]);
        c.pass = fields[4] == "1";
        cells.push_back(std::move(c));
    }
    return cells;
}

}  // namespace fracms
