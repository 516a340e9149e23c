#pragma once

// CSV output of diagnostics records, reading columns back for rate fits, and
// the plain-text agent table (x..., v..., m per row).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "diagnostics.hpp"
#include "errors.hpp"
#include "integrate.hpp"
#include "random.hpp"
#include "state.hpp"

namespace csalign {

inline std::string fmt17(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string fmt17(const std::optional<double>& x) { return x ? fmt17(*x) : "NA"; }

inline std::vector<std::string> record_columns(std::size_t dim) {
    std::vector<std::string> cols = {"t", "V1", "V2", "V4", "I1", "I2", "I4", "G", "G3", "L", "C", "D", "dmin"};
    for (std::size_t k = 0; k < dim; ++k) cols.push_back("momentum" + std::to_string(k));
    cols.push_back("vdiam");
    cols.push_back("dissipated");
    return cols;
}

inline void write_header(std::ostream& os, const ScenarioConfig& c) {
    const KernelSpec& k = c.kernel;
    os << "# scenario: " << c.name << "\n";
    os << "# hash: " << hash_hex(scenario_hash(c)) << "\n";
    os << "# seed: " << c.initial.seed << "\n";
    os << "# rng: " << rng_algorithm << "\n";
    os << "# kernel: kind=" << to_string(k.kind) << " lambda=" << fmt17(k.lambda) << " Lambda=" << fmt17(k.Lambda)
       << " beta=" << fmt17(k.beta) << " r0=" << fmt17(k.r0) << " moll_width=" << fmt17(k.moll_width) << "\n";
    os << "# domain: " << (c.domain.is_circle() ? std::string("circle") : "euclidean dim=" + std::to_string(c.domain.dim))
       << " N=" << c.N << " mode=" << to_string(c.mode) << "\n";
}

inline void write_records(std::ostream& os, const std::vector<DiagnosticsRecord>& recs, std::size_t dim) {
    const auto cols = record_columns(dim);
    for (std::size_t q = 0; q < cols.size(); ++q) os << (q ? "," : "") << cols[q];
    os << "\n";
    for (const auto& r : recs) {
        os << fmt17(r.t) << ',' << fmt17(r.V1) << ',' << fmt17(r.V2) << ',' << fmt17(r.V4) << ',' << fmt17(r.I1)
           << ',' << fmt17(r.I2) << ',' << fmt17(r.I4) << ',' << fmt17(r.G) << ',' << fmt17(r.G3) << ','
           << fmt17(r.L) << ',' << fmt17(r.C) << ',' << fmt17(r.D) << ',' << fmt17(r.dmin);
        for (double p : r.momentum) os << ',' << fmt17(p);
        os << ',' << fmt17(r.vdiam) << ',' << fmt17(r.dissipated) << "\n";
    }
}

inline void write_trajectory_csv(std::ostream& os, const ScenarioConfig& c, const Trajectory& tr) {
    write_header(os, c);
    write_records(os, tr.records, c.domain.dim);
    if (tr.failure)
        os << "# failure: " << tr.failure->kind << " t=" << fmt17(tr.failure->t) << " pair=" << tr.failure->i << ","
           << tr.failure->j << " separation=" << fmt17(tr.failure->separation) << "\n";
}

/// Numeric columns of a CSV written by write_records. "NA" cells become NaN.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> meta;  // "# key: value" lines

    std::vector<double> column(const std::string& name) const {
        for (std::size_t q = 0; q < header.size(); ++q)
            if (header[q] == name) {
                std::vector<double> out;
                out.reserve(rows.size());
                for (const auto& r : rows) out.push_back(r[q]);
                return out;
            }
        throw DataError("no column named " + name);
    }
};

inline double parse_cell(const std::string& cell) {
    if (cell == "NA" || cell == "nan") return std::nan("");
    if (cell == "inf") return INFINITY;
    if (cell == "-inf") return -INFINITY;
    // strtod rather than stod: subnormal values must parse, not throw
    char* end = nullptr;
    const double x = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size()) throw DataError("not a number: '" + cell + "'");
    return x;
}

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    return out;
}

inline CsvTable read_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto colon = line.find(':');
            if (colon != std::string::npos) {
                std::string key = line.substr(1, colon - 1);
                key.erase(0, key.find_first_not_of(' '));
                std::string val = line.substr(colon + 1);
                val.erase(0, val.find_first_not_of(' '));
                t.meta[key] = val;
            }
            continue;
        }
        if (t.header.empty()) {
            t.header = split(line, ',');
            continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() != t.header.size()) throw DataError("ragged CSV row");
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_cell(c));
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) throw DataError("CSV has no header");
    return t;
}

inline CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return read_csv(in);
}

/// One agent per line: position components, velocity components, weight.
inline void write_state_table(std::ostream& os, const FlockState& s) {
    os << "# t " << fmt17(s.t) << " dim " << s.dim << "\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (double c : s.pos(i)) os << fmt17(c) << ' ';
        for (double c : s.vel(i)) os << fmt17(c) << ' ';
        os << fmt17(s.m[i]) << "\n";
    }
}

inline FlockState read_state_table(std::istream& in, std::size_t dim) {
    FlockState s;
    s.dim = dim;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        if (line[0] == '#') {
            std::string tag;
            ss >> tag >> tag;
            if (tag == "t") ss >> s.t;
            continue;
        }
        std::vector<double> row;
        std::string cell;
        while (ss >> cell) row.push_back(parse_cell(cell));
        if (row.size() != 2 * dim + 1) throw DataError("state table row must hold 2*dim + 1 numbers");
        s.x.insert(s.x.end(), row.begin(), row.begin() + static_cast<long>(dim));
        s.v.insert(s.v.end(), row.begin() + static_cast<long>(dim), row.begin() + static_cast<long>(2 * dim));
        s.m.push_back(row.back());
    }
    return s;
}

}  // namespace csalign
