#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qprenorm/errors.hpp"
#include "qprenorm/taylor.hpp"

namespace qpr {

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open for write: " + path.string());
    out << content;
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open for read: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// Numeric CSV table: '#' lines are comments, the first column is the row
/// key. Cells parse as doubles.
struct CsvTable {
    std::vector<std::string> header; // empty when absent
    std::vector<std::vector<double>> rows;
};

inline CsvTable parse_numeric_csv(const std::string& text, bool first_line_header = false) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool saw_first = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (first_line_header && !saw_first) {
            saw_first = true;
            std::istringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ',')) t.header.push_back(cell);
            continue;
        }
        saw_first = true;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (...) {
                throw SchemaMismatch("non-numeric cell '" + cell + "' in line: " + line);
            }
        }
        if (!row.empty()) t.rows.push_back(std::move(row));
    }
    return t;
}

/// Per-row comparison of a produced table against a reference: absolute and
/// relative discrepancies, pass/fail against the supplied tolerances.
struct CompareRow {
    double key = 0;
    double produced = 0, reference = 0;
    double abs_err = 0, rel_err = 0;
    bool pass = false;
};

struct CompareReport {
    std::vector<CompareRow> rows;
    bool all_pass = true;
    double worst_rel = 0, worst_abs = 0;
};

inline CompareReport compare_reference(const CsvTable& produced, const CsvTable& reference,
                                       int value_col, double abs_tol, double rel_tol) {
    CompareReport rep;
    for (const auto& ref_row : reference.rows) {
        if (ref_row.size() < 2) throw SchemaMismatch("reference row too short");
        const double key = ref_row[0];
        const std::vector<double>* match = nullptr;
        for (const auto& prow : produced.rows)
            if (prow[0] == key) {
                match = &prow;
                break;
            }
        if (!match || static_cast<int>(match->size()) <= value_col)
            throw SchemaMismatch("no produced row for key " + std::to_string(key));
        CompareRow row;
        row.key = key;
        row.produced = (*match)[static_cast<size_t>(value_col)];
        row.reference = ref_row.size() > static_cast<size_t>(value_col)
                            ? ref_row[static_cast<size_t>(value_col)]
                            : ref_row[1];
        row.abs_err = std::abs(row.produced - row.reference);
        row.rel_err = row.abs_err / std::max(std::abs(row.reference), 1e-300);
        row.pass = row.abs_err <= abs_tol || row.rel_err <= rel_tol;
        rep.worst_abs = std::max(rep.worst_abs, row.abs_err);
        rep.worst_rel = std::max(rep.worst_rel, row.rel_err);
        rep.all_pass = rep.all_pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

/// Line-oriented key=value configuration; round-trips losslessly.
class ExperimentConfig {
public:
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    void set(const std::string& key, double value) { kv_[key] = format_g17(value); }
    void set(const std::string& key, int value) { kv_[key] = std::to_string(value); }
    void set(const std::string& key, long value) { kv_[key] = std::to_string(value); }

    bool has(const std::string& key) const { return kv_.count(key) > 0; }
    const std::string& get(const std::string& key) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) throw ConfigError("missing config key: " + key);
        return it->second;
    }
    double get_double(const std::string& key) const { return std::stod(get(key)); }
    int get_int(const std::string& key) const { return std::stoi(get(key)); }

    const std::map<std::string, std::string>& entries() const { return kv_; }

    std::string serialize() const {
        std::string out;
        for (const auto& [k, v] : kv_) out += k + "=" + v + "\n";
        return out;
    }

    static ExperimentConfig deserialize(const std::string& text) {
        ExperimentConfig cfg;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ConfigError("bad config line: " + line);
            cfg.kv_[line.substr(0, eq)] = line.substr(eq + 1);
        }
        return cfg;
    }

private:
    std::map<std::string, std::string> kv_;
};

} // namespace qpr
