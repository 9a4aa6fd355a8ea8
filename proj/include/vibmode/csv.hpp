#pragma once

// Deterministic CSV: comma-separated, one header row, numbers printed with
// "%.17g" (shortest round-trippable double form), LF line endings on every
// platform. Same inputs always produce byte-identical files.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vibmode/errors.hpp"

namespace vibmode {

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path)
        : path_(path), out_(path, std::ios::binary) {
        if (!out_) throw Error("cannot open for writing: " + path);
    }

    void write_header(const std::vector<std::string>& names) {
        columns_ = names.size();
        for (std::size_t i = 0; i < names.size(); ++i)
            out_ << (i ? "," : "") << names[i];
        out_ << '\n';
    }

    void write_row(const std::vector<double>& values) {
        if (columns_ && values.size() != columns_)
            throw Error(path_ + ": row width " +
                        std::to_string(values.size()) +
                        " does not match header width " +
                        std::to_string(columns_));
        for (std::size_t i = 0; i < values.size(); ++i)
            out_ << (i ? "," : "") << format_double(values[i]);
        out_ << '\n';
    }

    void close() {
        out_.close();
        if (!out_) throw Error("write failed: " + path_);
    }

  private:
    std::string path_;
    std::ofstream out_;
    std::size_t columns_ = 0;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open for reading: " + path);
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream is(line);
        std::string cell;
        while (std::getline(is, cell, ',')) cells.push_back(cell);
        if (first) {
            table.header = cells;
            first = false;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const std::string& c : cells) row.push_back(std::stod(c));
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace vibmode
