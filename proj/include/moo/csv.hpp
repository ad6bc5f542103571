#pragma once

// Small CSV reader/writer for the file formats the toolkit exchanges:
// population snapshots (x1..xN,f1..fM,g1..gJ,cv) and objective-only fronts
// (f1..fM). Values are written with 17 significant digits.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "moo/core.hpp"
#include "moo/matrix.hpp"

namespace moo {

struct CsvTable {
    std::vector<std::string> header;
    Matrix data;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw std::invalid_argument("CSV column '" + name + "' not found");
    }
};

inline CsvTable parse_csv(std::istream& in, const std::string& what) {
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(what + ": empty CSV input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream hs(line);
    for (std::string cell; std::getline(hs, cell, ',');) table.header.push_back(cell);

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        row.reserve(table.header.size());
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::runtime_error(what + ": line " + std::to_string(line_no) +
                                         ": cannot parse '" + cell + "' as a number");
            }
        }
        if (row.size() != table.header.size())
            throw std::runtime_error(what + ": line " + std::to_string(line_no) +
                                     ": expected " + std::to_string(table.header.size()) +
                                     " cells, got " + std::to_string(row.size()));
        table.data.push_row(row);
    }
    return table;
}

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return parse_csv(in, path);
}

// Columns named f1..fM, in objective order.
inline Matrix objective_columns(const CsvTable& table) {
    std::vector<std::size_t> cols;
    for (std::size_t m = 1;; ++m) {
        const std::string name = "f" + std::to_string(m);
        bool found = false;
        for (std::size_t i = 0; i < table.header.size(); ++i) {
            if (table.header[i] == name) {
                cols.push_back(i);
                found = true;
                break;
            }
        }
        if (!found) break;
    }
    if (cols.empty()) throw std::invalid_argument("CSV has no f1..fM objective columns");
    Matrix out(table.data.rows(), cols.size());
    for (std::size_t i = 0; i < table.data.rows(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = table.data(i, cols[j]);
    return out;
}

inline std::string front_csv(const Matrix& f) {
    std::ostringstream os;
    for (std::size_t j = 0; j < f.cols(); ++j) {
        if (j) os << ',';
        os << 'f' << (j + 1);
    }
    os << '\n';
    for (std::size_t i = 0; i < f.rows(); ++i) {
        for (std::size_t j = 0; j < f.cols(); ++j) {
            if (j) os << ',';
            os << format_full(f(i, j));
        }
        os << '\n';
    }
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

}  // namespace moo
