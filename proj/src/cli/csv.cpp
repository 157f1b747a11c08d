#include "zetalaw/cli/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "zetalaw/errors.hpp"

namespace zetalaw::cli {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

bool parse_number(const std::string& cell, double& out) {
    const char* first = cell.data();
    const char* last = first + cell.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
    const auto it = std::find(headers.begin(), headers.end(), name);
    if (it == headers.end()) throw DataError("csv: no column named '" + name + "'");
    return static_cast<std::size_t>(it - headers.begin());
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("csv: cannot open " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw DataError("csv: " + path + " is empty");
    if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    table.headers = split(line);
    for (const auto& h : table.headers)
        if (h.empty()) throw DataError("csv: " + path + " has an empty header cell");
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split(line);
        if (cells.size() != table.headers.size()) {
            std::ostringstream msg;
            msg << "csv: " << path << " line " << line_no << " has " << cells.size() << " cells, expected "
                << table.headers.size();
            throw DataError(msg.str());
        }
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (cells[c].empty()) {
                std::ostringstream msg;
                msg << "csv: " << path << " line " << line_no << " is missing a value for '" << table.headers[c]
                    << "'";
                throw DataError(msg.str());
            }
        table.rows.push_back(std::move(cells));
    }
    if (table.rows.empty()) throw DataError("csv: " + path + " has no data rows");
    return table;
}

Eigen::MatrixXd numeric_columns(const CsvTable& table, const std::vector<std::size_t>& columns) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(table.rows.size()), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t r = 0; r < table.rows.size(); ++r)
        for (std::size_t j = 0; j < columns.size(); ++j) {
            double v = 0.0;
            if (!parse_number(table.rows[r][columns[j]], v)) {
                std::ostringstream msg;
                msg << "csv: data row " << r + 1 << ", column '" << table.headers[columns[j]]
                    << "' is not a finite number: '" << table.rows[r][columns[j]] << "'";
                throw DataError(msg.str());
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = v;
        }
    return out;
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    const CsvTable table = read_csv(path);
    std::vector<std::size_t> all(table.headers.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return numeric_columns(table, all);
}

LabeledTable read_labeled_csv(const std::string& path, const std::string& label_column) {
    const CsvTable table = read_csv(path);
    const std::size_t label_at = table.column(label_column);
    std::vector<std::size_t> features;
    LabeledTable out;
    for (std::size_t c = 0; c < table.headers.size(); ++c)
        if (c != label_at) {
            features.push_back(c);
            out.feature_names.push_back(table.headers[c]);
        }
    if (features.empty()) throw DataError("csv: " + path + " has no feature columns");

    std::vector<std::string> values;
    for (const auto& row : table.rows)
        if (std::find(values.begin(), values.end(), row[label_at]) == values.end()) values.push_back(row[label_at]);
    if (values.size() != 2) {
        std::ostringstream msg;
        msg << "csv: label column '" << label_column << "' must hold exactly two values, found " << values.size();
        throw DataError(msg.str());
    }
    double a = 0.0;
    double b = 0.0;
    const bool numeric = parse_number(values[0], a) && parse_number(values[1], b);
    if (numeric ? b < a : values[1] < values[0]) std::swap(values[0], values[1]);
    out.label_values = {values[0], values[1]};

    out.data.features = numeric_columns(table, features);
    for (const auto& row : table.rows) out.data.labels.push_back(row[label_at] == values[1] ? 1 : 0);
    return out;
}

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void write_csv(const std::string& path, const std::vector<std::string>& headers,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw DataError("csv: cannot write " + path);
    for (std::size_t c = 0; c < headers.size(); ++c) out << (c ? "," : "") << headers[c];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
        out << '\n';
    }
}

void write_matrix_csv(const std::string& path, const std::vector<std::string>& headers, const Eigen::MatrixXd& values,
                      const std::vector<int>* labels, const std::string& label_header) {
    std::ofstream out(path);
    if (!out) throw DataError("csv: cannot write " + path);
    for (std::size_t c = 0; c < headers.size(); ++c) out << (c ? "," : "") << headers[c];
    if (labels) out << ',' << label_header;
    out << '\n';
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        for (Eigen::Index c = 0; c < values.cols(); ++c) out << (c ? "," : "") << format_number(values(r, c));
        if (labels) out << ',' << (*labels)[static_cast<std::size_t>(r)];
        out << '\n';
    }
}

}  // namespace zetalaw::cli
