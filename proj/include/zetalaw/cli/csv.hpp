#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "zetalaw/synth.hpp"

namespace zetalaw::cli {

/// Raw comma-separated table: a header row followed by equally long data rows.
struct CsvTable {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;

    /// Index of a header; throws DataError if absent.
    std::size_t column(const std::string& name) const;
};

/// Reads a CSV file. Quoting is not supported; cells are trimmed of spaces.
///
/// Throws DataError on a missing file, an empty header, a ragged row or an
/// empty cell.
CsvTable read_csv(const std::string& path);

/// Parses every cell of the listed columns as a finite decimal number.
Eigen::MatrixXd numeric_columns(const CsvTable& table, const std::vector<std::size_t>& columns);

/// All columns as numbers.
Eigen::MatrixXd read_matrix_csv(const std::string& path);

struct LabeledTable {
    LabeledDataset data;
    std::vector<std::string> feature_names;
    std::array<std::string, 2> label_values;  ///< [control, case]
};

/// Splits a CSV into features and a two-valued label column.
///
/// The label value that sorts first (numerically when both parse as numbers)
/// is the control class.
LabeledTable read_labeled_csv(const std::string& path, const std::string& label_column);

/// Shortest round-trip decimal representation.
std::string format_number(double value);

void write_csv(const std::string& path, const std::vector<std::string>& headers,
               const std::vector<std::vector<double>>& rows);

void write_matrix_csv(const std::string& path, const std::vector<std::string>& headers, const Eigen::MatrixXd& values,
                      const std::vector<int>* labels = nullptr, const std::string& label_header = "label");

}  // namespace zetalaw::cli
