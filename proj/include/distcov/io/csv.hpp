#ifndef DISTCOV_IO_CSV_HPP
#define DISTCOV_IO_CSV_HPP

#include <Eigen/Core>

#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace distcov::io {

/// One observed sample: either numeric rows or categorical labels.
struct Sample {
    Eigen::MatrixXd numeric; // n x p, used when !categorical
    std::vector<std::string> labels;
    bool categorical{false};

    Eigen::Index n() const {
        return categorical ? static_cast<Eigen::Index>(labels.size()) : numeric.rows();
    }
    Eigen::Index dim() const { return categorical ? 0 : numeric.cols(); }
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// RFC-4180-style records: quoted fields, doubled quotes, CR/LF line ends.
std::vector<std::vector<std::string>> parse_csv_records(std::istream& in);

/// Read a CSV file whose first record is a header row.
CsvTable read_csv(const std::string& path);

/// Split a comma-separated selector list ("x1,x2") into trimmed names.
std::vector<std::string> split_selector(const std::string& list);

/// Extract the X and Y samples named by the column selectors. All selected
/// columns are parsed as numbers unless `categorical`, in which case each
/// observation's label is the tuple of selected cells. Rows with any missing
/// value in a selected column fail the whole file, listing the offending
/// 1-based data row numbers.
std::pair<Sample, Sample> ingest_csv(const std::string& path,
                                     const std::vector<std::string>& x_cols,
                                     const std::vector<std::string>& y_cols,
                                     bool categorical = false);

/// Read a headerless square matrix of decimal literals (precomputed
/// distances). Shape is checked here; the distance-matrix contract is the
/// caller's validate step.
Eigen::MatrixXd read_square_matrix_csv(const std::string& path);

} // namespace distcov::io

#endif
