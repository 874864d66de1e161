#include "distcov/io/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "distcov/errors.hpp"

namespace distcov::io {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool parse_number(const std::string& cell, double& out) {
    const std::string t = trim(cell);
    if (t.empty()) return false;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

std::vector<std::size_t> resolve_columns(const std::vector<std::string>& header,
                                         const std::vector<std::string>& names) {
    std::vector<std::size_t> idx;
    idx.reserve(names.size());
    for (const auto& name : names) {
        std::size_t found = header.size();
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) {
                if (found != header.size())
                    throw DataError(DataError::Kind::BadHeader,
                                    "column name '" + name + "' appears more than once");
                found = i;
            }
        }
        if (found == header.size())
            throw DataError(DataError::Kind::BadHeader, "column '" + name + "' not in header");
        idx.push_back(found);
    }
    return idx;
}

} // namespace

std::vector<std::vector<std::string>> parse_csv_records(std::istream& in) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    auto end_field = [&]() {
        record.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_record = [&]() {
        end_field();
        // A lone empty field means a blank line; skip those.
        if (record.size() > 1 || !record[0].empty()) records.push_back(record);
        record.clear();
    };

    char c;
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field += '"';
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field_started) {
                    in_quotes = true;
                    field_started = true;
                } else {
                    field += c; // stray quote inside unquoted field, keep it
                }
                break;
            case ',': end_field(); break;
            case '\r': break;
            case '\n': end_record(); break;
            default:
                field += c;
                field_started = true;
                break;
        }
    }
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError(DataError::Kind::MissingFile, "cannot open file: " + path);
    auto records = parse_csv_records(in);
    if (records.empty())
        throw DataError(DataError::Kind::BadHeader, "file has no header row: " + path);

    CsvTable table;
    table.header = std::move(records.front());
    records.erase(records.begin());
    table.rows = std::move(records);

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (table.rows[r].size() != table.header.size()) {
            std::ostringstream msg;
            msg << "row " << r + 1 << " has " << table.rows[r].size() << " fields, expected "
                << table.header.size();
            throw DataError(DataError::Kind::MixedTypes, msg.str());
        }
    }
    return table;
}

std::vector<std::string> split_selector(const std::string& list) {
    std::vector<std::string> names;
    std::string current;
    std::istringstream in(list);
    while (std::getline(in, current, ',')) {
        const std::string t = trim(current);
        if (!t.empty()) names.push_back(t);
    }
    return names;
}

std::pair<Sample, Sample> ingest_csv(const std::string& path,
                                     const std::vector<std::string>& x_cols,
                                     const std::vector<std::string>& y_cols,
                                     bool categorical) {
    if (x_cols.empty() || y_cols.empty())
        throw DataError(DataError::Kind::BadHeader, "empty column selector");

    const CsvTable table = read_csv(path);
    const auto x_idx = resolve_columns(table.header, x_cols);
    const auto y_idx = resolve_columns(table.header, y_cols);
    const Eigen::Index n = static_cast<Eigen::Index>(table.rows.size());
    if (n < 1)
        throw DataError(DataError::Kind::EmptySample, "file has no data rows: " + path);

    std::vector<std::size_t> selected = x_idx;
    selected.insert(selected.end(), y_idx.begin(), y_idx.end());

    std::vector<std::size_t> missing_rows;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        for (std::size_t c : selected) {
            if (trim(table.rows[r][c]).empty()) {
                missing_rows.push_back(r + 1);
                break;
            }
        }
    }
    if (!missing_rows.empty()) {
        std::ostringstream msg;
        msg << "missing values in selected columns at row"
            << (missing_rows.size() > 1 ? "s" : "");
        for (std::size_t r : missing_rows) msg << " " << r;
        throw DataError(DataError::Kind::MissingValue, msg.str());
    }

    auto extract = [&](const std::vector<std::size_t>& idx) {
        Sample sample;
        sample.categorical = categorical;
        if (categorical) {
            sample.labels.reserve(table.rows.size());
            for (const auto& row : table.rows) {
                std::string label;
                for (std::size_t j = 0; j < idx.size(); ++j) {
                    if (j > 0) label += '\x1f'; // unit separator between tuple parts
                    label += row[idx[j]];
                }
                sample.labels.push_back(std::move(label));
            }
        } else {
            sample.numeric.resize(n, static_cast<Eigen::Index>(idx.size()));
            for (std::size_t r = 0; r < table.rows.size(); ++r) {
                for (std::size_t j = 0; j < idx.size(); ++j) {
                    double value;
                    if (!parse_number(table.rows[r][idx[j]], value)) {
                        std::ostringstream msg;
                        msg << "non-numeric value '" << table.rows[r][idx[j]] << "' in column '"
                            << table.header[idx[j]] << "' at row " << r + 1;
                        throw DataError(DataError::Kind::MixedTypes, msg.str());
                    }
                    sample.numeric(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) =
                        value;
                }
            }
        }
        return sample;
    };

    return {extract(x_idx), extract(y_idx)};
}

Eigen::MatrixXd read_square_matrix_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError(DataError::Kind::MissingFile, "cannot open file: " + path);
    const auto records = parse_csv_records(in);
    const auto n = static_cast<Eigen::Index>(records.size());
    if (n < 1)
        throw DataError(DataError::Kind::EmptySample, "matrix file is empty: " + path);

    Eigen::MatrixXd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& row = records[static_cast<std::size_t>(r)];
        if (static_cast<Eigen::Index>(row.size()) != n) {
            std::ostringstream msg;
            msg << "matrix is not square: row " << r + 1 << " has " << row.size()
                << " fields, expected " << n;
            throw DataError(DataError::Kind::NonSquare, msg.str());
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            double value;
            if (!parse_number(row[static_cast<std::size_t>(c)], value)) {
                std::ostringstream msg;
                msg << "non-numeric matrix entry '" << row[static_cast<std::size_t>(c)]
                    << "' at (" << r + 1 << "," << c + 1 << ")";
                throw DataError(DataError::Kind::MixedTypes, msg.str());
            }
            m(r, c) = value;
        }
    }
    return m;
}

} // namespace distcov::io
