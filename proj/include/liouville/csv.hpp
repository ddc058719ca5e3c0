#pragma once

#include <string>
#include <vector>

namespace liouville {

// Shortest decimal at the given significant digits, lowercase scientific
// notation, locale-independent ("." decimal point).
std::string format_significant(double v, int digits);

/** Rectangular CSV: header row, data rows, optional comment lines.
 * Serialized with single-newline terminators; leading comments precede the
 * header, trailing comments follow the data.
 */
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_comment(const std::string& line);           // leading "# ..."
    void add_trailing_comment(const std::string& line);  // after the data
    void add_row(std::vector<std::string> cells);        // must match header width

    std::size_t rows() const { return rows_.size(); }
    const std::vector<std::string>& row(std::size_t i) const { return rows_[i]; }
    const std::vector<std::string>& header() const { return header_; }

    std::string to_string() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::string> leading_comments_;
    std::vector<std::string> trailing_comments_;
};

/** Parses CSV text produced by CsvTable (comments and the header are
 * skipped); returns the numeric data rows.
 */
std::vector<std::vector<double>> parse_csv_numeric(const std::string& text);

}  // namespace liouville
