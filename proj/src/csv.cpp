#include "liouville/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace liouville {

std::string format_significant(double v, int digits) {
    if (digits < 1 || digits > 17) {
        throw std::invalid_argument("format_significant: digits must be 1..17");
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) {
        throw std::invalid_argument("CsvTable: empty header");
    }
}

void CsvTable::add_comment(const std::string& line) {
    leading_comments_.push_back(line);
}

void CsvTable::add_trailing_comment(const std::string& line) {
    trailing_comments_.push_back(line);
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) {
        throw std::invalid_argument("CsvTable: row width != header width");
    }
    rows_.push_back(std::move(cells));
}

std::string CsvTable::to_string() const {
    std::ostringstream os;
    for (const auto& c : leading_comments_) {
        os << "# " << c << "\n";
    }
    for (std::size_t i = 0; i < header_.size(); ++i) {
        os << (i ? "," : "") << header_[i];
    }
    os << "\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << row[i];
        }
        os << "\n";
    }
    for (const auto& c : trailing_comments_) {
        os << "# " << c << "\n";
    }
    return os.str();
}

std::vector<std::vector<double>> parse_csv_numeric(const std::string& text) {
    std::vector<std::vector<double>> out;
    std::istringstream is(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            const std::size_t comma = line.find(',', pos);
            const std::string cell =
                line.substr(pos, comma == std::string::npos ? std::string::npos
                                                            : comma - pos);
            char* end = nullptr;
            row.push_back(std::strtod(cell.c_str(), &end));
            if (comma == std::string::npos) {
                break;
            }
            pos = comma + 1;
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace liouville
