#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bibunc::detail {

struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

// Header-checked reader for the small comma-separated schemas used here.
// Quoted fields follow the usual double-quote escaping; surrounding
// whitespace is trimmed.
class CsvReader {
public:
    CsvReader(std::istream& in, std::span<const std::string_view> header);

    /// False at end of input. Blank lines are skipped.
    bool next(CsvRow& row);

private:
    std::istream& in_;
    std::size_t columns_;
    std::size_t line_ = 0;
};

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no);

std::int64_t parse_count(const std::string& text, std::size_t line, std::string_view column);
std::int64_t parse_integer(const std::string& text, std::size_t line, std::string_view column);

/// Quotes a field only when it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);

}  // namespace bibunc::detail
