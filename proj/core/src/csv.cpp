#include "csv.hpp"

#include <bibunc/data_model.hpp>

#include <boost/algorithm/string/trim.hpp>
#include <boost/tokenizer.hpp>

#include <charconv>
#include <istream>
#include <sstream>

namespace bibunc::detail {

namespace {

std::string joined(std::span<const std::string_view> cols) {
    std::string out;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) out += ',';
        out += cols[i];
    }
    return out;
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
    using Separator = boost::escaped_list_separator<char>;
    std::vector<std::string> fields;
    try {
        boost::tokenizer<Separator> tok(line, Separator('\0', ',', '"'));
        for (const auto& f : tok) fields.push_back(boost::algorithm::trim_copy(f));
    } catch (const boost::escaped_list_error& e) {
        throw ParseError(line_no, std::string("malformed quoting: ") + e.what());
    }
    return fields;
}

CsvReader::CsvReader(std::istream& in, std::span<const std::string_view> header)
    : in_(in), columns_(header.size()) {
    std::string text;
    bool have_header = false;
    while (!have_header && std::getline(in_, text)) {
        ++line_;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        // UTF-8 byte order mark
        if (line_ == 1 && text.starts_with("\xEF\xBB\xBF")) text.erase(0, 3);
        have_header = !boost::algorithm::trim_copy(text).empty();
    }
    if (!have_header) throw ParseError(1, "empty file; expected header '" + joined(header) + "'");

    const auto got = split_csv_line(text, line_);
    std::ostringstream diag;
    for (const auto& want : header) {
        bool found = false;
        for (const auto& g : got) found = found || g == want;
        if (!found) diag << " missing column '" << want << "';";
    }
    for (const auto& g : got) {
        bool known = false;
        for (const auto& want : header) known = known || g == want;
        if (!known) diag << " unexpected column '" << g << "';";
    }
    bool same_order = got.size() == header.size();
    for (std::size_t i = 0; same_order && i < got.size(); ++i) same_order = got[i] == header[i];
    if (!same_order) {
        std::string msg = "header mismatch: expected '" + joined(header) + "'";
        const auto d = diag.str();
        msg += d.empty() ? std::string(" (columns out of order)") : d;
        throw ParseError(line_, msg);
    }
}

bool CsvReader::next(CsvRow& row) {
    std::string text;
    while (std::getline(in_, text)) {
        ++line_;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (boost::algorithm::trim_copy(text).empty()) continue;
        row.line = line_;
        row.fields = split_csv_line(text, line_);
        if (row.fields.size() != columns_) {
            throw ParseError(line_, "expected " + std::to_string(columns_) + " fields, found " +
                                        std::to_string(row.fields.size()));
        }
        return true;
    }
    return false;
}

std::int64_t parse_integer(const std::string& text, std::size_t line, std::string_view column) {
    std::int64_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw ParseError(line, "column '" + std::string(column) + "': not an integer: '" + text + "'");
    }
    return value;
}

std::int64_t parse_count(const std::string& text, std::size_t line, std::string_view column) {
    const auto v = parse_integer(text, line, column);
    if (v < 0) {
        throw ParseError(line, "column '" + std::string(column) + "': negative count " + text);
    }
    return v;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

}  // namespace bibunc::detail
