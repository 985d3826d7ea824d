#include "fss/csv.hpp"

#include <charconv>
#include <istream>

namespace fss {

CsvReader::CsvReader(std::istream& in, std::string source_name)
    : in_(in), source_(std::move(source_name)) {}

bool CsvReader::next(std::vector<std::string>& fields) {
    fields.clear();
    int c = in_.get();
    if (c == EOF) return false;
    ++line_;
    record_line_ = line_;

    std::string field;
    bool quoted = false;
    bool any = false;
    auto push_field = [&] {
        fields.push_back(field);
        field.clear();
    };

    while (true) {
        if (c == EOF) {
            if (quoted)
                throw ParseError(source_, record_line_, "unterminated quoted field");
            push_field();
            return true;
        }
        char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                int peek = in_.peek();
                if (peek == '"') {
                    in_.get();
                    field.push_back('"');
                } else {
                    quoted = false;
                }
            } else {
                if (ch == '\n') ++line_;
                field.push_back(ch);
            }
        } else if (ch == '"' && field.empty() && !any) {
            quoted = true;
            any = true;
        } else if (ch == ',') {
            push_field();
            any = false;
        } else if (ch == '\r') {
            // swallow; handled with the following \n or end of record
            int peek = in_.peek();
            if (peek == '\n' || peek == EOF) {
                in_.get();
                push_field();
                return true;
            }
            field.push_back(ch);
        } else if (ch == '\n') {
            push_field();
            return true;
        } else {
            field.push_back(ch);
            any = true;
        }
        c = in_.get();
    }
}

std::string csv_quote(const std::string& field) {
    bool needs = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += "\"\"";
        else out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

std::string csv_join(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += csv_quote(fields[i]);
    }
    return out;
}

long long parse_int_field(const std::string& value, const std::string& source,
                          long line, const std::string& field_name) {
    long long result = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, result);
    if (ec != std::errc() || ptr != end || value.empty())
        throw ParseError(source, line,
                         "malformed " + field_name + ": '" + value + "'");
    return result;
}

}  // namespace fss
