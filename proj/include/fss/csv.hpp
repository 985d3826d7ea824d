#ifndef FSS_CSV_HPP
#define FSS_CSV_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace fss {

class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, long line, const std::string& message)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
          source_(std::move(source)),
          line_(line) {}
    const std::string& source() const { return source_; }
    long line() const { return line_; }

private:
    std::string source_;
    long line_;
};

// Comma-separated records with double-quote quoting; quoted fields may embed
// commas, doubled quotes and newlines.
class CsvReader {
public:
    CsvReader(std::istream& in, std::string source_name);

    // Reads the next record into fields; returns false at end of input.
    bool next(std::vector<std::string>& fields);

    // Line on which the last returned record started (1-based).
    long record_line() const { return record_line_; }
    const std::string& source() const { return source_; }

private:
    std::istream& in_;
    std::string source_;
    long line_ = 0;
    long record_line_ = 0;
};

std::string csv_quote(const std::string& field);
std::string csv_join(const std::vector<std::string>& fields);

// Strict integer parse; throws ParseError naming the field on junk input.
long long parse_int_field(const std::string& value, const std::string& source,
                          long line, const std::string& field_name);

}  // namespace fss

#endif
