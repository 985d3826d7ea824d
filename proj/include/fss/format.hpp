#ifndef FSS_FORMAT_HPP
#define FSS_FORMAT_HPP

#include <string>

namespace fss {

// Full-precision value for export files: %.12g, deterministic for a given
// double.
std::string format_real(double value);

// Report-table rendering: one decimal place, the convention of the published
// tables.
std::string format_one_decimal(double value);

}  // namespace fss

#endif
