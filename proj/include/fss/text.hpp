#ifndef FSS_TEXT_HPP
#define FSS_TEXT_HPP

#include <string>
#include <string_view>

namespace fss {

// Canonical form used for all name comparisons: case fold, compatibility
// folding of Latin ligatures (æ -> ae, ß -> ss, œ -> oe), diacritic
// stripping over the Latin-1 / Latin Extended-A/B blocks, removal of
// combining marks, and whitespace collapsed to single spaces.
// Tokens the folding table does not cover pass through unchanged.
std::string normalize_name(std::string_view utf8);

}  // namespace fss

#endif
