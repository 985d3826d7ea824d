#ifndef FSS_CLASSIFY_HPP
#define FSS_CLASSIFY_HPP

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fss/types.hpp"

namespace fss {

// User-supplied lists defining what counts as a domestic name. Tokens are
// stored pre-normalized (normalize_name form).
struct NameLexicons {
    std::set<std::string> domestic_given_names;
    std::set<std::string> domestic_family_names;
};

// One normalized token per line. Throws on an empty lexicon.
std::set<std::string> load_lexicon(std::istream& in, const std::string& source_name);

struct OverrideEntry {
    std::string researcher_id;
    NationalityClass resolved_class = NationalityClass::domestic;  // domestic or foreign
    std::string reason;

    bool operator==(const OverrideEntry&) const = default;
};

using OverrideMap = std::map<std::string, OverrideEntry>;

// Columns researcher_id,resolved_class,reason; at most one entry per
// researcher.
OverrideMap load_overrides(std::istream& in, const std::string& source_name);

enum class DecidingStep {
    birth_flag,       // step 1: not foreign-born
    name_lexicon,     // step 2: both names agree
    manual_override,  // step 3: mixed names, override present
    none,             // step 3 reached, no override: unresolved
};

std::string to_string(DecidingStep step);

struct Classification {
    NationalityClass nationality = NationalityClass::unresolved;
    DecidingStep step = DecidingStep::none;

    bool operator==(const Classification&) const = default;
};

// The three-step procedure. Throws on empty name fields.
Classification classify_nationality(const Researcher& researcher,
                                    const NameLexicons& lexicons,
                                    const OverrideMap& overrides);

struct ClassificationSummary {
    std::map<NationalityClass, long long> per_class;
    std::map<DecidingStep, long long> per_step;
    long long total = 0;
    long long unresolved = 0;
    double foreign_share = 0.0;  // foreign / total, 0 when total is 0
    // overrides never consulted because their researcher did not reach the
    // mixed-name branch (or is not in the corpus)
    std::vector<std::string> unused_override_ids;
};

// Classifies every researcher in place and summarizes the outcome.
ClassificationSummary classify_corpus(Corpus& corpus, const NameLexicons& lexicons,
                                      const OverrideMap& overrides);

// Same tallies without mutating the corpus (classification is pure, so the
// recomputation matches any classify_corpus outcome).
ClassificationSummary classification_summary(const Corpus& corpus,
                                             const NameLexicons& lexicons,
                                             const OverrideMap& overrides);

std::string serialize_classification(const Corpus& corpus, const NameLexicons& lexicons,
                                     const OverrideMap& overrides);
std::string serialize_classification_summary(const ClassificationSummary& summary);

}  // namespace fss

#endif
