#ifndef FSS_INGEST_HPP
#define FSS_INGEST_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "fss/types.hpp"

namespace fss {

// Input files of one corpus. Lexicon/override/region paths ride along for the
// classification and reporting stages; they are not part of the Corpus itself.
struct IngestManifest {
    std::string roster_path;
    std::string publications_path;
    std::string authorships_path;
    std::string taxonomy_path;
    std::string lexicon_given_path;   // optional until classification
    std::string lexicon_family_path;  // optional until classification
    std::string overrides_path;       // optional
    std::string region_map_path;      // optional
    std::string census_date;
    std::string format_version = "1";
};

std::vector<Researcher> parse_roster(std::istream& in, const std::string& source_name);
std::vector<Publication> parse_publications(std::istream& in, const std::string& source_name);
std::vector<Authorship> parse_authorships(std::istream& in, const std::string& source_name);
FieldTaxonomy parse_taxonomy(std::istream& in, const std::string& source_name);

struct BuildResult {
    Corpus corpus;
    int dropped_role_records = 0;  // role years outside the analysis window
};

// Parses all four inputs, filters role records to the window, cross-links and
// validates. Throws CorpusError carrying the full report on any violation,
// ParseError on malformed input, std::runtime_error on unreadable files.
BuildResult build_corpus(const IngestManifest& manifest, const AnalysisConfig& config);

// Serialized forms identical to the ingest formats; re-ingesting the output
// reproduces the corpus field-by-field.
std::string serialize_roster(const Corpus& corpus);
std::string serialize_publications(const Corpus& corpus);
std::string serialize_authorships(const Corpus& corpus);
std::string serialize_taxonomy(const Corpus& corpus);

}  // namespace fss

#endif
