#ifndef FSS_TYPES_HPP
#define FSS_TYPES_HPP

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fss {

enum class Rank { assistant, associate, full };

enum class NationalityClass { domestic, foreign, unresolved };

std::string to_string(Rank r);
std::string to_string(NationalityClass c);
std::optional<Rank> rank_from_token(const std::string& token);

struct YearWindow {
    int start_year = 2010;
    int end_year = 2014;

    int length() const { return end_year - start_year + 1; }
    bool contains(int year) const { return year >= start_year && year <= end_year; }
    bool operator==(const YearWindow&) const = default;
};

// One roster row: the rank and field held by a researcher at the close of a year.
struct RoleRecord {
    int year = 0;
    Rank rank = Rank::assistant;
    std::string sds_code;

    bool operator==(const RoleRecord&) const = default;
};

struct Researcher {
    std::string researcher_id;
    std::string given_name;
    std::string family_name;
    std::string institution_id;
    std::vector<RoleRecord> role_records;  // sorted by year, at most one per year
    std::optional<bool> foreign_birth_flag;
    NationalityClass nationality_class = NationalityClass::unresolved;
    // Ingested when the roster carries them; gender is never used in any computation,
    // provenance_country feeds only the country-frequency report.
    std::optional<std::string> gender;
    std::optional<std::string> provenance_country;

    bool operator==(const Researcher&) const = default;
};

struct Publication {
    std::string publication_id;
    int year = 0;
    std::string subject_category;
    long long citation_count = 0;  // frozen at the corpus census date

    bool operator==(const Publication&) const = default;
};

struct Authorship {
    std::string publication_id;
    int position = 0;  // 1-based within the publication's author list
    std::optional<std::string> researcher_id;  // absent for external authors
    std::string author_institution_id;

    bool operator==(const Authorship&) const = default;
};

struct FieldTaxonomy {
    std::map<std::string, std::string> sds_to_uda;
    std::map<std::string, std::string> uda_names;
    std::set<std::string> alphabetical_order_sds;
    std::set<std::string> position_weighted_udas;

    bool operator==(const FieldTaxonomy&) const = default;
};

struct Corpus {
    std::vector<Researcher> researchers;    // sorted by researcher_id
    std::vector<Publication> publications;  // sorted by publication_id
    std::vector<Authorship> authorships;    // sorted by (publication_id, position)
    FieldTaxonomy taxonomy;
    std::string census_date;  // provenance only, never a computation input
    YearWindow window;

    bool operator==(const Corpus&) const = default;
};

struct PositionalWeights {
    double case_a_end = 0.40;
    double case_a_rest = 0.20;
    double case_b_end = 0.30;
    double case_b_inner = 0.15;
    double case_b_rest = 0.10;

    bool operator==(const PositionalWeights&) const = default;
};

struct PercentileThresholds {
    double top1 = 99.0;
    double top5 = 95.0;
    double top10 = 90.0;
    double bottom_quintile = 20.0;

    bool operator==(const PercentileThresholds&) const = default;
};

struct AnalysisConfig {
    YearWindow window{2010, 2014};
    int min_role_years = 3;
    double sds_publishing_threshold = 0.50;
    PercentileThresholds tiles;
    PositionalWeights weights;

    bool operator==(const AnalysisConfig&) const = default;
};

// Config invariant violations, empty when the config is usable.
std::vector<std::string> check_config(const AnalysisConfig& config);

struct Violation {
    std::string code;     // stable machine-readable kind
    std::string locator;  // record identifier and field
    std::string detail;

    bool operator==(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

// Collects every referential-integrity, uniqueness and range violation.
// Pure: the corpus is not modified and repeated calls return identical reports.
ValidationReport validate_corpus(const Corpus& corpus);

std::string format_report(const ValidationReport& report);

// Lookup structures shared by the computation stages. Non-owning; the corpus
// must outlive the index.
struct CorpusIndex {
    const Corpus* corpus = nullptr;
    std::map<std::string, const Researcher*> researcher_by_id;
    std::map<std::string, const Publication*> publication_by_id;
    // per publication, ordered by position
    std::map<std::string, std::vector<const Authorship*>> authors_of_publication;
    // per roster researcher, ordered by publication_id
    std::map<std::string, std::vector<const Authorship*>> authorships_of_researcher;

    static CorpusIndex build(const Corpus& corpus);
};

// Most frequent value over the in-window role records, ties broken by the
// value seen in the latest year. Researchers changing SDS or rank mid-window
// are assigned through these.
std::string modal_sds(const Researcher& r);
Rank modal_rank(const Researcher& r);

// Role-record years, the t of the productivity indicator.
int years_active(const Researcher& r, const YearWindow& window);

class CorpusError : public std::runtime_error {
public:
    CorpusError(std::string message, ValidationReport report)
        : std::runtime_error(std::move(message)), report_(std::move(report)) {}
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

}  // namespace fss

#endif
