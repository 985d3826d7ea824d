#ifndef FSS_ANALYTICS_HPP
#define FSS_ANALYTICS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fss/rank.hpp"
#include "fss/types.hpp"

namespace fss {

// One table cell with its formatting role. Counts render as integers,
// percent/mean values to one decimal (underlying doubles keep full
// precision), count_share as "N (P%)", absent denominators as "n.a".
struct ReportCell {
    enum class Kind { count, percent, mean, count_share, na, text };

    Kind kind = Kind::na;
    double value = 0.0;
    long long count = 0;
    std::optional<double> share;  // count_share only; empty renders the dash
    std::string text;

    static ReportCell of_count(long long n);
    static ReportCell of_percent(double value);
    static ReportCell of_mean(double value);
    static ReportCell of_count_share(long long n, std::optional<double> share);
    static ReportCell not_available();
    static ReportCell of_text(std::string text);

    std::string rendered() const;
};

struct ReportTable {
    std::string title;
    std::vector<std::string> columns;   // fixed, documented order
    std::vector<std::string> row_keys;  // each present exactly once
    std::vector<std::vector<ReportCell>> rows;  // parallel to row_keys
    std::vector<std::string> footnotes;

    // header + one line per row; footnotes as trailing '#' lines
    std::string to_tabular() const;
    // structured-record document (JSON)
    std::string to_records() const;
};

// Per-record nationality resolved from the classified corpus.
NationalityClass record_class(const PerformanceRecord& record, const CorpusIndex& index);

// Table 1 shape: professor counts by UDA and rank with the share of foreign
// professors in brackets; unresolved researchers stay in the counts and are
// disclosed in a footnote.
ReportTable composition_report(const std::vector<PerformanceRecord>& records,
                               const CorpusIndex& index);

// Table 2 shape: observation counts and mean FSS percentile by UDA and rank
// for one nationality class; empty cells render "n.a".
ReportTable average_percentile_report(const std::vector<PerformanceRecord>& records,
                                      const CorpusIndex& index,
                                      NationalityClass class_filter);

// Table 3 shape: share of the filtered group in each FSS distribution tile,
// by UDA and overall.
ReportTable tile_share_report(const std::vector<PerformanceRecord>& records,
                              const CorpusIndex& index, NationalityClass class_filter);

// Country provenance frequencies of the filtered (foreign) group, descending
// count then country name; missing provenance buckets as "unknown".
ReportTable country_frequency(const std::vector<PerformanceRecord>& records,
                              const CorpusIndex& index);

// Frequencies aggregated over a country -> region map; unmapped countries
// keep their own name.
ReportTable region_frequency(const std::vector<PerformanceRecord>& records,
                             const CorpusIndex& index,
                             const std::map<std::string, std::string>& region_map);

// columns country,region
std::map<std::string, std::string> load_region_map(std::istream& in,
                                                   const std::string& source_name);

class EmptyGroupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Descriptive comparison of two nationality groups: mean percentile and
// delta, per-rank means, tile-share deltas. No significance testing.
ReportTable compare_groups(const std::vector<PerformanceRecord>& records,
                           const CorpusIndex& index, NationalityClass group_a,
                           NationalityClass group_b);

}  // namespace fss

#endif
