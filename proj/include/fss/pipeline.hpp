#ifndef FSS_PIPELINE_HPP
#define FSS_PIPELINE_HPP

#include <set>
#include <string>
#include <vector>

#include "fss/classify.hpp"
#include "fss/metrics.hpp"
#include "fss/rank.hpp"
#include "fss/types.hpp"

namespace fss {

class EmptyEligibleSet : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PipelineCounts {
    int researchers_total = 0;
    int dropped_role_records = 0;
    int below_min_years = 0;
    int in_excluded_sds = 0;
    int analyzed = 0;

    bool operator==(const PipelineCounts&) const = default;
};

struct PipelineResult {
    Corpus corpus;  // classified
    ClassificationSummary classification;
    BaselineSet baselines;
    std::set<std::string> retained_sds;
    std::vector<PerformanceRecord> records;  // analyzed researchers, by id
    PipelineCounts counts;
};

// classify -> baselines -> eligibility filters -> FSS -> cohorts ->
// percentiles -> tiles. Throws EmptyEligibleSet when the filters leave
// nobody to analyze.
PipelineResult run_pipeline(Corpus corpus, const NameLexicons& lexicons,
                            const OverrideMap& overrides, const AnalysisConfig& config,
                            int dropped_role_records = 0);

}  // namespace fss

#endif
