#ifndef FSS_RANK_HPP
#define FSS_RANK_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fss/types.hpp"

namespace fss {

struct TileFlags {
    bool top1 = false;
    bool top5 = false;
    bool top10 = false;
    bool above_median = false;
    bool bottom20 = false;
    bool unproductive = false;

    bool operator==(const TileFlags&) const = default;
};

std::string tile_flags_text(const TileFlags& tiles);

struct PerformanceRecord {
    std::string researcher_id;
    Rank rank = Rank::assistant;  // modal over the window
    std::string sds_code;         // modal over the window
    std::string uda_code;
    int years_active = 0;              // t
    long long publication_count = 0;   // N, window publications
    double fss = 0.0;
    double percentile = 0.0;  // 0-100, worst to best
    TileFlags tiles;
};

// SDSs retained for analysis: at least sds_publishing_threshold of the
// professors meeting the min-years rule have one or more window
// publications. SDSs without qualifying professors are excluded.
std::set<std::string> eligible_sds(const CorpusIndex& index, const AnalysisConfig& config);

using CohortKey = std::pair<Rank, std::string>;

// Assigns each record its modal rank/SDS cohort and groups records by cohort.
// Returned values index into the records vector.
std::map<CohortKey, std::vector<std::size_t>> form_cohorts(
    std::vector<PerformanceRecord>& records, const CorpusIndex& index);

// Midrank percentile on the 0-100 worst-to-best scale: a member with k
// strictly lower peers in an m-way tie scores 100*(k + (m-1)/2)/(N-1);
// singleton cohorts score 50.
double percentile_of(long long strictly_lower, long long tie_size, long long cohort_size);

// Fills the percentile of every cohort member from its FSS.
void percentile_scores(std::vector<PerformanceRecord>& records,
                       const std::vector<std::size_t>& cohort);

TileFlags assign_tiles(double fss, double percentile, const PercentileThresholds& thresholds);

std::string serialize_performance(const std::vector<PerformanceRecord>& records);

}  // namespace fss

#endif
