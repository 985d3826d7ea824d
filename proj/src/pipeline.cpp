#include "fss/pipeline.hpp"

#include <algorithm>

namespace fss {

PipelineResult run_pipeline(Corpus corpus, const NameLexicons& lexicons,
                            const OverrideMap& overrides, const AnalysisConfig& config,
                            int dropped_role_records) {
    auto config_problems = check_config(config);
    if (!config_problems.empty())
        throw std::invalid_argument("invalid analysis config: " + config_problems.front());

    PipelineResult result;
    result.corpus = std::move(corpus);
    result.counts.dropped_role_records = dropped_role_records;
    result.counts.researchers_total = static_cast<int>(result.corpus.researchers.size());

    result.classification = classify_corpus(result.corpus, lexicons, overrides);
    result.baselines = compute_baselines(result.corpus);

    const CorpusIndex index = CorpusIndex::build(result.corpus);
    result.retained_sds = eligible_sds(index, config);

    for (const Researcher& r : result.corpus.researchers) {
        const int t = years_active(r, config.window);
        if (t < config.min_role_years) {
            result.counts.below_min_years += 1;
            continue;
        }
        if (!result.retained_sds.count(modal_sds(r))) {
            result.counts.in_excluded_sds += 1;
            continue;
        }
        PerformanceRecord record;
        record.researcher_id = r.researcher_id;
        record.years_active = t;
        const auto terms = fss_terms(r, index, result.baselines, config);
        record.publication_count = static_cast<long long>(terms.size());
        double sum = 0.0;
        for (const FssTerm& term : terms) sum += term.impact * term.fraction;
        record.fss = sum / static_cast<double>(t);
        result.records.push_back(std::move(record));
    }
    result.counts.analyzed = static_cast<int>(result.records.size());
    if (result.records.empty())
        throw EmptyEligibleSet("no researcher passes the eligibility filters");

    auto cohorts = form_cohorts(result.records, index);
    for (const auto& [key, members] : cohorts) {
        (void)key;
        percentile_scores(result.records, members);
    }
    for (PerformanceRecord& record : result.records)
        record.tiles = assign_tiles(record.fss, record.percentile, config.tiles);

    std::sort(result.records.begin(), result.records.end(),
              [](const PerformanceRecord& a, const PerformanceRecord& b) {
                  return a.researcher_id < b.researcher_id;
              });
    return result;
}

}  // namespace fss
