#include "fss/rank.hpp"

#include <algorithm>
#include <sstream>

#include "fss/format.hpp"

namespace fss {

std::string tile_flags_text(const TileFlags& t) {
    std::string out;
    auto append = [&](bool flag, const char* name) {
        if (!flag) return;
        if (!out.empty()) out.push_back('|');
        out += name;
    };
    append(t.top1, "top1");
    append(t.top5, "top5");
    append(t.top10, "top10");
    append(t.above_median, "above_median");
    append(t.bottom20, "bottom20");
    append(t.unproductive, "unproductive");
    return out;
}

std::set<std::string> eligible_sds(const CorpusIndex& index, const AnalysisConfig& config) {
    std::map<std::string, std::pair<int, int>> counts;  // sds -> (publishing, total)
    for (const Researcher& r : index.corpus->researchers) {
        if (years_active(r, config.window) < config.min_role_years) continue;
        auto& [publishing, total] = counts[modal_sds(r)];
        total += 1;
        bool published = false;
        auto it = index.authorships_of_researcher.find(r.researcher_id);
        if (it != index.authorships_of_researcher.end()) {
            for (const Authorship* a : it->second) {
                auto pub = index.publication_by_id.find(a->publication_id);
                if (pub != index.publication_by_id.end() &&
                    config.window.contains(pub->second->year)) {
                    published = true;
                    break;
                }
            }
        }
        if (published) publishing += 1;
    }
    std::set<std::string> retained;
    for (const auto& [sds, c] : counts) {
        if (c.second == 0) continue;
        double fraction = static_cast<double>(c.first) / static_cast<double>(c.second);
        if (fraction >= config.sds_publishing_threshold) retained.insert(sds);
    }
    return retained;
}

std::map<CohortKey, std::vector<std::size_t>> form_cohorts(
    std::vector<PerformanceRecord>& records, const CorpusIndex& index) {
    std::map<CohortKey, std::vector<std::size_t>> cohorts;
    for (std::size_t i = 0; i < records.size(); ++i) {
        PerformanceRecord& record = records[i];
        auto it = index.researcher_by_id.find(record.researcher_id);
        if (it == index.researcher_by_id.end())
            throw std::invalid_argument("performance record for unknown researcher " +
                                        record.researcher_id);
        const Researcher& r = *it->second;
        record.rank = modal_rank(r);
        record.sds_code = modal_sds(r);
        auto uda = index.corpus->taxonomy.sds_to_uda.find(record.sds_code);
        record.uda_code = uda == index.corpus->taxonomy.sds_to_uda.end() ? ""
                                                                         : uda->second;
        cohorts[{record.rank, record.sds_code}].push_back(i);
    }
    return cohorts;
}

double percentile_of(long long strictly_lower, long long tie_size, long long cohort_size) {
    if (cohort_size <= 1) return 50.0;
    const double midrank =
        static_cast<double>(strictly_lower) + static_cast<double>(tie_size - 1) / 2.0;
    return 100.0 * midrank / static_cast<double>(cohort_size - 1);
}

void percentile_scores(std::vector<PerformanceRecord>& records,
                       const std::vector<std::size_t>& cohort) {
    const long long n = static_cast<long long>(cohort.size());
    std::vector<std::size_t> order(cohort.begin(), cohort.end());
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return records[a].fss < records[b].fss;
    });
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && records[order[j]].fss == records[order[i]].fss) ++j;
        const double pct = percentile_of(static_cast<long long>(i),
                                         static_cast<long long>(j - i), n);
        for (std::size_t k = i; k < j; ++k) records[order[k]].percentile = pct;
        i = j;
    }
}

TileFlags assign_tiles(double fss, double percentile, const PercentileThresholds& thresholds) {
    TileFlags tiles;
    tiles.top1 = percentile >= thresholds.top1;
    tiles.top5 = percentile >= thresholds.top5;
    tiles.top10 = percentile >= thresholds.top10;
    tiles.above_median = percentile > 50.0;
    tiles.bottom20 = percentile < thresholds.bottom_quintile;
    tiles.unproductive = fss == 0.0;
    return tiles;
}

std::string serialize_performance(const std::vector<PerformanceRecord>& records) {
    std::ostringstream out;
    out << "researcher_id,rank,sds_code,uda_code,t,publication_count,fss,"
           "percentile,tile_flags\n";
    for (const PerformanceRecord& r : records)
        out << r.researcher_id << ',' << to_string(r.rank) << ',' << r.sds_code << ','
            << r.uda_code << ',' << r.years_active << ',' << r.publication_count << ','
            << format_real(r.fss) << ',' << format_real(r.percentile) << ','
            << tile_flags_text(r.tiles) << "\n";
    return out.str();
}

}  // namespace fss
