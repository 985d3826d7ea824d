#include "fss/oracle.hpp"

#include <stdexcept>

namespace fss {
namespace {

int count_window_years(const Researcher& r, const YearWindow& window) {
    int t = 0;
    for (const RoleRecord& rec : r.role_records)
        if (rec.year >= window.start_year && rec.year <= window.end_year) ++t;
    return t;
}

// modal SDS by per-record counting, ties to the latest year
std::string oracle_modal_sds(const Researcher& r) {
    std::string best;
    int best_count = -1;
    int best_latest = -1;
    for (const RoleRecord& candidate : r.role_records) {
        int count = 0;
        int latest = -1;
        for (const RoleRecord& other : r.role_records)
            if (other.sds_code == candidate.sds_code) {
                ++count;
                if (other.year > latest) latest = other.year;
            }
        if (count > best_count || (count == best_count && latest > best_latest) ||
            (count == best_count && latest == best_latest &&
             (best.empty() || candidate.sds_code < best))) {
            best = candidate.sds_code;
            best_count = count;
            best_latest = latest;
        }
    }
    return best;
}

double oracle_cell_mean(const Corpus& corpus, int year, const std::string& category) {
    long long sum = 0;
    long long cited = 0;
    for (const Publication& p : corpus.publications)
        if (p.year == year && p.subject_category == category && p.citation_count >= 1) {
            sum += p.citation_count;
            cited += 1;
        }
    if (cited == 0)
        throw std::logic_error("oracle: cited publication in a cell with no cited members");
    return static_cast<double>(sum) / static_cast<double>(cited);
}

double oracle_fraction(const Corpus& corpus, const Publication& pub,
                       const std::string& researcher_id, bool positional,
                       const PositionalWeights& w) {
    // collect the author list ordered by position, by repeated scans
    int n = 0;
    for (const Authorship& a : corpus.authorships)
        if (a.publication_id == pub.publication_id) ++n;

    int my_position = 0;
    std::string first_institution, last_institution;
    for (const Authorship& a : corpus.authorships) {
        if (a.publication_id != pub.publication_id) continue;
        if (a.position == 1) first_institution = a.author_institution_id;
        if (a.position == n) last_institution = a.author_institution_id;
        if (a.researcher_id && *a.researcher_id == researcher_id)
            my_position = a.position;
    }
    if (my_position == 0)
        throw std::logic_error("oracle: researcher not on claimed publication");

    if (!positional) return 1.0 / static_cast<double>(n);

    const bool same_ends = first_institution == last_institution;
    if (same_ends && n >= 3) {
        if (my_position == 1 || my_position == n) return w.case_a_end;
        return w.case_a_rest / static_cast<double>(n - 2);
    }
    if (!same_ends && n >= 4) {
        if (n == 4) {
            const double scale = 2.0 * w.case_b_end + 2.0 * w.case_b_inner;
            if (my_position == 1 || my_position == n) return w.case_b_end / scale;
            return w.case_b_inner / scale;
        }
        if (my_position == 1 || my_position == n) return w.case_b_end;
        if (my_position == 2 || my_position == n - 1) return w.case_b_inner;
        return w.case_b_rest / static_cast<double>(n - 4);
    }
    return 1.0 / static_cast<double>(n);
}

}  // namespace

std::map<std::string, double> oracle_fss(const Corpus& corpus,
                                         const AnalysisConfig& config) {
    std::map<std::string, double> result;
    for (const Researcher& r : corpus.researchers) {
        const int t = count_window_years(r, config.window);
        if (t < config.min_role_years) continue;

        const std::string sds = oracle_modal_sds(r);
        bool positional = false;
        auto uda = corpus.taxonomy.sds_to_uda.find(sds);
        if (uda != corpus.taxonomy.sds_to_uda.end())
            positional = corpus.taxonomy.position_weighted_udas.count(uda->second) > 0;

        double sum = 0.0;
        // publications are sorted by id, matching the engine's summation order
        for (const Publication& pub : corpus.publications) {
            if (pub.year < config.window.start_year || pub.year > config.window.end_year)
                continue;
            bool authored = false;
            for (const Authorship& a : corpus.authorships)
                if (a.publication_id == pub.publication_id && a.researcher_id &&
                    *a.researcher_id == r.researcher_id) {
                    authored = true;
                    break;
                }
            if (!authored) continue;

            double impact = 0.0;
            if (pub.citation_count > 0)
                impact = static_cast<double>(pub.citation_count) /
                         oracle_cell_mean(corpus, pub.year, pub.subject_category);
            sum += impact *
                   oracle_fraction(corpus, pub, r.researcher_id, positional, config.weights);
        }
        result[r.researcher_id] = sum / static_cast<double>(t);
    }
    return result;
}

std::map<std::string, double> oracle_percentiles(
    const std::map<std::string, double>& fss,
    const std::map<std::string, std::vector<std::string>>& cohorts) {
    std::map<std::string, double> result;
    for (const auto& [label, members] : cohorts) {
        (void)label;
        const long long n = static_cast<long long>(members.size());
        for (const std::string& id : members) {
            const double mine = fss.at(id);
            long long lower = 0;
            long long tied = 0;
            for (const std::string& other : members) {
                const double theirs = fss.at(other);
                if (theirs < mine) ++lower;
                if (theirs == mine) ++tied;  // includes self
            }
            double pct;
            if (n <= 1)
                pct = 50.0;
            else
                pct = 100.0 *
                      (static_cast<double>(lower) + static_cast<double>(tied - 1) / 2.0) /
                      static_cast<double>(n - 1);
            result[id] = pct;
        }
    }
    return result;
}

}  // namespace fss
