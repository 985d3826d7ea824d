#include "fss/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fss {

std::string to_string(Rank r) {
    switch (r) {
        case Rank::assistant: return "assistant";
        case Rank::associate: return "associate";
        case Rank::full: return "full";
    }
    return "?";
}

std::string to_string(NationalityClass c) {
    switch (c) {
        case NationalityClass::domestic: return "domestic";
        case NationalityClass::foreign: return "foreign";
        case NationalityClass::unresolved: return "unresolved";
    }
    return "?";
}

std::optional<Rank> rank_from_token(const std::string& token) {
    if (token == "assistant") return Rank::assistant;
    if (token == "associate") return Rank::associate;
    if (token == "full") return Rank::full;
    return std::nullopt;
}

std::vector<std::string> check_config(const AnalysisConfig& config) {
    std::vector<std::string> problems;
    if (config.window.start_year > config.window.end_year)
        problems.push_back("window start after end");
    if (config.min_role_years < 1)
        problems.push_back("min_role_years must be at least 1");
    if (config.window.length() < config.min_role_years)
        problems.push_back("window shorter than min_role_years");
    if (config.sds_publishing_threshold < 0.0 || config.sds_publishing_threshold > 1.0)
        problems.push_back("sds_publishing_threshold outside [0,1]");
    const auto& w = config.weights;
    // each weight group must carry total mass 1
    double case_a = 2.0 * w.case_a_end + w.case_a_rest;
    double case_b = 2.0 * w.case_b_end + 2.0 * w.case_b_inner + w.case_b_rest;
    if (std::abs(case_a - 1.0) > 1e-12)
        problems.push_back("case A weights do not sum to 1");
    if (std::abs(case_b - 1.0) > 1e-12)
        problems.push_back("case B weights do not sum to 1");
    const auto& t = config.tiles;
    if (!(t.top1 >= t.top5 && t.top5 >= t.top10))
        problems.push_back("tile thresholds not ordered top1 >= top5 >= top10");
    if (t.bottom_quintile < 0 || t.bottom_quintile > 100 || t.top1 > 100)
        problems.push_back("tile thresholds outside [0,100]");
    return problems;
}

namespace {

void add(ValidationReport& report, std::string code, std::string locator,
         std::string detail) {
    report.push_back({std::move(code), std::move(locator), std::move(detail)});
}

}  // namespace

ValidationReport validate_corpus(const Corpus& corpus) {
    ValidationReport report;

    if (corpus.window.start_year > corpus.window.end_year)
        add(report, "bad-window", "corpus.window", "start year after end year");

    std::set<std::string> researcher_ids;
    for (const Researcher& r : corpus.researchers) {
        if (!researcher_ids.insert(r.researcher_id).second)
            add(report, "duplicate-researcher", r.researcher_id,
                "researcher_id appears more than once");
        std::set<int> years;
        for (const RoleRecord& rec : r.role_records) {
            if (!years.insert(rec.year).second)
                add(report, "duplicate-role-year",
                    r.researcher_id + "/" + std::to_string(rec.year),
                    "more than one role record for the year");
            if (!corpus.window.contains(rec.year))
                add(report, "role-year-outside-window",
                    r.researcher_id + "/" + std::to_string(rec.year),
                    "role record year outside the analysis window");
            if (!corpus.taxonomy.sds_to_uda.count(rec.sds_code))
                add(report, "unknown-sds",
                    r.researcher_id + "/" + rec.sds_code,
                    "sds_code does not resolve to a UDA");
        }
    }

    std::set<std::string> publication_ids;
    for (const Publication& p : corpus.publications) {
        if (!publication_ids.insert(p.publication_id).second)
            add(report, "duplicate-publication", p.publication_id,
                "publication_id appears more than once");
        if (p.citation_count < 0)
            add(report, "negative-citations",
                p.publication_id + "/citation_count",
                "citation_count below zero");
        if (p.year > corpus.window.end_year)
            add(report, "publication-after-window",
                p.publication_id + "/year",
                "publication dated after the analysis window end");
        if (p.subject_category.empty())
            add(report, "missing-subject-category",
                p.publication_id + "/subject_category", "empty subject category");
    }

    // positions per publication and per-publication researcher uniqueness
    std::map<std::string, std::vector<int>> positions;
    std::map<std::string, std::set<std::string>> pub_researchers;
    for (const Authorship& a : corpus.authorships) {
        if (!publication_ids.count(a.publication_id))
            add(report, "dangling-publication-ref",
                a.publication_id + "/pos" + std::to_string(a.position),
                "authorship references unknown publication_id " + a.publication_id);
        if (a.researcher_id) {
            if (!researcher_ids.count(*a.researcher_id))
                add(report, "dangling-researcher-ref",
                    a.publication_id + "/pos" + std::to_string(a.position),
                    "authorship references unknown researcher_id " + *a.researcher_id);
            if (!pub_researchers[a.publication_id].insert(*a.researcher_id).second)
                add(report, "repeated-author",
                    a.publication_id + "/" + *a.researcher_id,
                    "researcher listed more than once on the publication");
        } else if (a.author_institution_id.empty()) {
            add(report, "anonymous-authorship",
                a.publication_id + "/pos" + std::to_string(a.position),
                "neither researcher_id nor author_institution_id present");
        }
        positions[a.publication_id].push_back(a.position);
    }
    for (auto& [pub, pos] : positions) {
        std::sort(pos.begin(), pos.end());
        for (size_t i = 0; i < pos.size(); ++i) {
            if (pos[i] != static_cast<int>(i) + 1) {
                add(report, "non-contiguous-positions", pub,
                    "author positions do not form 1.." + std::to_string(pos.size()));
                break;
            }
        }
    }

    return report;
}

std::string format_report(const ValidationReport& report) {
    std::ostringstream out;
    for (const Violation& v : report)
        out << v.code << " at " << v.locator << ": " << v.detail << "\n";
    return out.str();
}

CorpusIndex CorpusIndex::build(const Corpus& corpus) {
    CorpusIndex index;
    index.corpus = &corpus;
    for (const Researcher& r : corpus.researchers)
        index.researcher_by_id.emplace(r.researcher_id, &r);
    for (const Publication& p : corpus.publications)
        index.publication_by_id.emplace(p.publication_id, &p);
    for (const Authorship& a : corpus.authorships) {
        index.authors_of_publication[a.publication_id].push_back(&a);
        if (a.researcher_id)
            index.authorships_of_researcher[*a.researcher_id].push_back(&a);
    }
    for (auto& [pub, list] : index.authors_of_publication)
        std::sort(list.begin(), list.end(),
                  [](const Authorship* a, const Authorship* b) {
                      return a->position < b->position;
                  });
    for (auto& [rid, list] : index.authorships_of_researcher)
        std::sort(list.begin(), list.end(),
                  [](const Authorship* a, const Authorship* b) {
                      return a->publication_id < b->publication_id;
                  });
    return index;
}

namespace {

// Shared modal rule: most frequent value, ties to the value held in the
// latest year.
template <typename Key>
Key modal_value(const Researcher& r, Key (*key_of)(const RoleRecord&)) {
    std::map<Key, int> counts;
    std::map<Key, int> latest;
    for (const RoleRecord& rec : r.role_records) {
        Key k = key_of(rec);
        counts[k] += 1;
        auto [it, inserted] = latest.emplace(k, rec.year);
        if (!inserted && rec.year > it->second) it->second = rec.year;
    }
    if (counts.empty())
        throw std::invalid_argument("researcher " + r.researcher_id +
                                    " has no role records");
    Key best{};
    int best_count = -1;
    int best_latest = -1;
    for (const auto& [k, n] : counts) {
        int last = latest[k];
        if (n > best_count || (n == best_count && last > best_latest)) {
            best = k;
            best_count = n;
            best_latest = last;
        }
    }
    return best;
}

std::string sds_of(const RoleRecord& rec) { return rec.sds_code; }
Rank rank_of(const RoleRecord& rec) { return rec.rank; }

}  // namespace

std::string modal_sds(const Researcher& r) { return modal_value<std::string>(r, &sds_of); }

Rank modal_rank(const Researcher& r) { return modal_value<Rank>(r, &rank_of); }

int years_active(const Researcher& r, const YearWindow& window) {
    int t = 0;
    for (const RoleRecord& rec : r.role_records)
        if (window.contains(rec.year)) ++t;
    return t;
}

}  // namespace fss
