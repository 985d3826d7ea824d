#include "fss/metrics.hpp"

#include <algorithm>
#include <sstream>

#include "fss/format.hpp"

namespace fss {

BaselineSet compute_baselines(const Corpus& corpus) {
    // publications are sorted by id, so per-cell accumulation order is fixed
    std::map<CellKey, std::pair<long long, long long>> acc;  // sum, cited count
    std::map<CellKey, bool> seen;
    for (const Publication& p : corpus.publications) {
        CellKey key{p.year, p.subject_category};
        seen[key] = true;
        if (p.citation_count >= 1) {
            auto& [sum, count] = acc[key];
            sum += p.citation_count;
            count += 1;
        }
    }
    BaselineSet result;
    for (const auto& [key, cited] : acc)
        result.cells.emplace(key, FieldBaseline{static_cast<double>(cited.first) /
                                                    static_cast<double>(cited.second),
                                                cited.second});
    for (const auto& [key, present] : seen) {
        (void)present;
        if (!acc.count(key)) result.empty_cells.push_back(key);
    }
    return result;
}

std::string serialize_baselines(const BaselineSet& baselines) {
    std::ostringstream out;
    out << "year,subject_category,mean_cited_citations,cited_publication_count\n";
    for (const auto& [key, cell] : baselines.cells)
        out << key.year << ',' << key.subject_category << ','
            << format_real(cell.mean_cited_citations) << ','
            << cell.cited_publication_count << "\n";
    return out.str();
}

double normalized_impact(const Publication& publication, const BaselineSet& baselines) {
    if (publication.citation_count == 0) return 0.0;
    auto it = baselines.cells.find({publication.year, publication.subject_category});
    if (it == baselines.cells.end())
        throw MissingBaselineError("cited publication " + publication.publication_id +
                                   " has no baseline cell (" +
                                   std::to_string(publication.year) + ", " +
                                   publication.subject_category + ")");
    return static_cast<double>(publication.citation_count) /
           it->second.mean_cited_citations;
}

std::string to_string(CreditScheme scheme) {
    switch (scheme) {
        case CreditScheme::uniform: return "uniform";
        case CreditScheme::positional_case_a: return "positional_caseA";
        case CreditScheme::positional_case_b: return "positional_caseB";
        case CreditScheme::fallback_uniform: return "fallback_uniform";
    }
    return "?";
}

std::vector<double> uniform_fractions(std::size_t n_authors) {
    if (n_authors == 0)
        throw std::invalid_argument("uniform_fractions: no authors");
    return std::vector<double>(n_authors, 1.0 / static_cast<double>(n_authors));
}

FractionVector positional_fractions(const std::vector<std::string>& author_institutions,
                                    const PositionalWeights& weights) {
    const std::size_t n = author_institutions.size();
    if (n == 0)
        throw std::invalid_argument("positional_fractions: no authors");

    const bool same_ends = author_institutions.front() == author_institutions.back();

    FractionVector out;
    if (same_ends && n >= 3) {
        out.scheme = CreditScheme::positional_case_a;
        out.fractions.assign(n, weights.case_a_rest / static_cast<double>(n - 2));
        out.fractions.front() = weights.case_a_end;
        out.fractions.back() = weights.case_a_end;
        return out;
    }
    if (!same_ends && n >= 4) {
        out.scheme = CreditScheme::positional_case_b;
        if (n == 4) {
            // the "others" group has no recipients; redistribute its mass
            // proportionally over the assigned weights
            const double assigned = 2.0 * weights.case_b_end + 2.0 * weights.case_b_inner;
            const double scale = 1.0 / assigned;
            out.fractions = {weights.case_b_end * scale, weights.case_b_inner * scale,
                             weights.case_b_inner * scale, weights.case_b_end * scale};
        } else {
            out.fractions.assign(n, weights.case_b_rest / static_cast<double>(n - 4));
            out.fractions[0] = weights.case_b_end;
            out.fractions[n - 1] = weights.case_b_end;
            out.fractions[1] = weights.case_b_inner;
            out.fractions[n - 2] = weights.case_b_inner;
        }
        return out;
    }

    out.scheme = CreditScheme::fallback_uniform;
    out.fractions = uniform_fractions(n);
    return out;
}

namespace {

const std::vector<const Authorship*>& authors_of(const CorpusIndex& index,
                                                 const std::string& publication_id) {
    auto it = index.authors_of_publication.find(publication_id);
    if (it == index.authors_of_publication.end())
        throw std::invalid_argument("publication " + publication_id + " has no authors");
    return it->second;
}

bool uses_positional_scheme(const Researcher& researcher, const CorpusIndex& index) {
    const std::string sds = modal_sds(researcher);
    auto uda = index.corpus->taxonomy.sds_to_uda.find(sds);
    if (uda == index.corpus->taxonomy.sds_to_uda.end()) return false;
    return index.corpus->taxonomy.position_weighted_udas.count(uda->second) > 0;
}

}  // namespace

CreditShare contribution(const Publication& publication, const Researcher& researcher,
                         const CorpusIndex& index, const AnalysisConfig& config) {
    const auto& authors = authors_of(index, publication.publication_id);
    int position = 0;
    std::vector<std::string> institutions;
    institutions.reserve(authors.size());
    for (const Authorship* a : authors) {
        institutions.push_back(a->author_institution_id);
        if (a->researcher_id && *a->researcher_id == researcher.researcher_id)
            position = a->position;
    }
    if (position == 0)
        throw std::invalid_argument("researcher " + researcher.researcher_id +
                                    " is not an author of " + publication.publication_id);

    CreditShare share;
    share.publication_id = publication.publication_id;
    share.position = position;
    if (uses_positional_scheme(researcher, index)) {
        FractionVector f = positional_fractions(institutions, config.weights);
        share.fraction = f.fractions[static_cast<std::size_t>(position - 1)];
        share.scheme = f.scheme;
    } else {
        share.fraction = uniform_fractions(institutions.size())
                             [static_cast<std::size_t>(position - 1)];
        share.scheme = CreditScheme::uniform;
    }
    return share;
}

std::vector<FssTerm> fss_terms(const Researcher& researcher, const CorpusIndex& index,
                               const BaselineSet& baselines, const AnalysisConfig& config) {
    std::vector<FssTerm> terms;
    auto it = index.authorships_of_researcher.find(researcher.researcher_id);
    if (it == index.authorships_of_researcher.end()) return terms;
    // authorships are pre-sorted by publication_id, fixing the summation order
    for (const Authorship* a : it->second) {
        auto pub_it = index.publication_by_id.find(a->publication_id);
        if (pub_it == index.publication_by_id.end()) continue;
        const Publication& pub = *pub_it->second;
        if (!config.window.contains(pub.year)) continue;
        FssTerm term;
        term.publication_id = pub.publication_id;
        term.impact = normalized_impact(pub, baselines);
        term.fraction = contribution(pub, researcher, index, config).fraction;
        terms.push_back(std::move(term));
    }
    return terms;
}

double compute_fss(const Researcher& researcher, const CorpusIndex& index,
                   const BaselineSet& baselines, const AnalysisConfig& config) {
    const int t = years_active(researcher, config.window);
    if (t == 0)
        throw std::invalid_argument("researcher " + researcher.researcher_id +
                                    " has no role years in the window");
    double sum = 0.0;
    for (const FssTerm& term : fss_terms(researcher, index, baselines, config))
        sum += term.impact * term.fraction;
    return sum / static_cast<double>(t);
}

}  // namespace fss
