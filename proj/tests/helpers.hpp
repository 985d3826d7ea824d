#ifndef FSS_TESTS_HELPERS_HPP
#define FSS_TESTS_HELPERS_HPP

#include <string>
#include <vector>

#include "fss/types.hpp"

namespace fss::testing {

inline Researcher make_researcher(std::string id, std::string sds, Rank rank,
                                  int first_year, int last_year,
                                  std::string institution = "U01") {
    Researcher r;
    r.researcher_id = std::move(id);
    r.given_name = "Given";
    r.family_name = "Family";
    r.institution_id = std::move(institution);
    for (int y = first_year; y <= last_year; ++y)
        r.role_records.push_back({y, rank, sds});
    return r;
}

inline Publication make_publication(std::string id, int year, std::string category,
                                    long long citations) {
    return Publication{std::move(id), year, std::move(category), citations};
}

// authors: (researcher_id or "", institution_id), in position order
inline void add_authors(Corpus& corpus, const std::string& pub_id,
                        const std::vector<std::pair<std::string, std::string>>& authors) {
    int position = 1;
    for (const auto& [rid, inst] : authors) {
        Authorship a;
        a.publication_id = pub_id;
        a.position = position++;
        if (!rid.empty()) a.researcher_id = rid;
        a.author_institution_id = inst;
        corpus.authorships.push_back(std::move(a));
    }
}

inline FieldTaxonomy basic_taxonomy() {
    FieldTaxonomy t;
    t.sds_to_uda = {{"MAT01", "UDA1"}, {"MED01", "UDA2"}, {"CHE01", "UDA3"}};
    t.uda_names = {{"UDA1", "Mathematics"}, {"UDA2", "Medicine"}, {"UDA3", "Chemistry"}};
    t.alphabetical_order_sds = {"MAT01"};
    t.position_weighted_udas = {"UDA2"};
    return t;
}

// Three researchers, three publications, all invariants satisfied.
inline Corpus small_valid_corpus() {
    Corpus corpus;
    corpus.window = {2010, 2014};
    corpus.census_date = "2017-06-30";
    corpus.taxonomy = basic_taxonomy();
    corpus.researchers.push_back(make_researcher("R01", "MAT01", Rank::assistant, 2010, 2014));
    corpus.researchers.push_back(make_researcher("R02", "MED01", Rank::associate, 2010, 2014, "U02"));
    corpus.researchers.push_back(make_researcher("R03", "CHE01", Rank::full, 2012, 2014, "U03"));
    corpus.publications.push_back(make_publication("P1", 2012, "BIOCHEM", 7));
    corpus.publications.push_back(make_publication("P2", 2013, "MATH", 0));
    corpus.publications.push_back(make_publication("P3", 2011, "BIOCHEM", 3));
    add_authors(corpus, "P1", {{"R02", "U02"}, {"", "X01"}, {"", "U02"}});
    add_authors(corpus, "P2", {{"R01", "U01"}});
    add_authors(corpus, "P3", {{"R02", "U02"}, {"R03", "U03"}});
    return corpus;
}

}  // namespace fss::testing

#endif
