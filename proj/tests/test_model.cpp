#include <doctest.h>

#include "fss/types.hpp"
#include "helpers.hpp"

using namespace fss;
using namespace fss::testing;

TEST_CASE("well-formed corpus yields an empty report") {
    Corpus corpus = small_valid_corpus();
    CHECK(validate_corpus(corpus).empty());
}

TEST_CASE("validation is idempotent and side-effect free") {
    Corpus corpus = small_valid_corpus();
    corpus.publications[0].citation_count = -1;
    corpus.authorships[0].publication_id = "P9";
    const Corpus before = corpus;
    ValidationReport first = validate_corpus(corpus);
    ValidationReport second = validate_corpus(corpus);
    CHECK(first == second);
    CHECK(corpus == before);
}

TEST_CASE("dangling publication reference is reported with its id") {
    Corpus corpus = small_valid_corpus();
    Authorship a;
    a.publication_id = "P9";
    a.position = 1;
    a.author_institution_id = "X01";
    corpus.authorships.push_back(a);
    ValidationReport report = validate_corpus(corpus);
    REQUIRE(report.size() == 1);
    CHECK(report[0].code == "dangling-publication-ref");
    CHECK(report[0].detail.find("P9") != std::string::npos);
}

TEST_CASE("negative citation count is a range violation") {
    Corpus corpus = small_valid_corpus();
    corpus.publications[0].citation_count = -1;
    ValidationReport report = validate_corpus(corpus);
    REQUIRE(report.size() == 1);
    CHECK(report[0].code == "negative-citations");
}

TEST_CASE("remaining invariants are each caught") {
    SUBCASE("duplicate researcher id") {
        Corpus corpus = small_valid_corpus();
        corpus.researchers.push_back(corpus.researchers[0]);
        auto report = validate_corpus(corpus);
        REQUIRE(!report.empty());
        CHECK(report[0].code == "duplicate-researcher");
    }
    SUBCASE("two role records in one year") {
        Corpus corpus = small_valid_corpus();
        corpus.researchers[0].role_records.push_back({2012, Rank::full, "MAT01"});
        auto report = validate_corpus(corpus);
        REQUIRE(!report.empty());
        CHECK(report[0].code == "duplicate-role-year");
    }
    SUBCASE("role year outside the window") {
        Corpus corpus = small_valid_corpus();
        corpus.researchers[0].role_records.push_back({2009, Rank::assistant, "MAT01"});
        auto report = validate_corpus(corpus);
        REQUIRE(!report.empty());
        CHECK(report[0].code == "role-year-outside-window");
    }
    SUBCASE("unknown sds code") {
        Corpus corpus = small_valid_corpus();
        corpus.researchers[0].role_records[0].sds_code = "NOPE";
        auto report = validate_corpus(corpus);
        REQUIRE(!report.empty());
        CHECK(report[0].code == "unknown-sds");
    }
    SUBCASE("publication after the window end") {
        Corpus corpus = small_valid_corpus();
        corpus.publications[0].year = 2015;
        auto report = validate_corpus(corpus);
        REQUIRE(!report.empty());
        CHECK(report[0].code == "publication-after-window");
    }
    SUBCASE("gap in author positions") {
        Corpus corpus = small_valid_corpus();
        corpus.authorships[1].position = 3;  // P1 had 1,2,3 -> 1,3,3
        auto report = validate_corpus(corpus);
        CHECK(!report.empty());
    }
    SUBCASE("researcher listed twice on one publication") {
        Corpus corpus = small_valid_corpus();
        Authorship dup;
        dup.publication_id = "P2";
        dup.position = 2;
        dup.researcher_id = "R01";
        dup.author_institution_id = "U01";
        corpus.authorships.push_back(dup);
        auto report = validate_corpus(corpus);
        REQUIRE(!report.empty());
        bool found = false;
        for (const auto& v : report) found |= v.code == "repeated-author";
        CHECK(found);
    }
    SUBCASE("authorship with neither researcher nor institution") {
        Corpus corpus = small_valid_corpus();
        corpus.authorships[1].researcher_id.reset();
        corpus.authorships[1].author_institution_id.clear();
        auto report = validate_corpus(corpus);
        REQUIRE(!report.empty());
        CHECK(report[0].code == "anonymous-authorship");
    }
}

TEST_CASE("an empty report really means every invariant holds") {
    Corpus corpus = small_valid_corpus();
    REQUIRE(validate_corpus(corpus).empty());
    // direct re-assertion of the type invariants
    std::set<std::string> rids;
    for (const Researcher& r : corpus.researchers) {
        CHECK(rids.insert(r.researcher_id).second);
        std::set<int> years;
        for (const RoleRecord& rec : r.role_records) {
            CHECK(years.insert(rec.year).second);
            CHECK(corpus.window.contains(rec.year));
            CHECK(corpus.taxonomy.sds_to_uda.count(rec.sds_code) == 1);
        }
    }
    std::set<std::string> pids;
    for (const Publication& p : corpus.publications) {
        CHECK(pids.insert(p.publication_id).second);
        CHECK(p.citation_count >= 0);
        CHECK(p.year <= corpus.window.end_year);
    }
    std::map<std::string, std::set<int>> positions;
    for (const Authorship& a : corpus.authorships) {
        CHECK(pids.count(a.publication_id) == 1);
        if (a.researcher_id) CHECK(rids.count(*a.researcher_id) == 1);
        CHECK(positions[a.publication_id].insert(a.position).second);
    }
    for (const auto& [pub, pos] : positions) {
        CHECK(*pos.begin() == 1);
        CHECK(*pos.rbegin() == static_cast<int>(pos.size()));
    }
}

TEST_CASE("modal assignment follows frequency then latest year") {
    Researcher r = make_researcher("R", "MAT01", Rank::assistant, 2010, 2012);
    r.role_records.push_back({2013, Rank::associate, "MAT01"});
    r.role_records.push_back({2014, Rank::associate, "MAT01"});
    CHECK(modal_rank(r) == Rank::assistant);  // 3 > 2

    Researcher even = make_researcher("R", "MAT01", Rank::assistant, 2010, 2011);
    even.role_records.push_back({2013, Rank::associate, "MAT01"});
    even.role_records.push_back({2014, Rank::associate, "MAT01"});
    CHECK(modal_rank(even) == Rank::associate);  // 2-2 tie, latest year wins

    Researcher steady = make_researcher("R", "MED01", Rank::associate, 2010, 2014);
    CHECK(modal_rank(steady) == Rank::associate);
    CHECK(modal_sds(steady) == "MED01");

    Researcher moved = make_researcher("R", "MED01", Rank::full, 2010, 2012);
    moved.role_records.push_back({2013, Rank::full, "CHE01"});
    moved.role_records.push_back({2014, Rank::full, "CHE01"});
    CHECK(modal_sds(moved) == "MED01");  // 3 > 2
}

TEST_CASE("config invariants") {
    AnalysisConfig config;
    CHECK(check_config(config).empty());

    AnalysisConfig short_window = config;
    short_window.window = {2010, 2011};
    CHECK(!check_config(short_window).empty());

    AnalysisConfig bad_weights = config;
    bad_weights.weights.case_a_end = 0.45;
    CHECK(!check_config(bad_weights).empty());
}
