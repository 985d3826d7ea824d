#include <doctest.h>

#include <cmath>

#include "fss/metrics.hpp"
#include "helpers.hpp"

using namespace fss;
using namespace fss::testing;

namespace {

Corpus cell_corpus(const std::vector<long long>& citations, int year = 2012,
                   const std::string& category = "MATH") {
    Corpus corpus;
    corpus.window = {2010, 2014};
    corpus.taxonomy = basic_taxonomy();
    int n = 0;
    for (long long c : citations) {
        corpus.publications.push_back(
            make_publication("P" + std::to_string(++n), year, category, c));
        add_authors(corpus, corpus.publications.back().publication_id, {{"", "X01"}});
    }
    return corpus;
}

}  // namespace

TEST_CASE("baseline is the mean over cited publications only") {
    SUBCASE("all cited") {
        auto baselines = compute_baselines(cell_corpus({2, 4, 6}));
        REQUIRE(baselines.cells.size() == 1);
        const FieldBaseline& cell = baselines.cells.begin()->second;
        CHECK(cell.mean_cited_citations == doctest::Approx(4.0).epsilon(1e-15));
        CHECK(cell.cited_publication_count == 3);
        CHECK(baselines.empty_cells.empty());
    }
    SUBCASE("uncited publications do not enter the mean") {
        auto baselines = compute_baselines(cell_corpus({0, 0, 5}));
        REQUIRE(baselines.cells.size() == 1);
        const FieldBaseline& cell = baselines.cells.begin()->second;
        CHECK(cell.mean_cited_citations == doctest::Approx(5.0).epsilon(1e-15));
        CHECK(cell.cited_publication_count == 1);
    }
    SUBCASE("a fully uncited cell is listed as empty") {
        auto baselines = compute_baselines(cell_corpus({0, 0}));
        CHECK(baselines.cells.empty());
        REQUIRE(baselines.empty_cells.size() == 1);
        CHECK(baselines.empty_cells[0].year == 2012);
        CHECK(baselines.empty_cells[0].subject_category == "MATH");
    }
}

TEST_CASE("normalized impact") {
    BaselineSet baselines;
    baselines.cells[{2012, "MATH"}] = {5.0, 2};

    CHECK(normalized_impact(make_publication("P1", 2012, "MATH", 10), baselines) ==
          doctest::Approx(2.0).epsilon(1e-15));
    CHECK(normalized_impact(make_publication("P2", 2012, "MATH", 0), baselines) == 0.0);
    // uncited stays zero even without a cell
    CHECK(normalized_impact(make_publication("P3", 1999, "NONE", 0), baselines) == 0.0);

    BaselineSet self;
    self.cells[{2012, "MATH"}] = {4.0, 1};
    CHECK(normalized_impact(make_publication("P4", 2012, "MATH", 4), self) ==
          doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(normalized_impact(make_publication("P5", 1999, "NONE", 3), baselines),
                    MissingBaselineError);
}

TEST_CASE("mean normalized impact over a cell's cited publications is 1") {
    Corpus corpus = cell_corpus({1, 2, 3, 5, 8, 13, 0, 0, 40, 7});
    auto baselines = compute_baselines(corpus);
    double sum = 0.0;
    int cited = 0;
    for (const Publication& p : corpus.publications) {
        if (p.citation_count == 0) continue;
        sum += normalized_impact(p, baselines);
        ++cited;
    }
    CHECK(sum / cited == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("uniform fractions") {
    CHECK(uniform_fractions(4) == std::vector<double>{0.25, 0.25, 0.25, 0.25});
    CHECK(uniform_fractions(1) == std::vector<double>{1.0});
    auto thirds = uniform_fractions(3);
    double sum = 0.0;
    for (double f : thirds) sum += f;
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    CHECK_THROWS_AS(uniform_fractions(0), std::invalid_argument);
}

TEST_CASE("positional fractions reproduce the published weighting schemes") {
    SUBCASE("case A, five authors") {
        auto f = positional_fractions({"U1", "X1", "X2", "X3", "U1"});
        CHECK(f.scheme == CreditScheme::positional_case_a);
        REQUIRE(f.fractions.size() == 5);
        CHECK(f.fractions[0] == doctest::Approx(0.40).epsilon(1e-15));
        CHECK(f.fractions[4] == doctest::Approx(0.40).epsilon(1e-15));
        for (int i = 1; i <= 3; ++i)
            CHECK(f.fractions[i] == doctest::Approx(0.20 / 3).epsilon(1e-15));
    }
    SUBCASE("case A, three authors") {
        auto f = positional_fractions({"U1", "X1", "U1"});
        CHECK(f.scheme == CreditScheme::positional_case_a);
        CHECK(f.fractions == std::vector<double>{0.40, 0.20, 0.40});
    }
    SUBCASE("case B, six authors") {
        auto f = positional_fractions({"U1", "X1", "X2", "X3", "X4", "U2"});
        CHECK(f.scheme == CreditScheme::positional_case_b);
        REQUIRE(f.fractions.size() == 6);
        CHECK(f.fractions[0] == doctest::Approx(0.30).epsilon(1e-15));
        CHECK(f.fractions[1] == doctest::Approx(0.15).epsilon(1e-15));
        CHECK(f.fractions[2] == doctest::Approx(0.05).epsilon(1e-15));
        CHECK(f.fractions[3] == doctest::Approx(0.05).epsilon(1e-15));
        CHECK(f.fractions[4] == doctest::Approx(0.15).epsilon(1e-15));
        CHECK(f.fractions[5] == doctest::Approx(0.30).epsilon(1e-15));
    }
    SUBCASE("case B, four authors: renormalized weights") {
        // {0.30, 0.15, 0.15, 0.30} scaled by 1/0.90
        auto f = positional_fractions({"U1", "X1", "X2", "U2"});
        CHECK(f.scheme == CreditScheme::positional_case_b);
        CHECK(f.fractions[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));
        CHECK(f.fractions[1] == doctest::Approx(1.0 / 6).epsilon(1e-15));
        CHECK(f.fractions[2] == doctest::Approx(1.0 / 6).epsilon(1e-15));
        CHECK(f.fractions[3] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    }
    SUBCASE("below the case minimum falls back to uniform") {
        auto two = positional_fractions({"U1", "U2"});
        CHECK(two.scheme == CreditScheme::fallback_uniform);
        CHECK(two.fractions == std::vector<double>{0.5, 0.5});

        auto three_differing = positional_fractions({"U1", "X1", "U2"});
        CHECK(three_differing.scheme == CreditScheme::fallback_uniform);

        auto solo = positional_fractions({"U1"});
        CHECK(solo.scheme == CreditScheme::fallback_uniform);
        CHECK(solo.fractions == std::vector<double>{1.0});
    }
    SUBCASE("empty author list throws") {
        CHECK_THROWS_AS(positional_fractions({}), std::invalid_argument);
    }
}

TEST_CASE("fraction vectors sum to 1 for every n and both cases") {
    for (std::size_t n = 1; n <= 50; ++n) {
        for (bool same_ends : {true, false}) {
            std::vector<std::string> institutions;
            for (std::size_t i = 0; i < n; ++i)
                institutions.push_back("X" + std::to_string(i));
            institutions.front() = "END";
            institutions.back() = same_ends ? "END" : "OTHER";
            auto f = positional_fractions(institutions);
            double sum = 0.0;
            for (double x : f.fractions) {
                CHECK(x > 0.0);
                CHECK(x <= 1.0);
                sum += x;
            }
            CHECK(std::abs(sum - 1.0) <= 1e-12);

            auto u = uniform_fractions(n);
            sum = 0.0;
            for (double x : u) sum += x;
            CHECK(std::abs(sum - 1.0) <= 1e-12);
        }
    }
}

namespace {

// One medicine (positional) and one mathematics (uniform) researcher sharing
// corpora with crafted author lists.
Corpus contribution_corpus() {
    Corpus corpus;
    corpus.window = {2010, 2014};
    corpus.taxonomy = basic_taxonomy();
    corpus.researchers.push_back(make_researcher("RMED", "MED01", Rank::full, 2010, 2014, "UA"));
    corpus.researchers.push_back(make_researcher("RMAT", "MAT01", Rank::full, 2010, 2014, "UB"));
    corpus.publications.push_back(make_publication("P1", 2012, "BIOCHEM", 10));
    add_authors(corpus, "P1",
                {{"RMED", "UA"}, {"", "X1"}, {"", "X2"}, {"", "X3"}, {"", "UA"}});
    corpus.publications.push_back(make_publication("P2", 2012, "MATH", 4));
    add_authors(corpus, "P2", {{"", "X1"}, {"RMAT", "UB"}, {"", "X2"}, {"", "X3"}});
    corpus.publications.push_back(make_publication("P3", 2013, "BIOCHEM", 2));
    add_authors(corpus, "P3",
                {{"", "UA"}, {"", "X1"}, {"RMED", "UA"}, {"", "X2"}, {"", "UA"}});
    return corpus;
}

}  // namespace

TEST_CASE("contribution selects the scheme by the researcher's UDA") {
    Corpus corpus = contribution_corpus();
    REQUIRE(validate_corpus(corpus).empty());
    CorpusIndex index = CorpusIndex::build(corpus);
    AnalysisConfig config;

    // medicine researcher, first of five, case A
    auto med = contribution(corpus.publications[0], corpus.researchers[0], index, config);
    CHECK(med.scheme == CreditScheme::positional_case_a);
    CHECK(med.fraction == doctest::Approx(0.40).epsilon(1e-15));
    CHECK(med.position == 1);

    // mathematics researcher, position 2 of 4: uniform
    auto mat = contribution(corpus.publications[1], corpus.researchers[1], index, config);
    CHECK(mat.scheme == CreditScheme::uniform);
    CHECK(mat.fraction == doctest::Approx(0.25).epsilon(1e-15));

    // medicine researcher, position 3 of 5, case A middle
    auto mid = contribution(corpus.publications[2], corpus.researchers[0], index, config);
    CHECK(mid.fraction == doctest::Approx(0.20 / 3).epsilon(1e-15));

    CHECK_THROWS_AS(
        contribution(corpus.publications[1], corpus.researchers[0], index, config),
        std::invalid_argument);
}

TEST_CASE("compute_fss applies the productivity formula") {
    SUBCASE("worked single-publication example") {
        // t=5, one publication with c=10, cell mean 5, fraction 1/2
        Corpus corpus;
        corpus.window = {2010, 2014};
        corpus.taxonomy = basic_taxonomy();
        corpus.researchers.push_back(
            make_researcher("R01", "MAT01", Rank::assistant, 2010, 2014));
        corpus.publications.push_back(make_publication("P1", 2012, "MATH", 10));
        add_authors(corpus, "P1", {{"R01", "U01"}, {"", "X1"}});
        // a second publication fixing the cell mean at (10+0... ) -> need mean 5
        corpus.publications.push_back(make_publication("P2", 2012, "MATH", 1));
        add_authors(corpus, "P2", {{"", "X1"}});
        corpus.publications.push_back(make_publication("P3", 2012, "MATH", 4));
        add_authors(corpus, "P3", {{"", "X1"}});
        // cited counts {10, 1, 4} -> mean 5
        REQUIRE(validate_corpus(corpus).empty());
        CorpusIndex index = CorpusIndex::build(corpus);
        AnalysisConfig config;
        auto baselines = compute_baselines(corpus);
        CHECK(compute_fss(corpus.researchers[0], index, baselines, config) ==
              doctest::Approx(0.2).epsilon(1e-12));
    }
    SUBCASE("no publications mean zero") {
        Corpus corpus;
        corpus.window = {2010, 2014};
        corpus.taxonomy = basic_taxonomy();
        corpus.researchers.push_back(
            make_researcher("R01", "MAT01", Rank::assistant, 2010, 2014));
        CorpusIndex index = CorpusIndex::build(corpus);
        auto baselines = compute_baselines(corpus);
        CHECK(compute_fss(corpus.researchers[0], index, baselines, {}) == 0.0);
    }
    SUBCASE("t=4 with one cited and one uncited publication") {
        // terms: (c=3, mean 3, f=1) and (c=0, f=1/4) -> (1/4)*(1+0) = 0.25
        Corpus corpus;
        corpus.window = {2010, 2014};
        corpus.taxonomy = basic_taxonomy();
        corpus.researchers.push_back(
            make_researcher("R01", "MAT01", Rank::assistant, 2010, 2013));
        corpus.publications.push_back(make_publication("P1", 2011, "MATH", 3));
        add_authors(corpus, "P1", {{"R01", "U01"}});
        corpus.publications.push_back(make_publication("P2", 2012, "MATH", 0));
        add_authors(corpus, "P2", {{"R01", "U01"}, {"", "X1"}, {"", "X2"}, {"", "X3"}});
        REQUIRE(validate_corpus(corpus).empty());
        CorpusIndex index = CorpusIndex::build(corpus);
        auto baselines = compute_baselines(corpus);
        CHECK(compute_fss(corpus.researchers[0], index, baselines, {}) ==
              doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("publications outside the window are excluded") {
        Corpus corpus;
        corpus.window = {2010, 2014};
        corpus.taxonomy = basic_taxonomy();
        corpus.researchers.push_back(
            make_researcher("R01", "MAT01", Rank::assistant, 2010, 2014));
        corpus.publications.push_back(make_publication("P1", 2009, "MATH", 50));
        add_authors(corpus, "P1", {{"R01", "U01"}});
        REQUIRE(validate_corpus(corpus).empty());
        CorpusIndex index = CorpusIndex::build(corpus);
        auto baselines = compute_baselines(corpus);
        CHECK(compute_fss(corpus.researchers[0], index, baselines, {}) == 0.0);
        CHECK(fss_terms(corpus.researchers[0], index, baselines, {}).empty());
    }
    SUBCASE("a researcher with no role years is an error") {
        Corpus corpus;
        corpus.window = {2010, 2014};
        corpus.taxonomy = basic_taxonomy();
        Researcher empty;
        empty.researcher_id = "R00";
        empty.given_name = "A";
        empty.family_name = "B";
        corpus.researchers.push_back(empty);
        CorpusIndex index = CorpusIndex::build(corpus);
        CHECK_THROWS_AS(compute_fss(corpus.researchers[0], index, {}, {}),
                        std::invalid_argument);
    }
}

TEST_CASE("fss is positively homogeneous in the credit fractions") {
    Corpus corpus = contribution_corpus();
    CorpusIndex index = CorpusIndex::build(corpus);
    AnalysisConfig config;
    auto baselines = compute_baselines(corpus);
    for (const Researcher& r : corpus.researchers) {
        auto terms = fss_terms(r, index, baselines, config);
        const int t = years_active(r, config.window);
        double base = 0.0, doubled = 0.0;
        for (const auto& term : terms) {
            base += term.impact * term.fraction;
            doubled += term.impact * (2.0 * term.fraction);
        }
        base /= t;
        doubled /= t;
        if (base > 0.0)
            CHECK(std::abs(doubled - 2.0 * base) / (2.0 * base) <= 1e-12);
    }
}

TEST_CASE("fss is zero exactly when all window publications are uncited") {
    Corpus corpus;
    corpus.window = {2010, 2014};
    corpus.taxonomy = basic_taxonomy();
    corpus.researchers.push_back(make_researcher("R01", "MAT01", Rank::assistant, 2010, 2014));
    corpus.researchers.push_back(make_researcher("R02", "MAT01", Rank::assistant, 2010, 2014));
    corpus.publications.push_back(make_publication("P1", 2012, "MATH", 0));
    add_authors(corpus, "P1", {{"R01", "U01"}});
    corpus.publications.push_back(make_publication("P2", 2012, "MATH", 1));
    add_authors(corpus, "P2", {{"R02", "U01"}});
    REQUIRE(validate_corpus(corpus).empty());
    CorpusIndex index = CorpusIndex::build(corpus);
    auto baselines = compute_baselines(corpus);
    CHECK(compute_fss(corpus.researchers[0], index, baselines, {}) == 0.0);
    CHECK(compute_fss(corpus.researchers[1], index, baselines, {}) > 0.0);
}
