#include "fss/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "fss/ingest.hpp"

namespace fss {
namespace {

std::string padded(const char* prefix, int n, int width) {
    std::string digits = std::to_string(n);
    std::string out = prefix;
    out.append(static_cast<std::size_t>(std::max(0, width - static_cast<int>(digits.size()))),
               '0');
    out += digits;
    return out;
}

const char* kCountries[] = {"Germany", "United States", "Greece",  "France",
                            "Spain",   "Iran",          "China",   "Argentina",
                            "Australia", "Morocco"};
const char* kRegions[] = {"EU", "North America", "EU",     "EU",
                          "EU", "Asia",          "Asia",   "Latin America",
                          "Oceania", "Africa"};

void check_params(const SynthParams& p) {
    auto fail = [](const std::string& what) { throw InfeasibleParams(what); };
    if (p.researchers < 1) fail("researchers must be positive");
    if (p.sds_count < 1 || p.uda_count < 1) fail("taxonomy counts must be positive");
    if (p.publications < 0) fail("publications must be non-negative");
    if (p.foreign_share < 0.0 || p.foreign_share > 1.0)
        fail("foreign_share outside [0,1]");
    if (p.planted_shift < -100.0 || p.planted_shift > 100.0)
        fail("planted_shift outside [-100,100]");
    if (p.max_authors < 1) fail("max_authors must be positive");
    if (p.position_weighted_udas < 0 || p.position_weighted_udas > p.uda_count)
        fail("position_weighted_udas outside [0, uda_count]");
    for (double f : {p.mixed_name_fraction, p.flagged_domestic_fraction,
                     p.rank_change_fraction, p.sds_change_fraction,
                     p.short_tenure_fraction, p.pre_window_pub_fraction,
                     p.co_author_fraction})
        if (f < 0.0 || f > 1.0) fail("fraction parameter outside [0,1]");
    if (p.window.start_year > p.window.end_year) fail("window start after end");
    if (p.min_role_years < 1 || p.min_role_years > p.window.length())
        fail("min_role_years outside [1, window length]");
    if (p.citation_tail_alpha <= 0.0 || p.citation_scale < 0.0)
        fail("citation distribution parameters must be positive");
}

}  // namespace

AnalysisConfig config_for(const SynthParams& params) {
    AnalysisConfig config;
    config.window = params.window;
    config.min_role_years = params.min_role_years;
    config.sds_publishing_threshold = params.sds_publishing_threshold;
    return config;
}

SynthResult generate_corpus(const SynthParams& params) {
    check_params(params);
    SplitMix64 rng(params.seed);
    SynthResult result;
    Corpus& corpus = result.corpus;
    GroundTruth& truth = result.truth;
    corpus.window = params.window;
    corpus.census_date = "2017-06-30";

    // taxonomy: SDSs round-robin over UDAs; the first K UDAs position-weighted
    std::vector<std::string> sds_codes, categories;
    for (int s = 0; s < params.sds_count; ++s) {
        std::string sds = padded("SDS", s + 1, 2);
        std::string uda = padded("UDA", s % params.uda_count + 1, 0);
        sds_codes.push_back(sds);
        categories.push_back(padded("CAT", s + 1, 2));
        corpus.taxonomy.sds_to_uda[sds] = uda;
        corpus.taxonomy.uda_names[uda] = "Area " + std::to_string(s % params.uda_count + 1);
        if (s % params.uda_count < params.position_weighted_udas)
            corpus.taxonomy.position_weighted_udas.insert(uda);
        else if (s % 2 == 0)
            corpus.taxonomy.alphabetical_order_sds.insert(sds);
    }

    // domestic name pools; the lexicons are exactly these, pre-normalized
    const int given_pool = 24, family_pool = 40;
    for (int i = 0; i < given_pool; ++i)
        truth.domestic_given.push_back("dgiven" + std::to_string(i + 1));
    for (int i = 0; i < family_pool; ++i)
        truth.domestic_family.push_back("dfamily" + std::to_string(i + 1));

    const int n = params.researchers;
    const int foreign_count =
        std::min(n, static_cast<int>(std::llround(params.foreign_share * n)));

    // choose which researchers are foreign: deterministic draw without
    // replacement
    std::set<int> foreign_ids;
    while (static_cast<int>(foreign_ids.size()) < foreign_count)
        foreign_ids.insert(rng.next_int(0, n - 1));

    const int institution_pool = std::max(2, n / 10);
    const int window_len = params.window.length();

    struct Plan {
        double quality = 0.0;
        std::string sds;
        bool positional = false;
    };
    std::vector<Plan> plans(static_cast<std::size_t>(n));

    for (int i = 0; i < n; ++i) {
        Researcher r;
        GroundTruth::Entry entry;
        r.researcher_id = padded("R", i + 1, 4);
        entry.researcher_id = r.researcher_id;
        r.institution_id = padded("U", rng.next_int(1, institution_pool), 2);

        const bool is_foreign = foreign_ids.count(i) > 0;
        // rank follows the unshifted draw so a planted shift moves foreign
        // researchers within their cohorts instead of across ranks
        const double base_quality = rng.next_double();
        double quality = base_quality;
        if (is_foreign)
            quality = std::clamp(quality + params.planted_shift / 100.0, 0.0, 1.0);
        entry.latent_quality = quality;

        // names, flag and expected classification step
        if (is_foreign) {
            entry.true_class = NationalityClass::foreign;
            r.foreign_birth_flag = true;
            const bool mixed = rng.next_bool(params.mixed_name_fraction);
            if (mixed) {
                // one domestic name, resolved through the override file
                if (rng.next_bool(0.5)) {
                    r.given_name = "Dgiven" + std::to_string(rng.next_int(1, given_pool));
                    r.family_name = "Xfam" + std::to_string(i + 1);
                } else {
                    r.given_name = "Xgiven" + std::to_string(i + 1);
                    r.family_name = "Dfamily" + std::to_string(rng.next_int(1, family_pool));
                }
                truth.overrides.push_back({r.researcher_id, NationalityClass::foreign,
                                           "educational path abroad"});
                entry.expected_step = DecidingStep::manual_override;
            } else {
                r.given_name = "Xgiven" + std::to_string(i + 1);
                r.family_name = "Xfam" + std::to_string(i + 1);
                entry.expected_step = DecidingStep::name_lexicon;
            }
            int country = rng.next_int(0, 9);
            r.provenance_country = kCountries[country];
        } else {
            entry.true_class = NationalityClass::domestic;
            r.given_name = "Dgiven" + std::to_string(rng.next_int(1, given_pool));
            r.family_name = "Dfamily" + std::to_string(rng.next_int(1, family_pool));
            if (rng.next_bool(params.flagged_domestic_fraction)) {
                // foreign-born with domestic names: decided at step 2
                r.foreign_birth_flag = true;
                entry.expected_step = DecidingStep::name_lexicon;
            } else {
                r.foreign_birth_flag = rng.next_bool(0.5) ? std::optional<bool>(false)
                                                          : std::nullopt;
                entry.expected_step = DecidingStep::birth_flag;
            }
        }
        if (rng.next_bool(0.85)) r.gender = rng.next_bool(0.5) ? "F" : "M";

        // role records: a contiguous run of years inside the window
        int tenure;
        if (params.min_role_years > 1 && rng.next_bool(params.short_tenure_fraction))
            tenure = rng.next_int(1, params.min_role_years - 1);
        else
            tenure = rng.next_int(params.min_role_years, window_len);
        const int start_offset = rng.next_int(0, window_len - tenure);
        const int first_year = params.window.start_year + start_offset;

        const int base_sds = rng.next_int(0, params.sds_count - 1);
        int other_sds = base_sds;
        bool change_sds = tenure >= 2 && rng.next_bool(params.sds_change_fraction);
        if (change_sds && params.sds_count > 1)
            while (other_sds == base_sds) other_sds = rng.next_int(0, params.sds_count - 1);

        // base rank loosely follows the unshifted quality; promotions move
        // upward mid-run
        Rank base_rank = base_quality > 0.7 ? Rank::full
                         : base_quality > 0.35 ? Rank::associate
                                               : Rank::assistant;
        bool change_rank = tenure >= 2 && base_rank != Rank::full &&
                           rng.next_bool(params.rank_change_fraction);
        const int switch_at = tenure >= 2 ? rng.next_int(1, tenure - 1) : 0;

        for (int y = 0; y < tenure; ++y) {
            RoleRecord rec;
            rec.year = first_year + y;
            rec.sds_code = sds_codes[static_cast<std::size_t>(
                change_sds && y >= switch_at ? other_sds : base_sds)];
            Rank rank = base_rank;
            if (change_rank && y >= switch_at)
                rank = base_rank == Rank::assistant ? Rank::associate : Rank::full;
            rec.rank = rank;
            r.role_records.push_back(rec);
        }

        entry.years_active = tenure;
        entry.modal_sds = modal_sds(r);
        entry.modal_rank = modal_rank(r);
        plans[static_cast<std::size_t>(i)] = {
            quality, entry.modal_sds,
            corpus.taxonomy.position_weighted_udas.count(
                corpus.taxonomy.sds_to_uda.at(entry.modal_sds)) > 0};

        corpus.researchers.push_back(std::move(r));
        truth.entries.push_back(std::move(entry));
    }

    // owner selection weights: productivity grows with latent quality
    std::vector<double> cumulative(static_cast<std::size_t>(n));
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        acc += 0.2 + plans[static_cast<std::size_t>(i)].quality;
        cumulative[static_cast<std::size_t>(i)] = acc;
    }

    const std::string dead_category = categories.front();
    const int dead_year = params.window.start_year;

    for (int p = 0; p < params.publications; ++p) {
        Publication pub;
        pub.publication_id = padded("P", p + 1, 6);

        const double pick = rng.next_double() * acc;
        int owner = static_cast<int>(
            std::lower_bound(cumulative.begin(), cumulative.end(), pick) -
            cumulative.begin());
        if (owner >= n) owner = n - 1;
        const Plan& plan = plans[static_cast<std::size_t>(owner)];

        pub.year = rng.next_bool(params.pre_window_pub_fraction)
                       ? params.window.start_year - 1 - rng.next_int(0, 1)
                       : rng.next_int(params.window.start_year, params.window.end_year);
        // category follows the owner's field so baseline cells stay coherent
        int sds_index = static_cast<int>(
            std::find(sds_codes.begin(), sds_codes.end(), plan.sds) - sds_codes.begin());
        pub.subject_category = categories[static_cast<std::size_t>(sds_index)];

        // heavy-tailed citations with a strong monotone link to owner quality
        const double u = rng.next_double();
        double raw = params.citation_scale *
                     (std::pow(1.0 - u, -1.0 / params.citation_tail_alpha) - 1.0) *
                     std::exp(2.0 * (plan.quality - 0.5));
        pub.citation_count = static_cast<long long>(std::floor(std::min(raw, 5000.0)));
        if (params.force_dead_cell && pub.year == dead_year &&
            pub.subject_category == dead_category)
            pub.citation_count = 0;

        // author list size, skewed small
        int n_authors = 1;
        while (n_authors < params.max_authors && rng.next_bool(0.55)) ++n_authors;
        if (rng.next_bool(0.04))
            n_authors = rng.next_int(1, params.max_authors);  // occasional long list

        const int owner_position = rng.next_int(1, n_authors);
        int co_position = 0;
        int co_owner = -1;
        if (n_authors >= 2 && rng.next_bool(params.co_author_fraction)) {
            co_owner = rng.next_int(0, n - 1);
            if (co_owner == owner) co_owner = (owner + 1) % n;
            co_position = rng.next_int(1, n_authors);
            if (co_position == owner_position)
                co_position = owner_position == n_authors ? 1 : owner_position + 1;
        }

        std::vector<std::string> institutions(static_cast<std::size_t>(n_authors));
        for (int pos = 1; pos <= n_authors; ++pos) {
            std::string inst = padded("X", rng.next_int(1, 40), 3);
            if (pos == owner_position)
                inst = corpus.researchers[static_cast<std::size_t>(owner)].institution_id;
            else if (pos == co_position)
                inst = corpus.researchers[static_cast<std::size_t>(co_owner)].institution_id;
            institutions[static_cast<std::size_t>(pos - 1)] = inst;
        }
        // force both institution cases to appear for multi-author lists
        if (n_authors >= 3) {
            if (rng.next_bool(0.5)) {
                if (owner_position != n_authors && co_position != n_authors)
                    institutions.back() = institutions.front();
                else if (owner_position != 1 && co_position != 1)
                    institutions.front() = institutions.back();
            } else if (institutions.front() == institutions.back()) {
                if (owner_position != n_authors && co_position != n_authors)
                    institutions.back() = institutions.front() == "X999" ? "X998" : "X999";
                else if (owner_position != 1 && co_position != 1)
                    institutions.front() = institutions.back() == "X999" ? "X998" : "X999";
            }
        }

        for (int pos = 1; pos <= n_authors; ++pos) {
            Authorship a;
            a.publication_id = pub.publication_id;
            a.position = pos;
            a.author_institution_id = institutions[static_cast<std::size_t>(pos - 1)];
            if (pos == owner_position)
                a.researcher_id =
                    corpus.researchers[static_cast<std::size_t>(owner)].researcher_id;
            else if (pos == co_position)
                a.researcher_id =
                    corpus.researchers[static_cast<std::size_t>(co_owner)].researcher_id;
            corpus.authorships.push_back(std::move(a));
        }

        if (params.window.contains(pub.year)) {
            truth.entries[static_cast<std::size_t>(owner)].has_window_publication = true;
            if (co_owner >= 0)
                truth.entries[static_cast<std::size_t>(co_owner)].has_window_publication =
                    true;
        }
        corpus.publications.push_back(std::move(pub));
    }

    // ground-truth SDS eligibility by direct counting
    std::map<std::string, std::pair<int, int>> sds_counts;
    for (const GroundTruth::Entry& e : truth.entries) {
        if (e.years_active < params.min_role_years) continue;
        auto& [publishing, total] = sds_counts[e.modal_sds];
        total += 1;
        if (e.has_window_publication) publishing += 1;
    }
    for (const auto& [sds, c] : sds_counts)
        if (static_cast<double>(c.first) / static_cast<double>(c.second) >=
            params.sds_publishing_threshold)
            truth.expected_eligible_sds.insert(sds);

    for (int i = 0; i < 10; ++i) truth.region_map[kCountries[i]] = kRegions[i];

    // canonical ordering, matching the ingest round-trip form
    std::sort(corpus.researchers.begin(), corpus.researchers.end(),
              [](const Researcher& a, const Researcher& b) {
                  return a.researcher_id < b.researcher_id;
              });
    std::sort(corpus.publications.begin(), corpus.publications.end(),
              [](const Publication& a, const Publication& b) {
                  return a.publication_id < b.publication_id;
              });
    std::sort(corpus.authorships.begin(), corpus.authorships.end(),
              [](const Authorship& a, const Authorship& b) {
                  return std::tie(a.publication_id, a.position) <
                         std::tie(b.publication_id, b.position);
              });
    std::sort(truth.entries.begin(), truth.entries.end(),
              [](const GroundTruth::Entry& a, const GroundTruth::Entry& b) {
                  return a.researcher_id < b.researcher_id;
              });
    std::sort(truth.overrides.begin(), truth.overrides.end(),
              [](const OverrideEntry& a, const OverrideEntry& b) {
                  return a.researcher_id < b.researcher_id;
              });
    return result;
}

std::string ground_truth_json(const GroundTruth& truth) {
    nlohmann::ordered_json doc;
    doc["entries"] = nlohmann::ordered_json::array();
    for (const GroundTruth::Entry& e : truth.entries) {
        nlohmann::ordered_json j;
        j["researcher_id"] = e.researcher_id;
        j["true_class"] = to_string(e.true_class);
        j["expected_step"] = to_string(e.expected_step);
        j["modal_sds"] = e.modal_sds;
        j["modal_rank"] = to_string(e.modal_rank);
        j["years_active"] = e.years_active;
        j["has_window_publication"] = e.has_window_publication;
        j["latent_quality"] = e.latent_quality;
        doc["entries"].push_back(std::move(j));
    }
    doc["expected_eligible_sds"] = truth.expected_eligible_sds;
    return doc.dump(2) + "\n";
}

void write_corpus_files(const SynthResult& result, const SynthParams& params,
                        const std::string& directory) {
    namespace fs = std::filesystem;
    fs::create_directories(directory);
    auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream out(fs::path(directory) / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + name + " in " + directory);
        out << content;
    };

    write("roster.csv", serialize_roster(result.corpus));
    write("publications.csv", serialize_publications(result.corpus));
    write("authorships.csv", serialize_authorships(result.corpus));
    write("taxonomy.csv", serialize_taxonomy(result.corpus));

    std::string given, family;
    for (const std::string& t : result.truth.domestic_given) given += t + "\n";
    for (const std::string& t : result.truth.domestic_family) family += t + "\n";
    write("lexicon_given.txt", given);
    write("lexicon_family.txt", family);

    std::string overrides = "researcher_id,resolved_class,reason\n";
    for (const OverrideEntry& o : result.truth.overrides)
        overrides += o.researcher_id + "," + to_string(o.resolved_class) + "," +
                     o.reason + "\n";
    write("overrides.csv", overrides);

    std::string regions = "country,region\n";
    for (const auto& [country, region] : result.truth.region_map)
        regions += country + "," + region + "\n";
    write("region_map.csv", regions);

    write("ground_truth.json", ground_truth_json(result.truth));

    std::string config;
    config += "roster = roster.csv\n";
    config += "publications = publications.csv\n";
    config += "authorships = authorships.csv\n";
    config += "taxonomy = taxonomy.csv\n";
    config += "lexicon_given = lexicon_given.txt\n";
    config += "lexicon_family = lexicon_family.txt\n";
    config += "overrides = overrides.csv\n";
    config += "region_map = region_map.csv\n";
    config += "census_date = " + result.corpus.census_date + "\n";
    config += "window = " + std::to_string(params.window.start_year) + ":" +
              std::to_string(params.window.end_year) + "\n";
    config += "min_role_years = " + std::to_string(params.min_role_years) + "\n";
    char threshold[32];
    std::snprintf(threshold, sizeof threshold, "%g", params.sds_publishing_threshold);
    config += std::string("sds_publishing_threshold = ") + threshold + "\n";
    write("corpus.config", config);
}

}  // namespace fss
