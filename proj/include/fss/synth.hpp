#ifndef FSS_SYNTH_HPP
#define FSS_SYNTH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fss/classify.hpp"
#include "fss/types.hpp"

namespace fss {

// SplitMix64: the fixed, portable generator behind all synthetic corpora.
// Same seed, same parameters, same corpus, on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi], modulo draw (bias immaterial at these ranges)
    int next_int(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

    bool next_bool(double probability) { return next_double() < probability; }

private:
    uint64_t state_;
};

class InfeasibleParams : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SynthParams {
    uint64_t seed = 1;
    int researchers = 100;
    int sds_count = 8;
    int uda_count = 4;
    int publications = 400;
    double foreign_share = 0.05;   // planted foreigners, nearest-integer count
    double planted_shift = 0.0;    // percentile points added to foreign latent quality
    int max_authors = 12;
    int position_weighted_udas = 2;      // first K UDAs use positional credit
    double mixed_name_fraction = 0.25;   // of foreigners: mixed names + override
    double flagged_domestic_fraction = 0.05;  // foreign-born, both names domestic
    double rank_change_fraction = 0.20;
    double sds_change_fraction = 0.10;
    double short_tenure_fraction = 0.10;  // below min_role_years
    double pre_window_pub_fraction = 0.05;
    double co_author_fraction = 0.15;  // second roster researcher on the paper
    double citation_tail_alpha = 1.6;
    double citation_scale = 2.0;
    bool force_dead_cell = true;  // one all-uncited (year, category) cell
    YearWindow window{2010, 2014};
    int min_role_years = 3;
    double sds_publishing_threshold = 0.50;
};

// What the generator planted, for equivalence and recovery tests.
struct GroundTruth {
    struct Entry {
        std::string researcher_id;
        NationalityClass true_class = NationalityClass::domestic;
        DecidingStep expected_step = DecidingStep::birth_flag;
        std::string modal_sds;
        Rank modal_rank = Rank::assistant;
        int years_active = 0;
        bool has_window_publication = false;
        double latent_quality = 0.0;
    };
    std::vector<Entry> entries;  // sorted by researcher_id
    std::set<std::string> expected_eligible_sds;
    std::vector<std::string> domestic_given;   // the lexicons, normalized
    std::vector<std::string> domestic_family;
    std::vector<OverrideEntry> overrides;
    std::map<std::string, std::string> region_map;
};

struct SynthResult {
    Corpus corpus;
    GroundTruth truth;
};

// Deterministic corpus with a known ground-truth ledger. The corpus passes
// validate_corpus with an empty report.
SynthResult generate_corpus(const SynthParams& params);

AnalysisConfig config_for(const SynthParams& params);

// Writes the corpus in the ingest file formats plus lexicons, overrides,
// region map, ground-truth ledger and a ready-to-run config file.
void write_corpus_files(const SynthResult& result, const SynthParams& params,
                        const std::string& directory);

std::string ground_truth_json(const GroundTruth& truth);

}  // namespace fss

#endif
