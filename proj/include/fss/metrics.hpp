#ifndef FSS_METRICS_HPP
#define FSS_METRICS_HPP

#include <map>
#include <string>
#include <vector>

#include "fss/types.hpp"

namespace fss {

struct CellKey {
    int year = 0;
    std::string subject_category;

    auto operator<=>(const CellKey&) const = default;
};

// Mean citations of the cited publications of one (year, category) cell.
struct FieldBaseline {
    double mean_cited_citations = 0.0;  // >= 1 by construction
    long long cited_publication_count = 0;

    bool operator==(const FieldBaseline&) const = default;
};

struct BaselineSet {
    std::map<CellKey, FieldBaseline> cells;
    // cells that exist in the corpus but whose publications are all uncited
    std::vector<CellKey> empty_cells;
};

BaselineSet compute_baselines(const Corpus& corpus);

std::string serialize_baselines(const BaselineSet& baselines);

class MissingBaselineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// c_i / c-bar. Exactly 0 for uncited publications regardless of cell
// availability; a cited publication without a cell signals a corrupt
// baseline computation and throws.
double normalized_impact(const Publication& publication, const BaselineSet& baselines);

enum class CreditScheme { uniform, positional_case_a, positional_case_b, fallback_uniform };

std::string to_string(CreditScheme scheme);

// 1/n each. n must be at least 1.
std::vector<double> uniform_fractions(std::size_t n_authors);

struct FractionVector {
    std::vector<double> fractions;  // sums to 1 within 1e-12
    CreditScheme scheme = CreditScheme::uniform;
};

// Position-weighted credit from the ordered author institutions.
// Case A (first and last share an institution, n >= 3): ends take
// case_a_end each, the rest is split among the middle authors.
// Case B (ends differ, n >= 4): ends take case_b_end, the second and
// second-to-last take case_b_inner, the rest is split among the others;
// a weight group left without recipients is redistributed proportionally.
// Below the case minimum the split falls back to uniform.
FractionVector positional_fractions(const std::vector<std::string>& author_institutions,
                                    const PositionalWeights& weights = {});

struct CreditShare {
    std::string publication_id;
    int position = 0;
    double fraction = 0.0;
    CreditScheme scheme = CreditScheme::uniform;
};

// Credit of one researcher on one publication. Positional weighting applies
// iff the researcher's UDA (via the modal SDS) is position-weighted;
// everything else counts uniformly.
CreditShare contribution(const Publication& publication, const Researcher& researcher,
                         const CorpusIndex& index, const AnalysisConfig& config);

struct FssTerm {
    std::string publication_id;
    double impact = 0.0;    // c_i / c-bar
    double fraction = 0.0;  // f_i
};

// The per-publication terms of the productivity sum, ordered by
// publication_id. Publications dated outside the window are excluded.
std::vector<FssTerm> fss_terms(const Researcher& researcher, const CorpusIndex& index,
                               const BaselineSet& baselines, const AnalysisConfig& config);

// FSS = (1/t) * sum of impact * fraction over the window publications.
// Throws when the researcher has no in-window role years.
double compute_fss(const Researcher& researcher, const CorpusIndex& index,
                   const BaselineSet& baselines, const AnalysisConfig& config);

}  // namespace fss

#endif
