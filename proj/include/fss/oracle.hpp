#ifndef FSS_ORACLE_HPP
#define FSS_ORACLE_HPP

#include <map>
#include <string>
#include <vector>

#include "fss/types.hpp"

namespace fss {

// Brute-force recomputation of the productivity indicator by direct nested
// iteration over the raw corpus vectors: no indices, no shared intermediate
// structures, nothing from the metrics module. Exists to check the engine,
// so it stays deliberately slow and literal.
//
// Covers every researcher meeting the min-years rule.
std::map<std::string, double> oracle_fss(const Corpus& corpus,
                                         const AnalysisConfig& config);

// Midrank percentiles by explicit pairwise comparison counting (no sorting).
// Cohorts map an arbitrary label to the researcher_ids of its members; every
// member must be present in the fss map.
std::map<std::string, double> oracle_percentiles(
    const std::map<std::string, double>& fss,
    const std::map<std::string, std::vector<std::string>>& cohorts);

}  // namespace fss

#endif
