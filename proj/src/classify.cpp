#include "fss/classify.hpp"

#include <istream>
#include <sstream>

#include "fss/csv.hpp"
#include "fss/text.hpp"

namespace fss {

std::set<std::string> load_lexicon(std::istream& in, const std::string& source_name) {
    std::set<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string token = normalize_name(line);
        if (!token.empty()) tokens.insert(std::move(token));
    }
    if (tokens.empty())
        throw std::runtime_error("lexicon is empty: " + source_name);
    return tokens;
}

OverrideMap load_overrides(std::istream& in, const std::string& source_name) {
    CsvReader reader(in, source_name);
    std::vector<std::string> fields;
    if (!reader.next(fields))
        throw ParseError(source_name, 1, "missing header row");
    if (fields != std::vector<std::string>{"researcher_id", "resolved_class", "reason"})
        throw ParseError(source_name, 1,
                         "expected header researcher_id,resolved_class,reason");
    OverrideMap overrides;
    while (reader.next(fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        long line = reader.record_line();
        if (fields.size() != 3)
            throw ParseError(source_name, line, "expected 3 fields");
        OverrideEntry entry;
        entry.researcher_id = fields[0];
        if (fields[1] == "domestic") entry.resolved_class = NationalityClass::domestic;
        else if (fields[1] == "foreign") entry.resolved_class = NationalityClass::foreign;
        else
            throw ParseError(source_name, line,
                             "resolved_class must be domestic or foreign, got '" +
                                 fields[1] + "'");
        entry.reason = fields[2];
        if (!overrides.emplace(entry.researcher_id, entry).second)
            throw ParseError(source_name, line,
                             "more than one override for researcher " +
                                 entry.researcher_id);
    }
    return overrides;
}

std::string to_string(DecidingStep step) {
    switch (step) {
        case DecidingStep::birth_flag: return "birth_flag";
        case DecidingStep::name_lexicon: return "name_lexicon";
        case DecidingStep::manual_override: return "manual_override";
        case DecidingStep::none: return "none";
    }
    return "?";
}

Classification classify_nationality(const Researcher& researcher,
                                    const NameLexicons& lexicons,
                                    const OverrideMap& overrides) {
    if (researcher.given_name.empty() || researcher.family_name.empty())
        throw std::invalid_argument("researcher " + researcher.researcher_id +
                                    " has an empty name field");

    // step 1: the registry birthplace gate
    if (!researcher.foreign_birth_flag || !*researcher.foreign_birth_flag)
        return {NationalityClass::domestic, DecidingStep::birth_flag};

    // step 2: both names agree on the lexicons
    const bool given_domestic =
        lexicons.domestic_given_names.count(normalize_name(researcher.given_name)) > 0;
    const bool family_domestic =
        lexicons.domestic_family_names.count(normalize_name(researcher.family_name)) > 0;
    if (!given_domestic && !family_domestic)
        return {NationalityClass::foreign, DecidingStep::name_lexicon};
    if (given_domestic && family_domestic)
        return {NationalityClass::domestic, DecidingStep::name_lexicon};

    // step 3: mixed names, the manual review file decides
    auto it = overrides.find(researcher.researcher_id);
    if (it != overrides.end())
        return {it->second.resolved_class, DecidingStep::manual_override};
    return {NationalityClass::unresolved, DecidingStep::none};
}

namespace {

ClassificationSummary summarize(const Corpus& corpus, const NameLexicons& lexicons,
                                const OverrideMap& overrides,
                                Corpus* mutate_target) {
    ClassificationSummary summary;
    std::set<std::string> consulted;
    for (std::size_t i = 0; i < corpus.researchers.size(); ++i) {
        const Researcher& r = corpus.researchers[i];
        Classification c = classify_nationality(r, lexicons, overrides);
        if (c.step == DecidingStep::manual_override) consulted.insert(r.researcher_id);
        if (mutate_target)
            mutate_target->researchers[i].nationality_class = c.nationality;
        summary.per_class[c.nationality] += 1;
        summary.per_step[c.step] += 1;
        summary.total += 1;
    }
    summary.unresolved = summary.per_class[NationalityClass::unresolved];
    const long long foreign = summary.per_class[NationalityClass::foreign];
    summary.foreign_share =
        summary.total == 0 ? 0.0
                           : static_cast<double>(foreign) / static_cast<double>(summary.total);
    for (const auto& [id, entry] : overrides) {
        (void)entry;
        if (!consulted.count(id)) summary.unused_override_ids.push_back(id);
    }
    return summary;
}

}  // namespace

ClassificationSummary classify_corpus(Corpus& corpus, const NameLexicons& lexicons,
                                      const OverrideMap& overrides) {
    return summarize(corpus, lexicons, overrides, &corpus);
}

ClassificationSummary classification_summary(const Corpus& corpus,
                                             const NameLexicons& lexicons,
                                             const OverrideMap& overrides) {
    return summarize(corpus, lexicons, overrides, nullptr);
}

std::string serialize_classification(const Corpus& corpus, const NameLexicons& lexicons,
                                     const OverrideMap& overrides) {
    std::ostringstream out;
    out << "researcher_id,nationality_class,deciding_step\n";
    for (const Researcher& r : corpus.researchers) {
        Classification c = classify_nationality(r, lexicons, overrides);
        out << csv_join({r.researcher_id, to_string(c.nationality), to_string(c.step)})
            << "\n";
    }
    return out.str();
}

std::string serialize_classification_summary(const ClassificationSummary& summary) {
    std::ostringstream out;
    out << "key,value\n";
    out << "total," << summary.total << "\n";
    auto class_count = [&](NationalityClass c) {
        auto it = summary.per_class.find(c);
        return it == summary.per_class.end() ? 0LL : it->second;
    };
    auto step_count = [&](DecidingStep s) {
        auto it = summary.per_step.find(s);
        return it == summary.per_step.end() ? 0LL : it->second;
    };
    out << "domestic," << class_count(NationalityClass::domestic) << "\n";
    out << "foreign," << class_count(NationalityClass::foreign) << "\n";
    out << "unresolved," << class_count(NationalityClass::unresolved) << "\n";
    char share[32];
    std::snprintf(share, sizeof share, "%.6f", summary.foreign_share);
    out << "foreign_share," << share << "\n";
    out << "decided_by_birth_flag," << step_count(DecidingStep::birth_flag) << "\n";
    out << "decided_by_name_lexicon," << step_count(DecidingStep::name_lexicon) << "\n";
    out << "decided_by_manual_override," << step_count(DecidingStep::manual_override)
        << "\n";
    out << "undecided," << step_count(DecidingStep::none) << "\n";
    out << "unused_overrides," << summary.unused_override_ids.size() << "\n";
    return out.str();
}

}  // namespace fss
