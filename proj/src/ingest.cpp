#include "fss/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "fss/csv.hpp"

namespace fss {
namespace {

// Maps header names to column indices. Required columns must all be present;
// optional ones may be absent; anything else is rejected.
std::map<std::string, size_t> read_header(CsvReader& reader,
                                          const std::vector<std::string>& required,
                                          const std::vector<std::string>& optional) {
    std::vector<std::string> fields;
    if (!reader.next(fields))
        throw ParseError(reader.source(), 1, "missing header row");
    std::map<std::string, size_t> cols;
    for (size_t i = 0; i < fields.size(); ++i) {
        const std::string& name = fields[i];
        bool known = std::find(required.begin(), required.end(), name) != required.end() ||
                     std::find(optional.begin(), optional.end(), name) != optional.end();
        if (!known)
            throw ParseError(reader.source(), reader.record_line(),
                             "unknown column '" + name + "'");
        if (!cols.emplace(name, i).second)
            throw ParseError(reader.source(), reader.record_line(),
                             "duplicate column '" + name + "'");
    }
    for (const std::string& name : required)
        if (!cols.count(name))
            throw ParseError(reader.source(), reader.record_line(),
                             "missing column '" + name + "'");
    return cols;
}

bool blank_record(const std::vector<std::string>& fields) {
    return fields.size() == 1 && fields[0].empty();
}

const std::string& field_at(const std::vector<std::string>& fields,
                            const std::map<std::string, size_t>& cols,
                            const std::string& name, CsvReader& reader) {
    auto it = cols.find(name);
    if (it == cols.end() || it->second >= fields.size())
        throw ParseError(reader.source(), reader.record_line(),
                         "row too short, missing '" + name + "'");
    return fields[it->second];
}

std::optional<std::string> optional_field(const std::vector<std::string>& fields,
                                          const std::map<std::string, size_t>& cols,
                                          const std::string& name) {
    auto it = cols.find(name);
    if (it == cols.end() || it->second >= fields.size()) return std::nullopt;
    if (fields[it->second].empty()) return std::nullopt;
    return fields[it->second];
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    return in;
}

}  // namespace

std::vector<Researcher> parse_roster(std::istream& in, const std::string& source_name) {
    CsvReader reader(in, source_name);
    auto cols = read_header(reader,
                            {"researcher_id", "given_name", "family_name",
                             "institution_id", "year", "rank", "sds_code",
                             "foreign_birth_flag"},
                            {"gender", "provenance_country"});

    std::map<std::string, Researcher> by_id;
    std::map<std::string, std::set<int>> seen_years;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        if (blank_record(fields)) continue;
        long line = reader.record_line();
        const std::string& id = field_at(fields, cols, "researcher_id", reader);
        if (id.empty())
            throw ParseError(source_name, line, "empty researcher_id");

        RoleRecord record;
        record.year = static_cast<int>(
            parse_int_field(field_at(fields, cols, "year", reader), source_name, line, "year"));
        const std::string& rank_token = field_at(fields, cols, "rank", reader);
        auto rank = rank_from_token(rank_token);
        if (!rank)
            throw ParseError(source_name, line, "unknown rank '" + rank_token + "'");
        record.rank = *rank;
        record.sds_code = field_at(fields, cols, "sds_code", reader);

        if (!seen_years[id].insert(record.year).second)
            throw ParseError(source_name, line,
                             "duplicate role record for researcher " + id + " year " +
                                 std::to_string(record.year));

        std::optional<bool> flag;
        const std::string& flag_field = field_at(fields, cols, "foreign_birth_flag", reader);
        if (flag_field == "1") flag = true;
        else if (flag_field == "0") flag = false;
        else if (!flag_field.empty())
            throw ParseError(source_name, line,
                             "foreign_birth_flag must be 0, 1 or empty, got '" +
                                 flag_field + "'");

        Researcher incoming;
        incoming.researcher_id = id;
        incoming.given_name = field_at(fields, cols, "given_name", reader);
        incoming.family_name = field_at(fields, cols, "family_name", reader);
        incoming.institution_id = field_at(fields, cols, "institution_id", reader);
        incoming.foreign_birth_flag = flag;
        incoming.gender = optional_field(fields, cols, "gender");
        incoming.provenance_country = optional_field(fields, cols, "provenance_country");

        auto [it, inserted] = by_id.emplace(id, incoming);
        if (!inserted) {
            Researcher& existing = it->second;
            // rows of the same researcher must agree on the per-person fields
            if (existing.given_name != incoming.given_name ||
                existing.family_name != incoming.family_name ||
                existing.institution_id != incoming.institution_id ||
                existing.foreign_birth_flag != incoming.foreign_birth_flag ||
                existing.gender != incoming.gender ||
                existing.provenance_country != incoming.provenance_country)
                throw ParseError(source_name, line,
                                 "inconsistent attributes for researcher " + id);
        }
        it->second.role_records.push_back(record);
    }

    std::vector<Researcher> out;
    out.reserve(by_id.size());
    for (auto& [id, r] : by_id) {
        std::sort(r.role_records.begin(), r.role_records.end(),
                  [](const RoleRecord& a, const RoleRecord& b) { return a.year < b.year; });
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Publication> parse_publications(std::istream& in, const std::string& source_name) {
    CsvReader reader(in, source_name);
    auto cols = read_header(reader,
                            {"publication_id", "year", "subject_category",
                             "citation_count"},
                            {});
    std::map<std::string, Publication> by_id;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        if (blank_record(fields)) continue;
        long line = reader.record_line();
        Publication p;
        p.publication_id = field_at(fields, cols, "publication_id", reader);
        if (p.publication_id.empty())
            throw ParseError(source_name, line, "empty publication_id");
        p.year = static_cast<int>(
            parse_int_field(field_at(fields, cols, "year", reader), source_name, line, "year"));
        p.subject_category = field_at(fields, cols, "subject_category", reader);
        if (p.subject_category.empty())
            throw ParseError(source_name, line,
                             "missing subject_category for " + p.publication_id);
        p.citation_count = parse_int_field(
            field_at(fields, cols, "citation_count", reader), source_name, line,
            "citation_count");
        if (p.citation_count < 0)
            throw ParseError(source_name, line,
                             "negative citation_count for " + p.publication_id);
        if (!by_id.emplace(p.publication_id, p).second)
            throw ParseError(source_name, line,
                             "duplicate publication_id " + p.publication_id);
    }
    std::vector<Publication> out;
    out.reserve(by_id.size());
    for (auto& [id, p] : by_id) out.push_back(std::move(p));
    return out;
}

std::vector<Authorship> parse_authorships(std::istream& in, const std::string& source_name) {
    CsvReader reader(in, source_name);
    auto cols = read_header(reader,
                            {"publication_id", "position", "researcher_id",
                             "author_institution_id"},
                            {});
    std::vector<Authorship> out;
    std::map<std::string, long> first_line;  // diagnostics for position errors
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        if (blank_record(fields)) continue;
        long line = reader.record_line();
        Authorship a;
        a.publication_id = field_at(fields, cols, "publication_id", reader);
        if (a.publication_id.empty())
            throw ParseError(source_name, line, "empty publication_id");
        a.position = static_cast<int>(parse_int_field(
            field_at(fields, cols, "position", reader), source_name, line, "position"));
        if (a.position < 1)
            throw ParseError(source_name, line, "position must be 1-based");
        a.researcher_id = optional_field(fields, cols, "researcher_id");
        a.author_institution_id = field_at(fields, cols, "author_institution_id", reader);
        if (!a.researcher_id && a.author_institution_id.empty())
            throw ParseError(source_name, line,
                             "authorship with neither researcher_id nor institution");
        first_line.emplace(a.publication_id, line);
        out.push_back(std::move(a));
    }

    // positions of each publication must form the contiguous set 1..n
    std::map<std::string, std::vector<int>> positions;
    for (const Authorship& a : out) positions[a.publication_id].push_back(a.position);
    for (auto& [pub, pos] : positions) {
        std::sort(pos.begin(), pos.end());
        for (size_t i = 0; i < pos.size(); ++i)
            if (pos[i] != static_cast<int>(i) + 1)
                throw ParseError(source_name, first_line[pub],
                                 "positions of publication " + pub +
                                     " are not contiguous from 1");
    }

    std::sort(out.begin(), out.end(), [](const Authorship& a, const Authorship& b) {
        return std::tie(a.publication_id, a.position) < std::tie(b.publication_id, b.position);
    });
    return out;
}

FieldTaxonomy parse_taxonomy(std::istream& in, const std::string& source_name) {
    CsvReader reader(in, source_name);
    auto cols = read_header(reader,
                            {"sds_code", "uda_code", "uda_name",
                             "alphabetical_order_flag", "position_weighted_flag"},
                            {});
    FieldTaxonomy taxonomy;
    std::map<std::string, int> uda_flag;  // position_weighted must agree per UDA
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        if (blank_record(fields)) continue;
        long line = reader.record_line();
        const std::string& sds = field_at(fields, cols, "sds_code", reader);
        const std::string& uda = field_at(fields, cols, "uda_code", reader);
        const std::string& name = field_at(fields, cols, "uda_name", reader);
        if (sds.empty() || uda.empty())
            throw ParseError(source_name, line, "empty sds_code or uda_code");
        if (!taxonomy.sds_to_uda.emplace(sds, uda).second)
            throw ParseError(source_name, line, "duplicate sds_code " + sds);
        auto [it, inserted] = taxonomy.uda_names.emplace(uda, name);
        if (!inserted && it->second != name)
            throw ParseError(source_name, line,
                             "conflicting names for uda_code " + uda);

        long long alpha = parse_int_field(
            field_at(fields, cols, "alphabetical_order_flag", reader), source_name,
            line, "alphabetical_order_flag");
        long long positional = parse_int_field(
            field_at(fields, cols, "position_weighted_flag", reader), source_name,
            line, "position_weighted_flag");
        if ((alpha != 0 && alpha != 1) || (positional != 0 && positional != 1))
            throw ParseError(source_name, line, "flags must be 0 or 1");
        if (alpha == 1) taxonomy.alphabetical_order_sds.insert(sds);
        auto [flag_it, flag_new] = uda_flag.emplace(uda, static_cast<int>(positional));
        if (!flag_new && flag_it->second != positional)
            throw ParseError(source_name, line,
                             "position_weighted_flag inconsistent within uda " + uda);
        if (positional == 1) taxonomy.position_weighted_udas.insert(uda);
    }
    return taxonomy;
}

BuildResult build_corpus(const IngestManifest& manifest, const AnalysisConfig& config) {
    if (manifest.format_version != "1")
        throw std::runtime_error("unrecognized manifest format version: " +
                                 manifest.format_version);
    auto config_problems = check_config(config);
    if (!config_problems.empty())
        throw std::runtime_error("invalid analysis config: " + config_problems.front());

    auto roster_in = open_or_throw(manifest.roster_path);
    auto publications_in = open_or_throw(manifest.publications_path);
    auto authorships_in = open_or_throw(manifest.authorships_path);
    auto taxonomy_in = open_or_throw(manifest.taxonomy_path);

    BuildResult result;
    Corpus& corpus = result.corpus;
    corpus.researchers = parse_roster(roster_in, manifest.roster_path);
    corpus.publications = parse_publications(publications_in, manifest.publications_path);
    corpus.authorships = parse_authorships(authorships_in, manifest.authorships_path);
    corpus.taxonomy = parse_taxonomy(taxonomy_in, manifest.taxonomy_path);
    corpus.census_date = manifest.census_date;
    corpus.window = config.window;

    for (Researcher& r : corpus.researchers) {
        auto inside = [&](const RoleRecord& rec) { return config.window.contains(rec.year); };
        auto first_dropped = std::stable_partition(r.role_records.begin(),
                                                   r.role_records.end(), inside);
        result.dropped_role_records +=
            static_cast<int>(r.role_records.end() - first_dropped);
        r.role_records.erase(first_dropped, r.role_records.end());
    }

    ValidationReport report = validate_corpus(corpus);
    if (!report.empty())
        throw CorpusError("corpus failed validation", std::move(report));
    return result;
}

namespace {

std::string flag_text(const std::optional<bool>& flag) {
    if (!flag) return "";
    return *flag ? "1" : "0";
}

}  // namespace

std::string serialize_roster(const Corpus& corpus) {
    std::ostringstream out;
    out << "researcher_id,given_name,family_name,institution_id,year,rank,"
           "sds_code,foreign_birth_flag,gender,provenance_country\n";
    for (const Researcher& r : corpus.researchers)
        for (const RoleRecord& rec : r.role_records)
            out << csv_join({r.researcher_id, r.given_name, r.family_name,
                             r.institution_id, std::to_string(rec.year),
                             to_string(rec.rank), rec.sds_code,
                             flag_text(r.foreign_birth_flag),
                             r.gender.value_or(""),
                             r.provenance_country.value_or("")})
                << "\n";
    return out.str();
}

std::string serialize_publications(const Corpus& corpus) {
    std::ostringstream out;
    out << "publication_id,year,subject_category,citation_count\n";
    for (const Publication& p : corpus.publications)
        out << csv_join({p.publication_id, std::to_string(p.year), p.subject_category,
                         std::to_string(p.citation_count)})
            << "\n";
    return out.str();
}

std::string serialize_authorships(const Corpus& corpus) {
    std::ostringstream out;
    out << "publication_id,position,researcher_id,author_institution_id\n";
    for (const Authorship& a : corpus.authorships)
        out << csv_join({a.publication_id, std::to_string(a.position),
                         a.researcher_id.value_or(""), a.author_institution_id})
            << "\n";
    return out.str();
}

std::string serialize_taxonomy(const Corpus& corpus) {
    std::ostringstream out;
    out << "sds_code,uda_code,uda_name,alphabetical_order_flag,position_weighted_flag\n";
    const FieldTaxonomy& t = corpus.taxonomy;
    for (const auto& [sds, uda] : t.sds_to_uda) {
        auto name = t.uda_names.find(uda);
        out << csv_join({sds, uda, name == t.uda_names.end() ? "" : name->second,
                         t.alphabetical_order_sds.count(sds) ? "1" : "0",
                         t.position_weighted_udas.count(uda) ? "1" : "0"})
            << "\n";
    }
    return out.str();
}

}  // namespace fss
