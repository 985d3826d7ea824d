// fss: batch research-performance analytics over roster + publication files.
//
// Subcommands: validate, baselines, fss, rank, classify, report, synth,
// pipeline. Exit codes: 0 success, 2 invalid input or validation failure,
// 3 missing input file, 4 empty eligible set, 5 infeasible synthesis
// parameters.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fss/analytics.hpp"
#include "fss/classify.hpp"
#include "fss/csv.hpp"
#include "fss/format.hpp"
#include "fss/ingest.hpp"
#include "fss/metrics.hpp"
#include "fss/oracle.hpp"
#include "fss/pipeline.hpp"
#include "fss/rank.hpp"
#include "fss/synth.hpp"
#include "fss/types.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitMissingFile = 3;
constexpr int kExitEmptyEligible = 4;
constexpr int kExitInfeasible = 5;

class MissingFile : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    fss::IngestManifest manifest;
    fss::AnalysisConfig analysis;
    std::string out_dir = ".";
    std::string format = "tabular";  // tabular | records
    std::string raw_config_text;     // canonical form, hashed into the manifest
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

fss::YearWindow parse_window(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::runtime_error("window must be START:END, got '" + text + "'");
    fss::YearWindow w;
    try {
        w.start_year = std::stoi(text.substr(0, colon));
        w.end_year = std::stoi(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw std::runtime_error("window must be START:END, got '" + text + "'");
    }
    return w;
}

// Flat key = value configuration; '#' starts a comment; unknown keys are
// rejected.
void load_config_file(const std::string& path, RunConfig& config) {
    std::ifstream in(path);
    if (!in) throw MissingFile("cannot open config file: " + path);
    const fs::path base = fs::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        if (p.empty()) return p;
        fs::path candidate(p);
        if (candidate.is_absolute()) return p;
        return (base / candidate).string();
    };

    std::map<std::string, std::string> keys;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!keys.emplace(key, value).second)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": duplicate key '" + key + "'");
    }

    for (const auto& [key, value] : keys) {
        if (key == "roster") config.manifest.roster_path = resolve(value);
        else if (key == "publications") config.manifest.publications_path = resolve(value);
        else if (key == "authorships") config.manifest.authorships_path = resolve(value);
        else if (key == "taxonomy") config.manifest.taxonomy_path = resolve(value);
        else if (key == "lexicon_given") config.manifest.lexicon_given_path = resolve(value);
        else if (key == "lexicon_family") config.manifest.lexicon_family_path = resolve(value);
        else if (key == "overrides") config.manifest.overrides_path = resolve(value);
        else if (key == "region_map") config.manifest.region_map_path = resolve(value);
        else if (key == "census_date") config.manifest.census_date = value;
        else if (key == "format_version") config.manifest.format_version = value;
        else if (key == "window") config.analysis.window = parse_window(value);
        else if (key == "min_role_years") config.analysis.min_role_years = std::stoi(value);
        else if (key == "sds_publishing_threshold")
            config.analysis.sds_publishing_threshold = std::stod(value);
        else if (key == "out_dir") config.out_dir = resolve(value);
        else if (key == "format") config.format = value;
        else throw std::runtime_error(path + ": unknown config key '" + key + "'");
    }

    // canonical text for the run-manifest hash: sorted key = value lines
    std::ostringstream canon;
    for (const auto& [key, value] : keys) canon << key << " = " << value << "\n";
    config.raw_config_text = canon.str();
}

uint64_t fnv1a64(const std::string& text) {
    uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

void require_file(const std::string& path, const std::string& what) {
    if (path.empty())
        throw std::runtime_error("config is missing the " + what + " path");
    if (!fs::exists(path)) throw MissingFile(what + " file not found: " + path);
}

fss::BuildResult load_corpus(const RunConfig& config) {
    require_file(config.manifest.roster_path, "roster");
    require_file(config.manifest.publications_path, "publications");
    require_file(config.manifest.authorships_path, "authorships");
    require_file(config.manifest.taxonomy_path, "taxonomy");
    return fss::build_corpus(config.manifest, config.analysis);
}

fss::NameLexicons load_lexicons(const RunConfig& config) {
    require_file(config.manifest.lexicon_given_path, "lexicon_given");
    require_file(config.manifest.lexicon_family_path, "lexicon_family");
    std::ifstream given(config.manifest.lexicon_given_path);
    std::ifstream family(config.manifest.lexicon_family_path);
    fss::NameLexicons lexicons;
    lexicons.domestic_given_names =
        fss::load_lexicon(given, config.manifest.lexicon_given_path);
    lexicons.domestic_family_names =
        fss::load_lexicon(family, config.manifest.lexicon_family_path);
    return lexicons;
}

fss::OverrideMap load_override_file(const RunConfig& config) {
    if (config.manifest.overrides_path.empty()) return {};
    require_file(config.manifest.overrides_path, "overrides");
    std::ifstream in(config.manifest.overrides_path);
    return fss::load_overrides(in, config.manifest.overrides_path);
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

void write_table(const RunConfig& config, const std::string& basename,
                 const fss::ReportTable& table) {
    const bool records = config.format == "records";
    const fs::path path = fs::path(config.out_dir) /
                          (basename + (records ? ".json" : ".csv"));
    write_file(path, records ? table.to_records() : table.to_tabular());
}

int cmd_validate(const RunConfig& config) {
    auto build = load_corpus(config);
    std::cerr << "corpus valid: " << build.corpus.researchers.size() << " researchers, "
              << build.corpus.publications.size() << " publications, "
              << build.dropped_role_records << " role records outside the window\n";
    return kExitOk;
}

int cmd_baselines(const RunConfig& config) {
    auto build = load_corpus(config);
    const auto baselines = fss::compute_baselines(build.corpus);
    write_file(fs::path(config.out_dir) / "baselines.csv",
               fss::serialize_baselines(baselines));
    std::string empty = "year,subject_category\n";
    for (const auto& cell : baselines.empty_cells)
        empty += std::to_string(cell.year) + "," + cell.subject_category + "\n";
    write_file(fs::path(config.out_dir) / "baseline_empty_cells.csv", empty);
    return kExitOk;
}

int cmd_classify(const RunConfig& config) {
    auto build = load_corpus(config);
    const auto lexicons = load_lexicons(config);
    const auto overrides = load_override_file(config);
    const auto summary = fss::classify_corpus(build.corpus, lexicons, overrides);
    write_file(fs::path(config.out_dir) / "classification.csv",
               fss::serialize_classification(build.corpus, lexicons, overrides));
    write_file(fs::path(config.out_dir) / "classification_summary.csv",
               fss::serialize_classification_summary(summary));
    return kExitOk;
}

struct PipelineArtifacts {
    fss::PipelineResult result;
    int dropped_role_records = 0;
};

PipelineArtifacts run_full_pipeline(const RunConfig& config) {
    auto build = load_corpus(config);
    const auto lexicons = load_lexicons(config);
    const auto overrides = load_override_file(config);
    PipelineArtifacts artifacts;
    artifacts.dropped_role_records = build.dropped_role_records;
    artifacts.result = fss::run_pipeline(std::move(build.corpus), lexicons, overrides,
                                         config.analysis, build.dropped_role_records);
    return artifacts;
}

int cmd_fss(const RunConfig& config) {
    auto artifacts = run_full_pipeline(config);
    std::string out = "researcher_id,t,publication_count,fss\n";
    for (const auto& r : artifacts.result.records)
        out += r.researcher_id + "," + std::to_string(r.years_active) + "," +
               std::to_string(r.publication_count) + "," + fss::format_real(r.fss) + "\n";
    write_file(fs::path(config.out_dir) / "fss.csv", out);
    return kExitOk;
}

int cmd_rank(const RunConfig& config) {
    auto artifacts = run_full_pipeline(config);
    write_file(fs::path(config.out_dir) / "performance.csv",
               fss::serialize_performance(artifacts.result.records));
    return kExitOk;
}

void write_reports(const RunConfig& config, const fss::PipelineResult& result) {
    const fss::CorpusIndex index = fss::CorpusIndex::build(result.corpus);
    write_table(config, "composition", fss::composition_report(result.records, index));
    write_table(config, "average_percentiles_foreign",
                fss::average_percentile_report(result.records, index,
                                               fss::NationalityClass::foreign));
    write_table(config, "tile_shares_foreign",
                fss::tile_share_report(result.records, index,
                                       fss::NationalityClass::foreign));
    write_table(config, "country_frequency", fss::country_frequency(result.records, index));
    if (!config.manifest.region_map_path.empty()) {
        require_file(config.manifest.region_map_path, "region_map");
        std::ifstream in(config.manifest.region_map_path);
        const auto region_map = fss::load_region_map(in, config.manifest.region_map_path);
        write_table(config, "region_frequency",
                    fss::region_frequency(result.records, index, region_map));
    }
    bool has_foreign = false;
    bool has_domestic = false;
    for (const auto& r : result.records) {
        auto c = fss::record_class(r, index);
        has_foreign |= c == fss::NationalityClass::foreign;
        has_domestic |= c == fss::NationalityClass::domestic;
    }
    if (has_foreign && has_domestic)
        write_table(config, "comparison",
                    fss::compare_groups(result.records, index,
                                        fss::NationalityClass::foreign,
                                        fss::NationalityClass::domestic));
}

int cmd_report(const RunConfig& config) {
    auto artifacts = run_full_pipeline(config);
    write_reports(config, artifacts.result);
    return kExitOk;
}

void write_run_manifest(const RunConfig& config, const PipelineArtifacts& artifacts) {
    const auto& result = artifacts.result;
    nlohmann::ordered_json doc;
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config.raw_config_text)));
    doc["config_hash"] = hash;
    doc["census_date"] = result.corpus.census_date;
    doc["window"] = {result.corpus.window.start_year, result.corpus.window.end_year};
    doc["min_role_years"] = config.analysis.min_role_years;
    doc["sds_publishing_threshold"] = config.analysis.sds_publishing_threshold;
    doc["counts"]["researchers"] = result.counts.researchers_total;
    doc["counts"]["publications"] = result.corpus.publications.size();
    doc["counts"]["authorships"] = result.corpus.authorships.size();
    doc["counts"]["dropped_role_records"] = result.counts.dropped_role_records;
    doc["counts"]["below_min_years"] = result.counts.below_min_years;
    doc["counts"]["in_excluded_sds"] = result.counts.in_excluded_sds;
    doc["counts"]["analyzed"] = result.counts.analyzed;
    doc["counts"]["retained_sds"] = result.retained_sds.size();
    doc["classification"]["domestic"] =
        result.classification.per_class.count(fss::NationalityClass::domestic)
            ? result.classification.per_class.at(fss::NationalityClass::domestic)
            : 0;
    doc["classification"]["foreign"] =
        result.classification.per_class.count(fss::NationalityClass::foreign)
            ? result.classification.per_class.at(fss::NationalityClass::foreign)
            : 0;
    doc["classification"]["unresolved"] = result.classification.unresolved;
    doc["classification"]["unused_overrides"] =
        result.classification.unused_override_ids;
    write_file(fs::path(config.out_dir) / "run_manifest.json", doc.dump(2) + "\n");
}

int cmd_pipeline(const RunConfig& config) {
    auto artifacts = run_full_pipeline(config);
    const auto& result = artifacts.result;

    write_file(fs::path(config.out_dir) / "baselines.csv",
               fss::serialize_baselines(result.baselines));
    std::string empty = "year,subject_category\n";
    for (const auto& cell : result.baselines.empty_cells)
        empty += std::to_string(cell.year) + "," + cell.subject_category + "\n";
    write_file(fs::path(config.out_dir) / "baseline_empty_cells.csv", empty);

    const auto lexicons = load_lexicons(config);
    const auto overrides = load_override_file(config);
    write_file(fs::path(config.out_dir) / "classification.csv",
               fss::serialize_classification(result.corpus, lexicons, overrides));
    write_file(fs::path(config.out_dir) / "classification_summary.csv",
               fss::serialize_classification_summary(result.classification));

    write_file(fs::path(config.out_dir) / "performance.csv",
               fss::serialize_performance(result.records));
    write_reports(config, result);
    write_run_manifest(config, artifacts);
    return kExitOk;
}

int cmd_synth(const fss::SynthParams& params, const std::string& out_dir) {
    const auto result = fss::generate_corpus(params);
    fss::write_corpus_files(result, params, out_dir);
    std::cerr << "wrote synthetic corpus (" << result.corpus.researchers.size()
              << " researchers, " << result.corpus.publications.size()
              << " publications) to " << out_dir << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"research performance analytics (field-normalized fractional productivity)"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string format;
    std::string window_text;
    int min_years = -1;
    double threshold = -1.0;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* opt = cmd->add_option("--config", config_path, "flat key=value config file");
        if (needs_config) opt->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--format", format, "tabular | records")
            ->check(CLI::IsMember({"tabular", "records"}));
        cmd->add_option("--window", window_text, "analysis window START:END");
        cmd->add_option("--min-years", min_years, "minimum role years");
        cmd->add_option("--threshold", threshold, "SDS publishing threshold");
    };

    CLI::App* validate = app.add_subcommand("validate", "check corpus integrity");
    CLI::App* baselines = app.add_subcommand("baselines", "export citation baselines");
    CLI::App* fss_cmd = app.add_subcommand("fss", "compute productivity scores");
    CLI::App* rank_cmd = app.add_subcommand("rank", "percentiles and tiles");
    CLI::App* classify_cmd = app.add_subcommand("classify", "nationality classification");
    CLI::App* report_cmd = app.add_subcommand("report", "aggregate report tables");
    CLI::App* pipeline_cmd = app.add_subcommand("pipeline", "full analysis run");
    for (CLI::App* cmd : {validate, baselines, fss_cmd, rank_cmd, classify_cmd,
                          report_cmd, pipeline_cmd})
        add_common(cmd, true);

    CLI::App* synth_cmd = app.add_subcommand("synth", "generate a synthetic corpus");
    fss::SynthParams params;
    unsigned long long seed_value = 1;
    synth_cmd->add_option("--seed", seed_value, "generator seed");
    synth_cmd->add_option("--researchers", params.researchers, "roster size");
    synth_cmd->add_option("--publications", params.publications, "publication count");
    synth_cmd->add_option("--sds", params.sds_count, "number of SDS codes");
    synth_cmd->add_option("--udas", params.uda_count, "number of UDA codes");
    synth_cmd->add_option("--foreign-share", params.foreign_share,
                          "planted foreign share");
    synth_cmd->add_option("--shift", params.planted_shift,
                          "planted foreign percentile shift");
    synth_cmd->add_option("--max-authors", params.max_authors, "author list cap");
    synth_cmd->add_option("--out", out_dir, "output directory")->required();
    synth_cmd->add_option("--window", window_text, "window START:END");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11's own exit codes collapse onto the documented set
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            app.exit(e);
            return kExitOk;
        }
        std::cerr << e.what() << "\n";
        return kExitInvalid;
    }

    try {
        if (synth_cmd->parsed()) {
            params.seed = seed_value;
            if (!window_text.empty()) params.window = parse_window(window_text);
            return cmd_synth(params, out_dir);
        }

        RunConfig config;
        load_config_file(config_path, config);
        if (!out_dir.empty()) config.out_dir = out_dir;
        if (!format.empty()) config.format = format;
        if (!window_text.empty()) config.analysis.window = parse_window(window_text);
        if (min_years >= 0) config.analysis.min_role_years = min_years;
        if (threshold >= 0) config.analysis.sds_publishing_threshold = threshold;
        auto problems = fss::check_config(config.analysis);
        if (!problems.empty())
            throw std::runtime_error("invalid analysis config: " + problems.front());

        if (validate->parsed()) return cmd_validate(config);
        if (baselines->parsed()) return cmd_baselines(config);
        if (fss_cmd->parsed()) return cmd_fss(config);
        if (rank_cmd->parsed()) return cmd_rank(config);
        if (classify_cmd->parsed()) return cmd_classify(config);
        if (report_cmd->parsed()) return cmd_report(config);
        if (pipeline_cmd->parsed()) return cmd_pipeline(config);
        std::cerr << "no subcommand\n";
        return kExitInvalid;
    } catch (const fss::CorpusError& e) {
        std::cerr << "validation failed:\n" << fss::format_report(e.report());
        return kExitInvalid;
    } catch (const fss::EmptyEligibleSet& e) {
        std::cerr << e.what() << "\n";
        return kExitEmptyEligible;
    } catch (const fss::InfeasibleParams& e) {
        std::cerr << "infeasible synthesis parameters: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const MissingFile& e) {
        std::cerr << e.what() << "\n";
        return kExitMissingFile;
    } catch (const fss::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitInvalid;
    }
}
