#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const char* kCli = FSS_CLI_PATH;
const char* kGoldenDir = FSS_GOLDEN_DIR;

int run(const std::string& args) {
    std::string command = std::string("\"") + kCli + "\" " + args + " 2>/dev/null";
    int status = std::system(command.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("fss_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

bool same_bytes(const fs::path& a, const fs::path& b) { return slurp(a) == slurp(b); }

int count_lines(const fs::path& path) {
    std::string text = slurp(path);
    int lines = 0;
    for (char c : text) lines += c == '\n';
    return lines;
}

}  // namespace

TEST_CASE("validate: clean fixture exits 0") {
    CHECK(run(std::string("validate --config \"") + kGoldenDir + "/fixture.config\"") == 0);
}

TEST_CASE("validate: dangling authorship exits 2") {
    fs::path dir = fresh_dir("dangling");
    for (const char* name : {"roster.csv", "publications.csv", "authorships.csv",
                             "taxonomy.csv", "lexicon_given.txt", "lexicon_family.txt",
                             "overrides.csv", "region_map.csv", "fixture.config"})
        fs::copy_file(fs::path(kGoldenDir) / name, dir / name);
    std::ofstream(dir / "authorships.csv", std::ios::app) << "P9999,1,,X01\n";
    CHECK(run("validate --config \"" + (dir / "fixture.config").string() + "\"") == 2);
}

TEST_CASE("validate: missing roster exits 3") {
    fs::path dir = fresh_dir("missing");
    std::ofstream(dir / "bad.config") << "roster = nowhere.csv\n"
                                      << "publications = nowhere.csv\n"
                                      << "authorships = nowhere.csv\n"
                                      << "taxonomy = nowhere.csv\n";
    CHECK(run("validate --config \"" + (dir / "bad.config").string() + "\"") == 3);
}

TEST_CASE("unknown config key exits 2") {
    fs::path dir = fresh_dir("badkey");
    std::ofstream(dir / "bad.config") << "rooster = typo.csv\n";
    CHECK(run("validate --config \"" + (dir / "bad.config").string() + "\"") == 2);
}

TEST_CASE("synth: deterministic files, sized roster") {
    fs::path a = fresh_dir("syntha");
    fs::path b = fresh_dir("synthb");
    CHECK(run("synth --seed 7 --researchers 50 --publications 120 --out \"" +
              a.string() + "\"") == 0);
    CHECK(run("synth --seed 7 --researchers 50 --publications 120 --out \"" +
              b.string() + "\"") == 0);
    for (const char* name : {"roster.csv", "publications.csv", "authorships.csv",
                             "taxonomy.csv", "ground_truth.json", "corpus.config"})
        CHECK(same_bytes(a / name, b / name));
    // one header plus at least one role-record row per researcher
    CHECK(count_lines(a / "roster.csv") >= 51);
}

TEST_CASE("synth: infeasible share exits 5") {
    fs::path dir = fresh_dir("synthbad");
    CHECK(run("synth --seed 1 --foreign-share 2.0 --out \"" + dir.string() + "\"") == 5);
}

TEST_CASE("pipeline: byte-identical outputs across repeated runs") {
    fs::path corpus = fresh_dir("pipe_corpus");
    REQUIRE(run("synth --seed 42 --researchers 60 --publications 240 --out \"" +
                corpus.string() + "\"") == 0);
    fs::path out1 = fresh_dir("pipe_out1");
    fs::path out2 = fresh_dir("pipe_out2");
    std::string config = (corpus / "corpus.config").string();
    CHECK(run("pipeline --config \"" + config + "\" --out \"" + out1.string() + "\"") == 0);
    CHECK(run("pipeline --config \"" + config + "\" --out \"" + out2.string() + "\"") == 0);
    int compared = 0;
    for (const auto& entry : fs::directory_iterator(out1)) {
        CHECK(same_bytes(entry.path(), out2 / entry.path().filename()));
        ++compared;
    }
    CHECK(compared >= 10);
}

TEST_CASE("pipeline: nobody publishing exits 4") {
    fs::path corpus = fresh_dir("pipe_empty");
    REQUIRE(run("synth --seed 3 --researchers 10 --publications 0 --out \"" +
                corpus.string() + "\"") == 0);
    fs::path out = fresh_dir("pipe_empty_out");
    CHECK(run("pipeline --config \"" + (corpus / "corpus.config").string() +
              "\" --out \"" + out.string() + "\"") == 4);
}

TEST_CASE("report: records format writes structured documents") {
    fs::path corpus = fresh_dir("records_corpus");
    REQUIRE(run("synth --seed 5 --researchers 40 --publications 160 --out \"" +
                corpus.string() + "\"") == 0);
    fs::path out = fresh_dir("records_out");
    CHECK(run("report --config \"" + (corpus / "corpus.config").string() +
              "\" --format records --out \"" + out.string() + "\"") == 0);
    CHECK(fs::exists(out / "composition.json"));
    CHECK(fs::exists(out / "tile_shares_foreign.json"));
    std::string doc = slurp(out / "composition.json");
    CHECK(doc.find("\"columns\"") != std::string::npos);
}

TEST_CASE("stage subcommands emit their files") {
    fs::path corpus = fresh_dir("stages_corpus");
    REQUIRE(run("synth --seed 8 --researchers 30 --publications 100 --out \"" +
                corpus.string() + "\"") == 0);
    std::string config = (corpus / "corpus.config").string();
    fs::path out = fresh_dir("stages_out");
    CHECK(run("baselines --config \"" + config + "\" --out \"" + out.string() + "\"") == 0);
    CHECK(fs::exists(out / "baselines.csv"));
    CHECK(fs::exists(out / "baseline_empty_cells.csv"));
    CHECK(run("fss --config \"" + config + "\" --out \"" + out.string() + "\"") == 0);
    CHECK(fs::exists(out / "fss.csv"));
    CHECK(run("rank --config \"" + config + "\" --out \"" + out.string() + "\"") == 0);
    CHECK(fs::exists(out / "performance.csv"));
    CHECK(run("classify --config \"" + config + "\" --out \"" + out.string() + "\"") == 0);
    CHECK(fs::exists(out / "classification.csv"));
    CHECK(fs::exists(out / "classification_summary.csv"));
}

TEST_CASE("exit codes stay inside the documented set") {
    CHECK(run("--help") == 0);
    CHECK(run("pipeline --help") == 0);
    CHECK(run("frobnicate") == 2);               // unknown subcommand
    CHECK(run("pipeline") == 2);                 // missing required --config
    CHECK(run("report --config x --format pdf") == 2);  // bad flag value

    // malformed input data is invalid input, not a crash
    fs::path dir = fresh_dir("badrank");
    for (const char* name : {"roster.csv", "publications.csv", "authorships.csv",
                             "taxonomy.csv", "fixture.config"})
        fs::copy_file(fs::path(kGoldenDir) / name, dir / name);
    std::ofstream(dir / "roster.csv", std::ios::app)
        << "R99,Ada,Byron,U01,2012,professor,MAT01,0,,\n";
    CHECK(run("validate --config \"" + (dir / "fixture.config").string() + "\"") == 2);
}

TEST_CASE("golden fixture reproduces the committed outputs byte-for-byte") {
    fs::path out = fresh_dir("golden_out");
    CHECK(run(std::string("pipeline --config \"") + kGoldenDir +
              "/fixture.config\" --out \"" + out.string() + "\"") == 0);
    for (const char* name :
         {"performance.csv", "baselines.csv", "composition.csv",
          "average_percentiles_foreign.csv", "tile_shares_foreign.csv",
          "country_frequency.csv", "region_frequency.csv", "comparison.csv",
          "classification.csv"}) {
        INFO(name);
        CHECK(slurp(out / name) == slurp(fs::path(kGoldenDir) / "expected" / name));
    }
}
