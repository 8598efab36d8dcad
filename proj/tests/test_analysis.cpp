#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "compmotif/analysis.hpp"
#include "compmotif/binary_store.hpp"
#include "compmotif/synth.hpp"
#include "helpers.hpp"

using namespace compmotif;
using namespace testutil;
namespace fs = std::filesystem;

namespace {

const fs::path kData = TEST_DATA_DIR;

std::string json_of(const Graph & g, const AnalysisOptions & opts)
{
    std::ostringstream out;
    write_json(analyze(g, opts), out, false);
    return out.str();
}

AnalysisOptions golden_options()
{
    AnalysisOptions opts;
    opts.samples = 5000;
    opts.top = 6;
    opts.seed = 5;
    opts.ds.samples = 20;
    return opts;
}

}  // namespace

TEST_CASE("report matches the frozen golden file")
{
    Graph g = load_edgelist(kData / "small_graph.txt", false);
    std::ifstream in(kData / "small_report.json");
    REQUIRE(in);
    std::string golden{std::istreambuf_iterator<char>(in), {}};
    CHECK(json_of(g, golden_options()) == golden);
}

TEST_CASE("report structure")
{
    Graph g = load_edgelist(kData / "small_graph.txt", false);
    auto j = nlohmann::json::parse(json_of(g, golden_options()));
    CHECK(j["schema_version"] == kReportSchemaVersion);
    CHECK(j["graph"]["links"] == g.num_links());
    CHECK(j["motifs"].size() == 6);
    CHECK(j["parameters"]["threshold_bits"].get<double>() == doctest::Approx(9.9658));
    for (const auto & m : j["motifs"])
        for (const char * null : {"er", "el", "ds"}) {
            const auto & s = m["scores"][null];
            const double lf = s["log_factor"].get<double>();
            const double diff = s["null_bits"]["lower"].get<double>() - s["motif_bits"]["upper"].get<double>();
            CHECK(std::abs(lf - diff) < 2e-4);  // fields are rounded to 4 decimals
            CHECK(s["significant"].get<bool>() == (lf >= 9.9658));
        }
    const bool timed = j.contains("footer") && j["footer"].contains("seconds");
    CHECK_FALSE(timed);
}

TEST_CASE("report does not depend on the thread count")
{
    Rng rng(1);
    SynthOptions so;
    so.nodes = 600;
    so.links = 1200;
    Graph g = generate_injected(CanonicalGraph::from_text("Dxc").to_graph(), 20, rng, so).graph;
    AnalysisOptions opts;
    opts.samples = 4000;
    opts.top = 6;
    opts.ds.samples = 10;
    opts.seed = 2;
    const std::string one = json_of(g, opts);
    opts.threads = 8;
    CHECK(json_of(g, opts) == one);
}

TEST_CASE("disk store and memory give the same report")
{
    Graph g = load_edgelist(kData / "small_graph.txt", false);
    const fs::path store = fs::temp_directory_path() / ("compmotif-analysis-" + std::to_string(::getpid()) + ".bin");
    write_binary_store(g, store);
    Graph disk = open_binary_store(store);
    AnalysisOptions opts = golden_options();
    opts.nulls = {NullModel::ER, NullModel::EL};
    CHECK(json_of(disk, opts) == json_of(g, opts));
    fs::remove(store);
}

TEST_CASE("no samples gives an empty report")
{
    AnalysisOptions opts;
    opts.samples = 0;
    Report r = analyze(triangle(), opts);
    CHECK(r.rows.empty());
    CHECK(r.nulls.size() == 3);
    CHECK(r.motifs_sampled == 0);
}

TEST_CASE("threshold from alpha or min_gain")
{
    AnalysisOptions opts;
    CHECK(opts.threshold_bits() == doctest::Approx(9.965784));
    opts.alpha = 0.05;
    CHECK(opts.threshold_bits() == doctest::Approx(-std::log2(0.05)));
    opts.min_gain = 3.0;
    CHECK(opts.threshold_bits() == 3.0);
}

TEST_CASE("csv has one line per motif and null model")
{
    Graph g = load_edgelist(kData / "small_graph.txt", false);
    AnalysisOptions opts = golden_options();
    opts.nulls = {NullModel::ER, NullModel::EL};
    std::ostringstream out;
    write_csv(analyze(g, opts), out, false);
    std::istringstream in(out.str());
    int rows = 0, comments = 0;
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("key,size,links", 0) == 0);
    while (std::getline(in, line))
        (line.rfind("#", 0) == 0 ? comments : rows)++;
    CHECK(rows == 12);
    CHECK(comments >= 1);
}
