// compmotif: motif detection by compression.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "compmotif/analysis.hpp"
#include "compmotif/binary_store.hpp"
#include "compmotif/canon.hpp"
#include "compmotif/census.hpp"
#include "compmotif/error.hpp"
#include "compmotif/graph.hpp"
#include "compmotif/null_models.hpp"
#include "compmotif/synth.hpp"

using namespace compmotif;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitInternal = 3;

Graph load_input(const std::string & path, bool directed, const std::string & store)
{
    if (store == "disk")
        return open_binary_store(path);
    CleanupStats stats;
    Graph g = load_edgelist(std::filesystem::path(path), directed, &stats);
    if (stats.self_loops || stats.duplicates)
        std::cerr << "warning: dropped " << stats.self_loops << " self-loops and " << stats.duplicates
                  << " duplicate links\n";
    return g;
}

/// Writes to `path`, or stdout when path is empty or "-".
class Output {
public:
    explicit Output(const std::string & path)
    {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_)
                throw IoError("cannot open " + path + " for writing");
        }
    }
    std::ostream & stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::string bits(double x)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << x;
    return s.str();
}

std::string interval(const IntervalBits & b)
{
    if (b.exact)
        return bits(b.point);
    return bits(b.point) + " [" + bits(b.lower) + ", " + bits(b.upper) + "]";
}

}  // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Network motif detection by compression"};
    app.require_subcommand(1);

    // analyze
    auto * analyze_cmd = app.add_subcommand("analyze", "Sample subgraphs and score candidate motifs");
    std::string input, store = "memory", format = "json", output;
    std::vector<std::string> null_args{"all"};
    bool directed = false, no_timings = false;
    AnalysisOptions ao;
    analyze_cmd->add_option("--input", input, "Edge list, or binary store with --store disk")->required();
    analyze_cmd->add_flag("--directed", directed, "Treat links as directed");
    analyze_cmd->add_option("--null", null_args, "Null models, comma-separated")
        ->delimiter(',')
        ->check(CLI::IsMember({"er", "el", "ds", "all"}));
    analyze_cmd->add_option("--samples", ao.samples, "Subgraph samples")->capture_default_str();
    analyze_cmd->add_option("--min-size", ao.size_min, "Smallest subgraph size")->capture_default_str();
    analyze_cmd->add_option("--max-size", ao.size_max, "Largest subgraph size")->capture_default_str();
    analyze_cmd->add_option("--top", ao.top, "Motifs to score")->capture_default_str();
    analyze_cmd->add_option("--alpha", ao.alpha, "Significance level")->capture_default_str();
    analyze_cmd->add_option("--min-gain", ao.min_gain, "Significance threshold in bits (overrides --alpha)");
    analyze_cmd->add_option("--ds-samples", ao.ds.samples, "Degree-sequence estimator samples")->capture_default_str();
    analyze_cmd->add_option("--ds-confidence", ao.ds.confidence, "Estimator confidence level")->capture_default_str();
    analyze_cmd->add_option("--search-depth", ao.search_depth, "Prune search depth, 0 = full")->capture_default_str();
    analyze_cmd->add_option("--max-rewired", ao.max_rewired, "Rewritten-link cap")->capture_default_str();
    analyze_cmd->add_option("--seed", ao.seed, "Random seed")->capture_default_str();
    analyze_cmd->add_option("--threads", ao.threads, "Worker threads, 0 = all cores")->capture_default_str();
    analyze_cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    analyze_cmd->add_option("--store", store, "Input kind")->check(CLI::IsMember({"memory", "disk"}));
    analyze_cmd->add_option("--output", output, "Report path (default stdout)");
    analyze_cmd->add_flag("--no-timings", no_timings, "Omit wall-clock timings from the report");

    // synth
    auto * synth_cmd = app.add_subcommand("synth", "Generate a graph with injected motif instances");
    std::string motif_text = "Dxc", truth;
    std::uint64_t instances = 100, synth_seed = 0;
    SynthOptions synth_opts;
    synth_cmd->add_option("--motif", motif_text, "Motif in graph6 form")->capture_default_str();
    synth_cmd->add_option("--instances", instances, "Injected instances")->capture_default_str();
    synth_cmd->add_option("--nodes", synth_opts.nodes, "Target node count")->capture_default_str();
    synth_cmd->add_option("--links", synth_opts.links, "Target link count")->capture_default_str();
    synth_cmd->add_option("--max-degree", synth_opts.max_degree, "Degree cap for instance nodes")->capture_default_str();
    synth_cmd->add_option("--labels", synth_opts.label_range, "Motif positions links attach to")->capture_default_str();
    synth_cmd->add_option("--seed", synth_seed, "Random seed")->capture_default_str();
    synth_cmd->add_option("--output", output, "Edge list path (default stdout)");
    synth_cmd->add_option("--truth", truth, "Ground-truth instance file");

    // convert
    auto * convert_cmd = app.add_subcommand("convert", "Convert an edge list to a binary store");
    std::string convert_out;
    ConvertOptions copts;
    convert_cmd->add_option("--input", input, "Edge list")->required();
    convert_cmd->add_option("--output", convert_out, "Store path")->required();
    convert_cmd->add_flag("--directed", directed, "Treat links as directed");
    convert_cmd->add_option("--run-links", copts.run_links, "Links per in-memory sort run")->capture_default_str();
    convert_cmd->add_option("--temp-dir", copts.temp_dir, "Directory for sort runs");

    // census
    auto * census_cmd = app.add_subcommand("census", "Exact count of connected induced subgraphs (small graphs)");
    int census_size = 3;
    census_cmd->add_option("--input", input, "Edge list")->required();
    census_cmd->add_flag("--directed", directed, "Treat links as directed");
    census_cmd->add_option("--size", census_size, "Subgraph size")->capture_default_str();
    census_cmd->add_option("--store", store, "Input kind")->check(CLI::IsMember({"memory", "disk"}));

    // nullbits
    auto * nullbits_cmd = app.add_subcommand("nullbits", "Print bound and complete codelengths of each null model");
    DsOptions ds;
    std::uint64_t nb_seed = 0;
    nullbits_cmd->add_option("--input", input, "Edge list")->required();
    nullbits_cmd->add_flag("--directed", directed, "Treat links as directed");
    nullbits_cmd->add_option("--ds-samples", ds.samples, "Degree-sequence estimator samples")->capture_default_str();
    nullbits_cmd->add_option("--ds-confidence", ds.confidence, "Estimator confidence level")->capture_default_str();
    nullbits_cmd->add_option("--seed", nb_seed, "Random seed")->capture_default_str();
    nullbits_cmd->add_option("--store", store, "Input kind")->check(CLI::IsMember({"memory", "disk"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*analyze_cmd) {
            ao.nulls.clear();
            for (const std::string & name : null_args) {
                std::vector<NullModel> add{NullModel::ER, NullModel::EL, NullModel::DS};
                if (name != "all")
                    add = {*parse_null_model(name)};
                for (NullModel m : add)
                    if (std::find(ao.nulls.begin(), ao.nulls.end(), m) == ao.nulls.end())
                        ao.nulls.push_back(m);
            }
            Graph g = load_input(input, directed, store);
            Report report = analyze(g, ao);
            Output out(output);
            if (format == "csv")
                write_csv(report, out.stream(), !no_timings);
            else
                write_json(report, out.stream(), !no_timings);
        } else if (*synth_cmd) {
            CanonicalGraph motif = CanonicalGraph::from_text(motif_text);
            Rng rng(synth_seed);
            SynthResult result = generate_injected(motif.to_graph(), instances, rng, synth_opts);
            Output out(output);
            write_edgelist(result.graph, out.stream());
            if (!truth.empty()) {
                Output t(truth);
                write_ground_truth(result, t.stream());
            }
        } else if (*convert_cmd) {
            ConvertStats s = bulk_convert(input, convert_out, directed, copts);
            std::cout << "nodes " << s.nodes << "\nlinks " << s.links << "\nself_loops " << s.self_loops
                      << "\nduplicates " << s.duplicates << "\nruns " << s.runs << "\nseconds " << s.seconds << '\n';
        } else if (*census_cmd) {
            Graph g = load_input(input, directed, store);
            for (const auto & [key, list] : exact_census(g, census_size))
                std::cout << key << '\t' << list.instances.size() << '\n';
        } else if (*nullbits_cmd) {
            Graph g = load_input(input, directed, store);
            Rng rng(nb_seed);
            std::cout << "nodes " << g.num_nodes() << "\nlinks " << g.num_links() << '\n';
            std::cout << "er bound " << bits(er_bound(g)) << "\ner complete " << bits(er_complete(g)) << '\n';
            std::cout << "el bound " << bits(el_bound(g)) << "\nel complete " << bits(el_complete(g)) << '\n';
            LogNormalEstimate est = ds_estimate(degree_sequence(g), ds, rng);
            DegreeSequence d = degree_sequence(g);
            std::cout << "ds bound " << interval(est.bits + deg_bound(d)) << "\nds complete "
                      << interval(est.bits + degree_header_codelength(d)) << '\n';
            std::cout << "ds mean_log " << est.mean_log << "\nds var_log " << est.var_log << '\n';
        }
    } catch (const ParseError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const IoError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const InvalidArgument & e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception & e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return 0;
}
