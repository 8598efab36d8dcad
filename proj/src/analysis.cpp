#include "compmotif/analysis.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "compmotif/error.hpp"
#include "compmotif/parallel.hpp"

namespace compmotif {

namespace {

    using Clock = std::chrono::steady_clock;

    double seconds_since(Clock::time_point start)
    {
        return std::chrono::duration<double>(Clock::now() - start).count();
    }

    double bits4(double x) { return std::round(x * 1e4) / 1e4; }

    nlohmann::ordered_json interval_json(const IntervalBits & b)
    {
        nlohmann::ordered_json j;
        j["point"] = bits4(b.point);
        j["lower"] = bits4(b.lower);
        j["upper"] = bits4(b.upper);
        j["exact"] = b.exact;
        return j;
    }

    std::string fixed4(double x)
    {
        std::ostringstream s;
        s << std::fixed << std::setprecision(4) << bits4(x);
        std::string out = s.str();
        return out == "-0.0000" ? "0.0000" : out;
    }

}  // namespace

double AnalysisOptions::threshold_bits() const
{
    if (min_gain > 0.0)
        return min_gain;
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidArgument("alpha must lie in (0, 1)");
    return -std::log2(alpha);
}

Report analyze(const Graph & g, const AnalysisOptions & options)
{
    const auto start = Clock::now();
    Report report;
    report.options = options;
    report.directed = g.directed();
    report.nodes = g.num_nodes();
    report.links = g.num_links();

    auto t = Clock::now();
    SamplingOptions so;
    so.samples = options.samples;
    so.size_min = options.size_min;
    so.size_max = options.size_max;
    so.seed = options.seed;
    so.threads = options.threads;
    SamplingResult sampling = run_sampling(g, so);
    report.motifs_sampled = sampling.buckets.size();
    report.skipped_samples = sampling.skipped;
    report.duplicate_samples = sampling.duplicates;
    report.times.sampling = seconds_since(t);

    t = Clock::now();
    std::vector<Candidate> candidates = top_candidates(g, sampling, options.top, options.threads);
    report.times.ranking = seconds_since(t);

    t = Clock::now();
    GraphSummary summary(g);
    for (NullModel model : options.nulls) {
        DsOptions ds = options.ds;
        ds.threads = options.threads;
        Rng rng = derive_rng(options.seed, stable_hash("null-bound") ^ static_cast<std::uint64_t>(model));
        report.nulls.push_back({model, null_bound(g, model, ds, rng)});
    }
    report.times.null_bounds = seconds_since(t);

    t = Clock::now();
    const std::size_t nn = options.nulls.size();
    report.rows.resize(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const CanonicalGraph & motif = candidates[i].list->motif;
        report.rows[i].key = motif.key();
        report.rows[i].size = motif.size();
        report.rows[i].links = motif.num_links();
        report.rows[i].scores.resize(nn);
    }
    const double threshold = options.threshold_bits();
    parallel_for(candidates.size() * nn, options.threads, [&](std::size_t task) {
        const std::size_t i = task / nn, j = task % nn;
        ScoreConfig config;
        config.null_model = options.nulls[j];
        config.ds = options.ds;
        config.ds.threads = 1;
        config.search_depth = options.search_depth;
        config.max_rewired = options.max_rewired;
        config.min_gain = threshold;
        config.seed = options.seed;
        report.rows[i].scores[j] = score_motif(g, summary, candidates[i].list->motif, candidates[i].ranked,
                                               candidates[i].list->instances.size(), report.nulls[j].bound, config);
    });
    report.times.scoring = seconds_since(t);
    report.times.total = seconds_since(start);
    return report;
}

void write_json(const Report & report, std::ostream & out, bool include_timings)
{
    const AnalysisOptions & o = report.options;
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;

    nlohmann::ordered_json graph;
    graph["directed"] = report.directed;
    graph["nodes"] = report.nodes;
    graph["links"] = report.links;
    j["graph"] = graph;

    nlohmann::ordered_json params;
    nlohmann::ordered_json nulls = nlohmann::ordered_json::array();
    for (NullModel m : o.nulls)
        nulls.push_back(std::string(to_string(m)));
    params["nulls"] = nulls;
    params["samples"] = o.samples;
    params["min_size"] = o.size_min;
    params["max_size"] = o.size_max;
    params["top"] = o.top;
    params["alpha"] = o.alpha;
    params["threshold_bits"] = bits4(o.threshold_bits());
    params["ds_samples"] = o.ds.samples;
    params["ds_confidence"] = o.ds.confidence;
    params["search_depth"] = o.search_depth;
    params["max_rewired"] = o.max_rewired;
    params["seed"] = o.seed;
    j["parameters"] = params;

    nlohmann::ordered_json bounds = nlohmann::ordered_json::object();
    for (const NullSummary & s : report.nulls)
        bounds[std::string(to_string(s.model))] = interval_json(s.bound);
    j["null_bounds"] = bounds;

    nlohmann::ordered_json motifs = nlohmann::ordered_json::array();
    for (const MotifRow & row : report.rows) {
        nlohmann::ordered_json r;
        r["key"] = row.key;
        r["size"] = row.size;
        r["links"] = row.links;
        const MotifScore * first = row.scores.empty() ? nullptr : &row.scores.front();
        r["instances_found"] = first ? first->instances_found : 0;
        r["disjoint"] = first ? first->disjoint : 0;
        nlohmann::ordered_json per = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.scores.size(); ++i) {
            const MotifScore & s = row.scores[i];
            nlohmann::ordered_json e;
            e["searchable"] = s.searchable;
            e["kept"] = s.kept;
            e["null_bits"] = interval_json(s.null_bits);
            e["motif_bits"] = interval_json(s.code.total);
            nlohmann::ordered_json parts;
            parts["subgraph"] = bits4(s.code.subgraph.upper);
            parts["template"] = bits4(s.code.template_bits.upper);
            parts["rewiring"] = bits4(s.code.rewiring);
            parts["multi_edges"] = bits4(s.code.multi_edges);
            parts["instance_nodes"] = bits4(s.code.instance_nodes);
            parts["insertions"] = bits4(s.code.insertions);
            e["components"] = parts;
            e["log_factor"] = bits4(s.log_factor);
            e["significant"] = s.significant;
            e["evaluations"] = s.evaluations;
            per[std::string(to_string(o.nulls[i]))] = e;
        }
        r["scores"] = per;
        motifs.push_back(r);
    }
    j["motifs"] = motifs;

    nlohmann::ordered_json footer;
    footer["distinct_motifs_sampled"] = report.motifs_sampled;
    footer["skipped_samples"] = report.skipped_samples;
    footer["duplicate_samples"] = report.duplicate_samples;
    footer["seed"] = o.seed;
    if (include_timings) {
        nlohmann::ordered_json times;
        times["sampling"] = report.times.sampling;
        times["ranking"] = report.times.ranking;
        times["null_bounds"] = report.times.null_bounds;
        times["scoring"] = report.times.scoring;
        times["total"] = report.times.total;
        footer["seconds"] = times;
    }
    j["footer"] = footer;
    out << j.dump(2) << '\n';
}

void write_csv(const Report & report, std::ostream & out, bool include_timings)
{
    out << "key,size,links,instances_found,disjoint,null,searchable,kept,null_point,null_lower,null_upper,"
           "motif_point,motif_lower,motif_upper,log_factor,significant\n";
    for (const MotifRow & row : report.rows)
        for (std::size_t i = 0; i < row.scores.size(); ++i) {
            const MotifScore & s = row.scores[i];
            // keys may contain characters special to CSV
            std::string key = row.key;
            std::string quoted = "\"";
            for (char c : key)
                quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
            quoted += '"';
            out << quoted << ',' << row.size << ',' << row.links << ',' << s.instances_found << ',' << s.disjoint
                << ',' << to_string(report.options.nulls[i]) << ',' << s.searchable << ',' << s.kept << ','
                << fixed4(s.null_bits.point) << ',' << fixed4(s.null_bits.lower) << ',' << fixed4(s.null_bits.upper)
                << ',' << fixed4(s.code.total.point) << ',' << fixed4(s.code.total.lower) << ','
                << fixed4(s.code.total.upper) << ',' << fixed4(s.log_factor) << ',' << (s.significant ? 1 : 0)
                << '\n';
        }
    out << "# seed " << report.options.seed << ", skipped samples " << report.skipped_samples
        << ", duplicate samples " << report.duplicate_samples << '\n';
    if (include_timings)
        out << "# seconds: sampling " << report.times.sampling << ", ranking " << report.times.ranking
            << ", null bounds " << report.times.null_bounds << ", scoring " << report.times.scoring << ", total "
            << report.times.total << '\n';
}

}  // namespace compmotif
