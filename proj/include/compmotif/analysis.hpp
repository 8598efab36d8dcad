#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "compmotif/graph.hpp"
#include "compmotif/motif_code.hpp"
#include "compmotif/null_models.hpp"
#include "compmotif/sampler.hpp"

namespace compmotif {

inline constexpr int kReportSchemaVersion = 1;

struct AnalysisOptions {
    std::vector<NullModel> nulls{NullModel::ER, NullModel::EL, NullModel::DS};
    std::uint64_t samples = 1000000;
    int size_min = 3;
    int size_max = 6;
    std::size_t top = 100;
    double alpha = 0.001;
    /// Significance threshold in bits; when <= 0, -log2(alpha) is used.
    double min_gain = 0.0;
    DsOptions ds;
    int search_depth = 0;
    std::uint64_t max_rewired = 500000;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    double threshold_bits() const;
};

struct NullSummary {
    NullModel model = NullModel::ER;
    IntervalBits bound;
};

struct MotifRow {
    std::string key;
    int size = 0;
    std::uint64_t links = 0;
    /// One score per requested null model, in AnalysisOptions::nulls order.
    std::vector<MotifScore> scores;
};

struct PhaseTimes {
    double sampling = 0.0;
    double ranking = 0.0;
    double null_bounds = 0.0;
    double scoring = 0.0;
    double total = 0.0;
};

struct Report {
    AnalysisOptions options;
    bool directed = false;
    NodeId nodes = 0;
    std::uint64_t links = 0;
    std::uint64_t motifs_sampled = 0;
    std::uint64_t skipped_samples = 0;
    std::uint64_t duplicate_samples = 0;
    std::vector<NullSummary> nulls;
    std::vector<MotifRow> rows;
    PhaseTimes times;
};

/// Sampling, candidate ranking, null bounds and per-motif scoring.
Report analyze(const Graph & g, const AnalysisOptions & options);

/// JSON report; bit quantities rounded to 4 decimals. Timings are omitted
/// when include_timings is false, which makes the output a pure function of
/// the graph and options.
void write_json(const Report & report, std::ostream & out, bool include_timings = true);

/// One line per (motif, null model), plus a commented footer.
void write_csv(const Report & report, std::ostream & out, bool include_timings = true);

}  // namespace compmotif
