#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "compmotif/codes.hpp"
#include "compmotif/graph.hpp"
#include "compmotif/random.hpp"

namespace compmotif {

enum class NullModel { ER, EL, DS };

std::string_view to_string(NullModel model);
/// Accepts "er", "el", "ds" (case-insensitive).
std::optional<NullModel> parse_null_model(std::string_view text);

/// (n^2 - n) / 2 undirected, n^2 - n directed.
std::uint64_t max_links(std::uint64_t n, bool directed);

// Erdős–Rényi: uniform over graphs with n nodes and m links.
double er_parametrized(std::uint64_t n, std::uint64_t m, bool directed);
double er_bound(const Graph & g);
double er_complete(std::uint64_t n, std::uint64_t m, bool directed);
double er_complete(const Graph & g);

// Edge list: codes the link list as a node sequence given the degrees.
double el_parametrized(const DegreeSequence & d, std::uint64_t m);
/// Empirical-entropy codelength of one degree list, sum of -log2(f(D_i)/|D|).
double deg_bound(std::span<const std::uint64_t> degrees);
/// deg_bound over each direction of the sequence.
double deg_bound(const DegreeSequence & d);
/// nat(n) + per direction nat(max D) + DM(D).
double degree_header_codelength(const DegreeSequence & d);
double el_bound(const Graph & g);
double el_complete(const DegreeSequence & d, std::uint64_t m);
double el_complete(const Graph & g);

struct DsOptions {
    std::uint64_t samples = 40;
    double confidence = 0.95;
    std::uint64_t bootstrap = 2000;
    /// Worker threads for drawing samples; 0 = hardware concurrency.
    unsigned threads = 1;
};

/// Estimate of log2 |G_D| under a log-normal model of the importance weights.
struct LogNormalEstimate {
    IntervalBits bits;
    double mean_log = 0.0;  // mean of Y = ln(1/q)
    double var_log = 0.0;   // ML (1/n) variance of Y
    std::uint64_t samples = 0;
};

/// Parametric bootstrap for theta = mean(Y) + var(Y)/2 (ML variance): draws
/// |Y| values from Normal(mean, sqrt(var)) n_boot times and returns
/// theta -+ the `confidence` quantile of |theta* - theta|. Natural-log units.
std::pair<double, double> bootstrap_ci(std::span<const double> y, double confidence, std::uint64_t n_boot, Rng & rng);

/// Builds the estimate from log inverse probabilities; consumes rng only for
/// the bootstrap.
LogNormalEstimate estimate_from_log_weights(std::span<const double> y, double confidence, std::uint64_t n_boot,
                                            Rng & rng);

/// Importance-sampling estimate of log2 |G_D|. Sample i draws from
/// derive_rng(base, i) where base comes from rng, so the result does not
/// depend on the thread count.
LogNormalEstimate ds_estimate(const DegreeSequence & d, const DsOptions & options, Rng & rng);

/// Joint estimate of log2 |G_D1| + log2 |G_D2| from paired draws.
LogNormalEstimate combined_ds_estimate(const DegreeSequence & d1, const DegreeSequence & d2, const DsOptions & options,
                                       Rng & rng);

/// B^deg + estimate. Null-side use takes .lower.
IntervalBits ds_bound(const Graph & g, const DsOptions & options, Rng & rng);
/// Degree header + estimate. Motif-side use takes .upper.
IntervalBits ds_complete(const Graph & g, const DsOptions & options, Rng & rng);

/// The null-side bound for any model; exact for ER and EL.
IntervalBits null_bound(const Graph & g, NullModel model, const DsOptions & options, Rng & rng);

}  // namespace compmotif
