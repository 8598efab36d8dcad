#include "compmotif/null_models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "compmotif/degree_sampler.hpp"
#include "compmotif/error.hpp"
#include "compmotif/parallel.hpp"

namespace compmotif {

namespace {

    constexpr double kLog2e = std::numbers::log2e;

    void require_consistent(const DegreeSequence & d, std::uint64_t m)
    {
        if (d.directed) {
            if (d.in.size() != d.out.size())
                throw InvalidArgument("directed degree sequence: in/out lengths differ");
            std::uint64_t si = std::accumulate(d.in.begin(), d.in.end(), std::uint64_t{0});
            std::uint64_t so = std::accumulate(d.out.begin(), d.out.end(), std::uint64_t{0});
            if (si != m || so != m)
                throw InvalidArgument("degree sequence does not match link count " + std::to_string(m));
        } else {
            std::uint64_t s = std::accumulate(d.degrees.begin(), d.degrees.end(), std::uint64_t{0});
            if (s != 2 * m)
                throw InvalidArgument("degree sequence does not match link count " + std::to_string(m));
        }
    }

    double sum_log_factorials(std::span<const std::uint64_t> values)
    {
        // many repeated small values; group them
        std::map<std::uint64_t, std::uint64_t> counts;
        for (std::uint64_t v : values)
            if (v > 1)
                ++counts[v];
        double total = 0.0;
        for (const auto & [v, c] : counts)
            total += static_cast<double>(c) * log_factorial(v);
        return total;
    }

    std::uint64_t node_count(const DegreeSequence & d) { return d.directed ? d.in.size() : d.degrees.size(); }

    double ml_variance(std::span<const double> y, double mean)
    {
        if (std::ranges::all_of(y, [&](double v) { return v == y[0]; }))
            return 0.0;
        double s = 0.0;
        for (double v : y)
            s += (v - mean) * (v - mean);
        return s / static_cast<double>(y.size());
    }

    /// Standard error of theta = mean + var/2 for normal data with ML variance.
    double theta_se(double var, std::size_t n)
    {
        const double nn = static_cast<double>(n);
        return std::sqrt(var / nn + var * var / (2.0 * (nn - 1.0)));
    }

    template <class Draw>
    std::vector<double> draw_log_weights(std::uint64_t samples, unsigned threads, Rng & rng, Draw && draw)
    {
        const std::uint64_t base = rng();
        std::vector<double> y(samples);
        parallel_for(samples, threads, [&](std::size_t i) { y[i] = draw(base, i); });
        return y;
    }

}  // namespace

std::string_view to_string(NullModel model)
{
    switch (model) {
    case NullModel::ER:
        return "er";
    case NullModel::EL:
        return "el";
    case NullModel::DS:
        return "ds";
    }
    return "?";
}

std::optional<NullModel> parse_null_model(std::string_view text)
{
    std::string lower(text);
    for (char & c : lower)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "er")
        return NullModel::ER;
    if (lower == "el")
        return NullModel::EL;
    if (lower == "ds")
        return NullModel::DS;
    return std::nullopt;
}

std::uint64_t max_links(std::uint64_t n, bool directed)
{
    if (n < 2)
        return 0;
    return directed ? n * (n - 1) : n * (n - 1) / 2;
}

double er_parametrized(std::uint64_t n, std::uint64_t m, bool directed)
{
    const std::uint64_t mm = max_links(n, directed);
    if (m > mm)
        throw InvalidArgument("er: m=" + std::to_string(m) + " exceeds the maximum " + std::to_string(mm));
    return log_binomial(mm, m);
}

double er_bound(const Graph & g) { return er_parametrized(g.num_nodes(), g.num_links(), g.directed()); }

double er_complete(std::uint64_t n, std::uint64_t m, bool directed)
{
    const long double mm = static_cast<long double>(max_links(n, directed));
    return nat_codelength(n) + static_cast<double>(std::log2l(mm + 1.0L)) + er_parametrized(n, m, directed);
}

double er_complete(const Graph & g) { return er_complete(g.num_nodes(), g.num_links(), g.directed()); }

double el_parametrized(const DegreeSequence & d, std::uint64_t m)
{
    require_consistent(d, m);
    if (d.directed)
        return log_factorial(m) - sum_log_factorials(d.in) - sum_log_factorials(d.out);
    return log_factorial(2 * m) - log_factorial(m) - static_cast<double>(m) - sum_log_factorials(d.degrees);
}

double deg_bound(std::span<const std::uint64_t> degrees)
{
    std::map<std::uint64_t, std::uint64_t> freq;
    for (std::uint64_t v : degrees)
        ++freq[v];
    const double n = static_cast<double>(degrees.size());
    double bits = 0.0;
    for (const auto & [v, c] : freq)
        bits -= static_cast<double>(c) * std::log2(static_cast<double>(c) / n);
    return std::max(0.0, bits);
}

double deg_bound(const DegreeSequence & d)
{
    return d.directed ? deg_bound(d.in) + deg_bound(d.out) : deg_bound(d.degrees);
}

double degree_header_codelength(const DegreeSequence & d)
{
    double bits = nat_codelength(node_count(d));
    if (d.directed)
        return bits + degree_sequence_codelength(d.in) + degree_sequence_codelength(d.out);
    return bits + degree_sequence_codelength(d.degrees);
}

double el_bound(const Graph & g)
{
    DegreeSequence d = degree_sequence(g);
    return deg_bound(d) + el_parametrized(d, g.num_links());
}

double el_complete(const DegreeSequence & d, std::uint64_t m)
{
    return degree_header_codelength(d) + el_parametrized(d, m);
}

double el_complete(const Graph & g) { return el_complete(degree_sequence(g), g.num_links()); }

std::pair<double, double> bootstrap_ci(std::span<const double> y, double confidence, std::uint64_t n_boot, Rng & rng)
{
    if (y.size() < 2)
        throw InvalidArgument("bootstrap_ci needs at least two values");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw InvalidArgument("confidence must lie in (0, 1)");
    const std::size_t n = y.size();
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    const double var = ml_variance(y, mean);
    const double theta = mean + 0.5 * var;
    if (var <= 0.0 || n_boot == 0)
        return {theta, theta};

    // Studentized replicates t* = (theta* - theta) / se*, symmetric in |t*|.
    std::normal_distribution<double> normal(mean, std::sqrt(var));
    std::vector<double> t(n_boot);
    std::vector<double> draw(n);
    for (std::uint64_t b = 0; b < n_boot; ++b) {
        for (double & v : draw)
            v = normal(rng);
        const double m_b = std::accumulate(draw.begin(), draw.end(), 0.0) / static_cast<double>(n);
        const double v_b = ml_variance(draw, m_b);
        const double se_b = theta_se(v_b, n);
        t[b] = se_b > 0.0 ? std::abs(m_b + 0.5 * v_b - theta) / se_b : 0.0;
    }
    const std::size_t idx =
        std::min<std::size_t>(n_boot - 1, static_cast<std::size_t>(std::ceil(confidence * static_cast<double>(n_boot))) - 1);
    std::nth_element(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(idx), t.end());
    const double half = t[idx] * theta_se(var, n);
    return {theta - half, theta + half};
}

LogNormalEstimate estimate_from_log_weights(std::span<const double> y, double confidence, std::uint64_t n_boot,
                                            Rng & rng)
{
    if (y.size() < 2)
        throw InvalidArgument("an importance-sampling estimate needs at least two samples");
    LogNormalEstimate est;
    est.samples = y.size();
    est.mean_log = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
    est.var_log = ml_variance(y, est.mean_log);
    const double theta = est.mean_log + 0.5 * est.var_log;
    if (est.var_log <= 0.0) {
        est.bits = IntervalBits::exact_value(theta * kLog2e);
        return est;
    }
    auto [lo, hi] = bootstrap_ci(y, confidence, n_boot, rng);
    est.bits = {theta * kLog2e, lo * kLog2e, hi * kLog2e, confidence, false};
    return est;
}

LogNormalEstimate ds_estimate(const DegreeSequence & d, const DsOptions & options, Rng & rng)
{
    if (!is_graphical(d))
        throw InvalidArgument("degree sequence is not graphical");
    std::vector<double> y = draw_log_weights(options.samples, options.threads, rng, [&](std::uint64_t base, std::size_t i) {
        Rng local = derive_rng(base, i);
        return ds_sample_log_weight(d, local);
    });
    return estimate_from_log_weights(y, options.confidence, options.bootstrap, rng);
}

LogNormalEstimate combined_ds_estimate(const DegreeSequence & d1, const DegreeSequence & d2, const DsOptions & options,
                                       Rng & rng)
{
    if (!is_graphical(d1) || !is_graphical(d2))
        throw InvalidArgument("degree sequence is not graphical");
    std::vector<double> y = draw_log_weights(options.samples, options.threads, rng, [&](std::uint64_t base, std::size_t i) {
        Rng first = derive_rng(base, 2 * i);
        Rng second = derive_rng(base, 2 * i + 1);
        return ds_sample_log_weight(d1, first) + ds_sample_log_weight(d2, second);
    });
    return estimate_from_log_weights(y, options.confidence, options.bootstrap, rng);
}

IntervalBits ds_bound(const Graph & g, const DsOptions & options, Rng & rng)
{
    DegreeSequence d = degree_sequence(g);
    return ds_estimate(d, options, rng).bits + deg_bound(d);
}

IntervalBits ds_complete(const Graph & g, const DsOptions & options, Rng & rng)
{
    DegreeSequence d = degree_sequence(g);
    return ds_estimate(d, options, rng).bits + degree_header_codelength(d);
}

IntervalBits null_bound(const Graph & g, NullModel model, const DsOptions & options, Rng & rng)
{
    switch (model) {
    case NullModel::ER:
        return IntervalBits::exact_value(er_bound(g));
    case NullModel::EL:
        return IntervalBits::exact_value(el_bound(g));
    case NullModel::DS:
        return ds_bound(g, options, rng);
    }
    throw Error("unknown null model");
}

}  // namespace compmotif
