#include "compmotif/codes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "compmotif/error.hpp"

namespace compmotif {

namespace {

    constexpr long double kLog2e = 1.44269504088896340735992468100189214L;

    /// ln Gamma in extended precision.
    long double lgamma_ext(long double x) { return std::lgammal(x); }

}  // namespace

double log_factorial(std::uint64_t n)
{
    if (n < 2)
        return 0.0;
    return static_cast<double>(lgamma_ext(static_cast<long double>(n) + 1.0L) * kLog2e);
}

double log_binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        throw InvalidArgument("log_binomial: k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
    if (k == 0 || k == n)
        return 0.0;
    const long double N = static_cast<long double>(n);
    const long double K = static_cast<long double>(k);
    long double nats = lgamma_ext(N + 1.0L) - lgamma_ext(K + 1.0L) - lgamma_ext(N - K + 1.0L);
    return std::max(0.0, static_cast<double>(nats * kLog2e));
}

double log_multinomial(std::uint64_t n, std::span<const std::uint64_t> parts)
{
    std::uint64_t total = 0;
    long double nats = lgamma_ext(static_cast<long double>(n) + 1.0L);
    for (std::uint64_t p : parts) {
        total += p;
        nats -= lgamma_ext(static_cast<long double>(p) + 1.0L);
    }
    if (total != n)
        throw InvalidArgument("log_multinomial: parts sum to " + std::to_string(total) + ", expected " +
                              std::to_string(n));
    return std::max(0.0, static_cast<double>(nats * kLog2e));
}

double nat_codelength(std::uint64_t k)
{
    const long double x = static_cast<long double>(k) + 1.0L;
    return static_cast<double>(std::log2l(x) + std::log2l(x + 1.0L));
}

double dm_codelength_from_counts(std::span<const std::uint64_t> counts, double alpha)
{
    const long double a = alpha;
    long double total = 0;
    long double nats = 0;
    for (std::uint64_t c : counts) {
        if (c == 0)
            continue;
        total += static_cast<long double>(c);
        nats -= lgamma_ext(static_cast<long double>(c) + a) - lgamma_ext(a);
    }
    if (total == 0)
        return 0.0;
    const long double sum_alpha = a * static_cast<long double>(counts.size());
    nats += lgamma_ext(total + sum_alpha) - lgamma_ext(sum_alpha);
    return std::max(0.0, static_cast<double>(nats * kLog2e));
}

double dm_codelength(std::span<const std::uint64_t> symbols, std::uint64_t alphabet_size, double alpha)
{
    if (alphabet_size == 0)
        throw InvalidArgument("dm_codelength: alphabet must be non-empty");
    std::vector<std::uint64_t> counts(alphabet_size, 0);
    for (std::uint64_t s : symbols) {
        if (s >= alphabet_size)
            throw InvalidArgument("dm_codelength: symbol " + std::to_string(s) + " outside alphabet of size " +
                                  std::to_string(alphabet_size));
        ++counts[s];
    }
    return dm_codelength_from_counts(counts, alpha);
}

double degree_sequence_codelength(std::span<const std::uint64_t> degrees)
{
    std::uint64_t max = 0;
    for (std::uint64_t d : degrees)
        max = std::max(max, d);
    return nat_codelength(max) + dm_codelength(degrees, max + 1);
}

IntervalBits & IntervalBits::operator+=(const IntervalBits & other)
{
    point += other.point;
    lower += other.lower;
    upper += other.upper;
    confidence = std::min(confidence, other.confidence);
    exact = exact && other.exact;
    return *this;
}

IntervalBits & IntervalBits::operator+=(double bits)
{
    point += bits;
    lower += bits;
    upper += bits;
    return *this;
}

}  // namespace compmotif
