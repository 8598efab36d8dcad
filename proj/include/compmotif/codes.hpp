#pragma once

#include <cstdint>
#include <span>

namespace compmotif {

/// Codelengths are plain doubles in bits. Individual terms are accurate to
/// about 1e-6 bits; model comparisons use kCompareEpsilon.
inline constexpr double kCompareEpsilon = 1e-3;
inline constexpr double kDefaultDirichletAlpha = 0.5;

/// log2(n!)
double log_factorial(std::uint64_t n);

/// log2(n choose k); throws InvalidArgument when k > n.
double log_binomial(std::uint64_t n, std::uint64_t k);

/// log2(n! / prod(parts_i!)); the parts must sum to n.
double log_multinomial(std::uint64_t n, std::span<const std::uint64_t> parts);

/// Prefix code for the naturals including 0: k is coded as k + 1 under
/// p(x) = 1 / (x (x + 1)), i.e. log2((k + 1)(k + 2)) bits.
double nat_codelength(std::uint64_t k);

/// Dirichlet-multinomial (sequential, smoothed-frequency) code for a symbol
/// sequence over {0 .. alphabet_size-1}. Exchangeable: depends only on the
/// symbol counts. An empty sequence costs 0 bits.
double dm_codelength(std::span<const std::uint64_t> symbols, std::uint64_t alphabet_size,
                     double alpha = kDefaultDirichletAlpha);

/// Same code computed from per-symbol counts (counts.size() == alphabet size).
double dm_codelength_from_counts(std::span<const std::uint64_t> counts, double alpha = kDefaultDirichletAlpha);

/// Degree-sequence header used by the complete EL and DS codes:
/// nat(max) + DM(sequence over 0..max).
double degree_sequence_codelength(std::span<const std::uint64_t> degrees);

/// Codelength with a confidence interval. Exact quantities have
/// lower == point == upper and exact set.
struct IntervalBits {
    double point = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double confidence = 1.0;
    bool exact = true;

    static IntervalBits exact_value(double bits) { return {bits, bits, bits, 1.0, true}; }

    IntervalBits & operator+=(const IntervalBits & other);
    friend IntervalBits operator+(IntervalBits a, const IntervalBits & b) { return a += b; }
    IntervalBits & operator+=(double bits);
    friend IntervalBits operator+(IntervalBits a, double bits) { return a += bits; }
};

}  // namespace compmotif
