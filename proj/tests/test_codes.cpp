#include <doctest.h>

#include <cmath>
#include <functional>
#include <numeric>

#include "compmotif/codes.hpp"
#include "compmotif/error.hpp"
#include "compmotif/random.hpp"

using namespace compmotif;

namespace {

/// log2 n! by Stirling's series in extended precision, independent of lgamma.
long double stirling_log2_factorial(long double n)
{
    const long double pi = 3.14159265358979323846264338327950288L;
    long double nats = n * std::log(n) - n + 0.5L * std::log(2.0L * pi * n) + 1.0L / (12.0L * n) -
                       1.0L / (360.0L * n * n * n) + 1.0L / (1260.0L * n * n * n * n * n);
    return nats / std::log(2.0L);
}

/// Direct product form of the DM code, symbol by symbol.
double dm_direct(const std::vector<std::uint64_t> & s, std::uint64_t alphabet, double alpha = 0.5)
{
    std::vector<double> seen(alphabet, 0.0);
    double bits = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        bits -= std::log2((seen[s[i]] + alpha) / (static_cast<double>(i) + alpha * static_cast<double>(alphabet)));
        seen[s[i]] += 1.0;
    }
    return bits;
}

}  // namespace

TEST_CASE("log_binomial and log_factorial examples")
{
    CHECK(log_binomial(3, 3) == 0.0);
    CHECK(log_binomial(3, 2) == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
    // 10!/6! = 5040 by integer arithmetic
    std::uint64_t ratio = 1;
    for (std::uint64_t i = 7; i <= 10; ++i)
        ratio *= i;
    CHECK(ratio == 5040);
    CHECK(std::abs(log_factorial(10) - log_factorial(6) - std::log2(static_cast<double>(ratio))) < 1e-9);
    CHECK(log_factorial(0) == 0.0);
    CHECK(log_factorial(1) == 0.0);
    CHECK_THROWS_AS(log_binomial(3, 4), InvalidArgument);
}

TEST_CASE("log_factorial accuracy")
{
    // exact summation for small n
    long double sum = 0;
    for (std::uint64_t i = 1; i <= 100000; ++i) {
        sum += std::log2(static_cast<long double>(i));
        if (i % 997 == 0 || i == 100000)
            REQUIRE(std::abs(log_factorial(i) - static_cast<double>(sum)) < 1e-6);
    }
    for (std::uint64_t n : {1000000ull, 12345678ull, 100000000ull})
        CHECK(std::abs(log_factorial(n) - static_cast<double>(stirling_log2_factorial(static_cast<long double>(n)))) <
              1e-6);
    // at 1e9 the result (~2.8e10 bits) is below double resolution for 1e-6; check relative error
    const double big = static_cast<double>(stirling_log2_factorial(1e9L));
    CHECK(std::abs(log_factorial(1000000000ull) - big) / big < 1e-15);
}

TEST_CASE("log_binomial symmetry and multinomial reduction")
{
    Rng rng(1);
    std::uniform_int_distribution<std::uint64_t> dist(0, 5000);
    for (int i = 0; i < 500; ++i) {
        std::uint64_t n = dist(rng);
        std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(0, n)(rng);
        REQUIRE(log_binomial(n, k) == doctest::Approx(log_binomial(n, n - k)).epsilon(1e-12));
        std::vector<std::uint64_t> parts{k, n - k};
        REQUIRE(std::abs(log_multinomial(n, parts) - log_binomial(n, k)) < 1e-6);
    }
    std::vector<std::uint64_t> bad{1, 1};
    CHECK_THROWS_AS(log_multinomial(3, bad), InvalidArgument);
}

TEST_CASE("nat code")
{
    CHECK(nat_codelength(0) == doctest::Approx(1.0));
    CHECK(nat_codelength(1) == doctest::Approx(std::log2(6.0)));
    long double kraft = 0;
    for (std::uint64_t k = 0; k <= 1000000; ++k)
        kraft += std::exp2(-static_cast<long double>(nat_codelength(k)));
    CHECK(kraft <= 1.0L);
    // telescoping sum: 1 - 1/(K+2)
    CHECK(std::abs(static_cast<double>(kraft) - (1.0 - 1.0 / 1000002.0)) < 1e-9);
}

TEST_CASE("DM code examples")
{
    std::vector<std::uint64_t> a{0};
    CHECK(dm_codelength(a, 2) == doctest::Approx(1.0));
    std::vector<std::uint64_t> aa{0, 0};
    CHECK(dm_codelength(aa, 2) == doctest::Approx(-std::log2(0.5 * 0.75)).epsilon(1e-12));
    CHECK(dm_codelength(aa, 2) == doctest::Approx(1.41504).epsilon(1e-5));
    std::vector<std::uint64_t> aba{0, 1, 0}, aab{0, 0, 1};
    CHECK(dm_codelength(aba, 3) == doctest::Approx(dm_codelength(aab, 3)));
    CHECK(dm_codelength({}, 3) == 0.0);
    std::vector<std::uint64_t> bad{3};
    CHECK_THROWS_AS(dm_codelength(bad, 3), InvalidArgument);
}

TEST_CASE("DM code equals the sequential product and is exchangeable")
{
    Rng rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        std::uint64_t alphabet = 1 + trial % 7;
        std::vector<std::uint64_t> s(trial % 40);
        for (auto & x : s)
            x = std::uniform_int_distribution<std::uint64_t>(0, alphabet - 1)(rng);
        const double direct = dm_direct(s, alphabet);
        REQUIRE(std::abs(dm_codelength(s, alphabet) - direct) < 1e-9);
        std::shuffle(s.begin(), s.end(), rng);
        REQUIRE(std::abs(dm_codelength(s, alphabet) - direct) < 1e-9);
    }
}

TEST_CASE("DM code satisfies Kraft with equality for fixed length")
{
    for (std::uint64_t alphabet = 1; alphabet <= 3; ++alphabet)
        for (std::size_t len = 0; len <= 4; ++len) {
            long double total = 0;
            std::vector<std::uint64_t> s(len, 0);
            std::function<void(std::size_t)> rec = [&](std::size_t i) {
                if (i == len) {
                    total += std::exp2(-static_cast<long double>(dm_codelength(s, alphabet)));
                    return;
                }
                for (std::uint64_t v = 0; v < alphabet; ++v) {
                    s[i] = v;
                    rec(i + 1);
                }
            };
            rec(0);
            CHECK(std::abs(static_cast<double>(total) - 1.0) < 1e-9);
        }
}

TEST_CASE("interval arithmetic")
{
    IntervalBits a = IntervalBits::exact_value(2.0);
    IntervalBits b{1.0, 0.5, 1.5, 0.95, false};
    IntervalBits c = a + b;
    CHECK(c.point == 3.0);
    CHECK(c.lower == 2.5);
    CHECK(c.upper == 3.5);
    CHECK_FALSE(c.exact);
    CHECK(c.confidence == 0.95);
    IntervalBits d = a + 1.0;
    CHECK(d.exact);
    CHECK(d.lower == 3.0);
}
