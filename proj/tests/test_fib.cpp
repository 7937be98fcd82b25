#include "fibdir/exact_log.hpp"
#include "fibdir/fibonacci.hpp"
#include "fibdir/rank_cache.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace fibdir;

namespace {

BigInt B(std::uint64_t v) { return big_from_u64(v); }

BigInt gmp_fib(unsigned long n)
{
    BigInt out;
    mpz_fib_ui(out.get_mpz_t(), n);
    return out;
}

}  // namespace

TEST_CASE("fib examples")
{
    CHECK(fib(12) == 144);
    CHECK(fib(0) == 0);
    CHECK(fib(50) == B(12586269025ull));
}

TEST_CASE("fast doubling matches the recurrence")
{
    for (std::uint64_t n = 0; n <= 300; ++n) {
        REQUIRE(fib(n) == oracle::fib(n));
    }
    for (unsigned long n : {1000ul, 4321ul, 100000ul}) {
        CHECK(fib(n) == gmp_fib(n));
    }
    const auto [a, b] = fib_pair(77);
    CHECK(a == oracle::fib(77));
    CHECK(b == oracle::fib(78));
}

TEST_CASE("fib_mod")
{
    CHECK(fib_mod(12, 10) == 4);
    CHECK(fib_mod(0, 7) == 0);
    CHECK(fib_mod(8, 7) == 0);
    for (std::uint64_t n = 0; n <= 200; ++n) {
        for (std::uint64_t m : {2ull, 3ull, 97ull, 1000000007ull, 18446744073709551557ull}) {
            const BigInt expected = oracle::fib(n) % B(m);
            REQUIRE(B(fib_mod(n, m)) == expected);
            REQUIRE(fib_mod(n, B(m)) == expected);
        }
    }
    const BigInt huge = pow_ui(BigInt(10), 40) + 7;
    CHECK(fib_mod(500, huge) == oracle::fib(500) % huge);
}

TEST_CASE("rank examples and brute force")
{
    CHECK(rank(2) == 3);
    CHECK(rank(4) == 6);
    CHECK(rank(1) == 1);
    CHECK(rank(10) == 15);
    for (std::uint64_t n = 1; n <= 2000; ++n) {
        REQUIRE(rank(n) == oracle::rank(n));
        REQUIRE(rank(n) <= 6 * n);
    }
}

TEST_CASE("rank_prime_power")
{
    CHECK(rank_prime_power(2, 3) == 6);
    CHECK(rank_prime_power(2, 1) == 3);
    CHECK(rank_prime_power(3, 2) == 12);
    for (std::uint64_t p = 3; p <= 50; p += 2) {
        if (!oracle::is_prime(p)) {
            continue;
        }
        std::uint64_t pk = 1;
        for (unsigned k = 1; k <= 3; ++k) {
            pk *= p;
            REQUIRE(rank_prime_power(p, k) == B(oracle::rank(pk)));
        }
    }
    for (unsigned k = 1; k <= 12; ++k) {
        REQUIRE(rank_prime_power(2, k) == B(oracle::rank(std::uint64_t{1} << k)));
    }
}

TEST_CASE("duality n | a_m iff rank(n) | m")
{
    for (std::uint64_t n = 1; n <= 500; ++n) {
        const auto r = oracle::rank(n);
        for (std::uint64_t m = 1; m <= 200; ++m) {
            const bool divides = oracle::fib(m) % B(n) == 0;
            REQUIRE(divides == (m % r == 0));
            REQUIRE(divides_fib(B(n), m) == divides);
        }
    }
}

TEST_CASE("strong divisibility")
{
    for (std::uint64_t m = 1; m <= 120; ++m) {
        for (std::uint64_t n = 1; n <= 120; ++n) {
            BigInt g;
            mpz_gcd(g.get_mpz_t(), fib(m).get_mpz_t(), fib(n).get_mpz_t());
            REQUIRE(g == fib(std::gcd(m, n)));
        }
    }
}

TEST_CASE("indices beyond a_x have rank beyond x")
{
    for (std::uint64_t x = 1; x <= 20; ++x) {
        const auto ax = oracle::fib_u64(x);
        for (std::uint64_t n = ax + 1; n <= std::min<std::uint64_t>(oracle::fib_u64(20) + 50, ax + 2000); ++n) {
            REQUIRE(rank(n) > x);
        }
    }
}

TEST_CASE("entry exponent")
{
    CHECK(entry_exponent(2) == 1);
    CHECK(entry_exponent(5) == 1);
    CHECK(entry_exponent(7) == 1);
    CHECK(entry_exponent(12) == 2);
    for (std::uint64_t n = 2; n <= 300; ++n) {
        const BigInt a = oracle::fib(oracle::rank(n));
        unsigned e = 0;
        BigInt pw = B(n);
        while (a % pw == 0) {
            ++e;
            pw *= B(n);
        }
        REQUIRE(entry_exponent(n) == e);
    }
}

TEST_CASE("lcm_fib and products")
{
    CHECK(lcm_fib(5) == 30);
    CHECK(lcm_fib(6) == 120);
    CHECK(lcm_fib(2) == 1);
    CHECK(lcm_fib(6.7) == 120);
    CHECK(fib_product_upto(6) == 240);
    BigInt l = 1;
    for (std::uint64_t n = 1; n <= 80; ++n) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), oracle::fib(n).get_mpz_t());
        REQUIRE(lcm_fib_upto(n) == l);
    }
}

TEST_CASE("log_of_big")
{
    CHECK(log_of_big(1).log_value == 0.0);
    CHECK(std::abs(log_of_big(30).log_value - 3.4011973816621555) <= 1e-12 * 3.41);
    CHECK(std::abs(log_of_big(240).log_value - 5.480638923341991) <= 1e-12 * 5.49);
    const auto big = log_of_big(pow_ui(BigInt(3), 5000));
    CHECK(std::abs(big.log_value - 5000 * std::log(3.0)) <= 1e-12 * big.log_value);
    CHECK(big.rel_precision <= 1e-12);
}

TEST_CASE("LogSum keeps exact products")
{
    LogSum s;
    s += LogSum::log_of(2);
    s += LogSum::log_of(3).scaled(2);
    CHECK(s.is_integral());
    CHECK(s.to_exact_log().integer_value == 18);
    s += LogSum::log_of(6).scaled(-1);
    CHECK(s == LogSum::log_of(3));
}

TEST_CASE("golden-ratio constants")
{
    const auto& k = constants();
    CHECK(std::abs(static_cast<double>(k.r * k.s + 1)) <= 1e-15);
    CHECK(std::abs(static_cast<double>(k.r + k.s - 1)) <= 1e-15);
    for (std::uint64_t n = 0; n <= 30; ++n) {
        const long double binet = (std::pow(k.r, n) - std::pow(k.s, n)) / k.sqrt5;
        REQUIRE(std::abs(static_cast<double>(binet) - oracle::fib(n).get_d()) < 1e-6);
    }
    CHECK(std::abs(static_cast<double>(k.three_logr_over_pi2) - 0.14627085509318579) <= 1e-15);
}

TEST_CASE("FibContext memo matches fresh computation")
{
    FibContext ctx;
    for (std::uint64_t n = 1; n <= 90; ++n) {
        const auto f = ctx.fib_factorization(n);
        REQUIRE(f.value() == oracle::fib(n));
        if (n <= 80) {
            const auto a = oracle::fib_u64(n);
            std::vector<std::pair<std::uint64_t, unsigned>> got;
            for (const auto& pp : f.factors()) {
                got.emplace_back(*to_u64(pp.prime), pp.exponent);
            }
            std::vector<std::pair<std::uint64_t, unsigned>> want;
            for (auto [p, e] : oracle::factor(a)) {
                want.emplace_back(p, e);
            }
            REQUIRE(got == want);
        }
        REQUIRE(ctx.rank(n) == oracle::rank(n));
    }
    // Cached records respect the rank and entry-exponent invariants.
    for (const auto& rec : ctx.records()) {
        REQUIRE(fib(rec.rank) % B(rec.n) == 0);
        for (std::uint64_t m = 1; m < rec.rank; ++m) {
            REQUIRE(fib(m) % B(rec.n) != 0);
        }
        REQUIRE(fib(rec.rank) % pow_ui(B(rec.n), rec.entry_exponent) == 0);
        REQUIRE(fib(rec.rank) % pow_ui(B(rec.n), rec.entry_exponent + 1) != 0);
    }
}

TEST_CASE("primitive primes")
{
    FibContext ctx;
    CHECK(ctx.primitive_primes(12).empty());
    CHECK(ctx.primitive_primes(7) == std::vector<PrimePower>{{13, 1}});
    CHECK(ctx.primitive_primes(5) == std::vector<PrimePower>{{5, 1}});
    for (std::uint64_t n = 3; n <= 60; ++n) {
        for (const auto& pp : ctx.primitive_primes(n)) {
            REQUIRE(oracle::rank(*to_u64(pp.prime)) == n);
        }
    }
    CHECK(ctx.rank_of_divisor(144, 12) == 12);
    CHECK(ctx.rank_of_divisor(8, 12) == 6);
}

TEST_CASE("large Fibonacci factorizations stay within budget")
{
    FibContext ctx;
    for (std::uint64_t n : {100ull, 113ull, 120ull, 150ull}) {
        const auto f = ctx.fib_factorization(n);
        BigInt product = 1;
        for (const auto& pp : f.factors()) {
            REQUIRE(mpz_probab_prime_p(pp.prime.get_mpz_t(), 30) != 0);
            product *= pow_ui(pp.prime, pp.exponent);
        }
        REQUIRE(product == gmp_fib(n));
    }
}
