#include "fibdir/arith.hpp"
#include "fibdir/factorization.hpp"
#include "fibdir/primality.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace fibdir;

namespace {

BigInt B(std::uint64_t v) { return big_from_u64(v); }

std::vector<std::pair<std::uint64_t, unsigned>> as_pairs(const Factorization& f)
{
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (const auto& pp : f.factors()) {
        out.emplace_back(*to_u64(pp.prime), pp.exponent);
    }
    return out;
}

}  // namespace

TEST_CASE("is_prime small values")
{
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(89));
    CHECK_FALSE(is_prime(144));
    for (std::uint64_t n = 0; n <= 20000; ++n) {
        REQUIRE(is_prime(B(n)) == oracle::is_prime(n));
    }
}

TEST_CASE("is_prime agrees with gmp on large odd numbers")
{
    std::mt19937_64 rng(42);
    for (int i = 0; i < 2000; ++i) {
        BigInt n = B(rng()) * B(rng()) + B(rng() | 1);
        if (n % 2 == 0) {
            n += 1;
        }
        REQUIRE(is_prime(n) == (mpz_probab_prime_p(n.get_mpz_t(), 40) != 0));
    }
    // Strong pseudoprime to bases 2..37 (product of three primes).
    CHECK_FALSE(is_prime(BigInt("3317044064679887385961981")));
    CHECK(is_prime(BigInt("2305843009213693951")));  // 2^61 - 1
}

TEST_CASE("factorize examples")
{
    using V = std::vector<std::pair<std::uint64_t, unsigned>>;
    CHECK(as_pairs(factorize(144)) == V{{2, 4}, {3, 2}});
    CHECK(factorize(1).is_one());
    CHECK(factorize(1).to_string() == "1");
    const auto a60 = factorize(B(1548008755920ull));
    CHECK(as_pairs(a60) == V{{2, 4}, {3, 2}, {5, 1}, {11, 1}, {31, 1}, {41, 1}, {61, 1}, {2521, 1}});
    CHECK(a60.value() == B(1548008755920ull));
}

TEST_CASE("factorize semiprimes with large factors")
{
    const BigInt p("1000000000000000003");
    const BigInt q("998244353");
    const auto f = factorize(p * q);
    REQUIRE(f.factors().size() == 2);
    CHECK(f.factors()[0].prime == q);
    CHECK(f.factors()[1].prime == p);
    CHECK(factorize(pow_ui(BigInt(1000003), 3)).factors()[0].exponent == 3);
}

TEST_CASE("factorize budget")
{
    FactorOptions opts;
    opts.work_budget = 5;
    opts.trial_bound = 16;
    CHECK_THROWS_AS(factorize(BigInt("1000000000000000003") * BigInt("1000000000000000009"), opts), BudgetExceeded);
}

TEST_CASE("Factorization rejects unordered primes")
{
    CHECK_THROWS(Factorization({{3, 1}, {2, 1}}));
}

TEST_CASE("divisors examples")
{
    CHECK(divisors(factorize(21)) == std::vector<BigInt>{1, 3, 7, 21});
    CHECK(divisors(factorize(1)) == std::vector<BigInt>{1});
    const auto d144 = divisors(factorize(144));
    CHECK(d144.size() == 15);
    CHECK(d144.back() == 144);
}

TEST_CASE("factorize and divisors up to 10^4")
{
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        const auto f = factorize(B(n));
        REQUIRE(f.value() == B(n));
        BigInt product = 1;
        std::uint64_t expected_count = 1;
        for (const auto& pp : f.factors()) {
            REQUIRE(oracle::is_prime(*to_u64(pp.prime)));
            product *= pow_ui(pp.prime, pp.exponent);
            expected_count *= pp.exponent + 1;
        }
        REQUIRE(product == B(n));
        const auto ds = divisors(f);
        REQUIRE(ds.size() == expected_count);
        REQUIRE(std::is_sorted(ds.begin(), ds.end()));
    }
}

TEST_CASE("classical functions examples")
{
    CHECK(mobius(B(4)) == 0);
    CHECK(euler_phi(B(12)) == 4);
    CHECK(liouville(B(12)) == -1);
    CHECK(mangoldt_base(B(8)) == BigInt(2));
    CHECK_FALSE(mangoldt_base(B(12)).has_value());
    CHECK(mangoldt_base(B(89)) == BigInt(89));
    CHECK_FALSE(mangoldt_base(B(1)).has_value());
    CHECK(fns::mu()(1) == 1);
    CHECK(fns::liouville()(1) == 1);
    CHECK(fns::phi()(1) == 1);
}

TEST_CASE("classical functions agree with brute force")
{
    for (std::uint64_t n = 1; n <= 3000; ++n) {
        const auto f = factorize(B(n));
        REQUIRE(mobius(f) == oracle::mobius(n));
        REQUIRE(liouville(f) == oracle::liouville(n));
        REQUIRE(euler_phi(f) == B(oracle::phi_count(n)));
        REQUIRE(divisor_count(f) == B(oracle::divisors(n).size()));
    }
}

TEST_CASE("divisor sums up to 10^4")
{
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        const auto f = factorize(B(n));
        BigInt smu = 0;
        BigInt sphi = 0;
        BigInt slam = 0;
        for (const auto& d : divisor_factorizations(f)) {
            smu += mobius(d);
            sphi += euler_phi(d);
            slam += liouville(d);
        }
        const auto root = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(n))));
        REQUIRE(smu == (n == 1 ? 1 : 0));
        REQUIRE(sphi == B(n));
        REQUIRE(slam == (root * root == n ? 1 : 0));
    }
}

TEST_CASE("mertens")
{
    CHECK(mertens(1) == 1);
    CHECK(mertens(4) == -1);
    CHECK(mertens(0.5) == 0);
    CHECK(mertens(4.99) == mertens(4));
    const auto mu = mobius_table(10000);
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        REQUIRE(mertens_floor(n) - mertens_floor(n - 1) == mu[n]);
    }
    for (std::uint64_t n = 1; n <= 500; ++n) {
        REQUIRE(mertens(static_cast<double>(n)) == oracle::mertens(static_cast<double>(n)));
        REQUIRE(mertens(static_cast<double>(n) + 0.5) == mertens(static_cast<double>(n)));
    }
}

TEST_CASE("dirichlet_convolve examples")
{
    CHECK(dirichlet_convolve(fns::mu(), fns::one(), B(6)) == 0);
    CHECK(dirichlet_convolve(fns::phi(), fns::one(), B(12)) == 12);
    CHECK(dirichlet_convolve(fns::liouville(), fns::one(), B(9)) == 1);
}

TEST_CASE("dirichlet_convolve is commutative")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        const auto f = fns::random_small(rng());
        const auto g = fns::random_small(rng());
        const auto n = B(rng() % 5000 + 1);
        REQUIRE(dirichlet_convolve(f, g, n) == dirichlet_convolve(g, f, n));
    }
}

TEST_CASE("random_small is deterministic and bounded")
{
    const auto f = fns::random_small(3, -2, 2);
    for (std::uint64_t n = 1; n <= 200; ++n) {
        const BigInt v = f(B(n));
        REQUIRE(v == f(B(n)));
        REQUIRE(v >= -2);
        REQUIRE(v <= 2);
    }
    CHECK_THROWS(fns::random_small(1, 3, 2));
}

TEST_CASE("zeta_partial")
{
    const auto z1 = zeta_partial(2, 1);
    CHECK(z1.value == 1.0);
    CHECK(z1.tail_bound <= 1.0);
    const double pi2_6 = std::numbers::pi * std::numbers::pi / 6;
    const auto z2 = zeta_partial(2, 10000);
    CHECK(std::abs(z2.value - pi2_6) <= 1e-4);
    CHECK(pi2_6 - z2.value <= z2.tail_bound);
    const auto z3 = zeta_partial(3, 100);
    CHECK(std::abs(z3.value - 1.2020569031595942) <= 1e-4);
    CHECK(1.2020569031595942 - z3.value <= z3.tail_bound);
    CHECK_THROWS_AS(zeta_partial(1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(zeta_partial(2.0, 0), std::invalid_argument);
}
