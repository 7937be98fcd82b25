#include "fibdir/fibonacci.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace fibdir {

std::pair<BigInt, BigInt> fib_pair(std::uint64_t n)
{
    // a_{2k} = a_k (2 a_{k+1} - a_k),  a_{2k+1} = a_k^2 + a_{k+1}^2
    BigInt a = 0;
    BigInt b = 1;
    for (int bit = std::bit_width(n) - 1; bit >= 0; --bit) {
        BigInt c = a * (2 * b - a);
        BigInt d = a * a + b * b;
        if ((n >> bit) & 1U) {
            a = std::move(d);
            b = c + a;
        } else {
            a = std::move(c);
            b = std::move(d);
        }
    }
    return {a, b};
}

BigInt fib(std::uint64_t n) { return fib_pair(n).first; }

std::uint64_t fib_mod(std::uint64_t n, std::uint64_t m)
{
    if (m < 2) {
        throw std::invalid_argument("fib_mod requires m >= 2");
    }
    using u128 = unsigned __int128;
    std::uint64_t a = 0;
    std::uint64_t b = 1;
    for (int bit = std::bit_width(n) - 1; bit >= 0; --bit) {
        const std::uint64_t two_b_minus_a = static_cast<std::uint64_t>((2 * u128{b} + m - a) % m);
        const auto c = static_cast<std::uint64_t>(u128{a} * two_b_minus_a % m);
        // Reduce each square first: their sum can exceed 128 bits when m is near 2^64.
        const auto d = static_cast<std::uint64_t>((u128{a} * a % m + u128{b} * b % m) % m);
        if ((n >> bit) & 1U) {
            a = d;
            b = static_cast<std::uint64_t>((u128{c} + d) % m);
        } else {
            a = c;
            b = d;
        }
    }
    return a;
}

BigInt fib_mod(std::uint64_t n, const BigInt& m)
{
    if (m < 2) {
        throw std::invalid_argument("fib_mod requires m >= 2");
    }
    if (auto small = to_u64(m)) {
        return big_from_u64(fib_mod(n, *small));
    }
    BigInt a = 0;
    BigInt b = 1;
    for (int bit = std::bit_width(n) - 1; bit >= 0; --bit) {
        BigInt c = a * (2 * b - a);
        mpz_mod(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        BigInt d = (a * a + b * b) % m;
        if ((n >> bit) & 1U) {
            a = std::move(d);
            b = (c + a) % m;
        } else {
            a = std::move(c);
            b = std::move(d);
        }
    }
    return a;
}

bool divides_fib(const BigInt& d, std::uint64_t m)
{
    if (d == 1) {
        return true;
    }
    return fib_mod(m, d) == 0;
}

std::uint64_t rank(std::uint64_t n)
{
    if (n == 0) {
        throw std::invalid_argument("rank requires n >= 1");
    }
    if (n == 1) {
        return 1;
    }
    const std::uint64_t limit = 6 * n;
    std::uint64_t prev = 0;
    std::uint64_t cur = 1;
    for (std::uint64_t k = 1; k <= limit; ++k) {
        if (cur == 0) {
            return k;
        }
        const std::uint64_t next = cur >= n - prev ? cur - (n - prev) : cur + prev;
        prev = cur;
        cur = next;
    }
    throw InternalError("rank scan exceeded 6n without finding a zero for n = " + std::to_string(n));
}

unsigned entry_exponent_at(const BigInt& n, std::uint64_t rank_of_n)
{
    if (n < 2) {
        throw std::invalid_argument("entry_exponent requires n >= 2");
    }
    unsigned e = 0;
    BigInt power = n;
    while (fib_mod(rank_of_n, power) == 0) {
        ++e;
        power *= n;
    }
    if (e == 0) {
        throw InternalError("n does not divide a_rank(n)");
    }
    return e;
}

unsigned entry_exponent(std::uint64_t n) { return entry_exponent_at(big_from_u64(n), rank(n)); }

BigInt rank_prime_power(std::uint64_t p, unsigned k)
{
    if (k == 0) {
        throw std::invalid_argument("rank_prime_power requires k >= 1");
    }
    if (p == 2) {
        if (k == 1) {
            return 3;
        }
        if (k == 2) {
            return 6;
        }
        return 3 * pow_ui(2, k - 2);
    }
    const std::uint64_t base_rank = rank(p);
    const unsigned e = entry_exponent_at(big_from_u64(p), base_rank);
    if (k <= e) {
        return big_from_u64(base_rank);
    }
    return pow_ui(big_from_u64(p), k - e) * big_from_u64(base_rank);
}

BigInt lcm_fib_upto(std::uint64_t n)
{
    BigInt out = 1;
    auto [a, b] = fib_pair(1);
    for (std::uint64_t k = 1; k <= n; ++k) {
        out = lcm(out, a);
        BigInt next = a + b;
        a = std::move(b);
        b = std::move(next);
    }
    return out;
}

BigInt lcm_fib(double x)
{
    if (!(x >= 1.0)) {
        return 1;
    }
    return lcm_fib_upto(static_cast<std::uint64_t>(std::floor(x)));
}

BigInt fib_product_upto(std::uint64_t n)
{
    BigInt out = 1;
    BigInt a = 1;
    BigInt b = 1;
    for (std::uint64_t k = 1; k <= n; ++k) {
        out *= a;
        BigInt next = a + b;
        a = std::move(b);
        b = std::move(next);
    }
    return out;
}

long double binet_correction_sum(std::uint64_t N)
{
    const long double r2 = constants().r * constants().r;
    long double total = 0.0L;
    long double inv_pow = 1.0L;
    for (std::uint64_t n = 1; n <= N; ++n) {
        inv_pow /= r2;
        if (inv_pow == 0.0L) {
            break;
        }
        total += std::log1p(n % 2 == 0 ? -inv_pow : inv_pow);
    }
    return total;
}

const Constants& constants()
{
    static const Constants k = [] {
        Constants out{};
        out.sqrt5 = std::sqrt(5.0L);
        out.r = (1.0L + out.sqrt5) / 2.0L;
        out.s = (1.0L - out.sqrt5) / 2.0L;
        out.log_r = std::log(out.r);
        const long double pi = std::numbers::pi_v<long double>;
        out.three_logr_over_pi2 = 3.0L * out.log_r / (pi * pi);
        // Terms fall by r^-2 each step; 200 terms is far below long double epsilon.
        long double c = 0.0L;
        long double inv_pow = 1.0L;
        for (int n = 1; n <= 200; ++n) {
            inv_pow /= out.r * out.r;
            c += std::log1p(n % 2 == 0 ? -inv_pow : inv_pow);
        }
        out.c = c;
        return out;
    }();
    return k;
}

}  // namespace fibdir
