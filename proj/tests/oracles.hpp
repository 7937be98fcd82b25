#pragma once

// Brute-force reference implementations. Nothing here calls into the
// library; they are slow on purpose and only used on small inputs.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

// a_n by the recurrence.
inline mpz_class fib(std::uint64_t n)
{
    mpz_class a = 0;
    mpz_class b = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        mpz_class t = a + b;
        a = b;
        b = t;
    }
    return a;
}

inline std::uint64_t fib_u64(std::uint64_t n)
{
    std::uint64_t a = 0;
    std::uint64_t b = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t t = a + b;
        a = b;
        b = t;
    }
    return a;
}

// Least m >= 1 with n | a_m, stepping the recurrence mod n.
inline std::uint64_t rank(std::uint64_t n)
{
    if (n == 1) {
        return 1;
    }
    std::uint64_t a = 1 % n;
    std::uint64_t b = 1 % n;
    for (std::uint64_t m = 1;; ++m) {
        if (a == 0) {
            return m;
        }
        const std::uint64_t t = (a + b) % n;
        a = b;
        b = t;
    }
}

// Trial division.
inline std::map<std::uint64_t, unsigned> factor(std::uint64_t n)
{
    std::map<std::uint64_t, unsigned> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n > 1) {
        ++out[n];
    }
    return out;
}

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            return false;
        }
    }
    return true;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> lo;
    std::vector<std::uint64_t> hi;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            lo.push_back(d);
            if (d != n / d) {
                hi.push_back(n / d);
            }
        }
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

inline int mobius(std::uint64_t n)
{
    int sign = 1;
    for (auto [p, e] : factor(n)) {
        if (e > 1) {
            return 0;
        }
        sign = -sign;
    }
    return sign;
}

inline int liouville(std::uint64_t n)
{
    unsigned omega = 0;
    for (auto [p, e] : factor(n)) {
        omega += e;
    }
    return omega % 2 ? -1 : 1;
}

// Count of k in 1..n coprime to n.
inline std::uint64_t phi_count(std::uint64_t n)
{
    std::uint64_t count = 0;
    for (std::uint64_t k = 1; k <= n; ++k) {
        if (std::gcd(k, n) == 1) {
            ++count;
        }
    }
    return count;
}

// n * prod (1 - 1/p) over trial-division primes; usable for large n.
inline std::uint64_t phi(std::uint64_t n)
{
    std::uint64_t out = n;
    for (auto [p, e] : factor(n)) {
        out = out / p * (p - 1);
    }
    return out;
}

inline std::int64_t mertens(double x)
{
    std::int64_t m = 0;
    for (std::uint64_t n = 1; static_cast<double>(n) <= x; ++n) {
        m += mobius(n);
    }
    return m;
}

// f_alpha(n) straight from the definition: sum f(m) over m with rank(m) = n,
// which are exactly the divisors of a_n of rank n. Needs a_n < 2^64.
inline mpz_class alpha_contract(const std::function<mpz_class(std::uint64_t)>& f, std::uint64_t n)
{
    mpz_class total = 0;
    if (n == 2) {
        return total;
    }
    for (std::uint64_t m : divisors(fib_u64(n))) {
        if (rank(m) == n) {
            total += f(m);
        }
    }
    return total;
}

// Deterministic small table f(n) in [-3, 3] for tests that need an
// arbitrary arithmetic function.
inline std::function<mpz_class(std::uint64_t)> table_fn(std::uint64_t seed)
{
    return [seed](std::uint64_t n) {
        std::uint64_t z = seed * 0x9E3779B97F4A7C15ull + n * 0xBF58476D1CE4E5B9ull;
        z ^= z >> 31;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 29;
        return mpz_class(static_cast<long>(z % 7) - 3);
    };
}

}  // namespace oracle
