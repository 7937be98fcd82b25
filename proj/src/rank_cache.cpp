#include "fibdir/rank_cache.hpp"

#include "fibdir/fibonacci.hpp"

#include <algorithm>
#include <mutex>

namespace fibdir {

std::vector<std::uint64_t> prime_divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) {
                n /= p;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

std::vector<std::uint64_t> divisors_u64(std::uint64_t n)
{
    std::vector<std::uint64_t> low;
    std::vector<std::uint64_t> high;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            low.push_back(d);
            if (d != n / d) {
                high.push_back(n / d);
            }
        }
    }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;
}

namespace {

template <class Map, class Key, class Compute>
auto get_or_compute(std::shared_mutex& mutex, Map& map, const Key& key, Compute&& compute)
{
    {
        std::shared_lock lock(mutex);
        if (auto it = map.find(key); it != map.end()) {
            return it->second;
        }
    }
    auto value = compute();
    std::unique_lock lock(mutex);
    return map.emplace(key, std::move(value)).first->second;
}

}  // namespace

std::uint64_t FibContext::rank(std::uint64_t n)
{
    return get_or_compute(mutex_, ranks_, n, [&] { return fibdir::rank(n); });
}

unsigned FibContext::entry_exponent(std::uint64_t n)
{
    return get_or_compute(mutex_, entry_exponents_, n,
                          [&] { return entry_exponent_at(big_from_u64(n), rank(n)); });
}

Factorization FibContext::factor(const BigInt& v)
{
    return get_or_compute(mutex_, factors_, v, [&] { return factorize(v, options_); });
}

Factorization FibContext::fib_factorization(std::uint64_t n)
{
    if (n == 0) {
        throw std::invalid_argument("a_0 = 0 has no factorization");
    }
    return get_or_compute(mutex_, fib_factors_, n, [&] {
        BigInt rest = fib(n);
        std::map<BigInt, unsigned> found;
        for (std::uint64_t d : divisors_u64(n)) {
            if (d < 3 || d == n) {
                continue;
            }
            const Factorization earlier = fib_factorization(d);
            for (const auto& pp : earlier.factors()) {
                if (found.contains(pp.prime)) {
                    continue;
                }
                unsigned e = 0;
                while (mpz_divisible_p(rest.get_mpz_t(), pp.prime.get_mpz_t()) != 0) {
                    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), pp.prime.get_mpz_t());
                    ++e;
                }
                found.emplace(pp.prime, e);
            }
        }
        const Factorization remainder = factorize(rest, options_);
        for (const auto& pp : remainder.factors()) {
            found[pp.prime] += pp.exponent;
        }
        std::vector<PrimePower> factors;
        for (auto& [p, e] : found) {
            if (e > 0) {
                factors.push_back({p, e});
            }
        }
        return Factorization(std::move(factors));
    });
}

std::vector<PrimePower> FibContext::primitive_primes(std::uint64_t n)
{
    std::vector<PrimePower> out;
    if (n < 3) {
        return out;
    }
    const auto qs = prime_divisors(n);
    const Factorization an = fib_factorization(n);
    for (const auto& pp : an.factors()) {
        const bool primitive =
            std::ranges::none_of(qs, [&](std::uint64_t q) { return divides_fib(pp.prime, n / q); });
        if (primitive) {
            out.push_back(pp);
        }
    }
    return out;
}

std::uint64_t FibContext::rank_of_divisor(const BigInt& d, std::uint64_t n)
{
    if (auto small = to_u64(d)) {
        std::shared_lock lock(mutex_);
        if (auto it = ranks_.find(*small); it != ranks_.end()) {
            return it->second;
        }
    }
    for (std::uint64_t m : divisors_u64(n)) {
        if (divides_fib(d, m)) {
            if (auto small = to_u64(d)) {
                std::unique_lock lock(mutex_);
                ranks_.emplace(*small, m);
            }
            return m;
        }
    }
    throw InternalError("rank_of_divisor: d does not divide a_n");
}

std::vector<CacheRecord> FibContext::records()
{
    std::vector<std::uint64_t> keys;
    {
        std::shared_lock lock(mutex_);
        for (const auto& [n, _] : fib_factors_) {
            if (n >= 2) {
                keys.push_back(n);
            }
        }
    }
    std::vector<CacheRecord> out;
    out.reserve(keys.size());
    for (std::uint64_t n : keys) {
        out.push_back({n, fib_factorization(n), rank(n), entry_exponent(n)});
    }
    return out;
}

void FibContext::load(const std::vector<CacheRecord>& records)
{
    std::unique_lock lock(mutex_);
    for (const auto& rec : records) {
        fib_factors_.emplace(rec.n, rec.fib_factorization);
        ranks_.emplace(rec.n, rec.rank);
        entry_exponents_.emplace(rec.n, rec.entry_exponent);
    }
}

}  // namespace fibdir
