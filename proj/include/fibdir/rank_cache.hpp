#pragma once

#include "fibdir/bigint.hpp"
#include "fibdir/factorization.hpp"

#include <cstdint>
#include <map>
#include <shared_mutex>
#include <vector>

namespace fibdir {

/// Persistable facts about one index n: the factorization of a_n, the rank
/// of apparition of n and the entry exponent e_n.
struct CacheRecord {
    std::uint64_t n = 0;
    Factorization fib_factorization;
    std::uint64_t rank = 0;
    unsigned entry_exponent = 0;

    friend bool operator==(const CacheRecord&, const CacheRecord&) = default;
};

/// Shared memo of ranks, entry exponents and Fibonacci factorizations.
///
/// Every lookup is get-or-compute under a reader/writer lock. Values are
/// pure functions of their key, so a racing duplicate computation inserts
/// the same value and the map behaves as a single logical table.
class FibContext {
public:
    explicit FibContext(FactorOptions options = {}) : options_(std::move(options)) {}

    FibContext(const FibContext&) = delete;
    FibContext& operator=(const FibContext&) = delete;

    const FactorOptions& options() const { return options_; }

    std::uint64_t rank(std::uint64_t n);
    unsigned entry_exponent(std::uint64_t n);

    /// Factorization of a_n for n >= 1. Primes of a_d for proper divisors d
    /// of n are divided out first, so only the primitive part goes to rho.
    Factorization fib_factorization(std::uint64_t n);

    /// Memoized factorize() for arbitrary arguments.
    Factorization factor(const BigInt& v);

    /// Primes p | a_n with rank(p) = n, each with its exponent in a_n.
    /// Primitivity is decided by p not dividing a_{n/q} for each prime q | n.
    std::vector<PrimePower> primitive_primes(std::uint64_t n);

    /// Rank of d when d | a_n is already known: the least divisor m of n
    /// with d | a_m.
    std::uint64_t rank_of_divisor(const BigInt& d, std::uint64_t n);

    /// Records for every n >= 2 with a cached Fibonacci factorization.
    std::vector<CacheRecord> records();
    /// Seeds the memo; records are trusted (validate before loading).
    void load(const std::vector<CacheRecord>& records);

private:
    FactorOptions options_;
    std::shared_mutex mutex_;
    std::map<std::uint64_t, std::uint64_t> ranks_;
    std::map<std::uint64_t, unsigned> entry_exponents_;
    std::map<std::uint64_t, Factorization> fib_factors_;
    std::map<BigInt, Factorization> factors_;
};

/// Prime divisors q of n (n >= 1), ascending.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);
/// Divisors of n (n >= 1), ascending.
std::vector<std::uint64_t> divisors_u64(std::uint64_t n);

}  // namespace fibdir
