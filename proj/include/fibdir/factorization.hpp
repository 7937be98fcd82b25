#pragma once

#include "fibdir/bigint.hpp"
#include "fibdir/primality.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fibdir {

/// Raised when factoring needs more Pollard-rho steps than the configured
/// budget allows. The input is then considered out of reach at this scale.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PrimePower {
    BigInt prime;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct FactorOptions {
    /// Maximum number of rho iterations spent on one factorize() call.
    std::uint64_t work_budget = 20'000'000;
    /// Trial division covers every prime below this bound before rho starts.
    std::uint32_t trial_bound = 1u << 12;
    /// First polynomial constant tried by Pollard-Brent; later attempts use seed+1, seed+2, ...
    unsigned long rho_seed = 1;
    PrimalityPolicy primality;
};

/// Prime decomposition of a positive integer; primes strictly increasing.
class Factorization {
public:
    Factorization() : value_(1) {}
    /// Builds from prime powers; the value is their product. Throws
    /// std::invalid_argument if primes are not strictly increasing or an
    /// exponent is zero.
    explicit Factorization(std::vector<PrimePower> factors);

    const BigInt& value() const { return value_; }
    const std::vector<PrimePower>& factors() const { return factors_; }

    bool is_one() const { return factors_.empty(); }
    /// Number of divisors, prod(e_i + 1).
    BigInt divisor_count() const;
    /// Total number of prime factors with multiplicity.
    unsigned long big_omega() const;
    bool squarefree() const;

    /// Exponent of `p` in the value (0 when absent).
    unsigned exponent_of(const BigInt& p) const;

    /// "2^4*3^2"; "1" for the empty product.
    std::string to_string() const;

    friend bool operator==(const Factorization& a, const Factorization& b) { return a.factors_ == b.factors_; }

private:
    BigInt value_;
    std::vector<PrimePower> factors_;
};

Factorization factorize(const BigInt& n, const FactorOptions& options = {});

/// Every divisor, ascending.
std::vector<BigInt> divisors(const Factorization& f);

/// Every divisor together with its own factorization, ascending by value.
std::vector<Factorization> divisor_factorizations(const Factorization& f);

/// Factorization of f.value() / g.value(); g must divide f.
Factorization quotient(const Factorization& f, const Factorization& g);

}  // namespace fibdir
