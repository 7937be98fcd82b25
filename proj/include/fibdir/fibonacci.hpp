#pragma once

#include "fibdir/bigint.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace fibdir {

/// Raised when a computation reaches a state that is mathematically
/// impossible, e.g. a rank scan that runs past the Pisano bound.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// a_n with a_0 = 0, a_1 = 1, by fast doubling.
BigInt fib(std::uint64_t n);

/// (a_n, a_{n+1}).
std::pair<BigInt, BigInt> fib_pair(std::uint64_t n);

/// a_n mod m for m >= 2.
std::uint64_t fib_mod(std::uint64_t n, std::uint64_t m);
BigInt fib_mod(std::uint64_t n, const BigInt& m);

/// d | a_m, via a_m mod d.
bool divides_fib(const BigInt& d, std::uint64_t m);

/// Rank of apparition: least m >= 1 with n | a_m. rank(1) = 1.
///
/// Scans (a_k, a_{k+1}) mod n for k up to 6n. The Pisano period of n never
/// exceeds 6n (a known bound, not derived here), and n | a_0, so a zero
/// must appear before the scan ends; otherwise InternalError is thrown.
std::uint64_t rank(std::uint64_t n);

/// Rank of p^k from rank(p) and the entry exponent of p:
///   p = 2:  3, 6, 3*2^{k-2} for k = 1, 2, >= 3
///   p odd:  rank(p) for k <= e_p, p^{k - e_p} rank(p) otherwise.
BigInt rank_prime_power(std::uint64_t p, unsigned k);

/// Largest m with n^m | a_{rank(n)}; requires n >= 2.
unsigned entry_exponent(std::uint64_t n);

/// Same, with rank(n) already known.
unsigned entry_exponent_at(const BigInt& n, std::uint64_t rank_of_n);

/// lcm(a_1, ..., a_{floor(x)}); 1 for x < 1.
BigInt lcm_fib(double x);
BigInt lcm_fib_upto(std::uint64_t n);

/// prod_{n <= N} a_n.
BigInt fib_product_upto(std::uint64_t n);

/// Golden-ratio constants in extended precision.
struct Constants {
    long double r;        ///< (1 + sqrt 5) / 2
    long double s;        ///< (1 - sqrt 5) / 2
    long double sqrt5;
    long double log_r;
    long double c;        ///< lim_N sum_{n<=N} log(1 - (-1)^n r^{-2n})
    long double three_logr_over_pi2;
};

const Constants& constants();

/// sum_{n <= N} log(1 - (-1)^n / r^{2n}); converges geometrically to Constants::c.
long double binet_correction_sum(std::uint64_t N);

}  // namespace fibdir
