#pragma once

#include "fibdir/arith.hpp"
#include "fibdir/exact_log.hpp"
#include "fibdir/rank_cache.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fibdir {

struct ContractionOptions {
    /// Inner contraction levels are evaluated as literal divisor sums over
    /// a_d while d <= this limit; beyond it the inversion bridge is used.
    std::uint64_t direct_index_limit = 60;
    /// Largest bit size of an iterated Fibonacci value a^{(k)}(j) that the
    /// bridge will materialise for functions without the unit shortcut.
    std::uint64_t tower_bits_cap = 1u << 20;
};

/// Divisors d of a_n with rank(d) = n, with their factorizations.
std::vector<Factorization> rank_fiber(std::uint64_t n, FibContext& ctx);

/// f_alpha(n) = sum of f(d) over divisors d of a_n with rank(d) = n.
/// f_alpha(2) = 0 (empty fiber).
BigInt alpha_contract(const ArithFn& f, std::uint64_t n, FibContext& ctx);

/// f_{alpha^depth} as an arithmetic function. depth 0 returns f.
///
/// At an argument d <= direct_index_limit the value is the literal
/// contraction of f_{alpha^{depth-1}} at d. Larger arguments use
///   f_{alpha^k}(d) = sum_{j|d} mu(d/j) (1*f)(a^{(k)}(j)),
/// where a^{(k)} is the k-fold iterated Fibonacci index map; this follows
/// from (1*f)(a_m) = (1*f_alpha)(m). When f = mu the right side only needs
/// to know whether a^{(k)}(j) = 1, which is decided without computing it.
/// The returned function keeps a reference to ctx.
ArithFn contracted(const ArithFn& f, unsigned depth, FibContext& ctx, const ContractionOptions& options = {});

/// depth-fold alpha-contraction at n; the outermost level is always the
/// literal divisor sum over a_n.
BigInt alpha_contract_iter(const ArithFn& f, unsigned depth, std::uint64_t n, FibContext& ctx,
                           const ContractionOptions& options = {});

/// a^{(k)}(j): the Fibonacci map applied k times. nullopt when an
/// intermediate value would exceed `bits_cap` bits.
std::optional<BigInt> iterated_fib(const BigInt& j, unsigned k, std::uint64_t bits_cap);

/// Whether a^{(k)}(j) = 1, without materialising large values.
bool iterated_fib_is_one(const BigInt& j, unsigned k);

// Summatory functions. Arguments x < 1 give empty sums.

/// T_{f,alpha}(x) = sum_{alpha(n) <= x} f(n) floor(x/alpha(n)), computed as
/// sum_{n <= x} (1*f)(a_n).
BigInt summatory_T(const ArithFn& f, double x, FibContext& ctx);
/// T for von Mangoldt: sum_{n <= x} sum_{d | a_n} Lambda(d) = log prod a_n.
ExactLog summatory_T_mangoldt(double x, FibContext& ctx);

/// S_{f,alpha}(x) = sum_{n <= x} f_alpha(n).
BigInt summatory_S(const ArithFn& f, double x, FibContext& ctx);
/// S for von Mangoldt: log lcm(a_1, ..., a_x).
ExactLog summatory_S_mangoldt(double x);

struct SummatoryTable {
    enum class Kind { S, T };
    Kind kind = Kind::T;
    std::string fn_name;
    /// Values at the integer points 1..horizon (the functions are step functions).
    std::map<std::uint64_t, BigInt> values;

    /// Value at real x (floor taken; 0 below 1). Throws MissingTableEntry.
    BigInt at(double x) const;
    BigInt at_floor(std::uint64_t n) const;
};

class MissingTableEntry : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

SummatoryTable build_T_table(const ArithFn& f, std::uint64_t horizon, FibContext& ctx);
SummatoryTable build_S_table(const ArithFn& f, std::uint64_t horizon, FibContext& ctx);

/// S(x) = sum_{n <= x} mu(n) T(x/n). Requires a T table.
BigInt invert_T_to_S(const SummatoryTable& T, double x);
/// T(x) = sum_{n <= x} S(x/n). Requires an S table.
BigInt accumulate_S_to_T(const SummatoryTable& S, double x);

// Closed forms of the contractions of mu and lambda.

BigInt closed_mu_alpha(const Factorization& n);
BigInt closed_mu_alpha2(const Factorization& n);
BigInt closed_mu_alpha3(const Factorization& n);
BigInt closed_lambda_alpha(const Factorization& n);
BigInt closed_delta23(const Factorization& n);

BigInt closed_mu_alpha(std::uint64_t n);
BigInt closed_mu_alpha2(std::uint64_t n);
BigInt closed_mu_alpha3(std::uint64_t n);
BigInt closed_lambda_alpha(std::uint64_t n);
BigInt closed_delta23(std::uint64_t n);

namespace closed {

ArithFn mu_alpha();
ArithFn mu_alpha2();
ArithFn mu_alpha3();
ArithFn lambda_alpha();
ArithFn delta23();

/// Closed form of the depth-fold contraction of `fn_name`, when one is known
/// (mu at depth 1..3 and beyond via the fixed point, lambda at depth 1).
std::optional<ArithFn> for_contraction(std::string_view fn_name, unsigned depth);

}  // namespace closed

struct ContractionTable {
    std::string source;
    unsigned depth = 0;
    std::map<std::uint64_t, BigInt> values;
    std::uint64_t horizon = 0;
};

/// Values of f_{alpha^depth} at 1..horizon. For mu with depth > 3 the
/// result is additionally checked against the depth-3 fixed point
/// (InternalError on mismatch).
ContractionTable build_contraction_table(const ArithFn& f, unsigned depth, std::uint64_t horizon, FibContext& ctx,
                                         const ContractionOptions& options = {});

}  // namespace fibdir
