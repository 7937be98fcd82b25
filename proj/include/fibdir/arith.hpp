#pragma once

#include "fibdir/bigint.hpp"
#include "fibdir/factorization.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fibdir {

/// Exact integer-valued arithmetic function. Evaluation receives the
/// factorization of the argument, so callers that already hold one (divisor
/// enumeration) never factor twice.
class ArithFn {
public:
    using Eval = std::function<BigInt(const Factorization&)>;
    /// Optional closed evaluation of (1*f)(v), used when v is too large to factor.
    using DivisorSum = std::function<BigInt(const BigInt&)>;

    ArithFn(std::string name, Eval eval, DivisorSum divisor_sum = {})
        : name_(std::move(name)), eval_(std::move(eval)), divisor_sum_(std::move(divisor_sum))
    {
    }

    const std::string& name() const { return name_; }

    BigInt at(const Factorization& n) const { return eval_(n); }
    BigInt operator()(const BigInt& n, const FactorOptions& options = {}) const { return eval_(factorize(n, options)); }

    bool has_divisor_sum() const { return static_cast<bool>(divisor_sum_); }
    BigInt divisor_sum(const BigInt& v) const { return divisor_sum_(v); }

    /// True when 1*f is the Dirichlet unit (f = mu); lets callers decide
    /// (1*f)(v) = [v == 1] without materialising v.
    bool divisor_sum_is_unit() const { return unit_divisor_sum_; }
    ArithFn& mark_unit_divisor_sum()
    {
        unit_divisor_sum_ = true;
        return *this;
    }

private:
    std::string name_;
    Eval eval_;
    DivisorSum divisor_sum_;
    bool unit_divisor_sum_ = false;
};

int mobius(const Factorization& n);
int liouville(const Factorization& n);
BigInt euler_phi(const Factorization& n);
BigInt divisor_count(const Factorization& n);

int mobius(const BigInt& n, const FactorOptions& options = {});
int liouville(const BigInt& n, const FactorOptions& options = {});
BigInt euler_phi(const BigInt& n, const FactorOptions& options = {});
BigInt divisor_count(const BigInt& n, const FactorOptions& options = {});

/// The prime p when n = p^k with k >= 1; Lambda(n) is then log p.
std::optional<BigInt> mangoldt_base(const Factorization& n);
std::optional<BigInt> mangoldt_base(const BigInt& n, const FactorOptions& options = {});

/// Mobius values mu(0..limit) by a linear sieve (index 0 unused, set to 0).
std::vector<int> mobius_table(std::uint64_t limit);

/// M(x) = sum_{n <= floor(x)} mu(n); 0 for x < 1.
std::int64_t mertens(double x);
std::int64_t mertens_floor(std::uint64_t n);

/// (f*g)(n) = sum_{d|n} f(d) g(n/d).
BigInt dirichlet_convolve(const ArithFn& f, const ArithFn& g, const BigInt& n, const FactorOptions& options = {});
BigInt dirichlet_convolve(const ArithFn& f, const ArithFn& g, const Factorization& n);

struct ZetaPartial {
    double value = 0.0;
    /// Upper bound N^{1-s}/(s-1) on sum_{n > N} n^{-s}.
    double tail_bound = 0.0;
};

/// sum_{n <= N} n^{-s} for real s > 1. Throws std::invalid_argument otherwise.
ZetaPartial zeta_partial(double s, std::uint64_t N);
/// Integral bound on sum_{n > N} n^{-s}.
double zeta_tail_bound(double s, std::uint64_t N);

namespace fns {

ArithFn mu();
ArithFn liouville();
ArithFn phi();
ArithFn one();
ArithFn divisor_count();
ArithFn identity();

/// Deterministic pseudo-random table with values in [lo, hi], keyed by
/// (seed, n). Stands in for "an arbitrary arithmetic function" in
/// identity checks.
ArithFn random_small(std::uint64_t seed, int lo = -3, int hi = 3);

/// Lookup by CLI name: mu, lambda, phi, one, divisor_count, identity.
std::optional<ArithFn> by_name(std::string_view name);

}  // namespace fns

}  // namespace fibdir
