#pragma once

#include "fibdir/arith.hpp"
#include "fibdir/contraction.hpp"
#include "fibdir/exact_log.hpp"
#include "fibdir/rank_cache.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace fibdir {

struct Outcome {
    std::string index;
    std::string expected;
    std::string actual;
    bool ok = false;
};

/// Result of one identity check. `passed` holds iff every outcome is ok;
/// exact checks carry an integer residual that must be 0.
struct VerificationReport {
    std::string check_name;
    std::string parameters;
    bool passed = true;
    std::variant<BigInt, double> residual = BigInt(0);
    std::vector<Outcome> details;

    void record(Outcome outcome)
    {
        passed = passed && outcome.ok;
        details.push_back(std::move(outcome));
    }
    std::string residual_string() const;
};

struct AsymptoticSample {
    std::uint64_t x = 0;
    double exact = 0.0;     ///< log value of the exact quantity, or the integer itself
    double predicted = 0.0;
    double ratio = 0.0;     ///< exact / predicted; 0 when either side is 0
};

/// 3 log r / pi^2, the leading coefficient of the von Mangoldt sums.
double mangoldt_leading_constant();

/// The three sides of the double-counting identity for integer-valued f, g:
///   sum_{n<=x} (f*g)(a_n)
///   sum_{alpha(n)<=x} f(n) sum_{d <= x/alpha(n)} g(a_{d alpha(n)} / n)
///   the same with f and g exchanged.
/// The last two enumerate n over the union of the divisor sets of a_1..a_x.
VerificationReport check_theorem1(const ArithFn& f, const ArithFn& g, double x, FibContext& ctx);
/// Same with f = Lambda carried exactly as a product of prime bases.
VerificationReport check_theorem1_mangoldt(const ArithFn& g, double x, FibContext& ctx);

/// (f*g)(a_n) = g(a_n) (1*(f/g)_alpha)(n) for n <= N, with exact rationals,
/// plus the g = 1 form (1*f)(a_n) = (1*f_alpha)(n). g must be completely
/// multiplicative; a zero value of g raises std::domain_error.
VerificationReport check_corollary_completely_mult(const ArithFn& f, const ArithFn& g, std::uint64_t N,
                                                   FibContext& ctx);

struct LogProductComparison {
    ExactLog lhs;
    double rhs = 0.0;
    double residual = 0.0;
};

/// log prod_{n<=x} a_n against
/// (log r/2) X^2 + (log(r/5)/2) X + sum_{n<=X} log(1 - (-1)^n r^{-2n}).
LogProductComparison logprod_closed_form(double x);

/// sum_{n<=N} log(1 - (-1)^n / r^{2n}).
double constant_c(std::uint64_t N);

/// exact = log lcm(a_1..a_x), predicted = (3 log r / pi^2) x^2.
std::vector<AsymptoticSample> asymptotic_mangoldt_report(const std::vector<std::uint64_t>& xs);

struct EpWeightedSum {
    BigInt product;        ///< prod over primes p with rank(p) <= x of p^{e_p}
    ExactLog value;        ///< its log, i.e. sum e_p log p
    AsymptoticSample sample;
};

EpWeightedSum ep_weighted_sum(std::uint64_t x, FibContext& ctx);

/// Number of primes with rank at most x.
std::uint64_t pi_alpha(std::uint64_t x, FibContext& ctx);

struct PiAlphaRow {
    std::uint64_t x = 0;
    std::uint64_t count = 0;
    double scaled = 0.0;   ///< count * log x / x^2
    double bound = 0.0;    ///< 3 log r / (2 pi^2)
};

/// Trend report only; the bound is a limsup and is never asserted.
std::vector<PiAlphaRow> pi_alpha_bound_report(const std::vector<std::uint64_t>& xs, FibContext& ctx);

/// sum_{alpha(n)<=x} phi(n) floor(x/alpha(n)) = sum_{n<=x} a_n = a_{x+2} - 1.
VerificationReport check_phi_identity(double x, FibContext& ctx);

/// a_1, ..., a_{x_max+2} generated from a_1 = 1 and
/// a_{x+2} = 1 + sum_{alpha(n)<=x} phi(n) floor(x/alpha(n)),
/// where alpha and the index set only use terms generated so far.
std::vector<BigInt> phi_recursive_fib(std::uint64_t x_max, FibContext& ctx);

enum class EulerSeries { LambdaAlpha, MuAlpha, MuAlpha2, MuAlpha3 };

std::optional<EulerSeries> euler_series_from_name(std::string_view name);
std::string_view euler_series_name(EulerSeries which);

struct EulerProductNumbers {
    double zeta_partial = 0.0;
    double series_partial = 0.0;
    double polynomial = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
};

/// zeta(s) sum f(n) n^{-s} equals a finite Dirichlet polynomial P(s) for
/// the four closed forms: 1+2^-s+12^-s (lambda_alpha), 1+2^-s (mu_alpha;
/// (1-4^-s) prod_{p>2}(1-p^-s) = (1+2^-s)/zeta(s)), 1+2^-s+3^-s
/// (mu_alpha2) and 1+2^-s+3^-s+4^-s (mu_alpha3). Truncating both series at
/// N, the tolerance is |P| tail_zeta + zeta(s) tail_D with
/// tail_D = 3 tail_zeta (each closed form is a sum of at most three mu
/// values) and zeta(s) <= zeta_N + tail_zeta.
EulerProductNumbers euler_product_numbers(EulerSeries which, double s, std::uint64_t N);
VerificationReport euler_product_check(EulerSeries which, double s, std::uint64_t N);

/// T of mu_{alpha^{depth-1}} against the step function min(floor x, depth+1).
VerificationReport check_T_tables(unsigned depth, double x, FibContext& ctx,
                                  const ContractionOptions& options = {});

}  // namespace fibdir
