#include "fibdir/verify.hpp"

#include "fibdir/fibonacci.hpp"

#include <cmath>
#include <fmt/format.h>
#include <functional>
#include <map>
#include <numbers>

namespace fibdir {
namespace {

std::uint64_t floor_index(double x)
{
    if (!(x >= 1.0)) {
        return 0;
    }
    return static_cast<std::uint64_t>(std::floor(x));
}

std::string fmt_real(double v) { return fmt::format("{:.12g}", v); }

/// Members of the divisor union of a_1..a_X, keyed by value, with their
/// factorization and rank. The first k at which n appears as a divisor of
/// a_k is rank(n) by definition.
struct RankedDivisor {
    Factorization factorization;
    std::uint64_t rank = 0;
};

std::map<BigInt, RankedDivisor> divisor_union(std::uint64_t X, FibContext& ctx)
{
    std::map<BigInt, RankedDivisor> out;
    for (std::uint64_t k = 1; k <= X; ++k) {
        for (auto& d : divisor_factorizations(ctx.fib_factorization(k))) {
            if (!out.contains(d.value())) {
                BigInt key = d.value();
                out.emplace(std::move(key), RankedDivisor{std::move(d), k});
            }
        }
    }
    return out;
}

/// Value algebra for the double-counting sums: integer-valued or
/// log-valued f, always integer-valued g.
template <class T>
struct SideAlgebra {
    std::function<T(const Factorization&)> f;
    std::function<BigInt(const Factorization&)> g;
    std::function<T(const T&, const BigInt&)> scale;
    std::function<void(T&, const T&)> add;
};

template <class T>
struct ThreeSides {
    T lhs{};
    T middle{};
    T right{};
};

template <class T>
ThreeSides<T> theorem1_sides(const SideAlgebra<T>& alg, std::uint64_t X, FibContext& ctx)
{
    ThreeSides<T> out;
    for (std::uint64_t n = 1; n <= X; ++n) {
        const Factorization an = ctx.fib_factorization(n);
        for (const auto& d : divisor_factorizations(an)) {
            alg.add(out.lhs, alg.scale(alg.f(d), alg.g(quotient(an, d))));
        }
    }
    for (const auto& [value, entry] : divisor_union(X, ctx)) {
        const std::uint64_t a = entry.rank;
        BigInt g_inner = 0;
        T f_inner{};
        for (std::uint64_t d = 1; d * a <= X; ++d) {
            const Factorization q = quotient(ctx.fib_factorization(d * a), entry.factorization);
            g_inner += alg.g(q);
            alg.add(f_inner, alg.f(q));
        }
        alg.add(out.middle, alg.scale(alg.f(entry.factorization), g_inner));
        alg.add(out.right, alg.scale(f_inner, alg.g(entry.factorization)));
    }
    return out;
}

}  // namespace

std::string VerificationReport::residual_string() const
{
    if (const auto* exact = std::get_if<BigInt>(&residual)) {
        return exact->get_str();
    }
    return fmt_real(std::get<double>(residual));
}

double mangoldt_leading_constant() { return static_cast<double>(constants().three_logr_over_pi2); }

VerificationReport check_theorem1(const ArithFn& f, const ArithFn& g, double x, FibContext& ctx)
{
    const std::uint64_t X = floor_index(x);
    SideAlgebra<BigInt> alg{
        [&](const Factorization& n) { return f.at(n); },
        [&](const Factorization& n) { return g.at(n); },
        [](const BigInt& a, const BigInt& b) { return BigInt(a * b); },
        [](BigInt& acc, const BigInt& v) { acc += v; },
    };
    const auto sides = theorem1_sides(alg, X, ctx);

    VerificationReport report;
    report.check_name = "theorem1";
    report.parameters = fmt::format("f={} g={} x={}", f.name(), g.name(), fmt_real(x));
    report.record({"lhs=middle", sides.lhs.get_str(), sides.middle.get_str(), sides.lhs == sides.middle});
    report.record({"lhs=right", sides.lhs.get_str(), sides.right.get_str(), sides.lhs == sides.right});
    BigInt r1 = abs(sides.lhs - sides.middle);
    BigInt r2 = abs(sides.lhs - sides.right);
    report.residual = r1 > r2 ? r1 : r2;
    return report;
}

VerificationReport check_theorem1_mangoldt(const ArithFn& g, double x, FibContext& ctx)
{
    const std::uint64_t X = floor_index(x);
    SideAlgebra<LogSum> alg{
        [](const Factorization& n) {
            auto p = mangoldt_base(n);
            return p ? LogSum::log_of(*p) : LogSum{};
        },
        [&](const Factorization& n) { return g.at(n); },
        [](const LogSum& a, const BigInt& k) { return a.scaled(k); },
        [](LogSum& acc, const LogSum& v) { acc += v; },
    };
    const auto sides = theorem1_sides(alg, X, ctx);

    auto show = [](const LogSum& v) { return v.product().get_str(); };
    VerificationReport report;
    report.check_name = "theorem1";
    report.parameters = fmt::format("f=Lambda g={} x={}", g.name(), fmt_real(x));
    report.record({"lhs=middle", "log " + show(sides.lhs), "log " + show(sides.middle), sides.lhs == sides.middle});
    report.record({"lhs=right", "log " + show(sides.lhs), "log " + show(sides.right), sides.lhs == sides.right});
    // Products equal exactly or not; the residual is the larger log-gap.
    const double r1 = std::abs(sides.lhs.value() - sides.middle.value());
    const double r2 = std::abs(sides.lhs.value() - sides.right.value());
    if (report.passed) {
        report.residual = BigInt(0);
    } else {
        report.residual = std::max(r1, r2);
    }
    return report;
}

VerificationReport check_corollary_completely_mult(const ArithFn& f, const ArithFn& g, std::uint64_t N,
                                                   FibContext& ctx)
{
    VerificationReport report;
    report.check_name = "corollary-completely-multiplicative";
    report.parameters = fmt::format("f={} g={} N={}", f.name(), g.name(), N);

    std::map<std::uint64_t, BigRational> ratio_contraction;
    std::map<std::uint64_t, BigInt> plain_contraction;
    for (std::uint64_t k = 1; k <= N; ++k) {
        BigRational q = 0;
        BigInt plain = 0;
        for (const auto& d : rank_fiber(k, ctx)) {
            const BigInt gd = g.at(d);
            if (gd == 0) {
                throw std::domain_error("completely multiplicative g vanishes at " + d.value().get_str());
            }
            const BigInt fd = f.at(d);
            BigRational term(fd, gd);
            term.canonicalize();  // gmp requires a positive denominator
            q += term;
            plain += fd;
        }
        q.canonicalize();
        ratio_contraction.emplace(k, q);
        plain_contraction.emplace(k, plain);
    }

    BigInt worst = 0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        const Factorization an = ctx.fib_factorization(n);
        const BigInt ga = g.at(an);
        if (ga == 0) {
            throw std::domain_error("completely multiplicative g vanishes at a_" + std::to_string(n));
        }
        BigInt fg = 0;
        BigInt one_f = 0;
        for (const auto& d : divisor_factorizations(an)) {
            fg += f.at(d) * g.at(quotient(an, d));
            one_f += f.at(d);
        }
        BigRational inner = 0;
        BigInt one_f_alpha = 0;
        for (std::uint64_t k : divisors_u64(n)) {
            inner += ratio_contraction.at(k);
            one_f_alpha += plain_contraction.at(k);
        }
        BigRational rhs = ga * inner;
        rhs.canonicalize();
        const BigRational gap = abs(BigRational(fg) - rhs);
        if (gap > 0) {
            worst = std::max(worst, BigInt(gap.get_num() / gap.get_den() + 1));
        }
        worst = std::max(worst, BigInt(abs(one_f - one_f_alpha)));
        report.record({fmt::format("n={} (f*g)(a_n)", n), fg.get_str(), rhs.get_str(), BigRational(fg) == rhs});
        report.record({fmt::format("n={} (1*f)(a_n)", n), one_f.get_str(), one_f_alpha.get_str(), one_f == one_f_alpha});
    }
    report.residual = worst;
    return report;
}

LogProductComparison logprod_closed_form(double x)
{
    const std::uint64_t X = floor_index(x);
    const auto& k = constants();
    LogProductComparison out;
    out.lhs = log_of_big(fib_product_upto(X));
    const auto Xl = static_cast<long double>(X);
    const long double rhs = k.log_r / 2.0L * Xl * Xl + std::log(k.r / 5.0L) / 2.0L * Xl + binet_correction_sum(X);
    out.rhs = static_cast<double>(rhs);
    out.residual = static_cast<double>(std::abs(static_cast<long double>(out.lhs.log_value) - rhs));
    return out;
}

double constant_c(std::uint64_t N) { return static_cast<double>(binet_correction_sum(N)); }

std::vector<AsymptoticSample> asymptotic_mangoldt_report(const std::vector<std::uint64_t>& xs)
{
    std::vector<AsymptoticSample> out;
    for (std::uint64_t x : xs) {
        AsymptoticSample s;
        s.x = x;
        s.exact = log_of_big(lcm_fib_upto(x)).log_value;
        s.predicted = mangoldt_leading_constant() * static_cast<double>(x) * static_cast<double>(x);
        s.ratio = (s.exact > 0 && s.predicted > 0) ? s.exact / s.predicted : 0.0;
        out.push_back(s);
    }
    return out;
}

EpWeightedSum ep_weighted_sum(std::uint64_t x, FibContext& ctx)
{
    EpWeightedSum out;
    out.product = 1;
    for (std::uint64_t n = 1; n <= x; ++n) {
        for (const auto& pp : ctx.primitive_primes(n)) {
            out.product *= pow_ui(pp.prime, pp.exponent);
        }
    }
    out.value = log_of_big(out.product);
    out.sample.x = x;
    out.sample.exact = out.value.log_value;
    out.sample.predicted = mangoldt_leading_constant() * static_cast<double>(x) * static_cast<double>(x);
    out.sample.ratio = (out.sample.exact > 0 && out.sample.predicted > 0) ? out.sample.exact / out.sample.predicted : 0.0;
    return out;
}

std::uint64_t pi_alpha(std::uint64_t x, FibContext& ctx)
{
    std::uint64_t count = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        count += ctx.primitive_primes(n).size();
    }
    return count;
}

std::vector<PiAlphaRow> pi_alpha_bound_report(const std::vector<std::uint64_t>& xs, FibContext& ctx)
{
    std::vector<PiAlphaRow> out;
    const double bound = mangoldt_leading_constant() / 2.0;
    for (std::uint64_t x : xs) {
        PiAlphaRow row;
        row.x = x;
        row.count = pi_alpha(x, ctx);
        const auto xd = static_cast<double>(x);
        row.scaled = x > 0 ? static_cast<double>(row.count) * std::log(xd) / (xd * xd) : 0.0;
        row.bound = bound;
        out.push_back(row);
    }
    return out;
}

VerificationReport check_phi_identity(double x, FibContext& ctx)
{
    const std::uint64_t X = floor_index(x);
    BigInt alpha_sum = 0;
    for (const auto& [value, entry] : divisor_union(X, ctx)) {
        alpha_sum += euler_phi(entry.factorization) * (X / entry.rank);
    }
    BigInt fib_sum = 0;
    for (std::uint64_t n = 1; n <= X; ++n) {
        fib_sum += fib(n);
    }
    const BigInt closed = fib(X + 2) - 1;

    VerificationReport report;
    report.check_name = "phi-identity";
    report.parameters = fmt::format("x={}", fmt_real(x));
    report.record({"alpha-sum = fib-sum", fib_sum.get_str(), alpha_sum.get_str(), alpha_sum == fib_sum});
    report.record({"fib-sum = a_{x+2}-1", closed.get_str(), fib_sum.get_str(), fib_sum == closed});
    BigInt r1 = abs(alpha_sum - fib_sum);
    BigInt r2 = abs(fib_sum - closed);
    report.residual = r1 > r2 ? r1 : r2;
    return report;
}

std::vector<BigInt> phi_recursive_fib(std::uint64_t x_max, FibContext& ctx)
{
    std::vector<BigInt> seq{1};  // seq[k-1] = a_k
    std::map<BigInt, std::pair<BigInt, std::uint64_t>> ranked;  // n -> (phi(n), alpha(n))
    for (std::uint64_t x = 0; x <= x_max; ++x) {
        if (x >= 1) {
            for (const auto& d : divisor_factorizations(ctx.factor(seq[x - 1]))) {
                if (!ranked.contains(d.value())) {
                    ranked.emplace(d.value(), std::pair{euler_phi(d), x});
                }
            }
        }
        BigInt next = 1;
        for (const auto& [n, entry] : ranked) {
            next += entry.first * (x / entry.second);
        }
        seq.push_back(std::move(next));
    }
    return seq;
}

std::optional<EulerSeries> euler_series_from_name(std::string_view name)
{
    if (name == "lambda" || name == "lambda_alpha") {
        return EulerSeries::LambdaAlpha;
    }
    if (name == "mu" || name == "mu_alpha") {
        return EulerSeries::MuAlpha;
    }
    if (name == "mu2" || name == "mu_alpha2") {
        return EulerSeries::MuAlpha2;
    }
    if (name == "mu3" || name == "mu_alpha3") {
        return EulerSeries::MuAlpha3;
    }
    return std::nullopt;
}

std::string_view euler_series_name(EulerSeries which)
{
    switch (which) {
    case EulerSeries::LambdaAlpha:
        return "lambda_alpha";
    case EulerSeries::MuAlpha:
        return "mu_alpha";
    case EulerSeries::MuAlpha2:
        return "mu_alpha2";
    case EulerSeries::MuAlpha3:
        return "mu_alpha3";
    }
    return "?";
}

EulerProductNumbers euler_product_numbers(EulerSeries which, double s, std::uint64_t N)
{
    if (!(s > 1.0) || N < 12) {
        throw std::invalid_argument("euler_product_check requires s > 1 and N >= 12");
    }
    std::function<BigInt(const Factorization&)> closed_form;
    const long double ss = s;
    long double poly = 1.0L + std::pow(2.0L, -ss);
    switch (which) {
    case EulerSeries::LambdaAlpha:
        closed_form = [](const Factorization& n) { return closed_lambda_alpha(n); };
        poly += std::pow(12.0L, -ss);
        break;
    case EulerSeries::MuAlpha:
        closed_form = [](const Factorization& n) { return closed_mu_alpha(n); };
        break;
    case EulerSeries::MuAlpha2:
        closed_form = [](const Factorization& n) { return closed_mu_alpha2(n); };
        poly += std::pow(3.0L, -ss);
        break;
    case EulerSeries::MuAlpha3:
        closed_form = [](const Factorization& n) { return closed_mu_alpha3(n); };
        poly += std::pow(3.0L, -ss) + std::pow(4.0L, -ss);
        break;
    }

    long double series = 0.0L;
    for (std::uint64_t n = N; n >= 1; --n) {
        const long v = closed_form(factorize(big_from_u64(n))).get_si();
        if (v != 0) {
            series += static_cast<long double>(v) * std::pow(static_cast<long double>(n), -ss);
        }
    }
    const ZetaPartial zeta = zeta_partial(s, N);
    const double tail_series = 3.0 * zeta.tail_bound;

    EulerProductNumbers out;
    out.zeta_partial = zeta.value;
    out.series_partial = static_cast<double>(series);
    out.polynomial = static_cast<double>(poly);
    out.residual = static_cast<double>(std::abs(static_cast<long double>(zeta.value) * series - poly));
    out.tolerance = std::abs(out.polynomial) * zeta.tail_bound + (zeta.value + zeta.tail_bound) * tail_series;
    return out;
}

VerificationReport euler_product_check(EulerSeries which, double s, std::uint64_t N)
{
    const auto nums = euler_product_numbers(which, s, N);
    VerificationReport report;
    report.check_name = "euler-product";
    report.parameters = fmt::format("which={} s={} N={}", euler_series_name(which), fmt_real(s), N);
    report.record({"zeta_N * D_N", fmt_real(nums.polynomial),
                   fmt_real(nums.zeta_partial * nums.series_partial), nums.residual <= nums.tolerance});
    report.record({"tolerance", fmt_real(nums.tolerance), fmt_real(nums.residual), nums.residual <= nums.tolerance});
    report.residual = nums.residual;
    return report;
}

VerificationReport check_T_tables(unsigned depth, double x, FibContext& ctx, const ContractionOptions& options)
{
    if (depth < 1 || depth > 3) {
        throw std::invalid_argument("check_T_tables covers depth 1, 2 and 3");
    }
    const ArithFn f = contracted(fns::mu(), depth - 1, ctx, options);
    const BigInt T = summatory_T(f, x, ctx);
    const BigInt expected = std::min<std::uint64_t>(floor_index(x), depth + 1);

    VerificationReport report;
    report.check_name = "T-tables";
    report.parameters = fmt::format("depth={} x={}", depth, fmt_real(x));
    report.record({fmt::format("T_{{{},alpha}}({})", f.name(), fmt_real(x)), expected.get_str(), T.get_str(),
                   T == expected});
    report.residual = BigInt(abs(T - expected));
    return report;
}

}  // namespace fibdir
