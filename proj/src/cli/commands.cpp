#include "fibdir/cli/commands.hpp"

#include "fibdir/cli/cache_file.hpp"
#include "fibdir/contraction.hpp"
#include "fibdir/fibonacci.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace fibdir::cli {
namespace {

using Suite = std::vector<VerificationReport> (*)(const SuiteParams&, FibContext&);

std::string big(const BigInt& v) { return v.get_str(); }

Outcome compare(std::string index, const BigInt& expected, const BigInt& actual)
{
    return {std::move(index), big(expected), big(actual), expected == actual};
}

VerificationReport exact_report(std::string name, std::string parameters)
{
    VerificationReport r;
    r.check_name = std::move(name);
    r.parameters = std::move(parameters);
    r.residual = BigInt(0);
    return r;
}

// Folds several reports of one check into a single report; residuals add
// for exact checks and take the maximum for real ones.
VerificationReport merge(std::string name, std::string parameters, const std::vector<VerificationReport>& parts)
{
    VerificationReport out;
    out.check_name = std::move(name);
    out.parameters = std::move(parameters);
    bool real = false;
    BigInt exact = 0;
    double worst = 0.0;
    for (const auto& part : parts) {
        if (const auto* b = std::get_if<BigInt>(&part.residual)) {
            exact += abs(*b);
        } else {
            real = true;
            worst = std::max(worst, std::get<double>(part.residual));
        }
        for (const auto& d : part.details) {
            out.record({part.parameters + " " + d.index, d.expected, d.actual, d.ok});
        }
        out.passed = out.passed && part.passed;
    }
    if (real) {
        out.residual = worst;
    } else {
        out.residual = exact;
    }
    return out;
}

std::vector<VerificationReport> suite_theorem1(const SuiteParams& p, FibContext& ctx)
{
    const double x = p.x.value_or(25);
    std::vector<VerificationReport> out;
    const auto one = fns::one();
    out.push_back(check_theorem1(fns::mu(), one, x, ctx));
    out.push_back(check_theorem1(fns::phi(), one, x, ctx));
    out.push_back(check_theorem1(fns::liouville(), one, x, ctx));
    out.push_back(check_theorem1_mangoldt(one, x, ctx));
    for (std::uint64_t i = 0; i < 20; ++i) {
        out.push_back(check_theorem1(fns::random_small(2 * i + 1), fns::random_small(2 * i + 2), x, ctx));
    }
    return out;
}

std::vector<VerificationReport> suite_corollary(const SuiteParams& p, FibContext& ctx)
{
    const std::uint64_t n = p.n.value_or(20);
    std::vector<VerificationReport> out;
    out.push_back(check_corollary_completely_mult(fns::mu(), fns::one(), n, ctx));
    out.push_back(check_corollary_completely_mult(fns::phi(), fns::one(), n, ctx));
    out.push_back(check_corollary_completely_mult(fns::mu(), fns::identity(), n, ctx));
    out.push_back(check_corollary_completely_mult(fns::phi(), fns::liouville(), n, ctx));
    out.push_back(check_corollary_completely_mult(fns::random_small(7), fns::liouville(), n, ctx));
    return out;
}

std::vector<VerificationReport> suite_logprod(const SuiteParams& p, FibContext& ctx)
{
    const auto x_max = static_cast<std::uint64_t>(p.x.value_or(40));
    constexpr double tol = 1e-8;
    VerificationReport r;
    r.check_name = "logprod";
    r.parameters = fmt::format("x<={} tol={}", x_max, tol);
    double worst = 0.0;
    for (std::uint64_t x = 1; x <= x_max; ++x) {
        const auto cmp = logprod_closed_form(static_cast<double>(x));
        worst = std::max(worst, cmp.residual);
        r.record({fmt::format("x={}", x), fmt::format("{:.12g}", cmp.rhs), fmt::format("{:.12g}", cmp.lhs.log_value),
                  cmp.residual <= tol});
        // The exact product also equals T for von Mangoldt.
        const auto t = summatory_T_mangoldt(static_cast<double>(x), ctx);
        r.record({fmt::format("T_Lambda x={}", x), big(cmp.lhs.integer_value), big(t.integer_value),
                  t.integer_value == cmp.lhs.integer_value});
    }
    r.residual = worst;
    return {r};
}

std::vector<VerificationReport> suite_constant_c(const SuiteParams& p, FibContext&)
{
    const std::uint64_t n = p.n.value_or(50);
    VerificationReport r;
    r.check_name = "constant-c";
    r.parameters = fmt::format("N={}", n);
    const double c = constant_c(n);
    if (n == 50) {
        const double residual = std::abs(c - 0.2043618834);
        r.residual = residual;
        r.record({"c(50)", "0.2043618834", fmt::format("{:.12g}", c), residual <= 1e-9});
    } else {
        r.residual = 0.0;
        r.record({fmt::format("c({})", n), "finite", fmt::format("{:.12g}", c), std::isfinite(c)});
    }
    const double log_r = constants().log_r;
    for (std::uint64_t k = 1; k <= std::max<std::uint64_t>(n, 60); ++k) {
        const double step = std::abs(constant_c(k + 1) - constant_c(k));
        // Below double precision the differences are pure rounding.
        const double bound = std::exp(-2.0 * static_cast<double>(k) * log_r) + 8 * DBL_EPSILON;
        r.record({fmt::format("|c({})-c({})|", k + 1, k), fmt::format("<= {:.6g}", bound), fmt::format("{:.6g}", step),
                  step <= bound});
    }
    return {r};
}

std::vector<VerificationReport> suite_mangoldt(const SuiteParams& p, FibContext&)
{
    const auto hi = static_cast<std::uint64_t>(p.x.value_or(200));
    const std::uint64_t lo = std::max<std::uint64_t>(hi / 4, 1);
    const auto samples = asymptotic_mangoldt_report({lo, hi});
    VerificationReport r;
    r.check_name = "mangoldt-asymptotic";
    r.parameters = fmt::format("x={},{}", lo, hi);
    const double ratio = samples[1].ratio;
    r.residual = std::abs(ratio - 1.0);
    r.record({fmt::format("ratio x={}", hi), "[0.9,1.1]", fmt::format("{:.8g}", ratio), ratio >= 0.9 && ratio <= 1.1});
    r.record({"closer at larger x", fmt::format("|{:.6g}-1|", samples[0].ratio), fmt::format("|{:.6g}-1|", ratio),
              std::abs(ratio - 1.0) < std::abs(samples[0].ratio - 1.0)});
    return {r};
}

std::vector<VerificationReport> suite_ep_sum(const SuiteParams& p, FibContext& ctx)
{
    const auto x_max = static_cast<std::uint64_t>(p.x.value_or(60));
    VerificationReport r;
    r.check_name = "ep-sum";
    r.parameters = fmt::format("x<={}", x_max);
    for (std::uint64_t x = 1; x <= x_max; ++x) {
        const auto ep = ep_weighted_sum(x, ctx);
        const BigInt l = lcm_fib_upto(x);
        r.record({fmt::format("prod | lcm x={}", x), "divides", big(ep.product),
                  mpz_divisible_p(l.get_mpz_t(), ep.product.get_mpz_t()) != 0});
        const double lcm_log = log_of_big(l).log_value;
        r.record({fmt::format("log prod <= log lcm x={}", x), fmt::format("<= {:.12g}", lcm_log),
                  fmt::format("{:.12g}", ep.value.log_value), ep.value.log_value <= lcm_log * (1 + 1e-12)});
    }
    const auto sample = ep_weighted_sum(x_max, ctx).sample;
    r.residual = std::abs(sample.ratio - 1.0);
    r.record({fmt::format("ratio x={}", x_max), "[0.8,1.2]", fmt::format("{:.8g}", sample.ratio),
              sample.ratio >= 0.8 && sample.ratio <= 1.2});
    return {r};
}

std::vector<VerificationReport> suite_pi_alpha(const SuiteParams& p, FibContext& ctx)
{
    const auto x_max = static_cast<std::uint64_t>(p.x.value_or(60));
    auto r = exact_report("pi-alpha", fmt::format("x<={}", x_max));
    r.record(compare("pi_alpha(5)", 3, pi_alpha(5, ctx)));
    r.record(compare("pi_alpha(12)", 8, pi_alpha(12, ctx)));
    std::uint64_t prev = 0;
    std::uint64_t omega_sum = 0;
    for (std::uint64_t x = 1; x <= x_max; ++x) {
        const auto cur = pi_alpha(x, ctx);
        omega_sum += ctx.fib_factorization(x).big_omega();
        r.record({fmt::format("monotone x={}", x), fmt::format(">= {}", prev), std::to_string(cur), cur >= prev});
        r.record({fmt::format("omega bound x={}", x), fmt::format("<= {}", omega_sum), std::to_string(cur),
                  cur <= omega_sum});
        prev = cur;
    }
    // The limsup bound is reported, never asserted.
    for (const auto& row : pi_alpha_bound_report({10, 20, 40, x_max}, ctx)) {
        r.record({fmt::format("bound x={}", row.x), fmt::format("{:.12g}", row.bound),
                  fmt::format("{:.12g}", row.scaled), true});
    }
    return {r};
}

std::vector<VerificationReport> suite_phi_identity(const SuiteParams& p, FibContext& ctx)
{
    const auto x_max = static_cast<std::uint64_t>(p.x.value_or(30));
    std::vector<VerificationReport> parts;
    for (std::uint64_t x = 1; x <= x_max; ++x) {
        parts.push_back(check_phi_identity(static_cast<double>(x), ctx));
    }
    return {merge("phi-identity", fmt::format("x<={}", x_max), parts)};
}

std::vector<VerificationReport> suite_phi_recursive(const SuiteParams& p, FibContext& ctx)
{
    const std::uint64_t n = p.n.value_or(25);
    auto r = exact_report("phi-recursive", fmt::format("x_max={}", n));
    const auto seq = phi_recursive_fib(n, ctx);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        r.record(compare(fmt::format("a_{}", i + 1), fib(i + 1), seq[i]));
    }
    r.record({"length", std::to_string(n + 2), std::to_string(seq.size()), seq.size() == n + 2});
    return {r};
}

std::vector<VerificationReport> suite_euler(const SuiteParams& p, FibContext&)
{
    std::vector<EulerSeries> which;
    if (p.which) {
        auto w = euler_series_from_name(*p.which);
        if (!w) {
            throw std::invalid_argument("unknown series '" + *p.which + "' (lambda, mu, mu2, mu3)");
        }
        which.push_back(*w);
    } else {
        which = {EulerSeries::LambdaAlpha, EulerSeries::MuAlpha, EulerSeries::MuAlpha2, EulerSeries::MuAlpha3};
    }
    std::vector<double> ss = p.s ? std::vector<double>{*p.s} : std::vector<double>{2.0, 3.0};
    const std::uint64_t n = p.n.value_or(10000);
    std::vector<VerificationReport> out;
    for (auto w : which) {
        for (double s : ss) {
            out.push_back(euler_product_check(w, s, n));
        }
    }
    return out;
}

std::vector<VerificationReport> suite_T_tables(const SuiteParams& p, FibContext& ctx)
{
    std::vector<unsigned> depths = p.depth ? std::vector<unsigned>{*p.depth} : std::vector<unsigned>{1, 2, 3};
    std::vector<double> xs = p.x ? std::vector<double>{*p.x} : std::vector<double>{0.5, 1, 1.9, 2, 3, 4, 10, 24};
    std::vector<VerificationReport> out;
    for (unsigned d : depths) {
        std::vector<VerificationReport> parts;
        for (double x : xs) {
            parts.push_back(check_T_tables(d, x, ctx));
        }
        out.push_back(merge("T-tables", fmt::format("depth={}", d), parts));
    }
    return out;
}

std::vector<VerificationReport> suite_closed_forms(const SuiteParams& p, FibContext& ctx)
{
    const std::uint64_t n_max = p.n.value_or(40);
    std::vector<VerificationReport> out;

    auto mu1 = exact_report("closed-forms", fmt::format("mu_alpha n<={}", std::max<std::uint64_t>(n_max, 50)));
    for (std::uint64_t n = 1; n <= std::max<std::uint64_t>(n_max, 50); ++n) {
        mu1.record(compare(fmt::format("n={}", n), closed_mu_alpha(n), alpha_contract(fns::mu(), n, ctx)));
    }
    out.push_back(std::move(mu1));

    auto mu2 = exact_report("closed-forms", fmt::format("mu_alpha^2 n<={}", n_max));
    auto mu3 = exact_report("closed-forms", fmt::format("mu_alpha^3 n<={}", n_max));
    auto fixed = exact_report("closed-forms", fmt::format("fixed point n<={}", n_max));
    auto kernel = exact_report("closed-forms", fmt::format("delta23 kernel n<={}", n_max));
    auto lam = exact_report("closed-forms", fmt::format("lambda_alpha n<={}", n_max));
    const auto mu_a1 = contracted(fns::mu(), 1, ctx);
    const auto mu_a2 = contracted(fns::mu(), 2, ctx);
    const auto c3 = closed::mu_alpha3();
    const auto d23 = closed::delta23();
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const auto idx = fmt::format("n={}", n);
        mu2.record(compare(idx, closed_mu_alpha2(n), alpha_contract(mu_a1, n, ctx)));
        mu3.record(compare(idx, closed_mu_alpha3(n), alpha_contract(mu_a2, n, ctx)));
        fixed.record(compare(idx, closed_mu_alpha3(n), alpha_contract(c3, n, ctx)));
        kernel.record(compare(idx, 0, alpha_contract(d23, n, ctx)));
        kernel.record(compare("mu2-mu3 " + idx, closed_mu_alpha2(n) - closed_mu_alpha3(n), closed_delta23(n)));
        lam.record(compare(idx, closed_lambda_alpha(n), alpha_contract(fns::liouville(), n, ctx)));
    }
    lam.record(compare("lambda_alpha(12)", 2, closed_lambda_alpha(12)));
    lam.record({"lambda_alpha(12) vs lambda_alpha(4)*lambda_alpha(3)", "differ",
                big(closed_lambda_alpha(4) * closed_lambda_alpha(3)),
                closed_lambda_alpha(12) != closed_lambda_alpha(4) * closed_lambda_alpha(3)});
    out.push_back(std::move(mu2));
    out.push_back(std::move(mu3));
    out.push_back(std::move(fixed));
    out.push_back(std::move(kernel));
    out.push_back(std::move(lam));

    // mu_alpha is multiplicative; the deeper closed forms are not.
    auto mult = exact_report("closed-forms", "mu_alpha multiplicative m,n<=60");
    for (std::uint64_t m = 1; m <= 60; ++m) {
        for (std::uint64_t n = 1; n <= 60; ++n) {
            if (std::gcd(m, n) == 1) {
                mult.record(compare(fmt::format("m={} n={}", m, n), closed_mu_alpha(m) * closed_mu_alpha(n),
                                    closed_mu_alpha(m * n)));
            }
        }
    }
    mult.record({"mu_alpha^2(2)*mu_alpha^2(3) vs mu_alpha^2(6)", big(closed_mu_alpha2(6)),
                 big(closed_mu_alpha2(2) * closed_mu_alpha2(3)),
                 closed_mu_alpha2(6) != closed_mu_alpha2(2) * closed_mu_alpha2(3)});
    mult.record({"mu_alpha^3(2)*mu_alpha^3(3) vs mu_alpha^3(6)", big(closed_mu_alpha3(6)),
                 big(closed_mu_alpha3(2) * closed_mu_alpha3(3)),
                 closed_mu_alpha3(6) != closed_mu_alpha3(2) * closed_mu_alpha3(3)});
    out.push_back(std::move(mult));

    // Mobius inversion between T and S, and S for mu against Mertens.
    auto inv = exact_report("closed-forms", "T<->S inversion x<=30");
    for (const auto& f : {fns::mu(), fns::phi(), fns::liouville()}) {
        const auto T = build_T_table(f, 30, ctx);
        const auto S = build_S_table(f, 30, ctx);
        for (std::uint64_t x = 1; x <= 30; ++x) {
            const auto xd = static_cast<double>(x);
            inv.record(compare(fmt::format("{} S x={}", f.name(), x), S.at_floor(x), invert_T_to_S(T, xd)));
            inv.record(compare(fmt::format("{} T x={}", f.name(), x), T.at_floor(x), accumulate_S_to_T(S, xd)));
        }
    }
    for (std::uint64_t x = 1; x <= 50; ++x) {
        const auto xd = static_cast<double>(x);
        inv.record(compare(fmt::format("S_mu x={}", x), mertens(xd) + mertens(xd / 2), summatory_S(fns::mu(), xd, ctx)));
    }
    out.push_back(std::move(inv));
    return out;
}

std::vector<VerificationReport> suite_lemma(const SuiteParams& p, FibContext& ctx)
{
    auto rpp = exact_report("lemma", "rank_prime_power odd p<=50 k<=3, p=2 k<=12");
    for (std::uint64_t q = 3; q <= 50; q += 2) {
        if (!is_prime(BigInt(static_cast<unsigned long>(q)))) {
            continue;
        }
        std::uint64_t pk = 1;
        for (unsigned k = 1; k <= 3; ++k) {
            pk *= q;
            rpp.record(compare(fmt::format("{}^{}", q, k), rank_prime_power(q, k), ctx.rank(pk)));
        }
    }
    for (unsigned k = 1; k <= 12; ++k) {
        rpp.record(compare(fmt::format("2^{}", k), rank_prime_power(2, k), ctx.rank(std::uint64_t{1} << k)));
    }
    const std::uint64_t n_max = p.n.value_or(500);
    const auto m_max = static_cast<std::uint64_t>(p.x.value_or(200));
    auto dual = exact_report("lemma", fmt::format("duality n<={} m<={}", n_max, m_max));
    std::uint64_t disagreements = 0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const auto a = ctx.rank(n);
        for (std::uint64_t m = 1; m <= m_max; ++m) {
            if (divides_fib(n, m) != (m % a == 0)) {
                ++disagreements;
                dual.record({fmt::format("n={} m={}", n, m), m % a == 0 ? "divides" : "no", "mismatch", false});
            }
        }
    }
    dual.record({"pairs checked", "0 mismatches", std::to_string(disagreements), disagreements == 0});
    dual.residual = BigInt(static_cast<unsigned long>(disagreements));
    return {rpp, dual};
}

const std::vector<std::pair<std::string, Suite>>& suite_table()
{
    static const std::vector<std::pair<std::string, Suite>> table = {
        {"theorem1", suite_theorem1},
        {"corollary", suite_corollary},
        {"logprod", suite_logprod},
        {"constant-c", suite_constant_c},
        {"mangoldt-asymptotic", suite_mangoldt},
        {"ep-sum", suite_ep_sum},
        {"pi-alpha", suite_pi_alpha},
        {"phi-identity", suite_phi_identity},
        {"phi-recursive", suite_phi_recursive},
        {"euler-product", suite_euler},
        {"T-tables", suite_T_tables},
        {"closed-forms", suite_closed_forms},
        {"lemma", suite_lemma},
    };
    return table;
}

Cell value_cell(const BigInt& v)
{
    if (v.fits_slong_p()) {
        return static_cast<std::int64_t>(v.get_si());
    }
    return v;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text)
{
    std::vector<std::uint64_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) {
            continue;
        }
        std::size_t used = 0;
        const auto v = std::stoull(item, &used);
        if (used != item.size()) {
            throw std::invalid_argument("bad list element '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw std::invalid_argument("empty list");
    }
    return out;
}

}  // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : suite_table()) {
            v.push_back(name);
        }
        return v;
    }();
    return names;
}

std::vector<VerificationReport> run_suite(const std::string& name, const SuiteParams& params, FibContext& ctx)
{
    for (const auto& [suite, fn] : suite_table()) {
        if (suite == name) {
            return fn(params, ctx);
        }
    }
    throw std::invalid_argument("unknown check '" + name + "'");
}

ContractRows contract_table(const std::string& fn_name, unsigned depth, std::uint64_t n_max, FibContext& ctx)
{
    static const std::vector<std::string> allowed = {"mu", "lambda", "phi", "one", "divisor_count"};
    if (std::ranges::find(allowed, fn_name) == allowed.end()) {
        throw std::invalid_argument("unknown function '" + fn_name + "' (mu, lambda, phi, one, divisor_count)");
    }
    if (depth == 0) {
        throw std::invalid_argument("depth must be at least 1");
    }
    const ArithFn f = *fns::by_name(fn_name);
    const ArithFn inner = contracted(f, depth - 1, ctx);
    const auto closed = closed::for_contraction(fn_name, depth);

    ContractRows out;
    out.table.name = fmt::format("contract {} depth {}", fn_name, depth);
    out.table.columns = {"n", "direct", "closed", "match"};
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        Cell direct_cell = std::string("budget-exceeded");
        std::optional<BigInt> direct;
        try {
            direct = alpha_contract(inner, n, ctx);
            direct_cell = value_cell(*direct);
        } catch (const BudgetExceeded&) {
            out.budget_hit = true;
        }
        Cell closed_cell = std::string();
        Cell match_cell = std::string();
        if (closed) {
            const BigInt c = closed->at(factorize(BigInt(static_cast<unsigned long>(n))));
            closed_cell = value_cell(c);
            if (direct) {
                match_cell = *direct == c;
                out.all_match = out.all_match && *direct == c;
            }
        }
        out.table.rows.push_back({n, direct_cell, closed_cell, match_cell});
    }
    return out;
}

Table asymptotics_table(const std::vector<std::uint64_t>& xs, std::uint64_t ep_max, FibContext& ctx, bool* budget_hit)
{
    Table t;
    t.name = "asymptotics";
    t.columns = {"x",        "lambda_exact", "lambda_predicted", "lambda_ratio", "ep_exact",
                 "ep_ratio", "pi_alpha",     "pi_scaled",        "pi_bound",     "status"};
    auto sorted = xs;
    std::ranges::sort(sorted);
    const auto samples = asymptotic_mangoldt_report(sorted);
    const double bound = mangoldt_leading_constant() / 2.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto x = sorted[i];
        const auto& s = samples[i];
        std::vector<Cell> row = {x, s.exact, s.predicted, s.ratio};
        std::string status = "ok";
        if (x > ep_max) {
            row.insert(row.end(), {std::string(), std::string(), std::string(), std::string(), bound});
            status = "lambda-only";
        } else {
            try {
                const auto ep = ep_weighted_sum(x, ctx);
                const auto pi = pi_alpha_bound_report({x}, ctx).front();
                row.insert(row.end(), {ep.value.log_value, ep.sample.ratio, pi.count, pi.scaled, bound});
            } catch (const BudgetExceeded&) {
                row.insert(row.end(), {std::string(), std::string(), std::string(), std::string(), bound});
                status = "budget-exceeded";
                if (budget_hit) {
                    *budget_hit = true;
                }
            }
        }
        row.emplace_back(status);
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table verification_table(const std::vector<VerificationReport>& reports)
{
    Table t;
    t.name = "verification";
    t.columns = {"check", "parameters", "passed", "residual", "outcomes", "failures", "first_failure"};
    for (const auto& r : reports) {
        std::uint64_t failures = 0;
        std::string first;
        for (const auto& d : r.details) {
            if (!d.ok) {
                if (failures == 0) {
                    first = fmt::format("{}: expected {} got {}", d.index, d.expected, d.actual);
                }
                ++failures;
            }
        }
        t.rows.push_back({r.check_name, r.parameters, r.passed, r.residual_string(),
                          static_cast<std::uint64_t>(r.details.size()), failures, first});
    }
    return t;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env)
{
    CLI::App app{"Fibonacci rank of apparition, alpha-contractions and identity checks.\n"
                 "Cache path precedence: --cache, then $" +
                 std::string(kCacheEnvVar) + ", then the config file."};
    app.name("fibdir");
    app.require_subcommand(1);
    app.fallthrough();

    std::string format_name;
    std::string out_path;
    std::string cache_path;
    std::uint64_t budget = 0;
    int precision = 0;
    std::string config_path;
    app.add_option("--format", format_name, "Output format: csv or json");
    app.add_option("--out", out_path, "Write the report to this file instead of stdout");
    app.add_option("--cache", cache_path, "Factorization/rank cache file");
    app.add_option("--budget", budget, "Factorization work budget")->check(CLI::PositiveNumber);
    app.add_option("--precision", precision, "Significant digits for reals")->check(CLI::Range(1, 40));
    app.add_option("--config", config_path, "JSON config file");

    std::uint64_t index = 0;
    auto* cmd_fib = app.add_subcommand("fib", "Print a_n");
    cmd_fib->add_option("n", index)->required();
    auto* cmd_alpha = app.add_subcommand("alpha", "Print the rank of apparition of n");
    cmd_alpha->add_option("n", index)->required()->check(CLI::PositiveNumber);
    auto* cmd_entry = app.add_subcommand("entry-exponent", "Print the entry exponent e_n (n >= 2)");
    cmd_entry->add_option("n", index)->required()->check(CLI::Range(std::uint64_t{2}, ~std::uint64_t{0}));

    std::string fn_name;
    unsigned depth = 1;
    std::optional<std::uint64_t> n_max;
    auto* cmd_contract = app.add_subcommand("contract", "Tabulate the depth-fold alpha-contraction of fn");
    cmd_contract->add_option("fn", fn_name, "mu, lambda, phi, one or divisor_count")->required();
    cmd_contract->add_option("depth,--depth", depth)->check(CLI::PositiveNumber);
    cmd_contract->add_option("n_max,--n-max", n_max);

    std::string suite = "all";
    SuiteParams params;
    auto* cmd_verify = app.add_subcommand("verify", "Run identity checks (all, or one named check)");
    std::string check_list = "all";
    for (const auto& name : suite_names()) {
        check_list += ", " + name;
    }
    cmd_verify->add_option("check", suite, check_list)->required();
    cmd_verify->add_option("--x", params.x, "Scale x (range limit for checks that loop over x)");
    cmd_verify->add_option("--n", params.n, "Index or term count (N)");
    cmd_verify->add_option("--s", params.s, "Dirichlet exponent for euler-product");
    cmd_verify->add_option("--depth", params.depth, "Contraction depth for T-tables");
    cmd_verify->add_option("--which", params.which, "Series for euler-product: lambda, mu, mu2, mu3");

    std::string x_list;
    auto* cmd_asym = app.add_subcommand("report-asymptotics", "Lambda-sum, e_p-sum and pi_alpha samples");
    cmd_asym->add_option("--x", x_list, "Comma-separated x values");

    std::string which = "lambda";
    double s = 2.0;
    std::uint64_t terms = 10000;
    auto* cmd_series = app.add_subcommand("series", "Truncated Euler product of a closed-form series");
    cmd_series->add_option("--which", which, "lambda, mu, mu2 or mu3");
    cmd_series->add_option("--s", s);
    cmd_series->add_option("--n", terms)->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    Config cfg;
    try {
        ConfigOverrides ov;
        if (!cache_path.empty()) {
            ov.cache_path = cache_path;
        }
        if (budget != 0) {
            ov.factor_budget = budget;
        }
        if (precision != 0) {
            ov.precision = precision;
        }
        if (!format_name.empty()) {
            ov.output_format = parse_format(format_name);
            if (!ov.output_format) {
                err << "error: unknown format '" << format_name << "' (csv, json)\n";
                return kUsage;
            }
        }
        std::optional<std::filesystem::path> cfg_file;
        if (!config_path.empty()) {
            cfg_file = config_path;
        }
        cfg = resolve_config(ov, env, cfg_file);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    FactorOptions fopts;
    fopts.work_budget = cfg.factor_budget;
    FibContext ctx(fopts);
    if (!cfg.cache_path.empty() && std::filesystem::exists(cfg.cache_path)) {
        try {
            ctx.load(read_cache(cfg.cache_path));
        } catch (const std::exception& e) {
            err << "error: " << cfg.cache_path.string() << ": " << e.what() << "\n";
            return kUsage;
        }
    }

    auto emit_table = [&](const Table& t) -> bool {
        const std::string text = emit(t, cfg.output_format, cfg.precision);
        if (out_path.empty()) {
            out << text;
            return true;
        }
        std::ofstream file(out_path, std::ios::binary);
        file << text;
        if (!file) {
            err << "error: cannot write " << out_path << "\n";
            return false;
        }
        return true;
    };

    int code = kOk;
    try {
        if (*cmd_fib) {
            out << fib(index).get_str() << "\n";
        } else if (*cmd_alpha) {
            out << ctx.rank(index) << "\n";
        } else if (*cmd_entry) {
            out << ctx.entry_exponent(index) << "\n";
        } else if (*cmd_contract) {
            auto rows = contract_table(fn_name, depth, n_max.value_or(cfg.default_n_max), ctx);
            if (!emit_table(rows.table)) {
                return kUsage;
            }
            if (rows.budget_hit) {
                err << "budget exhausted on some rows (marked budget-exceeded)\n";
                code = kBudget;
            } else if (!rows.all_match) {
                err << "direct and closed-form values differ\n";
                code = kCheckFailed;
            }
        } else if (*cmd_verify) {
            std::vector<std::string> names;
            if (suite == "all") {
                names = suite_names();
            } else {
                names = {suite};
            }
            std::vector<VerificationReport> reports;
            for (const auto& name : names) {
                auto part = run_suite(name, params, ctx);
                reports.insert(reports.end(), part.begin(), part.end());
            }
            if (!emit_table(verification_table(reports))) {
                return kUsage;
            }
            for (const auto& r : reports) {
                if (!r.passed) {
                    err << "FAILED: " << r.check_name << " (" << r.parameters << ")\n";
                    code = kCheckFailed;
                    break;
                }
            }
        } else if (*cmd_asym) {
            std::vector<std::uint64_t> xs;
            if (x_list.empty()) {
                xs = {1, 5, 10, 20, 50, 100, 200};
            } else {
                xs = parse_u64_list(x_list);
            }
            bool budget_hit = false;
            if (!emit_table(asymptotics_table(xs, cfg.ep_max, ctx, &budget_hit))) {
                return kUsage;
            }
            if (budget_hit) {
                code = kBudget;
            }
        } else if (*cmd_series) {
            auto w = euler_series_from_name(which);
            if (!w) {
                err << "error: unknown series '" << which << "' (lambda, mu, mu2, mu3)\n";
                return kUsage;
            }
            const auto nums = euler_product_numbers(*w, s, terms);
            Table t;
            t.name = "series";
            t.columns = {"series",   "s",        "N",        "zeta_partial", "series_partial",
                         "polynomial", "residual", "tolerance", "within"};
            t.rows.push_back({std::string(euler_series_name(*w)), s, terms, nums.zeta_partial, nums.series_partial,
                              nums.polynomial, nums.residual, nums.tolerance, nums.residual <= nums.tolerance});
            if (!emit_table(t)) {
                return kUsage;
            }
            if (nums.residual > nums.tolerance) {
                code = kCheckFailed;
            }
        }
    } catch (const BudgetExceeded& e) {
        err << "error: factorization budget exhausted: " << e.what() << "\n";
        code = kBudget;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    if (!cfg.cache_path.empty()) {
        try {
            write_cache(cfg.cache_path, ctx.records());
        } catch (const std::exception& e) {
            err << "warning: cache not saved: " << e.what() << "\n";
        }
    }
    return code;
}

}  // namespace fibdir::cli
