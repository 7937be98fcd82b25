#include "fibdir/contraction.hpp"

#include "fibdir/fibonacci.hpp"

#include <cmath>
#include <memory>
#include <mutex>

namespace fibdir {
namespace {

std::uint64_t floor_index(double x)
{
    if (!(x >= 1.0)) {
        return 0;
    }
    return static_cast<std::uint64_t>(std::floor(x));
}

}  // namespace

std::vector<Factorization> rank_fiber(std::uint64_t n, FibContext& ctx)
{
    if (n == 0) {
        throw std::invalid_argument("rank_fiber requires n >= 1");
    }
    std::vector<BigInt> earlier;
    for (std::uint64_t q : prime_divisors(n)) {
        earlier.push_back(fib(n / q));
    }
    std::vector<Factorization> out;
    for (auto& d : divisor_factorizations(ctx.fib_factorization(n))) {
        const bool new_at_n = std::ranges::none_of(earlier, [&](const BigInt& a) {
            return mpz_divisible_p(a.get_mpz_t(), d.value().get_mpz_t()) != 0;
        });
        if (new_at_n) {
            out.push_back(std::move(d));
        }
    }
    return out;
}

BigInt alpha_contract(const ArithFn& f, std::uint64_t n, FibContext& ctx)
{
    BigInt total = 0;
    for (const auto& d : rank_fiber(n, ctx)) {
        total += f.at(d);
    }
    return total;
}

bool iterated_fib_is_one(const BigInt& j, unsigned k)
{
    // a_v > v for v > 5, so once past 5 the orbit never returns to 1.
    BigInt v = j;
    for (unsigned i = 0; i < k; ++i) {
        if (v > 5) {
            return false;
        }
        v = fib(v.get_ui());
    }
    return v == 1;
}

std::optional<BigInt> iterated_fib(const BigInt& j, unsigned k, std::uint64_t bits_cap)
{
    BigInt v = j;
    for (unsigned i = 0; i < k; ++i) {
        auto idx = to_u64(v);
        // a_v has about 0.6943 v bits.
        if (!idx || static_cast<double>(*idx) * 0.6943 > static_cast<double>(bits_cap)) {
            return std::nullopt;
        }
        v = fib(*idx);
    }
    return v;
}

ArithFn contracted(const ArithFn& f, unsigned depth, FibContext& ctx, const ContractionOptions& options)
{
    if (depth == 0) {
        return f;
    }
    struct Memo {
        std::mutex mutex;
        std::map<BigInt, BigInt> values;
    };
    auto inner = std::make_shared<ArithFn>(contracted(f, depth - 1, ctx, options));
    auto memo = std::make_shared<Memo>();
    auto eval = [f, depth, inner, memo, options, ctx_ptr = &ctx](const Factorization& d) -> BigInt {
        {
            std::lock_guard lock(memo->mutex);
            if (auto it = memo->values.find(d.value()); it != memo->values.end()) {
                return it->second;
            }
        }
        BigInt value = 0;
        const auto small = to_u64(d.value());
        if (small && *small <= options.direct_index_limit) {
            value = alpha_contract(*inner, *small, *ctx_ptr);
        } else {
            for (const auto& j : divisor_factorizations(d)) {
                const int m = mobius(quotient(d, j));
                if (m == 0) {
                    continue;
                }
                BigInt unit_sum;
                if (f.divisor_sum_is_unit()) {
                    unit_sum = iterated_fib_is_one(j.value(), depth) ? 1 : 0;
                } else {
                    auto v = iterated_fib(j.value(), depth, options.tower_bits_cap);
                    if (!v) {
                        throw BudgetExceeded("contraction of " + f.name() + " needs a_{a_..(" + j.value().get_str() +
                                             ")} beyond the size cap");
                    }
                    if (f.has_divisor_sum()) {
                        unit_sum = f.divisor_sum(*v);
                    } else {
                        unit_sum = 0;
                        // At depth 1 the value is a_j itself, whose factorization is cached by index.
                        const auto jj = to_u64(j.value());
                        const Factorization vf =
                            depth == 1 && jj ? ctx_ptr->fib_factorization(*jj) : ctx_ptr->factor(*v);
                        for (const auto& e : divisor_factorizations(vf)) {
                            unit_sum += f.at(e);
                        }
                    }
                }
                value += m * unit_sum;
            }
        }
        std::lock_guard lock(memo->mutex);
        return memo->values.emplace(d.value(), std::move(value)).first->second;
    };
    return ArithFn(f.name() + "_alpha^" + std::to_string(depth), std::move(eval));
}

BigInt alpha_contract_iter(const ArithFn& f, unsigned depth, std::uint64_t n, FibContext& ctx,
                           const ContractionOptions& options)
{
    if (depth == 0) {
        throw std::invalid_argument("alpha_contract_iter requires depth >= 1");
    }
    return alpha_contract(contracted(f, depth - 1, ctx, options), n, ctx);
}

BigInt summatory_T(const ArithFn& f, double x, FibContext& ctx)
{
    BigInt total = 0;
    for (std::uint64_t n = 1; n <= floor_index(x); ++n) {
        for (const auto& d : divisor_factorizations(ctx.fib_factorization(n))) {
            total += f.at(d);
        }
    }
    return total;
}

ExactLog summatory_T_mangoldt(double x, FibContext& ctx)
{
    LogSum total;
    for (std::uint64_t n = 1; n <= floor_index(x); ++n) {
        for (const auto& d : divisor_factorizations(ctx.fib_factorization(n))) {
            if (auto p = mangoldt_base(d)) {
                total += LogSum::log_of(*p);
            }
        }
    }
    return total.to_exact_log();
}

BigInt summatory_S(const ArithFn& f, double x, FibContext& ctx)
{
    BigInt total = 0;
    for (std::uint64_t n = 1; n <= floor_index(x); ++n) {
        total += alpha_contract(f, n, ctx);
    }
    return total;
}

ExactLog summatory_S_mangoldt(double x) { return log_of_big(lcm_fib(x)); }

BigInt SummatoryTable::at_floor(std::uint64_t n) const
{
    if (n == 0) {
        return 0;
    }
    auto it = values.find(n);
    if (it == values.end()) {
        throw MissingTableEntry("summatory table for " + fn_name + " has no entry at " + std::to_string(n));
    }
    return it->second;
}

BigInt SummatoryTable::at(double x) const { return at_floor(floor_index(x)); }

SummatoryTable build_T_table(const ArithFn& f, std::uint64_t horizon, FibContext& ctx)
{
    SummatoryTable table{SummatoryTable::Kind::T, f.name(), {}};
    BigInt running = 0;
    for (std::uint64_t n = 1; n <= horizon; ++n) {
        for (const auto& d : divisor_factorizations(ctx.fib_factorization(n))) {
            running += f.at(d);
        }
        table.values.emplace(n, running);
    }
    return table;
}

SummatoryTable build_S_table(const ArithFn& f, std::uint64_t horizon, FibContext& ctx)
{
    SummatoryTable table{SummatoryTable::Kind::S, f.name(), {}};
    BigInt running = 0;
    for (std::uint64_t n = 1; n <= horizon; ++n) {
        running += alpha_contract(f, n, ctx);
        table.values.emplace(n, running);
    }
    return table;
}

BigInt invert_T_to_S(const SummatoryTable& T, double x)
{
    if (T.kind != SummatoryTable::Kind::T) {
        throw std::invalid_argument("invert_T_to_S needs a T table");
    }
    const std::uint64_t X = floor_index(x);
    const auto mu = mobius_table(X);
    BigInt total = 0;
    for (std::uint64_t n = 1; n <= X; ++n) {
        if (mu[n] != 0) {
            total += mu[n] * T.at_floor(X / n);
        }
    }
    return total;
}

BigInt accumulate_S_to_T(const SummatoryTable& S, double x)
{
    if (S.kind != SummatoryTable::Kind::S) {
        throw std::invalid_argument("accumulate_S_to_T needs an S table");
    }
    const std::uint64_t X = floor_index(x);
    BigInt total = 0;
    for (std::uint64_t n = 1; n <= X; ++n) {
        total += S.at_floor(X / n);
    }
    return total;
}

namespace {

// mu(n/k) for k | n, 0 otherwise; k is a small constant.
int mu_of_quotient(const Factorization& n, std::uint64_t k)
{
    if (mpz_divisible_ui_p(n.value().get_mpz_t(), k) == 0) {
        return 0;
    }
    return mobius(quotient(n, factorize(big_from_u64(k))));
}

unsigned residue(const Factorization& n, unsigned long m)
{
    return static_cast<unsigned>(mpz_fdiv_ui(n.value().get_mpz_t(), m));
}

}  // namespace

BigInt closed_mu_alpha(const Factorization& n)
{
    switch (residue(n, 4)) {
    case 0:
        return mu_of_quotient(n, 2);
    case 2:
        return 0;
    default:
        return mobius(n);
    }
}

BigInt closed_mu_alpha2(const Factorization& n)
{
    int extra = 0;
    switch (residue(n, 6)) {
    case 0:
        extra = mu_of_quotient(n, 2) + mu_of_quotient(n, 3);
        break;
    case 2:
    case 4:
        extra = mu_of_quotient(n, 2);
        break;
    case 3:
        extra = mu_of_quotient(n, 3);
        break;
    default:
        break;
    }
    return mobius(n) + extra;
}

BigInt closed_mu_alpha3(const Factorization& n)
{
    switch (residue(n, 12)) {
    case 0:
    case 4:
    case 8:
        return mu_of_quotient(n, 2) + mu_of_quotient(n, 4);
    case 2:
    case 10:
        return 0;
    case 3:
    case 9:
        return mobius(n) + mu_of_quotient(n, 3);
    case 6:
        return mu_of_quotient(n, 3);
    default:
        return mobius(n);
    }
}

BigInt closed_lambda_alpha(const Factorization& n)
{
    const unsigned r = residue(n, 12);
    if (r % 2 == 1) {
        return mobius(n);
    }
    if (r == 0) {
        return mu_of_quotient(n, 2) + mu_of_quotient(n, 12);
    }
    return mobius(n) + mu_of_quotient(n, 2);
}

BigInt closed_delta23(const Factorization& n) { return -mu_of_quotient(n, 4); }

BigInt closed_mu_alpha(std::uint64_t n) { return closed_mu_alpha(factorize(big_from_u64(n))); }
BigInt closed_mu_alpha2(std::uint64_t n) { return closed_mu_alpha2(factorize(big_from_u64(n))); }
BigInt closed_mu_alpha3(std::uint64_t n) { return closed_mu_alpha3(factorize(big_from_u64(n))); }
BigInt closed_lambda_alpha(std::uint64_t n) { return closed_lambda_alpha(factorize(big_from_u64(n))); }
BigInt closed_delta23(std::uint64_t n) { return closed_delta23(factorize(big_from_u64(n))); }

namespace closed {

ArithFn mu_alpha() { return ArithFn("mu_alpha[closed]", [](const Factorization& n) { return closed_mu_alpha(n); }); }
ArithFn mu_alpha2() { return ArithFn("mu_alpha2[closed]", [](const Factorization& n) { return closed_mu_alpha2(n); }); }
ArithFn mu_alpha3() { return ArithFn("mu_alpha3[closed]", [](const Factorization& n) { return closed_mu_alpha3(n); }); }
ArithFn lambda_alpha()
{
    return ArithFn("lambda_alpha[closed]", [](const Factorization& n) { return closed_lambda_alpha(n); });
}
ArithFn delta23() { return ArithFn("delta23[closed]", [](const Factorization& n) { return closed_delta23(n); }); }

std::optional<ArithFn> for_contraction(std::string_view fn_name, unsigned depth)
{
    if (fn_name == "mu") {
        switch (depth) {
        case 0:
            return std::nullopt;
        case 1:
            return mu_alpha();
        case 2:
            return mu_alpha2();
        default:
            return mu_alpha3();
        }
    }
    if (fn_name == "lambda" && depth == 1) {
        return lambda_alpha();
    }
    return std::nullopt;
}

}  // namespace closed

ContractionTable build_contraction_table(const ArithFn& f, unsigned depth, std::uint64_t horizon, FibContext& ctx,
                                         const ContractionOptions& options)
{
    ContractionTable table{f.name(), depth, {}, horizon};
    const ArithFn inner = depth == 0 ? f : contracted(f, depth - 1, ctx, options);
    std::optional<ArithFn> fixed_point;
    if (depth > 3 && f.divisor_sum_is_unit()) {
        fixed_point = contracted(f, 3, ctx, options);
    }
    for (std::uint64_t n = 1; n <= horizon; ++n) {
        const Factorization nf = factorize(big_from_u64(n));
        BigInt v = depth == 0 ? f.at(nf) : alpha_contract(inner, n, ctx);
        if (fixed_point && fixed_point->at(nf) != v) {
            throw InternalError("contraction beyond depth 3 left the fixed point at n = " + std::to_string(n));
        }
        table.values.emplace(n, std::move(v));
    }
    return table;
}

}  // namespace fibdir
