#include "fibdir/arith.hpp"

#include <cmath>
#include <stdexcept>

namespace fibdir {

int mobius(const Factorization& n)
{
    if (!n.squarefree()) {
        return 0;
    }
    return n.factors().size() % 2 == 0 ? 1 : -1;
}

int liouville(const Factorization& n) { return n.big_omega() % 2 == 0 ? 1 : -1; }

BigInt euler_phi(const Factorization& n)
{
    BigInt out = 1;
    for (const auto& pp : n.factors()) {
        out *= pow_ui(pp.prime, pp.exponent - 1) * (pp.prime - 1);
    }
    return out;
}

BigInt divisor_count(const Factorization& n) { return n.divisor_count(); }

int mobius(const BigInt& n, const FactorOptions& options) { return mobius(factorize(n, options)); }
int liouville(const BigInt& n, const FactorOptions& options) { return liouville(factorize(n, options)); }
BigInt euler_phi(const BigInt& n, const FactorOptions& options) { return euler_phi(factorize(n, options)); }
BigInt divisor_count(const BigInt& n, const FactorOptions& options) { return factorize(n, options).divisor_count(); }

std::optional<BigInt> mangoldt_base(const Factorization& n)
{
    if (n.factors().size() != 1) {
        return std::nullopt;
    }
    return n.factors().front().prime;
}

std::optional<BigInt> mangoldt_base(const BigInt& n, const FactorOptions& options)
{
    return mangoldt_base(factorize(n, options));
}

std::vector<int> mobius_table(std::uint64_t limit)
{
    std::vector<int> mu(limit + 1, 0);
    if (limit == 0) {
        return mu;
    }
    std::vector<std::uint64_t> primes;
    std::vector<bool> composite(limit + 1, false);
    mu[1] = 1;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (std::uint64_t p : primes) {
            const std::uint64_t ip = i * p;
            if (ip > limit) {
                break;
            }
            composite[ip] = true;
            if (i % p == 0) {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    return mu;
}

std::int64_t mertens_floor(std::uint64_t n)
{
    std::int64_t total = 0;
    for (int v : mobius_table(n)) {
        total += v;
    }
    return total;
}

std::int64_t mertens(double x)
{
    if (!(x >= 1.0)) {
        return 0;
    }
    return mertens_floor(static_cast<std::uint64_t>(std::floor(x)));
}

BigInt dirichlet_convolve(const ArithFn& f, const ArithFn& g, const Factorization& n)
{
    BigInt total = 0;
    for (const auto& d : divisor_factorizations(n)) {
        total += f.at(d) * g.at(quotient(n, d));
    }
    return total;
}

BigInt dirichlet_convolve(const ArithFn& f, const ArithFn& g, const BigInt& n, const FactorOptions& options)
{
    return dirichlet_convolve(f, g, factorize(n, options));
}

double zeta_tail_bound(double s, std::uint64_t N)
{
    return std::pow(static_cast<double>(N), 1.0 - s) / (s - 1.0);
}

ZetaPartial zeta_partial(double s, std::uint64_t N)
{
    if (!(s > 1.0) || N == 0) {
        throw std::invalid_argument("zeta_partial requires s > 1 and N >= 1");
    }
    long double sum = 0.0L;
    for (std::uint64_t n = N; n >= 1; --n) {
        sum += std::pow(static_cast<long double>(n), -static_cast<long double>(s));
    }
    return {static_cast<double>(sum), zeta_tail_bound(s, N)};
}

namespace fns {

ArithFn mu()
{
    ArithFn f("mu", [](const Factorization& n) { return BigInt(mobius(n)); },
              [](const BigInt& v) { return BigInt(v == 1 ? 1 : 0); });
    f.mark_unit_divisor_sum();
    return f;
}

ArithFn liouville()
{
    return ArithFn("lambda", [](const Factorization& n) { return BigInt(fibdir::liouville(n)); },
                   [](const BigInt& v) { return BigInt(mpz_perfect_square_p(v.get_mpz_t()) != 0 ? 1 : 0); });
}

ArithFn phi()
{
    return ArithFn("phi", [](const Factorization& n) { return euler_phi(n); }, [](const BigInt& v) { return v; });
}

ArithFn one()
{
    return ArithFn("one", [](const Factorization&) { return BigInt(1); });
}

ArithFn divisor_count()
{
    return ArithFn("divisor_count", [](const Factorization& n) { return n.divisor_count(); });
}

ArithFn identity()
{
    return ArithFn("identity", [](const Factorization& n) { return n.value(); });
}

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

ArithFn random_small(std::uint64_t seed, int lo, int hi)
{
    if (hi < lo) {
        throw std::invalid_argument("random_small: empty value range");
    }
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return ArithFn("random(" + std::to_string(seed) + ")", [seed, lo, span](const Factorization& n) {
        std::uint64_t h = splitmix64(seed);
        // Fold the full value in 60-bit limbs so arbitrarily large arguments hash deterministically.
        BigInt rest = n.value();
        do {
            h = splitmix64(h ^ mpz_fdiv_ui(rest.get_mpz_t(), 1ULL << 60));
            mpz_fdiv_q_2exp(rest.get_mpz_t(), rest.get_mpz_t(), 60);
        } while (rest > 0);
        return BigInt(lo + static_cast<long>(h % span));
    });
}

std::optional<ArithFn> by_name(std::string_view name)
{
    if (name == "mu") {
        return mu();
    }
    if (name == "lambda") {
        return liouville();
    }
    if (name == "phi") {
        return phi();
    }
    if (name == "one") {
        return one();
    }
    if (name == "divisor_count") {
        return divisor_count();
    }
    if (name == "identity") {
        return identity();
    }
    return std::nullopt;
}

}  // namespace fns

}  // namespace fibdir
