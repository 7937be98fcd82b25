#include "fibdir/factorization.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace fibdir {
namespace {

std::vector<std::uint32_t> primes_below(std::uint32_t bound)
{
    std::vector<bool> composite(bound, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i < bound; ++i) {
        if (composite[i]) {
            continue;
        }
        out.push_back(i);
        for (std::uint64_t j = std::uint64_t{i} * i; j < bound; j += i) {
            composite[j] = true;
        }
    }
    return out;
}

const std::vector<std::uint32_t>& trial_primes(std::uint32_t bound)
{
    static std::mutex mutex;
    static std::map<std::uint32_t, std::vector<std::uint32_t>> tables;
    std::lock_guard lock(mutex);
    auto it = tables.find(bound);
    if (it == tables.end()) {
        it = tables.emplace(bound, primes_below(bound)).first;
    }
    return it->second;
}

class Work {
public:
    explicit Work(std::uint64_t budget) : remaining_(budget) {}

    void spend(std::uint64_t units, const BigInt& n)
    {
        if (units > remaining_) {
            throw BudgetExceeded("factorization work budget exhausted while splitting " + n.get_str());
        }
        remaining_ -= units;
    }

private:
    std::uint64_t remaining_;
};

// Pollard-Brent with product batching. Returns a nontrivial factor, or n on failure.
BigInt brent_split(const BigInt& n, unsigned long c, Work& work)
{
    constexpr std::uint64_t kBatch = 128;
    auto step = [&](BigInt& v) {
        v = v * v + c;
        v %= n;
    };

    BigInt y = 2;
    BigInt x;
    BigInt ys;
    BigInt q = 1;
    BigInt g = 1;
    BigInt diff;
    std::uint64_t r = 1;
    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) {
            step(y);
        }
        work.spend(r, n);
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            const std::uint64_t m = std::min(kBatch, r - k);
            for (std::uint64_t i = 0; i < m; ++i) {
                step(y);
                diff = x - y;
                q = q * abs(diff) % n;
            }
            work.spend(m, n);
            g = gcd(q, n);
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            step(ys);
            diff = x - ys;
            g = gcd(abs(diff), n);
            work.spend(1, n);
        } while (g == 1);
    }
    return g;
}

// Returns (root, k) with root^k == n and k maximal, or (n, 1).
std::pair<BigInt, unsigned long> perfect_power(const BigInt& n)
{
    if (mpz_perfect_power_p(n.get_mpz_t()) == 0) {
        return {n, 1};
    }
    const auto bits = static_cast<unsigned long>(mpz_sizeinbase(n.get_mpz_t(), 2));
    for (unsigned long k = bits; k >= 2; --k) {
        BigInt root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
            return {root, k};
        }
    }
    return {n, 1};
}

void split_into(const BigInt& n, unsigned long multiplicity, const FactorOptions& options, Work& work,
                std::map<BigInt, unsigned>& out)
{
    if (n == 1) {
        return;
    }
    if (is_prime(n, options.primality)) {
        out[n] += static_cast<unsigned>(multiplicity);
        return;
    }
    if (auto [root, k] = perfect_power(n); k > 1) {
        split_into(root, multiplicity * k, options, work, out);
        return;
    }
    for (unsigned long c = options.rho_seed;; ++c) {
        BigInt d = brent_split(n, c, work);
        if (d != n && d != 1) {
            split_into(d, multiplicity, options, work, out);
            split_into(n / d, multiplicity, options, work, out);
            return;
        }
    }
}

}  // namespace

Factorization::Factorization(std::vector<PrimePower> factors) : value_(1), factors_(std::move(factors))
{
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].exponent == 0 || factors_[i].prime < 2) {
            throw std::invalid_argument("factorization entries need a prime >= 2 and a positive exponent");
        }
        if (i > 0 && !(factors_[i - 1].prime < factors_[i].prime)) {
            throw std::invalid_argument("factorization primes must be strictly increasing");
        }
        value_ *= pow_ui(factors_[i].prime, factors_[i].exponent);
    }
}

BigInt Factorization::divisor_count() const
{
    BigInt count = 1;
    for (const auto& pp : factors_) {
        count *= pp.exponent + 1;
    }
    return count;
}

unsigned long Factorization::big_omega() const
{
    unsigned long total = 0;
    for (const auto& pp : factors_) {
        total += pp.exponent;
    }
    return total;
}

bool Factorization::squarefree() const
{
    return std::ranges::all_of(factors_, [](const PrimePower& pp) { return pp.exponent == 1; });
}

unsigned Factorization::exponent_of(const BigInt& p) const
{
    for (const auto& pp : factors_) {
        if (pp.prime == p) {
            return pp.exponent;
        }
    }
    return 0;
}

std::string Factorization::to_string() const
{
    if (factors_.empty()) {
        return "1";
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i > 0) {
            os << '*';
        }
        os << factors_[i].prime.get_str() << '^' << factors_[i].exponent;
    }
    return os.str();
}

Factorization factorize(const BigInt& n, const FactorOptions& options)
{
    if (n < 1) {
        throw std::invalid_argument("factorize requires n >= 1");
    }
    std::map<BigInt, unsigned> found;
    BigInt rest = n;
    for (std::uint32_t p : trial_primes(options.trial_bound)) {
        if (BigInt(p) * p > rest) {
            break;
        }
        unsigned e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        if (e > 0) {
            found[BigInt(p)] = e;
        }
    }
    if (rest > 1) {
        Work work(options.work_budget);
        split_into(rest, 1, options, work, found);
    }
    std::vector<PrimePower> factors;
    factors.reserve(found.size());
    for (auto& [p, e] : found) {
        factors.push_back({p, e});
    }
    return Factorization(std::move(factors));
}

std::vector<Factorization> divisor_factorizations(const Factorization& f)
{
    std::vector<std::vector<PrimePower>> partial{{}};
    for (const auto& pp : f.factors()) {
        std::vector<std::vector<PrimePower>> next;
        next.reserve(partial.size() * (pp.exponent + 1));
        for (const auto& base : partial) {
            next.push_back(base);
            for (unsigned e = 1; e <= pp.exponent; ++e) {
                auto extended = base;
                extended.push_back({pp.prime, e});
                next.push_back(std::move(extended));
            }
        }
        partial = std::move(next);
    }
    std::vector<Factorization> out;
    out.reserve(partial.size());
    for (auto& fs : partial) {
        out.emplace_back(std::move(fs));
    }
    std::ranges::sort(out, [](const Factorization& a, const Factorization& b) { return a.value() < b.value(); });
    return out;
}

std::vector<BigInt> divisors(const Factorization& f)
{
    std::vector<BigInt> out{1};
    for (const auto& pp : f.factors()) {
        const std::size_t base_count = out.size();
        BigInt power = 1;
        for (unsigned e = 1; e <= pp.exponent; ++e) {
            power *= pp.prime;
            for (std::size_t i = 0; i < base_count; ++i) {
                out.push_back(out[i] * power);
            }
        }
    }
    std::ranges::sort(out);
    return out;
}

Factorization quotient(const Factorization& f, const Factorization& g)
{
    std::vector<PrimePower> out;
    for (const auto& pp : f.factors()) {
        const unsigned sub = g.exponent_of(pp.prime);
        if (sub > pp.exponent) {
            throw std::invalid_argument("quotient: divisor does not divide");
        }
        if (pp.exponent > sub) {
            out.push_back({pp.prime, pp.exponent - sub});
        }
    }
    for (const auto& pp : g.factors()) {
        if (f.exponent_of(pp.prime) == 0) {
            throw std::invalid_argument("quotient: divisor does not divide");
        }
    }
    return Factorization(std::move(out));
}

}  // namespace fibdir
