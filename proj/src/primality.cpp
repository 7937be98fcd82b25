#include "fibdir/primality.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace fibdir {
namespace {

constexpr std::array<unsigned, 13> kDeterministicBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

const std::vector<unsigned>& first_primes()
{
    static const std::vector<unsigned> primes = [] {
        std::vector<unsigned> out;
        for (unsigned c = 2; out.size() < 256; ++c) {
            bool prime = true;
            for (unsigned p : out) {
                if (p * p > c) {
                    break;
                }
                if (c % p == 0) {
                    prime = false;
                    break;
                }
            }
            if (prime) {
                out.push_back(c);
            }
        }
        return out;
    }();
    return primes;
}

}  // namespace

bool strong_probable_prime(const BigInt& n, const BigInt& base)
{
    const BigInt n_minus_1 = n - 1;
    BigInt d = n_minus_1;
    const mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    BigInt a = base % n;
    if (a == 0) {
        return true;
    }
    BigInt x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) {
        return true;
    }
    for (mp_bitcnt_t i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n_minus_1) {
            return true;
        }
        if (x == 1) {
            return false;
        }
    }
    return false;
}

bool is_prime(const BigInt& n, const PrimalityPolicy& policy)
{
    if (n < 2) {
        return false;
    }
    for (unsigned p : kDeterministicBases) {
        if (n == p) {
            return true;
        }
        if (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
            return false;
        }
    }
    if (n < 41 * 41) {
        return true;
    }

    if (n < policy.deterministic_threshold) {
        return std::ranges::all_of(kDeterministicBases,
                                   [&](unsigned b) { return strong_probable_prime(n, BigInt(b)); });
    }
    const auto& primes = first_primes();
    const std::size_t count = std::clamp<std::size_t>(policy.witness_count, kDeterministicBases.size(), primes.size());
    for (std::size_t i = 0; i < count; ++i) {
        if (!strong_probable_prime(n, BigInt(primes[i]))) {
            return false;
        }
    }
    return true;
}

}  // namespace fibdir
