#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace fibdir {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigInt big_from_u64(std::uint64_t v)
{
    BigInt out;
    mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return out;
}

/// Value as uint64 if it fits, otherwise nullopt. Negative values never fit.
inline std::optional<std::uint64_t> to_u64(const BigInt& v)
{
    if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) {
        return std::nullopt;
    }
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v.get_mpz_t());
    return out;
}

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

inline BigInt pow_ui(const BigInt& base, unsigned long exp)
{
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

}  // namespace fibdir
