#pragma once

#include "fibdir/bigint.hpp"

namespace fibdir {

/// Miller-Rabin configuration.
///
/// Below `deterministic_threshold` the bases 2, 3, 5, ..., 41 (the first
/// thirteen primes) give a proven answer; the default threshold is the
/// Sorenson-Webster bound 3317044064679887385961981 for that base set.
/// At or above the threshold the first `witness_count` primes are used as
/// fixed bases, so the answer is probabilistic but identical on every run.
struct PrimalityPolicy {
    BigInt deterministic_threshold{"3317044064679887385961981"};
    unsigned witness_count = 24;
};

bool is_prime(const BigInt& n, const PrimalityPolicy& policy = {});

/// Strong probable-prime test of odd n > 2 to a single base.
bool strong_probable_prime(const BigInt& n, const BigInt& base);

}  // namespace fibdir
