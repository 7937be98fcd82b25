#pragma once

#include "fibdir/bigint.hpp"

namespace fibdir {

/// log of an explicitly held positive integer.
struct ExactLog {
    BigInt integer_value{1};
    double log_value = 0.0;
    /// Bound on |log_value - log(integer_value)| / |log_value|.
    double rel_precision = 0.0;
};

/// log v from the bit length and a 53-bit mantissa; rel_precision <= 1e-12.
ExactLog log_of_big(const BigInt& v);

/// Natural log of a positive rational, as log(num) - log(den).
double log_of_rational(const BigRational& q);

/// Exact linear combination sum_i c_i log(b_i) with integer c_i, held as
/// the positive rational prod_i b_i^{c_i}. Addition is multiplication and
/// scaling by an integer is exponentiation, so von Mangoldt sums stay exact.
class LogSum {
public:
    LogSum() : product_(1) {}
    /// log(base); base must be positive.
    static LogSum log_of(const BigInt& base);

    LogSum& operator+=(const LogSum& other);
    /// k * this, k any integer that fits in a long.
    LogSum scaled(const BigInt& k) const;

    const BigRational& product() const { return product_; }
    bool is_integral() const { return product_.get_den() == 1; }
    /// Requires is_integral().
    ExactLog to_exact_log() const;
    double value() const { return log_of_rational(product_); }

    friend bool operator==(const LogSum& a, const LogSum& b) { return a.product_ == b.product_; }

private:
    BigRational product_;
};

}  // namespace fibdir
