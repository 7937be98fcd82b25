#include "fibdir/exact_log.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fibdir {

ExactLog log_of_big(const BigInt& v)
{
    if (v < 1) {
        throw std::invalid_argument("log_of_big requires v >= 1");
    }
    ExactLog out;
    out.integer_value = v;
    if (v == 1) {
        return out;
    }
    long exp = 0;
    const double mantissa = mpz_get_d_2exp(&exp, v.get_mpz_t());  // v = mantissa * 2^exp, mantissa in [0.5, 1)
    out.log_value = std::log(mantissa) + static_cast<double>(exp) * std::numbers::ln2;
    // Truncated mantissa (rel 2^-53), rounding in log and in the sum; log v >= log 2 bounds the relative blow-up.
    const double abs_err = 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(out.log_value));
    out.rel_precision = abs_err / out.log_value;
    return out;
}

double log_of_rational(const BigRational& q)
{
    if (sgn(q) <= 0) {
        throw std::invalid_argument("log_of_rational requires a positive value");
    }
    return log_of_big(q.get_num()).log_value - log_of_big(q.get_den()).log_value;
}

LogSum LogSum::log_of(const BigInt& base)
{
    if (base < 1) {
        throw std::invalid_argument("LogSum::log_of requires a positive base");
    }
    LogSum out;
    out.product_ = BigRational(base);
    return out;
}

LogSum& LogSum::operator+=(const LogSum& other)
{
    product_ *= other.product_;
    product_.canonicalize();
    return *this;
}

LogSum LogSum::scaled(const BigInt& k) const
{
    if (!k.fits_slong_p()) {
        throw std::overflow_error("LogSum::scaled: coefficient out of range");
    }
    const long e = k.get_si();
    const unsigned long mag = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    LogSum out;
    BigInt num = pow_ui(product_.get_num(), mag);
    BigInt den = pow_ui(product_.get_den(), mag);
    out.product_ = e < 0 ? BigRational(den, num) : BigRational(num, den);
    out.product_.canonicalize();
    return out;
}

ExactLog LogSum::to_exact_log() const
{
    if (!is_integral()) {
        throw std::domain_error("LogSum::to_exact_log: value is the log of a non-integer");
    }
    return log_of_big(product_.get_num());
}

}  // namespace fibdir
