#include "stn/bigint.hpp"

#include "stn/errors.hpp"

namespace stn {

bool fits_u64(const BigInt& x) {
    return x >= 0 && x <= BigInt(UINT64_MAX);
}

std::uint64_t to_u64(const BigInt& x) {
    if (!fits_u64(x)) throw UsageError("value does not fit in 64 bits");
    return x.convert_to<std::uint64_t>();
}

BigInt floor_nonneg(const Rational& r) {
    if (r < 0) throw UsageError("floor_nonneg: negative input");
    // Truncating division equals floor for nonnegative values.
    return numerator_of(r) / denominator_of(r);
}

BigInt balanced_product(const std::vector<std::uint64_t>& factors) {
    if (factors.empty()) return BigInt(1);
    std::vector<BigInt> level;
    level.reserve(factors.size() / 2 + 1);
    for (std::size_t i = 0; i + 1 < factors.size(); i += 2) {
        level.push_back(BigInt(factors[i]) * factors[i + 1]);
    }
    if (factors.size() % 2) level.push_back(BigInt(factors.back()));
    while (level.size() > 1) {
        std::vector<BigInt> next;
        next.reserve(level.size() / 2 + 1);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            next.push_back(level[i] * level[i + 1]);
        }
        if (level.size() % 2) next.push_back(std::move(level.back()));
        level = std::move(next);
    }
    return level.front();
}

std::string to_decimal_string(const Rational& r, int sig_digits) {
    if (r < 0) throw UsageError("to_decimal_string: negative input");
    if (sig_digits < 1) throw UsageError("to_decimal_string: need at least one digit");
    if (r == 0) return "0";

    const BigInt num = numerator_of(r);
    const BigInt den = denominator_of(r);

    // Decimal exponent E with 10^E <= r < 10^(E+1).
    long e;
    if (r >= 1) {
        e = static_cast<long>(BigInt(num / den).str().size()) - 1;
    } else {
        e = 0;
        BigInt scaled = num;
        while (scaled < den) {
            scaled *= 10;
            --e;
        }
    }

    // Scale so the significant digits sit in the integer part, then round.
    const long shift = sig_digits - 1 - e;
    BigInt n = num, d = den;
    if (shift >= 0) {
        n *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift));
    } else {
        d *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-shift));
    }
    BigInt q = n / d;
    const BigInt rem2 = (n - q * d) * 2;
    if (rem2 > d || (rem2 == d && (q & 1) != 0)) ++q;

    std::string digits = q.str();
    if (static_cast<int>(digits.size()) > sig_digits) {
        // Rounding carried past the leading digit (e.g. 0.999.. -> 1.00..).
        digits.pop_back();
        ++e;
    }

    std::string out;
    if (e >= 0) {
        const long int_digits = e + 1;
        if (int_digits >= static_cast<long>(digits.size())) {
            out = digits + std::string(int_digits - digits.size(), '0');
        } else {
            out = digits.substr(0, int_digits) + "." + digits.substr(int_digits);
        }
    } else {
        out = "0." + std::string(-e - 1, '0') + digits;
    }
    return out;
}

}  // namespace stn
