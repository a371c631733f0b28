#ifndef CFB_RATIONAL_HPP
#define CFB_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace cfb {

using BigInt = mpz_class;

/// Exact rational number p/q, canonical form (q > 0, gcd(|p|,q) = 1).
/// Backed by GMP; make_rational/parse_rational always canonicalize.
using Rational = mpq_class;

struct parse_error : std::runtime_error {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg), position(pos) {}
};

inline Rational make_rational(BigInt num, BigInt den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(std::move(num), std::move(den));
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(BigInt(num), BigInt(den));
}

/// Exact conversion of a finite double to a (dyadic) rational.
inline Rational rational_from_double(double x) {
    return Rational(x);  // mpq_class(double) is exact
}

/// Parses "p/q", an integer, or a decimal string like "3.25" / "-0.5".
/// Decimal strings become exact p/10^k; no binary floating point involved.
Rational parse_rational(const std::string& text);

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace cfb

#endif
