#ifndef CFB_CF_CORE_HPP
#define CFB_CF_CORE_HPP

#include <optional>
#include <string>
#include <vector>

#include "cfb/rational.hpp"

namespace cfb {

struct insufficient_digits : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Exactness {
    ExactFinite,          // the listed digits are the whole expansion
    TruncatedGuaranteed,  // digits with index <= n_safe are certified
};

/// Regular continued fraction digits a0; a1, a2, ...
/// Exact-finite sequences are canonical: the final digit is >= 2 whenever
/// there is at least one digit after a0.
struct DigitSequence {
    BigInt a0;
    std::vector<BigInt> digits;  // a1..ak, each >= 1
    Exactness exactness = Exactness::ExactFinite;
    long n_safe = 0;  // meaningful for TruncatedGuaranteed

    long size() const { return static_cast<long>(digits.size()); }
    const BigInt& digit(long n) const {  // a_n, n >= 1
        if (n < 1 || n > size()) throw std::out_of_range("digit index");
        return digits[static_cast<std::size_t>(n - 1)];
    }
};

/// Collapses the non-canonical tail [..., k, 1] into [..., k+1].
std::vector<BigInt> normalize_digits(std::vector<BigInt> digits);

/// RCF expansion of an exact rational. Terminates within max_digits or
/// returns a truncated-guaranteed prefix (rational digits are always exact,
/// so n_safe = digits emitted).
DigitSequence expand(const Rational& x, long max_digits);

/// Value of [a0; a1, ..., ak] for an exact-finite sequence.
Rational fold(const DigitSequence& d);

/// Value of the bracket [first; rest...]; independent folding helper used
/// by the definitional coefficient routes.
Rational bracket_value(const BigInt& first, const std::vector<BigInt>& rest);

struct ConvergentPair {
    BigInt p;
    BigInt q;
    long index;  // n >= 0
};

/// (p0,q0) .. (pn,qn) via the standard recurrence, each in lowest terms.
std::vector<ConvergentPair> convergents(const DigitSequence& d, long n);

/// t_n = [0; a_{n+1}, a_{n+2}, ...]; t_0 = x - a0.
Rational future_t(const DigitSequence& d, long n);

/// v_n = [0; a_n, ..., a_1] = q_{n-1}/q_n; v_0 = 0.
Rational past_v(const DigitSequence& d, long n);

/// Theta_n, C_{n-1} and D_{n-1} at index n. c and d are absent at n = 0
/// (v_0 = 0 makes D_{-1} undefined).
struct CoefficientTriple {
    Rational theta;             // Theta_n = t_n / (1 + t_n v_n)
    std::optional<Rational> c;  // C_{n-1} = 1 + 1/D_{n-1}, in (1,2)
    std::optional<Rational> d;  // D_{n-1} = 1/(t_n v_n), > 1
    long index;
};

CoefficientTriple coefficients(const DigitSequence& d, long n);

/// D_{n-2} and D_n expressed in (t_n, v_n) and the digits a_n, a_{n+1}.
Rational d_prev_from_tv(const DigitSequence& d, long n);  // D_{n-2}
Rational d_next_from_tv(const DigitSequence& d, long n);  // D_n

/// D_n via the definitional product [a_{n+1}; a_n,...,a_1]*[a_{n+2}; ...],
/// folded independently of the (t,v) route.
Rational d_def(const DigitSequence& d, long n);

/// Theta_n via the definition q_n^2 |x - p_n/q_n| (needs exact-finite x).
Rational theta_def(const DigitSequence& d, long n);

// --- serialization ---

std::string to_bracket_string(const DigitSequence& d);  // "a0;a1,a2,..."
DigitSequence parse_bracket_string(const std::string& text);
std::string to_json_string(const DigitSequence& d);

}  // namespace cfb

#endif
