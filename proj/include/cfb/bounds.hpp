#ifndef CFB_BOUNDS_HPP
#define CFB_BOUNDS_HPP

#include <string>

#include "cfb/cf_core.hpp"
#include "cfb/natural_extension.hpp"

namespace cfb {

/// Configuration of the curves f_{a,r} and g_{b,R} on Delta_{a,b}.
/// Exactly one label applies to every (a, b, r, R); boundary ties follow
/// the non-strict signs of the theorem statements.
enum class CaseLabel { i, ii, iii, iv, v, vi_a, vi_b, vi_c, vi_d };

std::string to_string(CaseLabel label);
CaseLabel case_label_from_string(const std::string& s);

CaseLabel classify(long a, long b, double r, double R);

/// True iff {D_{n-2} < r and D_n < R} meets Delta_{a,b} in an open set.
/// Both curves decrease in t, so the test reduces to the left-edge values
/// F and R - b against the rectangle bottom 1/(a+1).
bool lower_region_nonempty(long a, long b, double r, double R);

struct empty_region_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class BoundKind { lower_D, upper_D, lower_C, upper_C };

struct BoundResult {
    double value;
    BoundKind kind;
    int theorem_case;
    CaseLabel label;
    double tong_value;  // M_Tong for D-bounds, Tong's K for C-bounds
};

/// Sharp lower bound for D_{n-1} given D_{n-2} < r and D_n < R.
/// Throws empty_region_error when no point of Delta_{a,b} satisfies both.
BoundResult lower_bound_D(long a, long b, double r, double R);

/// Sharp upper bound for D_{n-1} given D_{n-2} > r and D_n > R.
BoundResult upper_bound_D(long a, long b, double r, double R);

/// Sharp upper bound for C_{n-1} given C_{n-2} > t and C_n > T, t,T in (1,2).
BoundResult upper_bound_C(long a, long b, double t, double T);

/// Sharp lower bound for C_{n-1} given C_{n-2} < t and C_n < T.
BoundResult lower_bound_C(long a, long b, double t, double T);

/// Tong's K value, evaluated exactly as printed (it is not a valid bound
/// for C; kept for the counterexample demonstrator).
double tong_K(long a, long b, double t, double T);

/// F', G', L' of the C-theorems.
struct CPrimeConfig {
    double Fp, Gp, Lp;
};
CPrimeConfig c_prime_config(long a, long b, double t, double T);

enum class Direction { Below, Above };

/// A constructed near-extremal expansion: a_n = a, a_{n+1} = b, the
/// direction's hypotheses hold exactly, and D_{n-1} is within relative
/// eps of the sharp bound.
struct Witness {
    DigitSequence seq;
    long n;
    Rational x;       // fold(seq)
    Rational d_nm1;   // exact D_{n-1}
    double bound;     // the sharp bound targeted
    int theorem_case;
};

struct unreachable_eps_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Witness witness(long a, long b, double r, double R, Direction direction, double eps);

std::string to_json_string(const BoundResult& res, long a, long b, double r, double R);

}  // namespace cfb

#endif
