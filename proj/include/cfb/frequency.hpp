#ifndef CFB_FREQUENCY_HPP
#define CFB_FREQUENCY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfb/bounds.hpp"

namespace cfb {

enum class Event { both_less, both_greater };
enum class Method { closed_form, quadrature, monte_carlo };

std::string to_string(Event e);
std::string to_string(Method m);

/// nu-measure of one event region; value is the asymptotic frequency in
/// [0,1], scaled = value * log 2 (the m^(*) normalization).
struct RegionMeasure {
    double value = 0.0;
    double scaled = 0.0;
    std::optional<std::pair<long, long>> rectangle;
    std::optional<CaseLabel> case_label;
    Method method = Method::closed_form;
    std::optional<double> stderr_estimate;  // monte_carlo only
};

/// Digit range of a report cell; hi < 0 encodes "and beyond" (infinite tail).
struct CellRange {
    long a_lo, a_hi;
    long b_lo, b_hi;
    bool a_infinite() const { return a_hi < 0; }
    bool b_infinite() const { return b_hi < 0; }
    std::string a_text() const;
    std::string b_text() const;
};

struct CellEntry {
    CellRange range;
    RegionMeasure measure;
    int theorem_case = 0;  // sharp-upper-bound case for single cells, 0 otherwise
};

struct FrequencyReport {
    double r = 0.0, R = 0.0;
    Event event = Event::both_greater;
    std::vector<CellEntry> per_cell;  // sorted by (a_lo, b_lo)
    double total = 0.0;
    double conditional_mtong = 0.0;  // both_greater only; 0 otherwise
};

/// H(R): the distribution function of D_n, 1 - (log((R+1)/R) + log(R)/(R+1))/log 2.
double dist_H(double R);

/// h(x) = H'(x) = log(x) / (log 2 * (x+1)^2).
double density_h(double x);

/// Closed-form measure of {D_{n-2} > r, D_n > R} on Delta_{a,b} for the
/// given configuration label; throws std::invalid_argument unless
/// label == classify(a, b, r, R).
RegionMeasure cell_measure(CaseLabel label, long a, long b, double r, double R);

/// Independent oracle: adaptive quadrature of the invariant density over the
/// event region of Delta_{a,b}, split at the curve breakpoints so every
/// panel is smooth. Empty regions return 0.
RegionMeasure quadrature_measure(long a, long b, double r, double R, Event event);

/// Telescoped digit-tail sums (scaled, i.e. log2 * measure):
///   sum over b >= b_start of m^(i)_{a,b}
double tail_i_over_b(long a, long b_start, double r);
///   sum over a >= a_start of m^(iii)_{a,b}
double tail_iii_over_a(long b, long a_start, double R);
///   sum over a >= a_start, b >= b_start of m^(v)_{a,b}
double tail_v(long a_start, long b_start);
///   sum over b >= b_start of m^(v)_{a,b} at fixed a (and its transpose)
double tail_v_over_b(long a, long b_start);
double tail_v_over_a(long b, long a_start);

/// Independent quadrature oracles for the same tails: each infinite digit
/// sum is a single finite integral over the accumulation strip (t in
/// (0, 1/b_start] tiles the cells b >= b_start, and symmetrically in v).
double quad_tail_i_over_b(long a, long b_start, double r);
double quad_tail_iii_over_a(long b, long a_start, double R);
double quad_tail_v(long a_start, long b_start);
double quad_tail_v_over_b(long a, long b_start);
double quad_tail_v_over_a(long b, long a_start);

/// Nine-block decomposition over the digit strips of floor(r) and floor(R):
/// finite cells in closed form, infinite tails telescoped, and the corner
/// cell Delta_{floor r, floor R} always by quadrature. both_less uses
/// per-cell quadrature over the finitely many cells that can contribute.
FrequencyReport total_frequency(double r, double R, Event event);

/// Same report computed end to end by quadrature: every finite cell via
/// quadrature_measure and every tail via its quad_tail_* integral.
FrequencyReport total_frequency_quadrature(double r, double R, Event event);

/// Conditional probability that the sharp upper bound is the intersection
/// value M_Tong, given D_{n-2} > r and D_n > R.
double conditional_mtong(double r, double R);

/// Ergodic estimator: averages the event indicator over extension-map
/// orbits of n_samples random 4096-bit rationals, n_orbit points each.
/// stderr is computed over per-orbit means (orbit points are correlated).
/// Deterministic in (seed, n_samples, n_orbit) regardless of parallelism.
RegionMeasure monte_carlo_frequency(double r, double R, Event event, long n_samples,
                                    long n_orbit, std::uint64_t seed);

/// Ergodic empirical CDF of D_{n-1} at threshold R, with batch stderr.
struct McEstimate {
    double value;
    double stderr_estimate;
};
McEstimate monte_carlo_cdf_D(double R, long n_samples, long n_orbit, std::uint64_t seed);

/// One row of the reference comparison at (r, R) = (2.9, 3.6): the computed
/// frequency and scaled measure against the printed reference value, with
/// whichever scaling sits closer ("freq" or "scaled") recorded. Rows whose
/// best delta exceeds the tolerance are flagged, not hidden.
struct ComparisonRow {
    CellRange range;
    CaseLabel label;
    double computed_value;   // frequency
    double computed_scaled;  // log2 * measure
    double printed;
    double delta;            // min over the two scalings
    std::string interpretation;
    bool flagged;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    double computed_total;
    double printed_total;
    double computed_conditional;
    double printed_conditional;
    double tolerance;
};

ComparisonReport reference_comparison(double tolerance = 0.002);

std::string to_json_string(const FrequencyReport& report);
std::string to_csv_string(const FrequencyReport& report, int sig_digits = 6);
std::string to_json_string(const ComparisonReport& report);
std::string to_csv_string(const ComparisonReport& report, int sig_digits = 6);

/// Rounds to `sig` significant digits with round-half-even; used by all CSV
/// emitters.
std::string format_sig(double x, int sig);

}  // namespace cfb

#endif
