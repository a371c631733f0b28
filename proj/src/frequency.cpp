#include "cfb/frequency.hpp"

#include <json.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

namespace cfb {

namespace {
constexpr double kLog2 = 0.6931471805599453;
}

std::string to_string(Event e) {
    return e == Event::both_less ? "both_less" : "both_greater";
}

std::string to_string(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::quadrature: return "quadrature";
        case Method::monte_carlo: return "monte_carlo";
    }
    return "?";
}

std::string CellRange::a_text() const {
    if (a_infinite()) return ">" + std::to_string(a_lo - 1);
    if (a_lo == a_hi) return std::to_string(a_lo);
    return std::to_string(a_lo) + "-" + std::to_string(a_hi);
}

std::string CellRange::b_text() const {
    if (b_infinite()) return ">" + std::to_string(b_lo - 1);
    if (b_lo == b_hi) return std::to_string(b_lo);
    return std::to_string(b_lo) + "-" + std::to_string(b_hi);
}

double dist_H(double R) {
    if (R < 1.0) throw std::domain_error("dist_H requires R >= 1");
    return 1.0 - (std::log((R + 1.0) / R) + std::log(R) / (R + 1.0)) / kLog2;
}

double density_h(double x) {
    if (x < 1.0) throw std::domain_error("density_h requires x >= 1");
    return std::log(x) / (kLog2 * (x + 1.0) * (x + 1.0));
}

// ---------------------------------------------------------------------------
// Closed-form cell measures (scaled values m = log2 * measure)
// ---------------------------------------------------------------------------

namespace {

double m_case_i(double a, double b, double r) {
    return std::log((a * b + 1) * (b + 1) / ((a * b + a + 1) * b)) / (r + 1);
}

double m_case_v(double a, double b) {
    return std::log((a * b + 1) * (a * b + a + b + 2) /
                    ((a * b + a + 1) * (a * b + b + 1)));
}

double m_case_ii(double a, double b, double r) {
    return std::log((a * b + 1) * (b + 1) * (r + 1) /
                    ((a * b + b + 1) * (a * b + a + 1))) -
           (r / (r + 1)) * std::log(r * (b + 1) / (a * b + a + 1));
}

double m_case_iii(double a, double b, double R) {
    return std::log((a * b + 1) * (a + 1) / ((a * b + b + 1) * a)) / (R + 1);
}

double m_case_iv(double a, double b, double R) {
    return std::log((a * b + 1) * (a + 1) * (R + 1) /
                    ((a * b + a + 1) * (a * b + b + 1))) -
           (R / (R + 1)) * std::log(R * (a + 1) / (a * b + b + 1));
}

// measure above g between t = x and t = S
double part_above_g(double a, double b, double R, double x, double S) {
    return std::log(S * (1 - b * x) / (x * (1 - b * S))) / (R + 1) +
           std::log(x * (S + a) / (S * (x + a)));
}

// measure above f between t = S and t = y
double part_above_f(double a, double r, double S, double y) {
    return std::log((a + y) / (a + S)) / (r + 1);
}

// full-height part between t = r - a and t = 1/b
double part_full_rect(double a, double b, double r) {
    return std::log((a * b + 1) * (r + 1) / ((a * b + b + 1) * r));
}

double m_case_vi(CaseLabel label, const CurveConfig& c) {
    double a = static_cast<double>(c.a), b = static_cast<double>(c.b);
    switch (label) {
        case CaseLabel::vi_a:
            return part_above_g(a, b, c.R, c.G1, c.S) +
                   part_above_f(a, c.r, c.S, 1.0 / b);
        case CaseLabel::vi_b:
            return part_above_g(a, b, c.R, 1.0 / (b + 1), c.S) +
                   part_above_f(a, c.r, c.S, 1.0 / b);
        case CaseLabel::vi_c:
            return part_above_g(a, b, c.R, c.G1, c.S) +
                   part_above_f(a, c.r, c.S, c.r - a) + part_full_rect(a, b, c.r);
        default:  // vi_d
            return part_above_g(a, b, c.R, 1.0 / (b + 1), c.S) +
                   part_above_f(a, c.r, c.S, c.r - a) + part_full_rect(a, b, c.r);
    }
}

}  // namespace

RegionMeasure cell_measure(CaseLabel label, long a, long b, double r, double R) {
    CaseLabel actual = classify(a, b, r, R);
    if (actual != label)
        throw std::invalid_argument("cell_measure: label " + to_string(label) +
                                    " does not match classify = " + to_string(actual));
    double ad = static_cast<double>(a), bd = static_cast<double>(b);
    double m = 0.0;
    switch (label) {
        case CaseLabel::i: m = m_case_i(ad, bd, r); break;
        case CaseLabel::ii: m = m_case_ii(ad, bd, r); break;
        case CaseLabel::iii: m = m_case_iii(ad, bd, R); break;
        case CaseLabel::iv: m = m_case_iv(ad, bd, R); break;
        case CaseLabel::v: m = m_case_v(ad, bd); break;
        default: m = m_case_vi(label, curve_config(a, b, r, R)); break;
    }
    RegionMeasure out;
    out.value = m / kLog2;
    out.scaled = m;
    out.rectangle = std::make_pair(a, b);
    out.case_label = label;
    out.method = Method::closed_form;
    return out;
}

RegionMeasure quadrature_measure(long a, long b, double r, double R, Event event) {
    double ad = static_cast<double>(a), bd = static_cast<double>(b);
    double t0 = 1.0 / (bd + 1), t1 = 1.0 / bd;
    double bottom = 1.0 / (ad + 1), top = 1.0 / ad;
    auto c = curve_config(a, b, r, R);

    // split at every point where the active boundary can switch branches
    std::set<double> cuts{t0, t1};
    for (double x : {c.S, c.G1, c.G, r - ad})
        if (x > t0 && x < t1) cuts.insert(x);

    auto inner = [&](double t) {
        double f = f_curve(a, r, t);
        double g = g_curve(b, R, t);
        double lo, hi;
        if (event == Event::both_greater) {
            lo = std::max({f, g, bottom});
            hi = top;
        } else {
            lo = bottom;
            hi = std::min({f, g, top});
        }
        if (lo >= hi) return 0.0;
        // cancellation-free form of (1/t)(1/(1+t*lo) - 1/(1+t*hi))
        return (hi - lo) / ((1.0 + t * lo) * (1.0 + t * hi));
    };

    double m = 0.0;
    double prev = 0.0;
    bool first = true;
    for (double cut : cuts) {
        if (!first)
            m += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                inner, prev, cut, 12, 1e-12);
        prev = cut;
        first = false;
    }
    RegionMeasure out;
    out.value = m / kLog2;
    out.scaled = m;
    out.rectangle = std::make_pair(a, b);
    out.method = Method::quadrature;
    return out;
}

// ---------------------------------------------------------------------------
// Telescoped tails (scaled values)
// ---------------------------------------------------------------------------

double tail_i_over_b(long a, long b_start, double r) {
    return std::log1p(1.0 / (static_cast<double>(a) * b_start)) / (r + 1);
}

double tail_iii_over_a(long b, long a_start, double R) {
    return std::log1p(1.0 / (static_cast<double>(a_start) * b)) / (R + 1);
}

double tail_v(long a_start, long b_start) {
    return std::log1p(1.0 / (static_cast<double>(a_start) * b_start));
}

double tail_v_over_b(long a, long b_start) {
    double ad = static_cast<double>(a), B = static_cast<double>(b_start);
    return std::log((ad * B + 1) * (ad + 1) / (ad * ((ad + 1) * B + 1)));
}

double tail_v_over_a(long b, long a_start) {
    return tail_v_over_b(b, a_start);  // m^(v) is symmetric in (a, b)
}

// ---------------------------------------------------------------------------
// Quadrature tail oracles: each digit tail tiles an accumulation strip, so
// the infinite sum is one finite integral of the density.
// ---------------------------------------------------------------------------

namespace {

// integral over [lo_t, hi_t] of the v-slab [lo_v(t), hi_v(t)] density mass,
// using the cancellation-free slab form
template <typename LoV, typename HiV>
double slab_integral(double lo_t, double hi_t, LoV lo_v, HiV hi_v) {
    auto inner = [&](double t) {
        double lo = lo_v(t), hi = hi_v(t);
        if (lo >= hi) return 0.0;
        return (hi - lo) / ((1.0 + t * lo) * (1.0 + t * hi));
    };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        inner, lo_t, hi_t, 14, 1e-13);
}

}  // namespace

double quad_tail_i_over_b(long a, long b_start, double r) {
    double top = 1.0 / static_cast<double>(a);
    return slab_integral(
        0.0, 1.0 / static_cast<double>(b_start),
        [&](double t) { return f_curve(a, r, t); }, [&](double) { return top; });
}

double quad_tail_iii_over_a(long b, long a_start, double R) {
    // roles of t and v swap: integrate over v in (0, 1/a_start], t from the
    // inverse of g to the right edge 1/b
    double bd = static_cast<double>(b);
    double t_hi = 1.0 / bd;
    return slab_integral(
        0.0, 1.0 / static_cast<double>(a_start),
        [&](double v) { return R / (bd * (R + 1) + v); },
        [&](double) { return t_hi; });
}

double quad_tail_v(long a_start, long b_start) {
    double top = 1.0 / static_cast<double>(a_start);
    return slab_integral(0.0, 1.0 / static_cast<double>(b_start),
                         [](double) { return 0.0; }, [&](double) { return top; });
}

double quad_tail_v_over_b(long a, long b_start) {
    double ad = static_cast<double>(a);
    return slab_integral(0.0, 1.0 / static_cast<double>(b_start),
                         [&](double) { return 1.0 / (ad + 1); },
                         [&](double) { return 1.0 / ad; });
}

double quad_tail_v_over_a(long b, long a_start) {
    double bd = static_cast<double>(b);
    return slab_integral(0.0, 1.0 / static_cast<double>(a_start),
                         [&](double) { return 1.0 / (bd + 1); },
                         [&](double) { return 1.0 / bd; });
}

// ---------------------------------------------------------------------------
// Nine-block total frequency
// ---------------------------------------------------------------------------

namespace {

struct StripSum {
    double m;          // scaled sum over the strip
    double m_mtong;    // scaled sum of case-4 (M_Tong) cells inside it
    CaseLabel label;   // tail label
};

// sum over b >= b_start at fixed a: walk until the label stabilizes to the
// telescopable regime (i, or v when r - a <= 0), then add the tail
StripSum strip_over_b(long a, long b_start, double r, double R, bool quad_route) {
    StripSum out{0.0, 0.0, CaseLabel::i};
    long b = b_start;
    for (; b < b_start + 100000; ++b) {
        CaseLabel label = classify(a, b, r, R);
        if (label == CaseLabel::i) {
            out.m += quad_route ? quad_tail_i_over_b(a, b, r) : tail_i_over_b(a, b, r);
            out.label = CaseLabel::i;
            return out;
        }
        // v persists for all larger b only when the f-curve can never
        // re-enter the strip, i.e. r - a <= 0; otherwise it is transient
        if (label == CaseLabel::v && r - a <= 0.0) {
            out.m += quad_route ? quad_tail_v_over_b(a, b) : tail_v_over_b(a, b);
            out.label = CaseLabel::v;
            return out;
        }
        double m = quad_route ? quadrature_measure(a, b, r, R, Event::both_greater).scaled
                              : cell_measure(label, a, b, r, R).scaled;
        out.m += m;
        if (upper_bound_D(a, b, r, R).theorem_case == 4) out.m_mtong += m;
    }
    throw std::logic_error("strip_over_b: tail label did not stabilize");
}

// sum over a >= a_start at fixed b (tail label iii, or v when R - b <= 0)
StripSum strip_over_a(long b, long a_start, double r, double R, bool quad_route) {
    StripSum out{0.0, 0.0, CaseLabel::iii};
    long a = a_start;
    for (; a < a_start + 100000; ++a) {
        CaseLabel label = classify(a, b, r, R);
        if (label == CaseLabel::iii) {
            out.m +=
                quad_route ? quad_tail_iii_over_a(b, a, R) : tail_iii_over_a(b, a, R);
            out.label = CaseLabel::iii;
            return out;
        }
        if (label == CaseLabel::v && R - b <= 0.0) {
            out.m += quad_route ? quad_tail_v_over_a(b, a) : tail_v_over_a(b, a);
            out.label = CaseLabel::v;
            return out;
        }
        double m = quad_route ? quadrature_measure(a, b, r, R, Event::both_greater).scaled
                              : cell_measure(label, a, b, r, R).scaled;
        out.m += m;
        if (upper_bound_D(a, b, r, R).theorem_case == 4) out.m_mtong += m;
    }
    throw std::logic_error("strip_over_a: tail label did not stabilize");
}

CellEntry single_cell_entry(long a, long b, double r, double R, bool by_quadrature) {
    CellEntry entry;
    entry.range = {a, a, b, b};
    entry.measure = by_quadrature ? quadrature_measure(a, b, r, R, Event::both_greater)
                                  : cell_measure(classify(a, b, r, R), a, b, r, R);
    if (!entry.measure.case_label) entry.measure.case_label = classify(a, b, r, R);
    entry.theorem_case = upper_bound_D(a, b, r, R).theorem_case;
    return entry;
}

FrequencyReport total_greater(double r, double R, bool quad_route) {
    FrequencyReport report;
    report.r = r;
    report.R = R;
    report.event = Event::both_greater;
    long fr = static_cast<long>(std::floor(r));
    long fR = static_cast<long>(std::floor(R));
    double m_total = 0.0, m_mtong = 0.0;
    Method method = quad_route ? Method::quadrature : Method::closed_form;

    auto add_cell = [&](CellEntry entry) {
        m_total += entry.measure.scaled;
        if (entry.theorem_case == 4) m_mtong += entry.measure.scaled;
        report.per_cell.push_back(std::move(entry));
    };
    auto add_aggregate = [&](CellRange range, const StripSum& s) {
        CellEntry entry;
        entry.range = range;
        entry.measure.value = s.m / kLog2;
        entry.measure.scaled = s.m;
        entry.measure.case_label = s.label;
        entry.measure.method = method;
        m_total += s.m;
        m_mtong += s.m_mtong;
        report.per_cell.push_back(std::move(entry));
    };

    for (long a = 1; a <= fr; ++a) {
        for (long b = 1; b <= fR; ++b)
            add_cell(single_cell_entry(a, b, r, R,
                                       quad_route || (a == fr && b == fR)));
        add_aggregate({a, a, fR + 1, -1}, strip_over_b(a, fR + 1, r, R, quad_route));
    }
    for (long b = 1; b <= fR; ++b)
        add_aggregate({fr + 1, -1, b, b}, strip_over_a(b, fr + 1, r, R, quad_route));
    StripSum corner{quad_route ? quad_tail_v(fr + 1, fR + 1) : tail_v(fr + 1, fR + 1),
                    0.0, CaseLabel::v};
    add_aggregate({fr + 1, -1, fR + 1, -1}, corner);

    report.total = m_total / kLog2;
    report.conditional_mtong = m_total > 0.0 ? m_mtong / m_total : 0.0;
    return report;
}

FrequencyReport total_less(double r, double R) {
    FrequencyReport report;
    report.r = r;
    report.R = R;
    report.event = Event::both_less;
    double m_total = 0.0;
    // Below-f needs r - a > 1/(b+1) and below-g needs R - b > 1/(a+1), so
    // only the finitely many cells with a < r and b < R can contribute.
    long a_max = static_cast<long>(std::ceil(r)) - 1;
    long b_max = static_cast<long>(std::ceil(R)) - 1;
    for (long a = 1; a <= a_max; ++a) {
        for (long b = 1; b <= b_max; ++b) {
            if (r - a <= 1.0 / (b + 1) || R - b <= 1.0 / (a + 1)) continue;
            CellEntry entry;
            entry.range = {a, a, b, b};
            entry.measure = quadrature_measure(a, b, r, R, Event::both_less);
            entry.measure.case_label = classify(a, b, r, R);
            if (entry.measure.value <= 0.0) continue;
            m_total += entry.measure.scaled;
            report.per_cell.push_back(std::move(entry));
        }
    }
    report.total = m_total / kLog2;
    report.conditional_mtong = 0.0;
    return report;
}

}  // namespace

FrequencyReport total_frequency(double r, double R, Event event) {
    if (!(r > 1.0 && R > 1.0))
        throw std::domain_error("total_frequency requires r, R > 1");
    return event == Event::both_greater ? total_greater(r, R, false) : total_less(r, R);
}

FrequencyReport total_frequency_quadrature(double r, double R, Event event) {
    if (!(r > 1.0 && R > 1.0))
        throw std::domain_error("total_frequency requires r, R > 1");
    // the both_less route is already quadrature-based cell by cell
    return event == Event::both_greater ? total_greater(r, R, true) : total_less(r, R);
}

double conditional_mtong(double r, double R) {
    FrequencyReport report = total_frequency(r, R, Event::both_greater);
    if (report.total <= 0.0)
        throw std::domain_error("conditional_mtong: total frequency is zero");
    return report.conditional_mtong;
}

// ---------------------------------------------------------------------------
// Ergodic Monte Carlo
// ---------------------------------------------------------------------------

namespace {

constexpr int kRandomBits = 4096;
constexpr int kLookahead = 60;

// Digits of a random 4096-bit rational k / 2^4096, as doubles; regenerates
// (deterministically) in the vanishingly rare case the expansion is shorter
// than needed.
std::vector<double> orbit_digits(std::uint64_t seed, long orbit, long need) {
    for (std::uint32_t round = 0;; ++round) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(orbit),
                          static_cast<std::uint32_t>(static_cast<std::uint64_t>(orbit) >> 32),
                          round};
        std::mt19937_64 gen(seq);
        BigInt num = 0;
        for (int i = 0; i < kRandomBits / 64; ++i) {
            mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), 64);
            num += BigInt(static_cast<unsigned long>(gen()));
        }
        if (num == 0) continue;
        BigInt den = 1;
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), kRandomBits);
        DigitSequence d = expand(make_rational(num, den), need);
        if (d.size() < need) continue;
        std::vector<double> out(static_cast<std::size_t>(need));
        for (long i = 0; i < need; ++i)
            out[static_cast<std::size_t>(i)] = d.digits[static_cast<std::size_t>(i)].get_d();
        return out;
    }
}

// t_j = [0; a_{j+1}, ..., a_{j+60}] folded in doubles
double fold_future(const std::vector<double>& a, long j) {
    long last = std::min<long>(j + kLookahead, static_cast<long>(a.size()));
    double t = 0.0;
    for (long k = last; k > j; --k) t = 1.0 / (a[static_cast<std::size_t>(k - 1)] + t);
    return t;
}

struct BatchMean {
    double mean;
    double se;
};

template <typename OrbitFraction>
BatchMean batch_estimate(long n_samples, OrbitFraction fraction) {
    double sum = 0.0, sumsq = 0.0;
    for (long i = 0; i < n_samples; ++i) {
        double p = fraction(i);
        sum += p;
        sumsq += p * p;
    }
    double mean = sum / n_samples;
    double var = n_samples > 1 ? (sumsq - sum * sum / n_samples) / (n_samples - 1) : 0.0;
    return {mean, std::sqrt(std::max(var, 0.0) / n_samples)};
}

}  // namespace

RegionMeasure monte_carlo_frequency(double r, double R, Event event, long n_samples,
                                    long n_orbit, std::uint64_t seed) {
    if (n_samples < 1 || n_orbit < 1)
        throw std::invalid_argument("monte_carlo_frequency: counts must be positive");
    long need = n_orbit + 1 + kLookahead;
    auto est = batch_estimate(n_samples, [&](long orbit) {
        auto a = orbit_digits(seed, orbit, need);
        long hits = 0;
        double v = 1.0 / a[0];  // v_1
        for (long j = 2; j <= n_orbit + 1; ++j) {
            v = 1.0 / (a[static_cast<std::size_t>(j - 1)] + v);  // v_j
            double t = fold_future(a, j);
            double aj = a[static_cast<std::size_t>(j - 1)];
            double bj = a[static_cast<std::size_t>(j)];
            double d_prev = (aj + t) * v / (1.0 - aj * v);
            double d_next = (bj + v) * t / (1.0 - bj * t);
            bool hit = event == Event::both_greater ? (d_prev > r && d_next > R)
                                                    : (d_prev < r && d_next < R);
            if (hit) ++hits;
        }
        return static_cast<double>(hits) / n_orbit;
    });
    RegionMeasure out;
    out.value = est.mean;
    out.scaled = est.mean * kLog2;
    out.method = Method::monte_carlo;
    out.stderr_estimate = est.se;
    return out;
}

McEstimate monte_carlo_cdf_D(double R, long n_samples, long n_orbit, std::uint64_t seed) {
    if (n_samples < 1 || n_orbit < 1)
        throw std::invalid_argument("monte_carlo_cdf_D: counts must be positive");
    long need = n_orbit + kLookahead;
    auto est = batch_estimate(n_samples, [&](long orbit) {
        auto a = orbit_digits(seed, orbit, need);
        long hits = 0;
        double v = 0.0;
        for (long j = 1; j <= n_orbit; ++j) {
            v = 1.0 / (a[static_cast<std::size_t>(j - 1)] + v);  // v_j
            double t = fold_future(a, j);
            if (1.0 / (t * v) <= R) ++hits;  // D_{j-1}
        }
        return static_cast<double>(hits) / n_orbit;
    });
    return {est.mean, est.se};
}

// ---------------------------------------------------------------------------
// Reference comparison at (2.9, 3.6)
// ---------------------------------------------------------------------------

ComparisonReport reference_comparison(double tolerance) {
    const double r = 2.9, R = 3.6;
    FrequencyReport report = total_frequency(r, R, Event::both_greater);

    // printed reference rows, grouped exactly as the source table
    struct Ref {
        CellRange range;
        double printed;
    };
    const std::vector<Ref> refs = {
        {{1, 1, 1, 1}, 0.047},  {{1, 1, 2, 2}, 0.025},   {{1, 1, 3, -1}, 0.106},
        {{2, 2, 1, 1}, 0.025},  {{2, 2, 2, 2}, 0.013},   {{2, 2, 3, 3}, 0.090},
        {{2, 2, 4, -1}, 0.044}, {{3, -1, 1, 1}, 0.097},  {{3, -1, 2, 2}, 0.050},
        {{3, -1, 3, 3}, 0.034}, {{3, -1, 4, -1}, 0.115},
    };

    auto row_measure = [&](const CellRange& range) {
        double m = 0.0;
        std::optional<CaseLabel> label;
        for (const auto& entry : report.per_cell) {
            bool a_in = entry.range.a_lo >= range.a_lo &&
                        (range.a_infinite() || (!entry.range.a_infinite() &&
                                                entry.range.a_hi <= range.a_hi));
            bool b_in = entry.range.b_lo >= range.b_lo &&
                        (range.b_infinite() || (!entry.range.b_infinite() &&
                                                entry.range.b_hi <= range.b_hi));
            if (a_in && b_in) {
                m += entry.measure.scaled;
                label = entry.measure.case_label;
            }
        }
        return std::make_pair(m, label.value_or(CaseLabel::v));
    };

    ComparisonReport out;
    out.tolerance = tolerance;
    for (const auto& ref : refs) {
        auto [m, label] = row_measure(ref.range);
        ComparisonRow row;
        row.range = ref.range;
        row.label = label;
        row.computed_value = m / kLog2;
        row.computed_scaled = m;
        row.printed = ref.printed;
        double d_freq = std::abs(row.computed_value - ref.printed);
        double d_scaled = std::abs(row.computed_scaled - ref.printed);
        row.interpretation = d_freq <= d_scaled ? "freq" : "scaled";
        row.delta = std::min(d_freq, d_scaled);
        row.flagged = row.delta > tolerance;
        out.rows.push_back(std::move(row));
    }
    out.computed_total = report.total;
    out.printed_total = 0.64;
    out.computed_conditional = report.conditional_mtong;
    out.printed_conditional = 0.31;
    return out;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string format_sig(double x, int sig) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", sig, x);
    return buf;
}

namespace {

nlohmann::json measure_json(const RegionMeasure& m) {
    nlohmann::json j;
    j["value"] = m.value;
    j["scaled"] = m.scaled;
    j["method"] = to_string(m.method);
    if (m.rectangle) j["rectangle"] = {m.rectangle->first, m.rectangle->second};
    if (m.case_label) j["case_label"] = to_string(*m.case_label);
    if (m.stderr_estimate) j["stderr"] = *m.stderr_estimate;
    return j;
}

}  // namespace

std::string to_json_string(const FrequencyReport& report) {
    nlohmann::json j;
    j["r"] = report.r;
    j["R"] = report.R;
    j["event"] = to_string(report.event);
    j["total"] = report.total;
    j["conditional_mtong"] = report.conditional_mtong;
    j["per_cell"] = nlohmann::json::array();
    for (const auto& entry : report.per_cell) {
        nlohmann::json cell = measure_json(entry.measure);
        cell["a"] = entry.range.a_text();
        cell["b"] = entry.range.b_text();
        if (entry.theorem_case != 0) cell["theorem_case"] = entry.theorem_case;
        j["per_cell"].push_back(std::move(cell));
    }
    return j.dump();
}

std::string to_csv_string(const FrequencyReport& report, int sig_digits) {
    std::ostringstream out;
    out << "a_n,a_n+1,case,frequency\n";
    for (const auto& entry : report.per_cell) {
        out << entry.range.a_text() << ',' << entry.range.b_text() << ','
            << (entry.measure.case_label ? to_string(*entry.measure.case_label) : "")
            << ',' << format_sig(entry.measure.value, sig_digits) << '\n';
    }
    out << "total,,," << format_sig(report.total, sig_digits) << '\n';
    return out.str();
}

std::string to_json_string(const ComparisonReport& report) {
    nlohmann::json j;
    j["tolerance"] = report.tolerance;
    j["computed_total"] = report.computed_total;
    j["printed_total"] = report.printed_total;
    j["computed_conditional_mtong"] = report.computed_conditional;
    j["printed_conditional_mtong"] = report.printed_conditional;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json rj;
        rj["a"] = row.range.a_text();
        rj["b"] = row.range.b_text();
        rj["case_label"] = to_string(row.label);
        rj["computed_value"] = row.computed_value;
        rj["computed_scaled"] = row.computed_scaled;
        rj["printed"] = row.printed;
        rj["delta"] = row.delta;
        rj["interpretation"] = row.interpretation;
        rj["flagged"] = row.flagged;
        j["rows"].push_back(std::move(rj));
    }
    return j.dump();
}

std::string to_csv_string(const ComparisonReport& report, int sig_digits) {
    std::ostringstream out;
    out << "a_n,a_n+1,case,frequency,scaled,printed,delta,interpretation,flagged\n";
    for (const auto& row : report.rows) {
        out << row.range.a_text() << ',' << row.range.b_text() << ','
            << to_string(row.label) << ',' << format_sig(row.computed_value, sig_digits)
            << ',' << format_sig(row.computed_scaled, sig_digits) << ','
            << format_sig(row.printed, sig_digits) << ','
            << format_sig(row.delta, sig_digits) << ',' << row.interpretation << ','
            << (row.flagged ? "yes" : "no") << '\n';
    }
    out << "total,,," << format_sig(report.computed_total, sig_digits) << ",,"
        << format_sig(report.printed_total, sig_digits) << ","
        << format_sig(std::abs(report.computed_total - report.printed_total),
                      sig_digits)
        << ",,\n";
    out << "conditional_mtong,,,"
        << format_sig(report.computed_conditional, sig_digits) << ",,"
        << format_sig(report.printed_conditional, sig_digits) << ","
        << format_sig(
               std::abs(report.computed_conditional - report.printed_conditional),
               sig_digits)
        << ",,\n";
    return out.str();
}

}  // namespace cfb
