#include "cfb/bounds.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace cfb {

std::string to_string(CaseLabel label) {
    switch (label) {
        case CaseLabel::i: return "i";
        case CaseLabel::ii: return "ii";
        case CaseLabel::iii: return "iii";
        case CaseLabel::iv: return "iv";
        case CaseLabel::v: return "v";
        case CaseLabel::vi_a: return "vi_a";
        case CaseLabel::vi_b: return "vi_b";
        case CaseLabel::vi_c: return "vi_c";
        case CaseLabel::vi_d: return "vi_d";
    }
    return "?";
}

CaseLabel case_label_from_string(const std::string& s) {
    for (auto label : {CaseLabel::i, CaseLabel::ii, CaseLabel::iii, CaseLabel::iv,
                       CaseLabel::v, CaseLabel::vi_a, CaseLabel::vi_b, CaseLabel::vi_c,
                       CaseLabel::vi_d}) {
        if (to_string(label) == s) return label;
    }
    throw std::invalid_argument("unknown case label: " + s);
}

CaseLabel classify(long a, long b, double r, double R) {
    auto c = curve_config(a, b, r, R);
    double ra = r - static_cast<double>(a);
    double Rb = R - static_cast<double>(b);
    // Case (v) first: both curves miss the rectangle, so the strip
    // conditions of (i)-(iv) can fire vacuously there.
    if (c.F < 1.0 / (a + 1) && c.G < 1.0 / (b + 1)) return CaseLabel::v;
    if (ra >= c.G && Rb < c.F) return ra > 1.0 / b ? CaseLabel::i : CaseLabel::ii;
    if (ra < c.G && Rb >= c.F) return Rb > 1.0 / a ? CaseLabel::iii : CaseLabel::iv;
    bool f_high = ra >= 1.0 / b;  // f reaches past the right edge
    bool g_high = Rb >= 1.0 / a;  // g enters through the top edge
    if (f_high && g_high) return CaseLabel::vi_a;
    if (f_high) return CaseLabel::vi_b;
    if (g_high) return CaseLabel::vi_c;
    return CaseLabel::vi_d;
}

bool lower_region_nonempty(long a, long b, double r, double R) {
    auto c = curve_config(a, b, r, R);
    double bottom = 1.0 / (a + 1);
    // Both f and g decrease in t, so min(f,g) is largest at the left edge,
    // where f = F and g = R - b.
    return c.F > bottom && (R - static_cast<double>(b)) > bottom;
}

BoundResult lower_bound_D(long a, long b, double r, double R) {
    if (!lower_region_nonempty(a, b, r, R))
        throw empty_region_error("no point of Delta_{a,b} has D_{n-2} < r and D_n < R");
    auto c = curve_config(a, b, r, R);
    double ra = r - static_cast<double>(a);
    double Rb = R - static_cast<double>(b);
    double tong = m_tong(a, b, r, R);
    CaseLabel label = classify(a, b, r, R);
    if (ra >= c.G && Rb < c.F)
        return {(b + 1) / Rb, BoundKind::lower_D, 1, label, tong};
    if (ra < c.G && Rb >= c.F)
        return {(a + 1) / ra, BoundKind::lower_D, 2, label, tong};
    return {tong, BoundKind::lower_D, 3, label, tong};
}

BoundResult upper_bound_D(long a, long b, double r, double R) {
    auto c = curve_config(a, b, r, R);
    double ra = r - static_cast<double>(a);
    double Rb = R - static_cast<double>(b);
    double tong = m_tong(a, b, r, R);
    CaseLabel label = classify(a, b, r, R);
    if (ra >= c.G && Rb < c.F)
        return {(b + 1) / c.F, BoundKind::upper_D, 1, label, tong};
    if (ra < c.G && Rb >= c.F)
        return {(a + 1) / c.G, BoundKind::upper_D, 2, label, tong};
    if (ra < 1.0 / (b + 1) && Rb < 1.0 / (a + 1))
        return {static_cast<double>((a + 1) * (b + 1)), BoundKind::upper_D, 3, label, tong};
    return {tong, BoundKind::upper_D, 4, label, tong};
}

CPrimeConfig c_prime_config(long a, long b, double t, double T) {
    double ad = static_cast<double>(a), bd = static_cast<double>(b);
    return {(bd + 1.0) / ((ad * bd + ad + 1.0) * t - 1.0),
            (ad + 1.0) / ((ad * bd + bd + 1.0) * T - 1.0),
            t + T + ad * bd * t * T - 2.0};
}

namespace {

void check_c_domain(double t, double T) {
    if (!(t > 1.0 && t < 2.0 && T > 1.0 && T < 2.0))
        throw std::domain_error("C-bounds require t, T in (1,2)");
}

double c_case3_value(double t, double T, double Lp) {
    double prod = (t - 1.0) * (T - 1.0);
    return 1.0 + (Lp - std::sqrt(Lp * Lp - 4.0 * prod)) / (2.0 * prod);
}

}  // namespace

BoundResult upper_bound_C(long a, long b, double t, double T) {
    check_c_domain(t, T);
    auto p = c_prime_config(a, b, t, T);
    double ha = 1.0 / (t - 1.0) - static_cast<double>(a);
    double hb = 1.0 / (T - 1.0) - static_cast<double>(b);
    double tong = tong_K(a, b, t, T);
    CaseLabel label = classify(a, b, 1.0 / (t - 1.0), 1.0 / (T - 1.0));
    if (ha >= p.Gp && hb < p.Fp)
        return {T / ((b + 1) * (T - 1.0)), BoundKind::upper_C, 1, label, tong};
    if (ha < p.Gp && hb >= p.Fp)
        return {t / ((a + 1) * (t - 1.0)), BoundKind::upper_C, 2, label, tong};
    return {c_case3_value(t, T, p.Lp), BoundKind::upper_C, 3, label, tong};
}

BoundResult lower_bound_C(long a, long b, double t, double T) {
    // Mirrors the four-case structure of the D upper bound under
    // r = 1/(t-1), R = 1/(T-1). The printed case-2 condition of the second
    // C-theorem duplicates case 1; the transform resolves it.
    check_c_domain(t, T);
    auto p = c_prime_config(a, b, t, T);
    double ha = 1.0 / (t - 1.0) - static_cast<double>(a);
    double hb = 1.0 / (T - 1.0) - static_cast<double>(b);
    double tong = tong_K(a, b, t, T);
    CaseLabel label = classify(a, b, 1.0 / (t - 1.0), 1.0 / (T - 1.0));
    if (ha >= p.Gp && hb < p.Fp)
        return {1.0 + p.Fp / (b + 1), BoundKind::lower_C, 1, label, tong};
    if (ha < p.Gp && hb >= p.Fp)
        return {1.0 + p.Gp / (a + 1), BoundKind::lower_C, 2, label, tong};
    if (ha < 1.0 / (b + 1) && hb < 1.0 / (a + 1))
        return {1.0 + 1.0 / static_cast<double>((a + 1) * (b + 1)),
                BoundKind::lower_C, 3, label, tong};
    return {c_case3_value(t, T, p.Lp), BoundKind::lower_C, 4, label, tong};
}

double tong_K(long a, long b, double t, double T) {
    double sum = 1.0 / (t - 1.0) + 1.0 / (T - 1.0) +
                 static_cast<double>(a) * static_cast<double>(b) * t * T;
    return 0.5 * (sum + std::sqrt(sum * sum - 4.0 / ((t - 1.0) * (T - 1.0))));
}

// ---------------------------------------------------------------------------
// Witness construction
// ---------------------------------------------------------------------------

namespace {

// Canonical CF digits of a double, truncated; returns a nearby exact rational
// value together with its digit list.
struct RationalizedPoint {
    Rational value;
    std::vector<BigInt> digits;
};

RationalizedPoint rationalize_in_unit(double x, int max_digits) {
    DigitSequence d = expand(rational_from_double(x), max_digits);
    auto digits = normalize_digits(d.digits);
    RationalizedPoint out;
    out.digits = digits;
    out.value = bracket_value(BigInt(0), digits);
    return out;
}

struct Candidate {
    double t, v;
};

Candidate candidate_point(long a, long b, double r, double R, Direction dir,
                          int theorem_case, const CurveConfig& c, double off) {
    double tl = 1.0 / (b + 1), tr = 1.0 / b;
    double vb = 1.0 / (a + 1), vt = 1.0 / a;
    auto f = [&](double t) { return f_curve(a, r, t); };
    auto g = [&](double t) { return g_curve(b, R, t); };

    if (dir == Direction::Below) {
        switch (theorem_case) {
            case 1: {  // extreme point (1/(b+1), R-b) on g
                double t = std::min(tl * (1.0 + off), 0.5 * (tl + tr));
                double v = std::min(f(t), g(t)) * (1.0 - off);
                return {t, v};
            }
            case 2: {  // extreme point (r-a, 1/(a+1)) on f
                double t = std::max((r - a) * (1.0 - off), tl * (1.0 + 1e-12));
                double gap = std::min(f(t), g(t)) - vb;
                double v = vb + std::min(off * vb, 0.5 * gap);
                return {t, v};
            }
            default: {  // intersection point (S, f(S))
                return {c.S, c.fS * (1.0 - off)};
            }
        }
    }
    switch (theorem_case) {
        case 1: {  // (1/(b+1), F) on f
            double t = std::min(tl * (1.0 + off), 0.5 * (tl + tr));
            double v = std::min(f(t) * (1.0 + off), 0.5 * (f(t) + vt));
            return {t, v};
        }
        case 2: {  // (G, 1/(a+1)) on g
            double t = std::min(c.G * (1.0 + off), 0.5 * (c.G + tr));
            double v = std::min(vb * (1.0 + off), 0.5 * (vb + vt));
            return {t, v};
        }
        case 3: {  // lower-left corner
            double t = std::min(tl * (1.0 + off), 0.5 * (tl + tr));
            double v = std::min(vb * (1.0 + off), 0.5 * (vb + vt));
            return {t, v};
        }
        default: {  // (S, f(S))
            return {c.S, std::min(c.fS * (1.0 + off), 0.5 * (c.fS + vt))};
        }
    }
}

}  // namespace

Witness witness(long a, long b, double r, double R, Direction direction, double eps) {
    if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
    BoundResult target = direction == Direction::Below ? lower_bound_D(a, b, r, R)
                                                       : upper_bound_D(a, b, r, R);
    auto c = curve_config(a, b, r, R);
    Rational r_exact = rational_from_double(r);
    Rational R_exact = rational_from_double(R);
    Rational a_q(a), b_q(b);

    double off = 0.25 * eps;
    for (int attempt = 0; attempt < 30; ++attempt, off *= 0.25) {
        Candidate cand =
            candidate_point(a, b, r, R, direction, target.theorem_case, c, off);
        if (!(cand.t > 0.0 && cand.t < 1.0 && cand.v > 0.0 && cand.v < 1.0)) continue;

        auto tq = rationalize_in_unit(cand.t, 48);
        auto vq = rationalize_in_unit(cand.v, 48);
        if (tq.digits.size() < 2 || vq.digits.size() < 2) continue;
        if (tq.digits.front() != b || vq.digits.front() != a) continue;

        // exact hypotheses at (t_n, v_n) = (tq, vq)
        Rational dn1 = Rational(1) / (tq.value * vq.value);
        Rational denom_prev = Rational(1) - a_q * vq.value;
        Rational denom_next = Rational(1) - b_q * tq.value;
        if (denom_prev <= 0 || denom_next <= 0) continue;
        Rational d_prev = (a_q + tq.value) * vq.value / denom_prev;
        Rational d_next = (b_q + vq.value) * tq.value / denom_next;
        bool hypotheses = direction == Direction::Below
                              ? (d_prev < r_exact && d_next < R_exact)
                              : (d_prev > r_exact && d_next > R_exact);
        if (!hypotheses) continue;
        if (std::abs(dn1.get_d() - target.value) >= eps * target.value) continue;

        Witness w;
        w.n = static_cast<long>(vq.digits.size());
        w.seq.a0 = 0;
        w.seq.digits.assign(vq.digits.rbegin(), vq.digits.rend());
        w.seq.digits.insert(w.seq.digits.end(), tq.digits.begin(), tq.digits.end());
        w.seq.exactness = Exactness::ExactFinite;
        w.seq.n_safe = w.seq.size();
        w.x = fold(w.seq);
        w.d_nm1 = dn1;
        w.bound = target.value;
        w.theorem_case = target.theorem_case;
        return w;
    }
    throw unreachable_eps_error("witness: eps below reachable granularity");
}

std::string to_json_string(const BoundResult& res, long a, long b, double r, double R) {
    nlohmann::json j;
    j["a"] = a;
    j["b"] = b;
    j["r"] = r;
    j["R"] = R;
    switch (res.kind) {
        case BoundKind::lower_D: j["kind"] = "lower_d"; break;
        case BoundKind::upper_D: j["kind"] = "upper_d"; break;
        case BoundKind::lower_C: j["kind"] = "lower_c"; break;
        case BoundKind::upper_C: j["kind"] = "upper_c"; break;
    }
    j["case"] = res.theorem_case;
    j["label"] = to_string(res.label);
    j["value"] = res.value;
    j["tong_value"] = res.tong_value;
    return j.dump();
}

}  // namespace cfb
