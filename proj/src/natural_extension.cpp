#include "cfb/natural_extension.hpp"

#include <json.hpp>

#include <cmath>

namespace cfb {

double gauss_map(double x) {
    if (x == 0.0) return 0.0;
    double inv = 1.0 / x;
    return inv - std::floor(inv);
}

Rational gauss_map(const Rational& x) {
    if (x == 0) return Rational(0);
    Rational inv = Rational(1) / x;
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), inv.get_num().get_mpz_t(), inv.get_den().get_mpz_t());
    return inv - Rational(fl);
}

OrbitPoint ext_map(const OrbitPoint& p) {
    if (p.t == 0.0) throw std::domain_error("ext_map: t = 0 is a fixed point of T");
    double inv = 1.0 / p.t;
    double a1 = std::floor(inv);
    return {inv - a1, 1.0 / (a1 + p.v)};
}

OrbitPointExact ext_map(const OrbitPointExact& p) {
    if (p.t == 0) throw std::domain_error("ext_map: t = 0 is a fixed point of T");
    Rational inv = Rational(1) / p.t;
    BigInt a1;
    mpz_fdiv_q(a1.get_mpz_t(), inv.get_num().get_mpz_t(), inv.get_den().get_mpz_t());
    return {inv - Rational(a1), Rational(1) / (Rational(a1) + p.v)};
}

double density(double t, double v) {
    double s = 1.0 + t * v;
    return 1.0 / (std::log(2.0) * s * s);
}

double f_curve(long a, double r, double t) {
    return r / (static_cast<double>(a) * (r + 1.0) + t);
}

double g_curve(long b, double R, double t) {
    if (t <= 0.0) throw std::domain_error("g_curve: t must be positive");
    return R / t - static_cast<double>(b) * (R + 1.0);
}

CurveConfig curve_config(long a, long b, double r, double R) {
    CurveConfig c{};
    c.a = a;
    c.b = b;
    c.r = r;
    c.R = R;
    double ad = static_cast<double>(a), bd = static_cast<double>(b);
    c.F = r * (bd + 1.0) / (ad * (bd + 1.0) * (r + 1.0) + 1.0);
    c.G = R * (ad + 1.0) / ((ad + 1.0) * bd * (R + 1.0) + 1.0);
    c.G1 = R * ad / (ad * bd * (R + 1.0) + 1.0);
    // L first, then r - R + L, then the discriminant: keeps w stable for
    // large a*b where r - R would otherwise cancel.
    c.L = ad * bd * (r + 1.0) * (R + 1.0);
    double shifted = r - R + c.L;
    c.w = std::sqrt(4.0 * c.L * R + shifted * shifted);
    c.S = (-c.L + R - r + c.w) / (2.0 * bd * (R + 1.0));
    c.fS = f_curve(a, r, c.S);
    return c;
}

double m_tong(long a, long b, double r, double R) {
    double sum = 1.0 / r + 1.0 / R +
                 static_cast<double>(a) * static_cast<double>(b) *
                     (1.0 + 1.0 / r) * (1.0 + 1.0 / R);
    return 0.5 * (sum + std::sqrt(sum * sum - 4.0 / (r * R)));
}

std::string to_json_string(const CurveConfig& c) {
    nlohmann::json j;
    j["a"] = c.a;
    j["b"] = c.b;
    j["r"] = c.r;
    j["R"] = c.R;
    j["F"] = c.F;
    j["G"] = c.G;
    j["G1"] = c.G1;
    j["S"] = c.S;
    j["fS"] = c.fS;
    j["L"] = c.L;
    j["w"] = c.w;
    return j.dump();
}

double rect_measure(double t1, double t2, double v1, double v2) {
    // integral of 1/(1+tv)^2 over [t1,t2]x[v1,v2] is
    // log((1+t2 v2)(1+t1 v1) / ((1+t1 v2)(1+t2 v1)))
    double raw = std::log((1.0 + t2 * v2) * (1.0 + t1 * v1) /
                          ((1.0 + t1 * v2) * (1.0 + t2 * v1)));
    return raw / std::log(2.0);
}

}  // namespace cfb
