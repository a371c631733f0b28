#ifndef CFB_NATURAL_EXTENSION_HPP
#define CFB_NATURAL_EXTENSION_HPP

#include <string>

#include "cfb/rational.hpp"

namespace cfb {

/// T(x) = {1/x}, T(0) = 0.
double gauss_map(double x);
Rational gauss_map(const Rational& x);

/// A point (t, v) of Omega = [0,1) x [0,1].
struct OrbitPoint {
    double t;
    double v;
};

struct OrbitPointExact {
    Rational t;
    Rational v;
};

/// The natural-extension map (t, v) -> ({1/t}, 1/(a1(t) + v)).
/// t = 0 is the fixed point of T and has no extension image.
OrbitPoint ext_map(const OrbitPoint& p);
OrbitPointExact ext_map(const OrbitPointExact& p);

/// Invariant density 1 / (log 2 * (1 + t v)^2).
double density(double t, double v);

/// f_{a,r}(t) = r / (a(r+1) + t)
double f_curve(long a, double r, double t);

/// g_{b,R}(t) = R/t - b(R+1)
double g_curve(long b, double R, double t);

/// Derived geometry of the curves f_{a,r} and g_{b,R} on the rectangle
/// Delta_{a,b} = [1/(b+1), 1/b) x [1/(a+1), 1/a):
///   F  = f(1/(b+1))              (f at the left edge)
///   G  = t with g(G) = 1/(a+1)   (g at the bottom edge)
///   G1 = t with g(G1) = 1/a      (g at the top edge)
///   S  = the unique positive intersection abscissa of f and g
///   fS = f(S) = g(S)
///   L  = a b (r+1)(R+1),  w = sqrt(4 L R + (r - R + L)^2)
struct CurveConfig {
    long a, b;
    double r, R;
    double F, G, G1, S, fS, L, w;
};

CurveConfig curve_config(long a, long b, double r, double R);

/// Tong's bound value; equals D_{n-1} at the intersection point (S, f(S)).
double m_tong(long a, long b, double r, double R);

std::string to_json_string(const CurveConfig& c);

/// nu-measure of an axis-aligned rectangle [t1,t2] x [v1,v2] in Omega
/// (closed form of the density integral).
double rect_measure(double t1, double t2, double v1, double v2);

}  // namespace cfb

#endif
