#pragma once

// Closed-form trigonometry of right-angled hyperbolic hexagons, plus the
// scalar bound formulas built from it.  Everything here is a pure function.
//
// Conventions: a right-angled hexagon is determined by three alternating
// side lengths (a, b, c) > 0; capital letters are the cosh values
// A = cosh a, etc.  The side opposite a has length alpha with
//   cosh(alpha) = (A + B C) / sqrt((B^2 - 1)(C^2 - 1)).
//
// All formulas are evaluated in a cancellation-free log form so they stay
// accurate when side lengths differ by hundreds of units.

#include <cmath>
#include <limits>

#include "orthoforge/errors.hpp"

namespace orthoforge {
namespace hexagon {

namespace detail {

// log(cosh x) and log(sinh x) for x > 0 without overflow.
template <class Real>
Real log_cosh(const Real& x) {
    using std::exp;
    using std::log1p;
    static const Real ln2 = Real(0.6931471805599453094172321214581766L);
    return x - ln2 + log1p(exp(Real(-2) * x));
}

template <class Real>
Real log_sinh(const Real& x) {
    using std::exp;
    using std::log1p;
    static const Real ln2 = Real(0.6931471805599453094172321214581766L);
    return x - ln2 + log1p(-exp(Real(-2) * x));
}

// log(e^u + e^v) without overflow.
template <class Real>
Real log_add(const Real& u, const Real& v) {
    using std::exp;
    using std::log1p;
    if (u >= v) return u + log1p(exp(v - u));
    return v + log1p(exp(u - v));
}

}  // namespace detail

// The polynomial Q = A^2 + B^2 + C^2 + 2ABC - 1 that appears under every
// square root below.  Positive for all A, B, C > 1 (no cancellation).
template <class Real>
Real under_root(const Real& A, const Real& B, const Real& C) {
    return A * A + B * B + C * C + Real(2) * A * B * C - Real(1);
}

// Length of the side opposite the side of length a, given the alternating
// triple (a, b, c).  Computed as
//   log((A + BC + sqrt(Q)) / (sinh b * sinh c)),
// every term positive, so no digits are lost however lopsided the triple.
// Falls back to pure log-space arithmetic if the cosh values overflow.
template <class Real>
Real opposite_side(const Real& a, const Real& b, const Real& c) {
    using std::cosh;
    using std::isfinite;
    using std::log;
    using std::sinh;
    using std::sqrt;
    const Real A = cosh(a), B = cosh(b), C = cosh(c);
    const Real BC = B * C;
    const Real Q = under_root(A, B, C);
    if (isfinite(Q) && isfinite(BC)) {
        return log((A + BC + sqrt(Q)) / (sinh(b) * sinh(c)));
    }
    // Overflow regime (only reachable in double): -1 is negligible in Q.
    using detail::log_add;
    using detail::log_cosh;
    using detail::log_sinh;
    static const Real ln2 = Real(0.6931471805599453094172321214581766L);
    const Real la = log_cosh(a), lb = log_cosh(b), lc = log_cosh(c);
    const Real lQ =
        log_add(log_add(Real(2) * la, Real(2) * lb),
                log_add(Real(2) * lc, ln2 + la + lb + lc));
    const Real lnum = log_add(log_add(la, lb + lc), lQ / Real(2));
    return lnum - log_sinh(b) - log_sinh(c);
}

// Sum of the three sides not in the defining triple, as a function of the
// cosh values:  s(A,B,C) = alpha + beta + gamma.  Symmetric in A, B, C.
template <class Real>
Real side_sum_cosh(const Real& A, const Real& B, const Real& C) {
    using std::log;
    using std::sqrt;
    const Real rootQ = sqrt(under_root(A, B, C));
    const Real pa = sqrt((B * B - Real(1)) * (C * C - Real(1)));
    const Real pb = sqrt((A * A - Real(1)) * (C * C - Real(1)));
    const Real pc = sqrt((A * A - Real(1)) * (B * B - Real(1)));
    return log((A + B * C + rootQ) / pa) + log((B + A * C + rootQ) / pb) +
           log((C + A * B + rootQ) / pc);
}

// Same sum from the side lengths; more accurate near 0 and overflow-safe.
template <class Real>
Real side_sum_of_lengths(const Real& a, const Real& b, const Real& c) {
    return opposite_side(a, b, c) + opposite_side(b, c, a) +
           opposite_side(c, a, b);
}

// Partial derivative of side_sum_cosh in its first argument:
//   ds/dA = (A - 1 - B - C) / ((A - 1) sqrt(Q)).
template <class Real>
Real side_sum_partial(const Real& A, const Real& B, const Real& C) {
    using std::sqrt;
    return (A - Real(1) - B - C) /
           ((A - Real(1)) * sqrt(under_root(A, B, C)));
}

// Length of the perpendicular dropped from the side of length a onto the
// opposite side:  cosh(h) = sqrt(Q)/sinh(a).  Log form uses
//   sinh(h) = sqrt(B^2 + C^2 + 2ABC)/sinh(a)
// (difference Q - sinh^2 a simplified exactly, so again no cancellation).
template <class Real>
Real altitude(const Real& a, const Real& b, const Real& c) {
    using std::cosh;
    using std::log;
    using std::sinh;
    using std::sqrt;
    const Real A = cosh(a), B = cosh(b), C = cosh(c);
    const Real Q = under_root(A, B, C);
    const Real S = B * B + C * C + Real(2) * A * B * C;
    return log((sqrt(Q) + sqrt(S)) / sinh(a));
}

// The length y paired with x by  cosh y = cosh x / (cosh x - 1), i.e. the
// relation between the two alternating side lengths of an equilateral
// right-angled hexagon.  Stable form: y = 2 asinh(1/(2 sinh(x/2))).
// This map is an involution and strictly decreasing.
template <class Real>
Real dual_side_length(const Real& x) {
    using std::asinh;
    using std::exp;
    using std::isfinite;
    using std::sinh;
    const Real s = sinh(x / Real(2));
    if (isfinite(s)) return Real(2) * asinh(Real(1) / (Real(2) * s));
    const Real t = exp(-x / Real(2));  // sinh overflowed: use e^{-x/2}/(1-e^{-x})
    return Real(2) * asinh(t / (Real(1) - t * t));
}

// ---- validated double-precision front ends ------------------------------

// Throws domain_error unless (g, n) is the signature of a compact
// orientable hyperbolic surface with boundary: g >= 0, n >= 1, 2g-2+n > 0.
void require_hyperbolic_signature(int g, int n);

double opposite_side(double a, double b, double c);
double side_sum(double A, double B, double C);
double side_sum_partial(double A, double B, double C);
double altitude(double a, double b, double c);

// Half-width of the embedded collar around a simple closed geodesic of the
// given length: asinh(1/sinh(len/2)).
double collar_width(double len);

// Upper bound for the orthosystole over all surfaces of signature (g, n)
// with total boundary length L:
//   2 asinh(1/(2 sinh(L/(24g - 24 + 12n)))).
double bavard_bound(int g, int n, double L);

// Sharp equal-boundary bound for signature (g, 2) with both components of
// length ell:  acosh(cosh(ell/6g)/(cosh(ell/6g) - 1)).  Equals
// bavard_bound(g, 2, 2 ell).
double equal_boundary_bound(int g, double ell);

}  // namespace hexagon
}  // namespace orthoforge
