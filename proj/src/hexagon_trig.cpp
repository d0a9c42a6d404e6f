#include "orthoforge/hexagon_trig.hpp"

#include <cmath>
#include <string>

namespace orthoforge {
namespace hexagon {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw domain_error(std::string(name) + " must be a positive finite length");
    }
}

void require_cosh_range(double v, const char* name) {
    if (!(v > 1.0) || !std::isfinite(v)) {
        throw domain_error(std::string(name) + " must be a finite cosh value > 1");
    }
}

}  // namespace

void require_hyperbolic_signature(int g, int n) {
    if (g < 0 || n < 1 || 2 * g - 2 + n <= 0) {
        throw domain_error("signature (" + std::to_string(g) + ", " + std::to_string(n) +
                           ") is not hyperbolic: need g >= 0, n >= 1, 2g - 2 + n > 0");
    }
}

double opposite_side(double a, double b, double c) {
    require_positive(a, "a");
    require_positive(b, "b");
    require_positive(c, "c");
    return opposite_side<double>(a, b, c);
}

double side_sum(double A, double B, double C) {
    require_cosh_range(A, "A");
    require_cosh_range(B, "B");
    require_cosh_range(C, "C");
    return side_sum_cosh<double>(A, B, C);
}

double side_sum_partial(double A, double B, double C) {
    require_cosh_range(A, "A");
    require_cosh_range(B, "B");
    require_cosh_range(C, "C");
    return side_sum_partial<double>(A, B, C);
}

double altitude(double a, double b, double c) {
    require_positive(a, "a");
    require_positive(b, "b");
    require_positive(c, "c");
    return altitude<double>(a, b, c);
}

double collar_width(double len) {
    require_positive(len, "len");
    double s = std::sinh(len / 2.0);
    if (std::isfinite(s)) return std::asinh(1.0 / s);
    return 2.0 * std::exp(-len / 2.0);  // asymptotic tail, sinh overflowed
}

double bavard_bound(int g, int n, double L) {
    require_hyperbolic_signature(g, n);
    require_positive(L, "L");
    return dual_side_length<double>(L / (6.0 * (2 * g - 2 + n)));
}

double equal_boundary_bound(int g, double ell) {
    if (g < 1) throw domain_error("equal_boundary_bound needs g >= 1");
    require_positive(ell, "ell");
    return dual_side_length<double>(ell / (6.0 * g));
}

}  // namespace hexagon
}  // namespace orthoforge
