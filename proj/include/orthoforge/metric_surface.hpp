#pragma once

// A hexagon decomposition plus one positive length per arc pins down a
// hyperbolic metric.  This layer evaluates everything that is a closed-form
// function of those coordinates: hexagon side lengths, per-component and
// total boundary length, the gradient of the total, and the restriction of
// the total to a single coordinate.

#include <array>
#include <functional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "orthoforge/hexagon_trig.hpp"
#include "orthoforge/surface_combinatorics.hpp"

namespace orthoforge {

struct MetricSurface {
    HexagonDecomposition decomposition;
    std::vector<double> arc_lengths;  // indexed like arc_gluings
};

// Structural validation plus positivity of every arc length.
Signature validate(const MetricSurface& X);

// Arc ids sitting at slots (0, 2, 4) of each hexagon.
std::vector<std::array<int, 3>> hexagon_arcs(const HexagonDecomposition& d);

// Six side lengths of the hexagon whose arc slots 0, 2, 4 carry (a, b, c).
// Odd slot 2k+1 holds the side opposite the arc at slot (2k+4) mod 6:
//   [a, opp(c|a,b), b, opp(a|b,c), c, opp(b|c,a)].
template <class Real>
std::array<Real, 6> hexagon_sides(const Real& a, const Real& b, const Real& c) {
    return {a,
            hexagon::opposite_side(c, a, b),
            b,
            hexagon::opposite_side(a, b, c),
            c,
            hexagon::opposite_side(b, c, a)};
}

// Sum of all boundary side lengths; the surface's total boundary length.
double total_boundary_length(const MetricSurface& X);

// One length per boundary cycle, in boundary_cycles order.
std::vector<double> boundary_component_lengths(const MetricSurface& X);

// Partial derivatives of total_boundary_length in each arc length.  An arc
// lying on one hexagon with both slots contributes that hexagon's term twice.
std::vector<double> grad_total_boundary(const MetricSurface& X);

struct ProfileCritical {
    double y = 0;            // arc length at the critical point
    bool is_minimum = false; // otherwise an inflection
};

struct SingleVariableProfile {
    std::function<double(double)> value;  // y -> total boundary length
    std::vector<ProfileCritical> critical_points;  // ascending in y
};

// Restriction of the total boundary length to arc coordinate `arc`, other
// coordinates frozen.  Critical points come from a cubic in cosh(y) whose
// root z = 1 is discarded; at most two remain.
SingleVariableProfile single_variable_profile(const MetricSurface& X, int arc);

// Critical arc lengths when the two slots of the varying arc lie in distinct
// hexagons with flanking arc lengths (l1, l2) and (j1, j2).  Exposed for
// direct verification; ascending order.
std::vector<double> profile_critical_lengths(double l1, double l2, double j1, double j2);

// JSON surface format with the lengths field required:
// {"hexagons": N, "gluings": [...], "lengths": {"0": x0, ...}}.
nlohmann::json surface_to_json(const MetricSurface& X);
MetricSurface surface_from_json(const nlohmann::json& j);

}  // namespace orthoforge
