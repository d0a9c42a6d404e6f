#pragma once

#include "orthoforge/metric_surface.hpp"

namespace orthoforge {

// Combinatorial templates.  All of them are deterministic: the same
// parameters always produce the same gluing list.

// The two-hexagon three-holed sphere.
HexagonDecomposition pants_decomposition();

// Genus g with one boundary component, realized by fan-triangulating a
// 4g-gon with standard side identifications.  g >= 1.
HexagonDecomposition fan_decomposition(int g);

// Edge-subdivision surgery on one arc: adds two hexagons and turns a
// signature (g,n) decomposition into (g,n+1).  The arc index addresses
// d.arc_gluings.
HexagonDecomposition split_arc(const HexagonDecomposition& d, int arc_index);

// A fixed decomposition for every admissible signature: the fan for (g,1)
// (the pants for (0,3)), then repeated arc splitting of arc 0.
HexagonDecomposition canonical_decomposition(int g, int n);

// Genus g with two boundary components where half the hexagons carry two
// boundary sides on one component and half on the other; with equal arc
// lengths both components get combinatorial length 6g.  g >= 1.
HexagonDecomposition bicolored_decomposition(int g);

// Signature (nm+1, n) decomposition invariant under a combinatorial order-n
// rotation; each boundary component has equal combinatorial length.
// n >= 1, m >= 0.
HexagonDecomposition symmetric_family(int n, int m);

// Metric constructions.

// The arc length of the all-arcs-equal surface with total boundary length L
// on a signature (g,n) decomposition.
double equal_arc_length(int g, int n, double L);

// Sets every arc of d to equal_arc_length; the result has total boundary
// length L and realizes the boundary-length bound on its orthosystole.
MetricSurface equal_length_surface(const HexagonDecomposition& d, double L);

// The unique three-holed sphere with the given cuff lengths; boundary
// component lengths come back as (l1, l2, l3) in component order.
MetricSurface pants_from_cuffs(double l1, double l2, double l3);

}  // namespace orthoforge
