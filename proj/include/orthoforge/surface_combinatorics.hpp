#pragma once

// Combinatorial hexagon decompositions as gluing data.
//
// A surface of signature (g, n) cut along a maximal arc system falls apart
// into 4g-4+2n right-angled hexagons.  Each hexagon has six side slots,
// numbered 0..5 counterclockwise; even slots lie on arcs (glued in pairs,
// orientation-reversing), odd slots lie on the surface boundary.  The whole
// topology is the perfect matching on even slots.

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "orthoforge/errors.hpp"

namespace orthoforge {

struct Slot {
    int hex = 0;
    int side = 0;
    auto operator<=>(const Slot&) const = default;
};

struct HexagonDecomposition {
    int num_hexagons = 0;
    // One entry per arc; entry i glues arc_gluings[i][0] to arc_gluings[i][1].
    // Arc ids elsewhere in the library are indices into this vector.
    std::vector<std::array<Slot, 2>> arc_gluings;
};

struct Signature {
    int g = 0;
    int n = 0;
    auto operator<=>(const Signature&) const = default;
};

// Odd slots traversed by one boundary component, in traversal order,
// starting from the lexicographically smallest slot.
using BoundaryCycle = std::vector<Slot>;

// Checks every structural invariant (perfect matching on even slots,
// connectedness, consistent counts) and returns the derived signature.
// Throws domain_error with a specific message otherwise.
Signature validate(const HexagonDecomposition& d);

// The n boundary cycles, ordered by their smallest slot.
std::vector<BoundaryCycle> boundary_cycles(const HexagonDecomposition& d);

// Odd-slot successor along its boundary component: cross the gluing of the
// next even slot counterclockwise and continue to the first odd slot there.
Slot next_boundary_slot(const HexagonDecomposition& d, Slot odd);

// partner[h*6+s] of each glued even slot; odd slots map to {-1,-1}.
std::vector<Slot> partner_table(const HexagonDecomposition& d);

struct FillCensus {
    int disks = 0;
    int annuli = 0;
    int peripheral_annuli = 0;
    int other = 0;
    bool fills = false;  // no "other" pieces and every annulus peripheral
};

// Cuts the surface along the given arcs (indices into arc_gluings) and
// classifies the complementary pieces by Euler characteristic and boundary
// structure.  chi of a piece with k hexagons and m interior arcs is k - m.
FillCensus fills(const HexagonDecomposition& d, const std::vector<int>& arc_subset);

// Minimal size of a filling arc system on signature (g, n):
// 2g if n = 1, else 2g-2+n.
int min_filling_size(int g, int n);

// JSON surface format: {"hexagons": N, "gluings": [[[h,s],[h,s]], ...]}.
// The optional "lengths" field is handled by the metric layer.
nlohmann::json decomposition_to_json(const HexagonDecomposition& d);
HexagonDecomposition decomposition_from_json(const nlohmann::json& j);

}  // namespace orthoforge
