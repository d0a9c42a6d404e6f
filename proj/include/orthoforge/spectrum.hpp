#pragma once

// Orthogeodesic spectrum of a metric hexagon-decomposed surface: the lengths
// of geodesic arcs meeting the boundary perpendicularly at both ends, one per
// homotopy class, enumerated up to a cutoff.

#include <cstdint>
#include <string>
#include <vector>

#include "orthoforge/metric_surface.hpp"

namespace orthoforge {

struct OrthoClass {
    Slot start{};                 // boundary side carrying the start foot
    Slot end{};                   // boundary side carrying the end foot
    std::vector<Slot> crossings;  // even-slot arc traversals of the dual path
    double length = 0;
    double start_param = 0;       // foot position along the start side
    double end_param = 0;         // foot position along the end side
};

struct SpectrumReport {
    std::vector<OrthoClass> classes;  // sorted by length
    double osys = 0;                  // shortest class length
    int okiss = 0;                    // its multiplicity within the tie window
    double cutoff_used = 0;
    double pruning_constant = 0;
};

struct SpectrumOptions {
    std::uint64_t max_nodes = 10'000'000;  // search size cap; exceeding it is an error
    int threads = 0;                       // worker count, 0 = hardware concurrency
    double tie_rel_tol = 1e-7;             // relative window for counting shortest ties
    bool funnel = true;                    // cross-section prune (switchable for A/B runs)
};

// Least distance between two arc-side lines within one hexagon.  Any
// orthogeodesic whose dual path crosses m arcs has length >= (m-1) times
// this constant, which makes the path search finite.
double pruning_constant(const MetricSurface& X);

// All orthogeodesic classes of length <= cutoff.  Throws domain_error for
// cutoff <= 0 and resource_error when the node budget is hit (a truncated
// report is never returned silently).
SpectrumReport enumerate_orthogeodesics(const MetricSurface& X, double cutoff,
                                        const SpectrumOptions& opt = {});

// Shortest class and its multiplicity.  The cutoff starts at the total
// boundary length bound for the signature, shrinks to the best find, and
// doubles if nothing was found below it; the value actually used is
// reported.
SpectrumReport orthosystole(const MetricSurface& X, const SpectrumOptions& opt = {});

// Half the orthosystole: how far the boundary collars embed.
double boundary_injectivity_radius(const MetricSurface& X, const SpectrumOptions& opt = {});

// True when the decomposition arcs are exactly the shortest classes.  Equal
// arc lengths admit a closed-form test; otherwise the spectrum is compared
// against the arc set.
bool verify_hexdec_orthosystoles(const MetricSurface& X, const SpectrumOptions& opt = {});

// CSV rows `length,start_hex,start_slot,end_hex,end_slot,crossings` with the
// crossings as `;`-joined `hex:slot` tokens, lengths at 12 significant
// digits.
std::string spectrum_csv(const SpectrumReport& r);

}  // namespace orthoforge
