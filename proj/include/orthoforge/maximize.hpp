#pragma once

// Max-min optimization in arc-length coordinates: push the shortest arc of a
// hexagon decomposition as high as it will go while a boundary-length
// constraint holds.  Two constraint flavours are supported: fixed total
// boundary length (one scalar equation) and fixed per-component boundary
// lengths (one equation per boundary cycle).
//
// The objective min_i x_i is non-smooth exactly where the interesting optima
// sit (ties between arcs), so it is annealed through softmin surrogates
//   phi_T(x) = -T log sum_i exp(-x_i / T),     T = 1, 1e-1, ..., 1e-6,
// each stage running projected-gradient ascent.  After every trial step the
// constraint is restored: for the total-length problem by a 1-D Newton
// correction on the longest arc (falling back to the full gradient direction
// when that partial derivative degenerates), for fixed components by
// Gauss-Newton.  A step is accepted only if the current surrogate does not
// decrease, so phi_T is non-decreasing across accepted iterations.

#include <cstdint>
#include <functional>
#include <vector>

#include "orthoforge/metric_surface.hpp"
#include "orthoforge/spectrum.hpp"

namespace orthoforge {

struct OptimizeOptions {
    int stage_iteration_cap = 400;      // accepted-step budget per temperature
    double spread_tolerance = 1e-8;     // max arc - min arc at convergence
    double constraint_tolerance = 1e-10;
    // Observer called after each accepted step with the annealing stage and
    // the surrogate value; used to audit monotonicity.
    std::function<void(int stage, double phi)> on_accept;
};

struct OptimizeTrace {
    int iterations = 0;          // accepted steps over all stages
    double spread = 0;           // max arc - min arc at exit
    double constraint_residual = 0;
};

// Maximize min_i x_i subject to total_boundary_length = L.  The start is
// projected onto the constraint set first; it must be positive but need not
// be feasible.  Coordinates are kept in [1e-6, 60], which covers every total
// length this library targets.  Throws convergence_error (with the final
// spread and residual in the message) if the tolerances are not met within
// the stage caps.
MetricSurface maximize_total_constraint(const HexagonDecomposition& d, double L,
                                        const std::vector<double>& start,
                                        OptimizeTrace* trace = nullptr,
                                        const OptimizeOptions& opt = {});

// Maximize min_i x_i subject to boundary_component_lengths = ell (ordered
// like boundary_cycles).  Local method: the result is a feasible stationary
// point of the annealed objective, a local maximizer in practice; global
// optimality is only known for special symmetric targets.  For a pants
// decomposition the level set is a single point and the optimizer simply
// returns it.
MetricSurface maximize_fixed_boundaries(const HexagonDecomposition& d,
                                        const std::vector<double>& ell,
                                        const std::vector<double>& start,
                                        OptimizeTrace* trace = nullptr,
                                        const OptimizeOptions& opt = {});

// Per-component boundary lengths and their Jacobian in the arc coordinates;
// row i differentiates component i.  Exposed for direct verification of the
// optimizer's restoration step.
std::vector<std::vector<double>> boundary_length_jacobian(const MetricSurface& X);

// One damped-Newton constraint restoration onto total_boundary_length = L,
// preferring to move only coordinate `preferred` (the optimizer passes the
// longest arc).  Falls back to the full gradient direction when the single
// partial derivative is degenerate or stalls.  Returns success; on success
// |total - L| <= 1e-12 * max(1, |L|).
bool restore_total_length(const HexagonDecomposition& d, std::vector<double>& x,
                          double L, int preferred);

struct MaxCertificate {
    bool is_equal_lengths = false;  // arc spread below 1e-8
    int okiss = 0;
    bool okiss_maximal = false;     // okiss == 6g - 6 + 3n
    double osys_gap_to_bound = 0;   // equal-arc bound at this total - osys
};

// Spectrum-backed certificate for a claimed maximizer.  For the
// total-length problem, okiss_maximal == true certifies a global maximum.
MaxCertificate certify_local_max(const MetricSurface& X,
                                 const SpectrumOptions& opt = {});

// Arc indices whose length ties the orthosystole (relative window 1e-7).
// Empty when the shortest orthogeodesic is shorter than every arc, i.e. when
// the orthosystole is not realized by the decomposition itself.
std::vector<int> orthosystole_arc_set(const MetricSurface& X,
                                      const SpectrumReport& rep);

// Lower bound for the orthosystole maximum over signature (g, n) surfaces
// whose boundary components all have length ell, valid for g >= n >= 2:
// the equal-boundary value at genus floor(g / n).  Monotone in floor(g / n).
double fixed_boundary_lower_bound(int g, int n, double ell);

// Deterministic start vector: coordinates log-uniform in [0.1, 3], drawn
// from a fixed 64-bit generator so identical seeds give identical starts on
// every platform.
std::vector<double> random_start(int arcs, std::uint64_t seed);

struct MultiStartOptions {
    int starts = 1;
    std::uint64_t seed = 0;
    int threads = 0;               // 0 = hardware concurrency
    OptimizeOptions optimize;
};

struct MultiStartResult {
    MetricSurface surface;         // best converged optimizer
    int attempted = 0;
    int converged = 0;
    long long iterations = 0;      // accepted steps summed over all starts
};

// Run `starts` independent optimizations from random_start(seed), seed+1,
// ... in parallel and keep the best converged result: largest minimum arc,
// ties broken by lexicographically smallest coordinate vector, so the
// outcome does not depend on thread scheduling.  Throws convergence_error
// if no start converges.
MultiStartResult maximize_total_multistart(const HexagonDecomposition& d,
                                           double L,
                                           const MultiStartOptions& opt);
MultiStartResult maximize_fixed_multistart(const HexagonDecomposition& d,
                                           const std::vector<double>& ell,
                                           const MultiStartOptions& opt);

}  // namespace orthoforge
