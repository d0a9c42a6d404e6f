#include "orthoforge/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include <boost/multiprecision/mpfr.hpp>

#include "orthoforge/hexagon_trig.hpp"
#include "orthoforge/spectrum_engine.hpp"

namespace orthoforge {
namespace {

namespace bmp = boost::multiprecision;
using mpfr_real = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? (int)hw : 1;
}

double max_hexagon_perimeter(const MetricSurface& X) {
    double best = 0;
    for (const auto& arcs : hexagon_arcs(X.decomposition)) {
        const auto sides = hexagon_sides(X.arc_lengths[arcs[0]],
                                         X.arc_lengths[arcs[1]],
                                         X.arc_lengths[arcs[2]]);
        double p = 0;
        for (double s : sides) p += s;
        best = std::max(best, p);
    }
    return best;
}

template <class Real>
SpectrumReport run_search(const MetricSurface& X, double cutoff, bool shrink,
                          const SpectrumOptions& opt, int threads) {
    std::vector<Real> xs;
    xs.reserve(X.arc_lengths.size());
    for (double v : X.arc_lengths) xs.push_back(Real(v));
    const DevelopedSurface<Real> S = develop_surface<Real>(X.decomposition, xs);

    engine::SearchConfig cfg;
    cfg.shrink_to_shortest = shrink;
    cfg.funnel = opt.funnel;
    cfg.max_nodes = opt.max_nodes;
    cfg.threads = threads;
    const engine::SearchResult<Real> res =
        engine::search_spectrum<Real>(S, Real(cutoff), cfg);

    SpectrumReport rep;
    rep.cutoff_used = static_cast<double>(res.cutoff_used);
    rep.pruning_constant = static_cast<double>(res.delta);
    rep.classes.reserve(res.classes.size());
    for (const auto& rc : res.classes) {
        OrthoClass c;
        c.start = rc.start;
        c.end = rc.end;
        c.crossings = rc.crossings;
        c.length = static_cast<double>(rc.length);
        c.start_param = static_cast<double>(rc.t_start);
        c.end_param = static_cast<double>(rc.t_end);
        rep.classes.push_back(std::move(c));
    }
    if (rep.classes.empty()) {
        rep.osys = std::numeric_limits<double>::infinity();
        rep.okiss = 0;
    } else {
        rep.osys = rep.classes.front().length;
        rep.okiss = 0;
        for (const auto& c : rep.classes) {
            if (c.length <= rep.osys * (1 + opt.tie_rel_tol)) ++rep.okiss;
        }
    }
    return rep;
}

// Double precision first; if the hexagons are too large for it (frames carry
// cosh of the perimeter) or the run loses a sign, switch to multiprecision
// with working digits proportional to the largest perimeter, doubling on
// repeated failures.  Escalated runs stay single-threaded because the
// multiprecision default precision is per-thread state.
SpectrumReport run_adaptive(const MetricSurface& X, double cutoff, bool shrink,
                            const SpectrumOptions& opt) {
    const double pmax = max_hexagon_perimeter(X);
    if (pmax <= 250) {
        try {
            return run_search<double>(X, cutoff, shrink, opt, resolve_threads(opt.threads));
        } catch (const precision_failure&) {
            // fall through to multiprecision
        }
    }
    int digits = std::max(64, (int)std::ceil(2.5 * pmax * 0.43429448190325176) + 32);
    while (digits <= 40000) {
        try {
            mpfr_real::default_precision(digits);
            return run_search<mpfr_real>(X, cutoff, shrink, opt, 1);
        } catch (const precision_failure&) {
            digits *= 2;
        }
    }
    throw resource_error("spectrum search failed at the highest supported precision");
}

}  // namespace

double pruning_constant(const MetricSurface& X) {
    validate(X);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& arcs : hexagon_arcs(X.decomposition)) {
        const auto sides = hexagon_sides(X.arc_lengths[arcs[0]],
                                         X.arc_lengths[arcs[1]],
                                         X.arc_lengths[arcs[2]]);
        for (int o = 1; o < 6; o += 2) best = std::min(best, sides[o]);
    }
    return best;
}

SpectrumReport enumerate_orthogeodesics(const MetricSurface& X, double cutoff,
                                        const SpectrumOptions& opt) {
    validate(X);
    if (!(cutoff > 0)) throw domain_error("spectrum cutoff must be positive");
    return run_adaptive(X, cutoff, /*shrink=*/false, opt);
}

SpectrumReport orthosystole(const MetricSurface& X, const SpectrumOptions& opt) {
    const Signature sig = validate(X);
    const double L = total_boundary_length(X);
    double cutoff = hexagon::bavard_bound(sig.g, sig.n, L) * (1 + 1e-6);
    for (int round = 0; round < 64; ++round) {
        SpectrumReport rep = run_adaptive(X, cutoff, /*shrink=*/true, opt);
        if (!rep.classes.empty()) return rep;
        cutoff *= 2;
    }
    throw resource_error("no orthogeodesic found below any tried cutoff");
}

double boundary_injectivity_radius(const MetricSurface& X, const SpectrumOptions& opt) {
    return orthosystole(X, opt).osys / 2;
}

bool verify_hexdec_orthosystoles(const MetricSurface& X, const SpectrumOptions& opt) {
    validate(X);
    bool equal = true;
    for (double v : X.arc_lengths) {
        if (std::abs(v - X.arc_lengths[0]) > 1e-12 * (1 + X.arc_lengths[0])) {
            equal = false;
            break;
        }
    }
    if (equal) {
        const double a = X.arc_lengths[0];
        return 2 * hexagon::altitude(a, a, a) > a;
    }

    const SpectrumReport rep = orthosystole(X, opt);
    std::vector<double> tied;
    for (const auto& c : rep.classes) {
        if (c.length > rep.osys * (1 + opt.tie_rel_tol)) break;
        if (!c.crossings.empty()) return false;
        tied.push_back(c.length);
    }
    std::vector<double> arcs = X.arc_lengths;
    if (tied.size() != arcs.size()) return false;
    std::sort(tied.begin(), tied.end());
    std::sort(arcs.begin(), arcs.end());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (std::abs(tied[i] - arcs[i]) > 1e-9 * (1 + arcs[i])) return false;
    }
    return true;
}

std::string spectrum_csv(const SpectrumReport& r) {
    std::string out = "length,start_hex,start_slot,end_hex,end_slot,crossings\n";
    char buf[64];
    for (const auto& c : r.classes) {
        std::snprintf(buf, sizeof(buf), "%.12g", c.length);
        out += buf;
        std::snprintf(buf, sizeof(buf), ",%d,%d,%d,%d,", c.start.hex, c.start.side,
                      c.end.hex, c.end.side);
        out += buf;
        for (std::size_t i = 0; i < c.crossings.size(); ++i) {
            if (i) out += ';';
            std::snprintf(buf, sizeof(buf), "%d:%d", c.crossings[i].hex,
                          c.crossings[i].side);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace orthoforge
