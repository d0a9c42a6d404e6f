#pragma once

// Core dual-path search over a developed surface, templated on the scalar.
//
// A node of the search is a hexagon reached by a sequence of arc crossings
// from a fixed start boundary side, together with the accumulated isometry
// that maps the developed picture back into the start side's coordinates
// (the start side lies on the base line).  Candidate orthogeodesic classes
// are read off at every node as common perpendiculars between the base line
// and the developed boundary side lines; crossing an arc of the hexagon
// extends the path.
//
// Three sound prunes keep the search finite:
//   * crossing count: m crossings cost at least (m-1) * delta, where delta
//     is the least distance between two arc-side lines of one hexagon;
//   * window: a representative must pass through the developed entry
//     segment, so its length is at least the distance from the base line to
//     that segment (computed exactly: endpoint minimum, or the line-line
//     distance when the perpendicular foot falls inside the segment);
//   * cross-section: a representative from the start side is a piece of a
//     ray leaving the base line perpendicularly with its foot inside the
//     start segment, and it meets every entry segment it crosses, so the
//     running intersection of the segments' foot-projection intervals must
//     stay nonempty.  Intervals carry an epsilon widening; the prune removes
//     nothing whose foot parameter survives exact arithmetic.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include "orthoforge/developing.hpp"

namespace orthoforge {
namespace engine {

template <class Real>
struct RawClass {
    Slot start{};                 // boundary side carrying the start foot
    Slot end{};                   // boundary side carrying the end foot
    Slot end_entry{};             // odd slot at which the candidate was scored
    std::vector<Slot> crossings;  // even-slot dual path from start's hexagon
    Real length{};
    Real t_start{};               // foot position along the start side
    Real t_end{};                 // foot position along the end side
};

struct SearchConfig {
    bool shrink_to_shortest = false;  // tighten the cutoff to the best find
    bool funnel = true;               // cross-section prune on/off (for A/B)
    std::uint64_t max_nodes = 10'000'000;
    int threads = 1;
    int renormalize_stride = 32;      // re-orthonormalize G every k crossings
};

template <class Real>
struct SearchResult {
    std::vector<RawClass<Real>> classes;  // deduplicated, sorted
    Real cutoff_used{};
    Real delta{};
    std::uint64_t nodes = 0;
};

namespace detail {

template <class Real>
class CutoffCell {
  public:
    explicit CutoffCell(const Real& v) : value_(v) {}
    Real get() const {
        std::lock_guard<std::mutex> lock(mu_);
        return value_;
    }
    void shrink(const Real& v) {
        std::lock_guard<std::mutex> lock(mu_);
        if (v < value_) value_ = v;
    }

  private:
    mutable std::mutex mu_;
    Real value_;
};

template <class Real>
Real funnel_margin() {
    using std::sqrt;
    const Real eps = std::numeric_limits<Real>::epsilon();
    if (eps > 0) return sqrt(eps);
    return Real(1e-30);
}

// Matrix-vector product that also reports the largest term magnitude, which
// bounds the cancellation error of the result: entries accurate to about
// machine epsilon times the returned scale.
template <class Real>
hyp::Vec3<Real> mvec_scaled(const hyp::Mat3<Real>& X, const hyp::Vec3<Real>& v,
                            Real& scale) {
    using std::abs;
    hyp::Vec3<Real> w;
    scale = Real(0);
    for (int i = 0; i < 3; ++i) {
        Real acc = Real(0);
        for (int j = 0; j < 3; ++j) {
            const Real t = X[i][j] * v[j];
            const Real a = abs(t);
            if (a > scale) scale = a;
            acc += t;
        }
        w[i] = acc;
    }
    return w;
}

// Absolute error budget for developed quantities at crossing depth m: the
// working epsilon times the term scale, with headroom for the drift of the
// accumulated isometry (random-walk growth, kept in check by periodic
// re-orthonormalization).
template <class Real>
Real developed_error(const Real& scale, std::uint32_t m) {
    using std::sqrt;
    Real eps = std::numeric_limits<Real>::epsilon();
    if (!(eps > 0)) eps = Real(1e-60);
    return Real(8) * (Real(4) + sqrt(Real(m + 1))) * eps * scale;
}

template <class Real>
Real maxabs(const hyp::Vec3<Real>& v) {
    using std::abs;
    Real m = abs(v[0]);
    if (abs(v[1]) > m) m = abs(v[1]);
    if (abs(v[2]) > m) m = abs(v[2]);
    return m;
}

template <class Real>
Real maxabs(const hyp::Mat3<Real>& X) {
    using std::abs;
    Real m = Real(0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (abs(X[i][j]) > m) m = abs(X[i][j]);
    return m;
}

// Matrix product that also reports the largest term magnitude, the scale of
// the rounding this one multiplication injects into the running product.
template <class Real>
hyp::Mat3<Real> mmul_scaled(const hyp::Mat3<Real>& A, const hyp::Mat3<Real>& B,
                            Real& scale) {
    using std::abs;
    hyp::Mat3<Real> C;
    scale = Real(0);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Real acc = Real(0);
            for (int k = 0; k < 3; ++k) {
                const Real t = A[i][k] * B[k][j];
                const Real a = abs(t);
                if (a > scale) scale = a;
                acc += t;
            }
            C[i][j] = acc;
        }
    }
    return C;
}

// Entrywise bound on how far the running crossing product has drifted from
// the exact one.  Rounding injected at an interior step is carried through
// the remaining factors, whose entries are bounded by the product of the
// frame magnitudes at the step and at the tip (an isometry's q-inverse has
// the same entry magnitudes as the isometry itself); the newest step has no
// suffix and enters bare.  `acc` is the running sum of step-term magnitudes
// times the frame magnitude after that step, `last` the newest step's term
// magnitude, `mg` the magnitude of the current product.  Large detours
// through the developed picture make this blow up like the exponential of
// twice the excursion, which is exactly when fixed-width arithmetic really
// does lose the candidate lengths.
template <class Real>
Real crossing_drift(const Real& mg, const Real& acc, const Real& last) {
    Real eps = std::numeric_limits<Real>::epsilon();
    if (!(eps > 0)) eps = Real(1e-60);
    return Real(21) * eps * (Real(3) * mg * acc + last);
}

// Least distance between two arc-side lines of one hexagon.  The arc sides
// sit at even slots; each pair is joined perpendicular by the boundary side
// between them, so the minimum is over the odd side lengths.
template <class Real>
Real least_arc_line_gap(const DevelopedSurface<Real>& S) {
    Real best = S.side_len[0][1];
    for (int h = 0; h < S.num_hexagons; ++h) {
        for (int o = 1; o < 6; o += 2) {
            if (S.side_len[h][o] < best) best = S.side_len[h][o];
        }
    }
    return best;
}

// Rolls a foot parameter along the boundary chain until it lies in the
// canonical window [-tol, side_length - tol) of some side.
template <class Real>
void roll_endpoint(const DevelopedSurface<Real>& S, Slot& side, Real& t,
                   const Real& tol, std::uint64_t max_steps) {
    using std::abs;
    std::uint64_t steps = 0;
    while (t >= S.side(side.hex, side.side) - tol) {
        t -= S.side(side.hex, side.side);
        side = S.next_odd[side.hex * 6 + side.side];
        if (++steps > max_steps) throw precision_failure("endpoint failed to land on a boundary side");
    }
    while (t < -tol) {
        side = S.prev_odd[side.hex * 6 + side.side];
        t += S.side(side.hex, side.side);
        if (++steps > max_steps) throw precision_failure("endpoint failed to land on a boundary side");
    }
    if (abs(t) <= tol) t = Real(0);
}

// Boundary-following chains from a start side, grown on demand.  fwd_arc[i]
// is the even slot crossed between chain positions i and i+1; fwd_side[i]
// the on-axis boundary side at position i (fwd_side[0] is the start side).
template <class Real>
struct AxisChain {
    const DevelopedSurface<Real>* S = nullptr;
    std::vector<Slot> fwd_arc, fwd_side, bwd_arc, bwd_side;

    void init(const DevelopedSurface<Real>& surf, Slot start) {
        S = &surf;
        fwd_arc.clear();
        bwd_arc.clear();
        fwd_side.assign(1, start);
        bwd_side.assign(1, start);
    }
    void grow_to(std::size_t depth) {
        while (fwd_arc.size() < depth) {
            const Slot cur = fwd_side.back();
            fwd_arc.push_back({cur.hex, (cur.side + 1) % 6});
            fwd_side.push_back(S->next_odd[cur.hex * 6 + cur.side]);
            const Slot bur = bwd_side.back();
            bwd_arc.push_back({bur.hex, (bur.side + 5) % 6});
            bwd_side.push_back(S->prev_odd[bur.hex * 6 + bur.side]);
        }
    }
};

template <class Real>
struct StackFrame {
    hyp::Mat3<Real> G;   // maps developed coordinates back to the start side
    Real ilo{}, ihi{};   // surviving foot-parameter interval
    Real acc{};          // drift ledger: sum of step terms times frame peaks
    Real last{};         // term magnitude of the newest crossing product
    Real mg{};           // largest entry of G
    Slot via{};          // even slot whose crossing created this node
    int hex = 0;
    int entry = -1;      // even slot of hex through which we entered
    std::uint32_t depth = 0;
    bool on_fwd = false, on_bwd = false;  // path still follows the start axis
};

template <class Real>
class SlotSearch {
  public:
    SlotSearch(const DevelopedSurface<Real>& S, Slot start, const SearchConfig& cfg,
               CutoffCell<Real>& cutoff, std::atomic<std::uint64_t>& nodes,
               const Real& delta, const Real& roll_tol)
        : S_(S), start_(start), cfg_(cfg), cutoff_(cutoff), nodes_(nodes),
          delta_(delta), roll_tol_(roll_tol), margin_(funnel_margin<Real>()) {}

    std::vector<RawClass<Real>> run() {
        chain_.init(S_, start_);
        const Real len0 = S_.side(start_.hex, start_.side);
        StackFrame<Real> root;
        root.G = S_.inv_frames[start_.hex][start_.side];
        root.ilo = -margin_ * (Real(1) + len0);
        root.ihi = len0 + margin_ * (Real(1) + len0);
        root.mg = maxabs(root.G);
        root.hex = start_.hex;
        root.on_fwd = root.on_bwd = true;
        std::vector<StackFrame<Real>> stack;
        stack.push_back(std::move(root));
        path_.clear();

        while (!stack.empty()) {
            StackFrame<Real> node = std::move(stack.back());
            stack.pop_back();
            if (nodes_.fetch_add(1, std::memory_order_relaxed) >= cfg_.max_nodes) {
                throw resource_error("orthogeodesic search exceeded the node budget; report would be incomplete");
            }
            const std::uint32_t m = node.depth;
            path_.resize(m > 0 ? m - 1 : 0);
            if (m > 0) path_.push_back(node.via);
            chain_.grow_to(m + 1);

            const Real cut = cutoff_.get();
            // A perpendicular scored here crosses the node's m arcs, so it is
            // longer than (m - 1) * delta; skip hopeless depths.  This also
            // skips the worst-conditioned measurements: boundary spirals keep
            // their entry segments on the base line (the window prune cannot
            // touch them) while their frames recede exponentially.
            if (m < 2 || Real(int(m - 1)) * delta_ <= cut * (Real(1) + Real(1e-12))) {
                score_candidates(node, cut);
            }
            if (Real(int(m)) * delta_ > cut) continue;
            expand(node, cut, stack);
        }
        return std::move(found_);
    }

  private:
    void score_candidates(const StackFrame<Real>& node, const Real& cut) {
        using std::abs;
        using std::acosh;
        using std::asinh;
        using std::sqrt;
        const std::uint32_t m = node.depth;
        const int k = node.hex;
        const Real drift = crossing_drift(node.mg, node.acc, node.last);
        bool have_ginv = false;
        hyp::Mat3<Real> Ginv;
        for (int o = 1; o < 6; o += 2) {
            const Slot cand{k, o};
            if ((node.on_fwd && cand == chain_.fwd_side[m]) ||
                (node.on_bwd && cand == chain_.bwd_side[m])) {
                continue;  // this side is the start axis itself, not a new class
            }
            Real scale;
            hyp::Vec3<Real> w = mvec_scaled(node.G, S_.normal[k][o], scale);
            const Real s = hyp::qform(w, w);
            if (!(s > 0)) throw precision_failure("boundary side normal lost its spacelike sign");
            const Real r = sqrt(s);
            for (auto& wi : w) wi /= r;
            const Real err =
                (developed_error(scale, m) + Real(3) * drift * maxabs(S_.normal[k][o])) / r;
            const Real qv = abs(w[1]);
            if (!(qv > 1 + err)) {
                throw precision_failure("distinct boundary lifts developed onto meeting lines");
            }
            const Real ln = acosh(qv);
            // Reject the whole run rather than report or discard a length the
            // arithmetic cannot resolve: err / sinh(ln) bounds the length error.
            if (err > Real(1e-9) * (Real(1) + ln) * sqrt(qv * qv - 1)) {
                throw precision_failure("candidate length below the working-precision floor");
            }
            if (ln > cut * (Real(1) + Real(1e-12))) continue;

            const auto feet = hyp::line_feet(hyp::base_normal<Real>(), w);
            Real t_u = asinh(feet[0][0]);
            if (!have_ginv) {
                Ginv = hyp::qinv(node.G);
                have_ginv = true;
            }
            const hyp::Vec3<Real> local =
                hyp::mvec(S_.inv_frames[k][o], hyp::mvec(Ginv, feet[1]));
            Real t_w = asinh(local[0]);

            const std::uint64_t roll_cap =
                roll_steps_cap(abs(t_u) + abs(t_w) + Real(1));
            Slot e1 = start_;
            roll_endpoint(S_, e1, t_u, roll_tol_, roll_cap);
            if (e1 != start_) continue;  // foot belongs to a neighboring start side
            Slot e2 = cand;
            roll_endpoint(S_, e2, t_w, roll_tol_, roll_cap);

            RawClass<Real> rc;
            rc.start = start_;
            rc.end = e2;
            rc.end_entry = cand;
            rc.crossings = path_;
            rc.length = ln;
            rc.t_start = t_u;
            rc.t_end = t_w;
            found_.push_back(std::move(rc));
            if (cfg_.shrink_to_shortest) {
                cutoff_.shrink(ln * (Real(1) + Real(1e-6)));
            }
        }
    }

    void expand(const StackFrame<Real>& node, const Real& cut,
                std::vector<StackFrame<Real>>& stack) {
        using std::abs;
        using std::acosh;
        using std::asinh;
        using std::max;
        using std::min;
        using std::sqrt;
        const std::uint32_t m = node.depth;
        const int k = node.hex;
        for (int s = 0; s < 6; s += 2) {
            if (s == node.entry) continue;  // no immediate backtracking
            const Slot via{k, s};
            const Slot to = S_.glued_to(k, s);
            Real step;
            hyp::Mat3<Real> G2 = mmul_scaled(node.G, S_.cross[k][s], step);
            if (cfg_.renormalize_stride > 0 &&
                (m + 1) % (std::uint32_t)cfg_.renormalize_stride == 0) {
                hyp::q_orthonormalize(G2);
            }
            const Real mg2 = maxabs(G2);
            const Real acc2 = node.acc + node.last * node.mg;
            const Real drift2 = crossing_drift(mg2, acc2, step);
            Real scaleA, scaleB;
            const hyp::Vec3<Real> A =
                mvec_scaled(G2, S_.vertex[to.hex][to.side], scaleA);
            const hyp::Vec3<Real> B =
                mvec_scaled(G2, S_.vertex[to.hex][(to.side + 1) % 6], scaleB);
            const Real dA = developed_error(scaleA, m + 1) +
                            Real(3) * drift2 * maxabs(S_.vertex[to.hex][to.side]);
            const Real dB = developed_error(scaleB, m + 1) +
                            Real(3) * drift2 * maxabs(S_.vertex[to.hex][(to.side + 1) % 6]);

            Real ilo2 = node.ilo, ihi2 = node.ihi;
            if (cfg_.funnel) {
                const Real sA = hyp::foot_param(A), sB = hyp::foot_param(B);
                // Foot-parameter error: the projection is 1-Lipschitz-ish in
                // the point entries, so widen by the entry error budget.
                const Real pad =
                    margin_ * (Real(1) + abs(sA) + abs(sB)) + Real(4) * (dA + dB);
                ilo2 = max(ilo2, min(sA, sB) - pad);
                ihi2 = min(ihi2, max(sA, sB) + pad);
                if (ilo2 > ihi2) continue;  // no perpendicular ray fits
            }

            // Lower bound for the distance from the base line to the entry
            // segment.  The endpoint minimum is exact when the closest
            // approach of the lines happens outside the segment; otherwise
            // fall back to the line-line distance (always a valid lower
            // bound) or to zero when the lines may meet.  Every branch
            // subtracts its error budget, so the prune never overshoots.
            const Real eA = max(abs(A[1]) - Real(4) * dA, Real(0));
            const Real eB = max(abs(B[1]) - Real(4) * dB, Real(0));
            const Real end_bound = asinh(min(eA, eB));
            Real bound = Real(0);
            Real scaleL;
            hyp::Vec3<Real> wline = mvec_scaled(G2, S_.normal[to.hex][to.side], scaleL);
            const Real sw = hyp::qform(wline, wline);
            if (sw > 0) {
                const Real rw = sqrt(sw);
                for (auto& wi : wline) wi /= rw;
                const Real errl = (developed_error(scaleL, m + 1) +
                                   Real(3) * drift2 * maxabs(S_.normal[to.hex][to.side])) /
                                  rw;
                const Real ql = abs(wline[1]);
                const Real seg = S_.side(to.hex, to.side);
                const Real mfinv = maxabs(S_.inv_frames[to.hex][to.side]);
                if (ql > 1 + errl) {
                    // Lines surely disjoint.
                    bound = acosh(max(ql - errl, Real(1)));
                    try {
                        const auto feet = hyp::line_feet(hyp::base_normal<Real>(), wline);
                        Real sc1, sc2;
                        const hyp::Vec3<Real> half =
                            mvec_scaled(hyp::qinv(G2), feet[1], sc1);
                        const hyp::Vec3<Real> local =
                            mvec_scaled(S_.inv_frames[to.hex][to.side], half, sc2);
                        const Real tf = asinh(local[0]);
                        const Real dt =
                            Real(4) * (developed_error(sc1, m + 1) + developed_error(sc2, m + 1) +
                                       Real(3) * mfinv * drift2 * maxabs(feet[1]));
                        if (tf < -dt || tf > seg + dt) bound = end_bound;
                    } catch (const precision_failure&) {
                        // keep the line-line bound
                    }
                } else if (ql < 1 - errl) {
                    // Lines surely meet (or are asymptotic).
                    try {
                        const hyp::Vec3<Real> x =
                            hyp::qcross(hyp::base_normal<Real>(), wline);
                        if (hyp::qform(x, x) < 0) {
                            const hyp::Vec3<Real> p = hyp::normalize_point(x);
                            Real sc1, sc2;
                            const hyp::Vec3<Real> half = mvec_scaled(hyp::qinv(G2), p, sc1);
                            const hyp::Vec3<Real> local =
                                mvec_scaled(S_.inv_frames[to.hex][to.side], half, sc2);
                            const Real tx = asinh(local[0]);
                            const Real dt = Real(4) * (developed_error(sc1, m + 1) +
                                                       developed_error(sc2, m + 1) +
                                                       Real(3) * mfinv * drift2 * maxabs(p));
                            if (tx < -dt || tx > seg + dt) bound = end_bound;
                        }
                    } catch (const precision_failure&) {
                        // keep zero
                    }
                }
                // |ql - 1| within the error band: no usable window, keep zero.
            }
            if (bound > cut * (Real(1) + Real(1e-12))) continue;

            chain_.grow_to(m + 2);
            StackFrame<Real> child;
            child.G = std::move(G2);
            child.ilo = ilo2;
            child.ihi = ihi2;
            child.acc = acc2;
            child.last = step;
            child.mg = mg2;
            child.via = via;
            child.hex = to.hex;
            child.entry = to.side;
            child.depth = m + 1;
            child.on_fwd = node.on_fwd && via == chain_.fwd_arc[m];
            child.on_bwd = node.on_bwd && via == chain_.bwd_arc[m];
            stack.push_back(std::move(child));
        }
    }

    // A foot parameter of magnitude R can traverse at most R / (shortest
    // boundary side) sides while rolling; anything beyond that means the
    // numbers have gone bad.
    std::uint64_t roll_steps_cap(const Real& range) const {
        const double r = static_cast<double>(range / delta_);
        const double cap = 64.0 + 6.0 * S_.num_hexagons + std::min(r, 1e9);
        return (std::uint64_t)cap;
    }

    const DevelopedSurface<Real>& S_;
    Slot start_;
    const SearchConfig& cfg_;
    CutoffCell<Real>& cutoff_;
    std::atomic<std::uint64_t>& nodes_;
    Real delta_, roll_tol_, margin_;
    AxisChain<Real> chain_;
    std::vector<Slot> path_;
    std::vector<RawClass<Real>> found_;
};

template <class Real>
bool lex_before(const RawClass<Real>& a, const RawClass<Real>& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.end != b.end) return a.end < b.end;
    if (a.crossings != b.crossings) return a.crossings < b.crossings;
    if (a.t_start != b.t_start) return a.t_start < b.t_start;
    return a.t_end < b.t_end;
}

// Deduplicates by canonical endpoint pairs compared with tolerances.  On a
// duplicate the representative with the fewest crossings wins, ties broken
// lexicographically: the minimal dual path is the one every prune
// configuration is guaranteed to measure (its prefixes follow the geodesic
// itself), and it carries the least accumulated rounding, so the kept entry
// does not depend on which redundant lifts a particular run happened to see.
template <class Real>
class ClassSet {
  public:
    void insert(RawClass<Real> rc) {
        using std::abs;
        const bool flip = rc.end < rc.start ||
                          (rc.end == rc.start && rc.t_end < rc.t_start);
        const Key key = flip ? Key{rc.end, rc.start} : Key{rc.start, rc.end};
        const Real ta = flip ? rc.t_end : rc.t_start;
        const Real tb = flip ? rc.t_start : rc.t_end;
        auto& bucket = buckets_[key];
        for (Entry& e : bucket) {
            if (!match(e, ta, tb, rc.length)) continue;
            if (rc.crossings.size() < e.cls.crossings.size() ||
                (rc.crossings.size() == e.cls.crossings.size() &&
                 lex_before(rc, e.cls))) {
                e.ta = ta;
                e.tb = tb;
                e.cls = std::move(rc);
            }
            return;
        }
        bucket.push_back(Entry{ta, tb, std::move(rc)});
    }

    std::vector<RawClass<Real>> take_sorted() {
        std::vector<RawClass<Real>> out;
        for (auto& [key, bucket] : buckets_) {
            for (Entry& e : bucket) out.push_back(std::move(e.cls));
        }
        std::sort(out.begin(), out.end(), [](const RawClass<Real>& a, const RawClass<Real>& b) {
            if (a.length != b.length) return a.length < b.length;
            return lex_before(a, b);
        });
        return out;
    }

  private:
    using Key = std::pair<Slot, Slot>;
    struct Entry {
        Real ta, tb;
        RawClass<Real> cls;
    };
    static bool near(const Real& x, const Real& y) {
        using std::abs;
        return abs(x - y) <= Real(1e-7) * (Real(1) + abs(x));
    }
    bool match(const Entry& e, const Real& ta, const Real& tb, const Real& len) const {
        using std::abs;
        if (abs(e.cls.length - len) > Real(1e-7) * (Real(1) + len)) return false;
        if (near(e.ta, ta) && near(e.tb, tb)) return true;
        // Symmetric self-classes can arrive with the feet swapped.
        return e.cls.start == e.cls.end && near(e.ta, tb) && near(e.tb, ta);
    }
    std::map<Key, std::vector<Entry>> buckets_;
};

}  // namespace detail

template <class Real>
SearchResult<Real> search_spectrum(const DevelopedSurface<Real>& S, const Real& cutoff,
                                   const SearchConfig& cfg) {
    using std::abs;
    using std::min;
    if (!(cutoff > 0)) throw domain_error("spectrum cutoff must be positive");

    const Real delta = detail::least_arc_line_gap(S);
    // Wide enough that feet landing exactly on a slot junction (arc classes
    // do this structurally) roll the same way from every lift, noisy or not;
    // still far below the dedup matching tolerance.
    const Real roll_tol = min(Real(1e-7), delta / Real(8));
    detail::CutoffCell<Real> cell(cutoff);
    std::atomic<std::uint64_t> nodes{0};

    std::vector<Slot> starts;
    for (int h = 0; h < S.num_hexagons; ++h) {
        for (int o = 1; o < 6; o += 2) starts.push_back({h, o});
    }
    std::vector<std::vector<RawClass<Real>>> per_slot(starts.size());

    const int want = cfg.threads > 0 ? cfg.threads : 1;
    const int workers = std::max(1, std::min<int>(want, (int)starts.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < starts.size(); ++i) {
            detail::SlotSearch<Real> search(S, starts[i], cfg, cell, nodes, delta, roll_tol);
            per_slot[i] = search.run();
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (;;) {
                        const std::size_t i = next.fetch_add(1);
                        if (i >= starts.size()) return;
                        detail::SlotSearch<Real> search(S, starts[i], cfg, cell, nodes,
                                                        delta, roll_tol);
                        per_slot[i] = search.run();
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    SearchResult<Real> result;
    result.cutoff_used = cell.get();
    result.delta = delta;
    result.nodes = nodes.load();

    detail::ClassSet<Real> set;
    const Real keep = result.cutoff_used * (Real(1) + Real(1e-12));
    for (auto& list : per_slot) {
        for (auto& rc : list) {
            if (rc.length <= keep) set.insert(std::move(rc));
        }
    }
    result.classes = set.take_sorted();
    return result;
}

}  // namespace engine
}  // namespace orthoforge
