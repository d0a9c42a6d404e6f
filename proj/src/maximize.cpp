#include "orthoforge/maximize.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "orthoforge/errors.hpp"
#include "orthoforge/hexagon_trig.hpp"

namespace orthoforge {

namespace {

constexpr double kMinArc = 1e-6;
constexpr double kMaxArc = 60.0;
constexpr double kTempHigh = 1.0;
constexpr double kTempLow = 1e-6;

double clamp_arc(double v) { return std::clamp(v, kMinArc, kMaxArc); }

double spread_of(const std::vector<double>& x) {
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    return *hi - *lo;
}

// phi_T(x) = -T log sum exp(-x_i/T), evaluated against the minimum so the
// exponentials never overflow; the sum is >= 1.
double softmin(const std::vector<double>& x, double T) {
    const double m = *std::min_element(x.begin(), x.end());
    double s = 0;
    for (double v : x) s += std::exp(-(v - m) / T);
    return m - T * std::log(s);
}

// Gradient of phi_T: the softmax weights of -x/T.  Non-negative, sums to 1,
// concentrated on the shortest arcs.
std::vector<double> softmin_weights(const std::vector<double>& x, double T) {
    const double m = *std::min_element(x.begin(), x.end());
    std::vector<double> w(x.size());
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        w[i] = std::exp(-(x[i] - m) / T);
        s += w[i];
    }
    for (double& v : w) v /= s;
    return w;
}

double total_of(const HexagonDecomposition& d, const std::vector<double>& x) {
    return total_boundary_length(MetricSurface{d, x});
}

std::vector<double> grad_of(const HexagonDecomposition& d,
                            const std::vector<double>& x) {
    return grad_total_boundary(MetricSurface{d, x});
}

int longest_coordinate(const std::vector<double>& x) {
    return int(std::max_element(x.begin(), x.end()) - x.begin());
}

// Damped Newton for total_boundary_length(x) = L along a single direction:
// either coordinate `coord` or, when coord < 0, the normalized full
// gradient.  Backtracks on the residual; returns success.
bool newton_total(const HexagonDecomposition& d, std::vector<double>& x,
                  double L, int coord) {
    const double tol = 1e-12 * std::max(1.0, std::abs(L));
    double r = L - total_of(d, x);
    for (int it = 0; it < 80; ++it) {
        if (std::abs(r) <= tol) return true;
        const std::vector<double> g = grad_of(d, x);
        double df = 0;
        if (coord >= 0) {
            df = g[coord];
        } else {
            for (double v : g) df += v * v;
            df = std::sqrt(df);
        }
        if (!(std::abs(df) > 0) || !std::isfinite(df)) return false;
        double t = r / df;
        bool moved = false;
        for (int half = 0; half < 45; ++half) {
            std::vector<double> y = x;
            if (coord >= 0) {
                y[coord] = clamp_arc(y[coord] + t);
            } else {
                for (std::size_t i = 0; i < y.size(); ++i)
                    y[i] = clamp_arc(y[i] + t * g[i] / df);
            }
            const double rn = L - total_of(d, y);
            if (std::isfinite(rn) && std::abs(rn) < std::abs(r)) {
                x = std::move(y);
                r = rn;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved) return false;
    }
    return false;
}

// Restore total_boundary_length = L by moving only the longest arc, and only
// on the decreasing branch of its one-variable profile (left of the profile's
// minimum).  The level set {F = L} is unbounded: past the profile minimum the
// total grows again along rays where every coordinate runs away together, and
// a restoration step that wanders onto that increasing branch would ratchet
// the iterate into the degenerate end instead of toward the equal point.
// Falls back to a damped full-gradient Newton when the target is not
// reachable on the branch (then the correction spreads over all arcs).
bool restore_total(const HexagonDecomposition& d, std::vector<double>& x,
                   double L) {
    const double tol = 1e-12 * std::max(1.0, std::abs(L));
    if (std::abs(total_of(d, x) - L) <= tol) return true;
    const int n = longest_coordinate(x);
    SingleVariableProfile prof = single_variable_profile(MetricSurface{d, x}, n);
    double upper = kMaxArc;
    for (const ProfileCritical& c : prof.critical_points)
        if (c.is_minimum) {
            upper = std::min(upper, c.y);
            break;
        }
    double lo = kMinArc, hi = upper;
    if (hi > lo) {
        double flo = prof.value(lo) - L, fhi = prof.value(hi) - L;
        if (std::isfinite(flo) && std::isfinite(fhi) && flo >= 0 && fhi <= 0) {
            for (int it = 0; it < 200 && hi - lo > 1e-16 * (1 + hi); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double f = prof.value(mid) - L;
                if (f >= 0)
                    lo = mid;
                else
                    hi = mid;
            }
            x[n] = 0.5 * (lo + hi);
            if (std::abs(total_of(d, x) - L) <= tol) return true;
        }
    }
    return newton_total(d, x, L, -1);
}

// ---- per-component constraint machinery --------------------------------

// comp_of[h][s] = boundary component owning the odd side s of hexagon h.
std::vector<std::array<int, 6>> component_map(const HexagonDecomposition& d) {
    std::vector<std::array<int, 6>> comp(d.num_hexagons, {-1, -1, -1, -1, -1, -1});
    const auto cycles = boundary_cycles(d);
    for (std::size_t c = 0; c < cycles.size(); ++c)
        for (const Slot& s : cycles[c]) comp[s.hex][s.side] = int(c);
    return comp;
}

std::vector<double> components_of(const HexagonDecomposition& d,
                                  const std::vector<double>& x) {
    return boundary_component_lengths(MetricSurface{d, x});
}

double residual_components(const HexagonDecomposition& d,
                           const std::vector<double>& x,
                           const std::vector<double>& ell) {
    const auto b = components_of(d, x);
    double worst = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
        worst = std::max(worst, std::abs(b[i] - ell[i]));
    return worst;
}

// d(opp(p | q, r))/d{p, q, r}.  With capitals for cosh values and
// u = cosh alpha = (P + QR) / sqrt((Q^2-1)(R^2-1)):
//   du/dP = 1 / sqrt(...),   du/dQ = R/sqrt(...) - u Q/(Q^2-1),
// and d alpha/d p = (du/dP) sinh p / sinh alpha.
std::array<double, 3> opposite_side_partials(double p, double q, double r) {
    const double P = std::cosh(p), Q = std::cosh(q), R = std::cosh(r);
    const double pa = std::sqrt((Q * Q - 1) * (R * R - 1));
    const double u = (P + Q * R) / pa;
    const double sa = std::sqrt(u * u - 1);
    const double dP = 1.0 / pa;
    const double dQ = R / pa - u * Q / (Q * Q - 1);
    const double dR = Q / pa - u * R / (R * R - 1);
    return {dP * std::sinh(p) / sa, dQ * std::sinh(q) / sa,
            dR * std::sinh(r) / sa};
}

std::vector<std::vector<double>> jacobian(const HexagonDecomposition& d,
                                          const std::vector<double>& x,
                                          const std::vector<std::array<int, 6>>& comp,
                                          int ncomp) {
    std::vector<std::vector<double>> J(ncomp, std::vector<double>(x.size(), 0.0));
    const auto arcs = hexagon_arcs(d);
    for (int h = 0; h < d.num_hexagons; ++h) {
        const std::array<int, 3> a = arcs[h];
        // Odd slot 2k+1 carries the side opposite the arc at slot (2k+4)%6,
        // i.e. sides [opp(c|a,b), opp(a|b,c), opp(b|c,a)] for arcs (a,b,c).
        const int opp_arc[3] = {a[2], a[0], a[1]};
        const int flank1[3] = {a[0], a[1], a[2]};
        const int flank2[3] = {a[1], a[2], a[0]};
        for (int k = 0; k < 3; ++k) {
            const int row = comp[h][2 * k + 1];
            const auto part = opposite_side_partials(
                x[opp_arc[k]], x[flank1[k]], x[flank2[k]]);
            J[row][opp_arc[k]] += part[0];
            J[row][flank1[k]] += part[1];
            J[row][flank2[k]] += part[2];
        }
    }
    return J;
}

// Solve the small dense system M y = b in place; returns false when M is
// numerically singular.  Partial pivoting; n is the number of boundary
// components, never more than a handful.
bool solve_dense(std::vector<std::vector<double>> M, std::vector<double> b,
                 std::vector<double>& y) {
    const int n = int(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int rr = col + 1; rr < n; ++rr)
            if (std::abs(M[rr][col]) > std::abs(M[piv][col])) piv = rr;
        if (!(std::abs(M[piv][col]) > 1e-300)) return false;
        std::swap(M[piv], M[col]);
        std::swap(b[piv], b[col]);
        for (int rr = col + 1; rr < n; ++rr) {
            const double f = M[rr][col] / M[col][col];
            for (int cc = col; cc < n; ++cc) M[rr][cc] -= f * M[col][cc];
            b[rr] -= f * b[col];
        }
    }
    y.assign(n, 0.0);
    for (int rr = n - 1; rr >= 0; --rr) {
        double s = b[rr];
        for (int cc = rr + 1; cc < n; ++cc) s -= M[rr][cc] * y[cc];
        y[rr] = s / M[rr][rr];
    }
    for (double v : y)
        if (!std::isfinite(v)) return false;
    return true;
}

// J J^T (ncomp x ncomp Gram matrix).
std::vector<std::vector<double>> gram(const std::vector<std::vector<double>>& J) {
    const int n = int(J.size());
    std::vector<std::vector<double>> G(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0;
            for (std::size_t k = 0; k < J[i].size(); ++k) s += J[i][k] * J[j][k];
            G[i][j] = G[j][i] = s;
        }
    return G;
}

double norm2(const std::vector<double>& v) {
    double s = 0;
    for (double a : v) s += a * a;
    return std::sqrt(s);
}

// Gauss-Newton restoration onto boundary_component_lengths = ell with
// backtracking on the residual norm.
bool restore_components(const HexagonDecomposition& d, std::vector<double>& x,
                        const std::vector<double>& ell,
                        const std::vector<std::array<int, 6>>& comp) {
    const int n = int(ell.size());
    double lmax = 1.0;
    for (double v : ell) lmax = std::max(lmax, std::abs(v));
    const double tol = 1e-12 * lmax;
    std::vector<double> c(n);
    auto residual = [&](const std::vector<double>& xx) {
        const auto b = components_of(d, xx);
        for (int i = 0; i < n; ++i) c[i] = b[i] - ell[i];
        double worst = 0;
        for (double v : c) worst = std::max(worst, std::abs(v));
        return worst;
    };
    double rn = residual(x);
    for (int it = 0; it < 100; ++it) {
        if (rn <= tol) return true;
        const auto J = jacobian(d, x, comp, n);
        std::vector<double> rhs(n);
        for (int i = 0; i < n; ++i) rhs[i] = -c[i];
        std::vector<double> lam;
        if (!solve_dense(gram(J), rhs, lam)) return false;
        std::vector<double> delta(x.size(), 0.0);
        for (int i = 0; i < n; ++i)
            for (std::size_t k = 0; k < x.size(); ++k)
                delta[k] += J[i][k] * lam[i];
        const double before = norm2(c);
        double s = 1.0;
        bool moved = false;
        for (int half = 0; half < 45; ++half) {
            std::vector<double> y = x;
            for (std::size_t k = 0; k < y.size(); ++k)
                y[k] = clamp_arc(y[k] + s * delta[k]);
            const double worst = residual(y);  // refills c with y's residuals
            if (std::isfinite(worst) && norm2(c) < before) {
                x = std::move(y);
                rn = worst;
                moved = true;
                break;
            }
            s *= 0.5;
        }
        if (!moved) return false;
    }
    return false;
}

// Project w onto the null space of J: w - J^T (J J^T)^{-1} J w.
bool project_tangent(const std::vector<std::vector<double>>& J,
                     std::vector<double>& w) {
    const int n = int(J.size());
    std::vector<double> Jw(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (std::size_t k = 0; k < w.size(); ++k) Jw[i] += J[i][k] * w[k];
    std::vector<double> mu;
    if (!solve_dense(gram(J), Jw, mu)) return false;
    for (std::size_t k = 0; k < w.size(); ++k)
        for (int i = 0; i < n; ++i) w[k] -= J[i][k] * mu[i];
    return true;
}

void check_start(const HexagonDecomposition& d, const std::vector<double>& start) {
    const int arcs = int(d.arc_gluings.size());
    if (int(start.size()) != arcs)
        throw domain_error("start vector has " + std::to_string(start.size()) +
                           " coordinates, decomposition has " +
                           std::to_string(arcs) + " arcs");
    for (double v : start)
        if (!(v > 0) || !std::isfinite(v))
            throw domain_error("start coordinates must be positive and finite");
}

[[noreturn]] void fail_converge(const char* what, const OptimizeTrace& t) {
    std::ostringstream os;
    os << what << ": spread " << t.spread << ", constraint residual "
       << t.constraint_residual << " after " << t.iterations
       << " accepted iterations";
    throw convergence_error(os.str());
}

// Shared annealed ascent loop.  `restore` re-establishes the constraint on a
// trial point, `residual` reports how far the constraint is off, `tangent`
// projects an ascent direction onto the constraint tangent space (identity
// plus restoration is enough for the scalar constraint), and `snap` may
// propose a feasible candidate (e.g. the closed-form all-equal point); every
// proposal passes the same accept test as a gradient step, so the surrogate
// stays non-decreasing across accepted iterations.
//
// min_ceiling guards against the non-compact end of the level set: min_i x_i
// is unbounded along rays where all arcs lengthen together, but out there
// the shortest arc stops being the shortest orthogeodesic (the boundary
// folds back on itself), so points whose minimum exceeds the equal-arc bound
// cannot witness anything about the orthosystole and are never accepted.
template <class Restore, class Residual, class Tangent, class Snap>
MetricSurface anneal(const HexagonDecomposition& d, std::vector<double> x,
                     bool want_equal, double min_ceiling, Restore restore,
                     Residual residual, Tangent tangent, Snap snap,
                     OptimizeTrace* trace, const OptimizeOptions& opt) {
    OptimizeTrace local;
    OptimizeTrace& tr = trace ? *trace : local;
    tr = OptimizeTrace{};

    if (!restore(x)) {
        tr.spread = spread_of(x);
        tr.constraint_residual = residual(x);
        fail_converge("could not project the start onto the constraint set", tr);
    }

    auto min_of = [](const std::vector<double>& v) {
        return *std::min_element(v.begin(), v.end());
    };

    bool stationary = false;
    int stage = 0;
    for (double T = kTempHigh; T >= kTempLow * 0.99; T /= 10, ++stage) {
        double eta = 0.5;
        stationary = false;
        int accepted = 0;
        while (accepted < opt.stage_iteration_cap) {
            if (want_equal && spread_of(x) < opt.spread_tolerance) break;
            const double phi0 = softmin(x, T);

            if (auto prop = snap(x);
                prop && min_of(*prop) <= min_ceiling && softmin(*prop, T) >= phi0) {
                x = std::move(*prop);
                ++accepted;
                ++tr.iterations;
                if (opt.on_accept) opt.on_accept(stage, softmin(x, T));
                continue;
            }

            std::vector<double> dir = softmin_weights(x, T);
            if (!tangent(x, dir)) break;
            double dmax = 0;
            for (double v : dir) dmax = std::max(dmax, std::abs(v));
            if (dmax < 1e-14) {
                stationary = true;
                break;
            }
            bool took = false;
            while (eta >= 1e-14) {
                std::vector<double> y(x.size());
                for (std::size_t i = 0; i < x.size(); ++i)
                    y[i] = clamp_arc(x[i] + eta * dir[i]);
                if (restore(y) && min_of(y) <= min_ceiling &&
                    softmin(y, T) >= phi0) {
                    x = std::move(y);
                    took = true;
                    break;
                }
                eta *= 0.5;
            }
            if (!took) {
                stationary = true;
                break;
            }
            ++accepted;
            ++tr.iterations;
            if (opt.on_accept) opt.on_accept(stage, softmin(x, T));
            eta = std::min(eta * 2, 2.0);
        }
    }

    tr.spread = spread_of(x);
    tr.constraint_residual = residual(x);
    const bool feasible = tr.constraint_residual < opt.constraint_tolerance;
    const bool equalized = tr.spread < opt.spread_tolerance;
    if (want_equal) {
        if (!feasible || !equalized)
            fail_converge("max-min optimization did not converge", tr);
    } else {
        if (!feasible || !(equalized || stationary))
            fail_converge("fixed-boundary optimization did not converge", tr);
        // A stall with the minimum pressed against the ceiling means the
        // ascent was heading down the degenerate end, not towards a genuine
        // maximizer (where the shortest arcs realize the orthosystole and
        // sit strictly below the equal-arc bound).
        if (min_of(x) > min_ceiling * (1 - 1e-6))
            fail_converge(
                "ascent stalled against the degenerate-end guard; no local "
                "maximizer in reach of this start",
                tr);
    }
    return MetricSurface{d, std::move(x)};
}

template <class Problem>
MultiStartResult multistart(const HexagonDecomposition& d, Problem solve,
                            const MultiStartOptions& opt) {
    if (opt.starts < 1) throw domain_error("starts must be >= 1");
    const int arcs = int(d.arc_gluings.size());
    struct Attempt {
        bool ok = false;
        MetricSurface X;
        long long iterations = 0;
        std::string error;
    };
    std::vector<Attempt> out(opt.starts);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int k = next.fetch_add(1); k < opt.starts; k = next.fetch_add(1)) {
            OptimizeTrace t;
            try {
                out[k].X = solve(random_start(arcs, opt.seed + std::uint64_t(k)), &t);
                out[k].ok = true;
            } catch (const std::exception& e) {
                out[k].error = e.what();
            }
            out[k].iterations = t.iterations;
        }
    };
    int nthreads = opt.threads > 0 ? opt.threads
                                   : int(std::max(1u, std::thread::hardware_concurrency()));
    nthreads = std::min(nthreads, opt.starts);
    std::vector<std::thread> pool;
    for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    MultiStartResult res;
    res.attempted = opt.starts;
    const Attempt* best = nullptr;
    for (const Attempt& a : out) {
        res.iterations += a.iterations;
        if (!a.ok) continue;
        ++res.converged;
        if (!best) {
            best = &a;
            continue;
        }
        const double va = *std::min_element(a.X.arc_lengths.begin(),
                                            a.X.arc_lengths.end());
        const double vb = *std::min_element(best->X.arc_lengths.begin(),
                                            best->X.arc_lengths.end());
        if (va > vb || (va == vb && a.X.arc_lengths < best->X.arc_lengths))
            best = &a;
    }
    if (!best) {
        std::string msg = "no start converged out of " + std::to_string(opt.starts);
        for (const Attempt& a : out)
            if (!a.error.empty()) {
                msg += "; first failure: " + a.error;
                break;
            }
        throw convergence_error(msg);
    }
    res.surface = best->X;
    return res;
}

}  // namespace

bool restore_total_length(const HexagonDecomposition& d, std::vector<double>& x,
                          double L, int preferred) {
    if (preferred >= 0 && preferred < int(x.size())) {
        std::vector<double> y = x;
        if (newton_total(d, y, L, preferred)) {
            x = std::move(y);
            return true;
        }
    }
    return newton_total(d, x, L, -1);
}

std::vector<std::vector<double>> boundary_length_jacobian(const MetricSurface& X) {
    const Signature sig = validate(X);
    const auto comp = component_map(X.decomposition);
    return jacobian(X.decomposition, X.arc_lengths, comp, sig.n);
}

MetricSurface maximize_total_constraint(const HexagonDecomposition& d, double L,
                                        const std::vector<double>& start,
                                        OptimizeTrace* trace,
                                        const OptimizeOptions& opt) {
    validate(d);
    if (!(L > 0)) throw domain_error("total boundary length must be positive");
    check_start(d, start);
    std::vector<double> x(start.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = clamp_arc(start[i]);
    auto restore = [&](std::vector<double>& y) { return restore_total(d, y, L); };
    auto residual = [&](const std::vector<double>& y) {
        return std::abs(total_of(d, y) - L);
    };
    auto tangent = [](const std::vector<double>&, std::vector<double>&) {
        return true;  // restoration absorbs the constraint drift
    };
    // The all-equal feasible point is closed form (every hexagon equilateral,
    // one boundary side per arc slot): arc = dual(L / (3 * hexagons)).
    const double equal_arc = hexagon::dual_side_length(L / (3.0 * d.num_hexagons));
    auto snap = [&](const std::vector<double>&) -> std::optional<std::vector<double>> {
        if (!(equal_arc > kMinArc) || !(equal_arc < kMaxArc)) return std::nullopt;
        std::vector<double> y(d.arc_gluings.size(), equal_arc);
        if (std::abs(total_of(d, y) - L) > 1e-12 * std::max(1.0, L))
            return std::nullopt;
        return y;
    };
    return anneal(d, std::move(x), /*want_equal=*/true,
                  equal_arc * (1 + 1e-3), restore, residual, tangent, snap,
                  trace, opt);
}

MetricSurface maximize_fixed_boundaries(const HexagonDecomposition& d,
                                        const std::vector<double>& ell,
                                        const std::vector<double>& start,
                                        OptimizeTrace* trace,
                                        const OptimizeOptions& opt) {
    const Signature sig = validate(d);
    if (int(ell.size()) != sig.n)
        throw domain_error("expected " + std::to_string(sig.n) +
                           " boundary lengths, got " + std::to_string(ell.size()));
    for (double v : ell)
        if (!(v > 0) || !std::isfinite(v))
            throw domain_error("boundary lengths must be positive and finite");
    check_start(d, start);
    const auto comp = component_map(d);
    std::vector<double> x(start.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = clamp_arc(start[i]);
    auto restore = [&](std::vector<double>& y) {
        return restore_components(d, y, ell, comp);
    };
    auto residual = [&](const std::vector<double>& y) {
        const auto b = components_of(d, y);
        double worst = 0;
        for (std::size_t i = 0; i < b.size(); ++i)
            worst = std::max(worst, std::abs(b[i] - ell[i]));
        return worst;
    };
    auto tangent = [&](const std::vector<double>& y, std::vector<double>& w) {
        const auto J = jacobian(d, y, comp, sig.n);
        return project_tangent(J, w);
    };
    // When the requested lengths are proportional to the boundary-cycle
    // sizes, the all-equal vector hits them exactly in closed form
    // (component = number of sides * dual(arc)): that point is the sharp
    // equal-boundary maximizer, so return it outright instead of steering an
    // ascent towards a tie the softmin surrogate cannot prefer.  The caller
    // can always confirm maximality through certify_local_max.
    {
        const auto cycles = boundary_cycles(d);
        double u0 = ell[0] / double(cycles[0].size());
        bool consistent = true;
        for (std::size_t i = 1; i < cycles.size(); ++i) {
            const double u = ell[i] / double(cycles[i].size());
            if (std::abs(u - u0) > 1e-12 * u0) consistent = false;
        }
        const double v = consistent ? hexagon::dual_side_length(u0) : 0;
        if (consistent && v > kMinArc && v < kMaxArc) {
            std::vector<double> eq(x.size(), v);
            const double worst = residual_components(d, eq, ell);
            if (worst < opt.constraint_tolerance) {
                if (trace) *trace = OptimizeTrace{0, 0.0, worst};
                return MetricSurface{d, std::move(eq)};
            }
        }
    }
    // Otherwise anneal; once the coordinates have almost equalized, also try
    // the exactly-equal mean restored back onto the constraint (the proposal
    // still has to win the accept test).
    auto snap = [&](const std::vector<double>& y) -> std::optional<std::vector<double>> {
        if (spread_of(y) < 1e-5) {
            double mean = 0;
            for (double v : y) mean += v;
            mean /= double(y.size());
            std::vector<double> prop(y.size(), clamp_arc(mean));
            if (restore_components(d, prop, ell, comp)) return prop;
        }
        return std::nullopt;
    };
    double total = 0;
    for (double v : ell) total += v;
    const double ceiling = hexagon::bavard_bound(sig.g, sig.n, total) * (1 + 1e-9);
    return anneal(d, std::move(x), /*want_equal=*/false, ceiling, restore,
                  residual, tangent, snap, trace, opt);
}

MaxCertificate certify_local_max(const MetricSurface& X,
                                 const SpectrumOptions& opt) {
    const Signature sig = validate(X);
    const SpectrumReport rep = orthosystole(X, opt);
    MaxCertificate cert;
    cert.is_equal_lengths = spread_of(X.arc_lengths) < 1e-8;
    cert.okiss = rep.okiss;
    cert.okiss_maximal = rep.okiss == 6 * sig.g - 6 + 3 * sig.n;
    cert.osys_gap_to_bound =
        hexagon::bavard_bound(sig.g, sig.n, total_boundary_length(X)) - rep.osys;
    return cert;
}

std::vector<int> orthosystole_arc_set(const MetricSurface& X,
                                      const SpectrumReport& rep) {
    std::vector<int> out;
    const double window = rep.osys * (1 + 1e-7);
    for (std::size_t i = 0; i < X.arc_lengths.size(); ++i)
        if (X.arc_lengths[i] <= window) out.push_back(int(i));
    return out;
}

double fixed_boundary_lower_bound(int g, int n, double ell) {
    if (n < 2 || g < n)
        throw domain_error("bound requires g >= n >= 2");
    if (!(ell > 0)) throw domain_error("boundary length must be positive");
    return hexagon::equal_boundary_bound(g / n, ell);
}

std::vector<double> random_start(int arcs, std::uint64_t seed) {
    if (arcs < 1) throw domain_error("need at least one arc");
    // splitmix64; fixed here so streams never vary across standard libraries.
    auto next = [state = seed]() mutable {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    const double lo = std::log(0.1), hi = std::log(3.0);
    std::vector<double> x(arcs);
    for (double& v : x) {
        const double u = double(next() >> 11) * 0x1.0p-53;
        v = std::exp(lo + (hi - lo) * u);
    }
    return x;
}

MultiStartResult maximize_total_multistart(const HexagonDecomposition& d,
                                           double L,
                                           const MultiStartOptions& opt) {
    return multistart(
        d,
        [&](std::vector<double> s, OptimizeTrace* t) {
            return maximize_total_constraint(d, L, s, t, opt.optimize);
        },
        opt);
}

MultiStartResult maximize_fixed_multistart(const HexagonDecomposition& d,
                                           const std::vector<double>& ell,
                                           const MultiStartOptions& opt) {
    return multistart(
        d,
        [&](std::vector<double> s, OptimizeTrace* t) {
            return maximize_fixed_boundaries(d, ell, s, t, opt.optimize);
        },
        opt);
}

}  // namespace orthoforge
