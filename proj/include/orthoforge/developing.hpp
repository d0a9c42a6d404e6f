#pragma once

// Developing map into the hyperboloid model.
//
// Minkowski form q(u, w) = u0 w0 + u1 w1 - u2 w2; the surface sits on the
// sheet x2 > 0 of q(x, x) = -1.  A geodesic line is encoded by a unit
// spacelike normal w (q(w, w) = 1); the line is {p : q(p, w) = 0}.
//
// Every hexagon is realized by a turtle walk: frame M_0 = I places side 0 on
// the base line {p1 = 0} starting at (0, 0, 1); M_{i+1} = M_i T(L_i) R90.
// Side i then runs from M_i p0 to M_i T(L_i) p0 on the line with normal
// M_i e1.  Gluing an arc slot (h, s) to (h', s') transports frames by
//   Cross = M_h[s] Phi(x) inv(M_h'[s']),
// where x is the arc length and Phi(x) flips the arc line onto itself
// reversing both orientations.
//
// Everything is templated on the scalar so the same code runs in double and
// in multiprecision floats.

#include <array>
#include <cmath>
#include <vector>

#include "orthoforge/errors.hpp"
#include "orthoforge/metric_surface.hpp"
#include "orthoforge/surface_combinatorics.hpp"

namespace orthoforge {
namespace hyp {

template <class Real>
using Vec3 = std::array<Real, 3>;

template <class Real>
using Mat3 = std::array<std::array<Real, 3>, 3>;

template <class Real>
Real qform(const Vec3<Real>& u, const Vec3<Real>& w) {
    return u[0] * w[0] + u[1] * w[1] - u[2] * w[2];
}

// Minkowski cross product: q(cross(u, w), u) = q(cross(u, w), w) = 0.
template <class Real>
Vec3<Real> qcross(const Vec3<Real>& u, const Vec3<Real>& w) {
    return {u[1] * w[2] - u[2] * w[1],
            u[2] * w[0] - u[0] * w[2],
            -(u[0] * w[1] - u[1] * w[0])};
}

template <class Real>
Mat3<Real> identity() {
    return {{{Real(1), Real(0), Real(0)},
             {Real(0), Real(1), Real(0)},
             {Real(0), Real(0), Real(1)}}};
}

template <class Real>
Mat3<Real> mmul(const Mat3<Real>& X, const Mat3<Real>& Y) {
    Mat3<Real> Z;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Z[i][j] = X[i][0] * Y[0][j] + X[i][1] * Y[1][j] + X[i][2] * Y[2][j];
        }
    }
    return Z;
}

template <class Real>
Vec3<Real> mvec(const Mat3<Real>& X, const Vec3<Real>& v) {
    Vec3<Real> w;
    for (int i = 0; i < 3; ++i) {
        w[i] = X[i][0] * v[0] + X[i][1] * v[1] + X[i][2] * v[2];
    }
    return w;
}

// Inverse of a q-isometry:  inv(M) = Q M^T Q with Q = diag(1, 1, -1).
template <class Real>
Mat3<Real> qinv(const Mat3<Real>& X) {
    Mat3<Real> Z;
    const Real sign[3] = {Real(1), Real(1), Real(-1)};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Z[i][j] = sign[i] * X[j][i] * sign[j];
        }
    }
    return Z;
}

// Translation by t along the base line {p1 = 0}.
template <class Real>
Mat3<Real> translate(const Real& t) {
    using std::cosh;
    using std::sinh;
    const Real c = cosh(t), s = sinh(t);
    return {{{c, Real(0), s}, {Real(0), Real(1), Real(0)}, {s, Real(0), c}}};
}

// Quarter turn about (0, 0, 1).
template <class Real>
Mat3<Real> rot90() {
    return {{{Real(0), Real(-1), Real(0)},
             {Real(1), Real(0), Real(0)},
             {Real(0), Real(0), Real(1)}}};
}

// Half turn about the midpoint of the arc segment of length x on the base
// line: maps the segment onto itself swapping its ends.  Phi(x)^2 = I.
template <class Real>
Mat3<Real> arc_flip(const Real& x) {
    using std::cosh;
    using std::sinh;
    const Real c = cosh(x), s = sinh(x);
    return {{{-c, Real(0), s}, {Real(0), Real(-1), Real(0)}, {-s, Real(0), c}}};
}

template <class Real>
Vec3<Real> base_normal() {
    return {Real(0), Real(1), Real(0)};
}

template <class Real>
Vec3<Real> base_point() {
    return {Real(0), Real(0), Real(1)};
}

// Scales a timelike vector onto the upper sheet q(x, x) = -1.  A
// non-timelike input means upstream arithmetic has already lost the
// geometry, so escalation is the only sound response.
template <class Real>
Vec3<Real> normalize_point(const Vec3<Real>& x) {
    using std::sqrt;
    const Real s = -qform(x, x);
    if (!(s > 0)) throw precision_failure("expected a timelike point");
    const Real r = sqrt(s);
    Vec3<Real> y = {x[0] / r, x[1] / r, x[2] / r};
    if (y[2] < 0) y = {-y[0], -y[1], -y[2]};
    return y;
}

// Feet of the common perpendicular of two non-intersecting lines with unit
// spacelike normals u and w, on the u-line and the w-line respectively.
template <class Real>
std::array<Vec3<Real>, 2> line_feet(const Vec3<Real>& u, const Vec3<Real>& w) {
    const Vec3<Real> n = qcross(u, w);
    return {normalize_point(qcross(n, u)), normalize_point(qcross(n, w))};
}

// Arclength parameter of the foot of p on the base line, whose unit-speed
// parametrization is s -> (sinh s, 0, cosh s).
template <class Real>
Real foot_param(const Vec3<Real>& p) {
    using std::asinh;
    using std::sqrt;
    return asinh(p[0] / sqrt(Real(1) + p[1] * p[1]));
}

// Distance from a point on the sheet to the base line: sinh d = |p1|.
template <class Real>
Real base_line_distance(const Vec3<Real>& p) {
    using std::asinh;
    using std::abs;
    return asinh(abs(p[1]));
}

// Restores q-orthonormality of a drifting isometry by Gram-Schmidt on its
// columns (two spacelike, one timelike).
template <class Real>
void q_orthonormalize(Mat3<Real>& M) {
    using std::sqrt;
    auto col = [&](int j) -> Vec3<Real> { return {M[0][j], M[1][j], M[2][j]}; };
    auto set = [&](int j, const Vec3<Real>& v) {
        M[0][j] = v[0];
        M[1][j] = v[1];
        M[2][j] = v[2];
    };
    Vec3<Real> c0 = col(0), c1 = col(1), c2 = col(2);
    const Real n0 = qform(c0, c0);
    if (!(n0 > 0)) throw precision_failure("frame column lost spacelike sign");
    const Real r0 = sqrt(n0);
    for (auto& v : c0) v /= r0;
    const Real d10 = qform(c1, c0);
    for (int i = 0; i < 3; ++i) c1[i] -= d10 * c0[i];
    const Real n1 = qform(c1, c1);
    if (!(n1 > 0)) throw precision_failure("frame column lost spacelike sign");
    const Real r1 = sqrt(n1);
    for (auto& v : c1) v /= r1;
    const Real d20 = qform(c2, c0), d21 = qform(c2, c1);
    for (int i = 0; i < 3; ++i) c2[i] -= d20 * c0[i] + d21 * c1[i];
    const Real n2 = -qform(c2, c2);
    if (!(n2 > 0)) throw precision_failure("frame column lost timelike sign");
    const Real r2 = sqrt(n2);
    for (auto& v : c2) v /= r2;
    set(0, c0);
    set(1, c1);
    set(2, c2);
}

}  // namespace hyp

// A metric surface with every hexagon realized in the model and all
// slot-level lookups flattened for the spectrum search.
template <class Real>
struct DevelopedSurface {
    int num_hexagons = 0;
    std::vector<Real> lengths;                     // per arc
    std::vector<Slot> partner;                     // flat h*6+s, even slots
    std::vector<int> arc_at;                       // flat, -1 on odd slots
    std::vector<Slot> next_odd, prev_odd;          // boundary successor maps
    std::vector<std::array<Real, 6>> side_len;     // per hexagon
    std::vector<std::array<hyp::Mat3<Real>, 6>> frames;
    std::vector<std::array<hyp::Mat3<Real>, 6>> inv_frames;
    std::vector<std::array<hyp::Mat3<Real>, 6>> cross;  // even slots only
    std::vector<std::array<hyp::Vec3<Real>, 6>> vertex;  // frames * p0
    std::vector<std::array<hyp::Vec3<Real>, 6>> normal;  // frames * e1
    Real max_perimeter = Real(0);
    Real closure_error = Real(0);  // turtle walk defect, for diagnostics

    const Real& side(int h, int s) const { return side_len[h][s]; }
    Slot glued_to(int h, int s) const { return partner[h * 6 + s]; }
};

// Realizes every hexagon and precomputes the crossing isometries.  Throws
// precision_failure if any produced entry is non-finite (double overflow on
// huge side lengths) and domain_error on structural problems.
template <class Real>
DevelopedSurface<Real> develop_surface(const HexagonDecomposition& d,
                                       const std::vector<Real>& arc_lengths) {
    using hyp::Mat3;
    using hyp::Vec3;
    using std::abs;
    using std::isfinite;

    DevelopedSurface<Real> S;
    S.num_hexagons = d.num_hexagons;
    S.lengths = arc_lengths;
    S.partner = partner_table(d);
    if (arc_lengths.size() != d.arc_gluings.size()) {
        throw domain_error("arc length count does not match gluing count");
    }
    for (const Real& x : arc_lengths) {
        if (!(x > 0)) throw domain_error("arc lengths must be positive");
    }

    S.arc_at.assign(6 * d.num_hexagons, -1);
    for (std::size_t i = 0; i < d.arc_gluings.size(); ++i) {
        for (Slot s : d.arc_gluings[i]) S.arc_at[s.hex * 6 + s.side] = (int)i;
    }

    const int N = d.num_hexagons;
    S.side_len.resize(N);
    S.frames.resize(N);
    S.inv_frames.resize(N);
    S.cross.resize(N);
    S.vertex.resize(N);
    S.normal.resize(N);

    for (int h = 0; h < N; ++h) {
        const Real a = arc_lengths[S.arc_at[h * 6 + 0]];
        const Real b = arc_lengths[S.arc_at[h * 6 + 2]];
        const Real c = arc_lengths[S.arc_at[h * 6 + 4]];
        S.side_len[h] = hexagon_sides(a, b, c);
        Real perim = Real(0);
        for (const Real& L : S.side_len[h]) perim += L;
        if (perim > S.max_perimeter) S.max_perimeter = perim;

        Mat3<Real> M = hyp::identity<Real>();
        for (int s = 0; s < 6; ++s) {
            S.frames[h][s] = M;
            S.inv_frames[h][s] = hyp::qinv(M);
            S.vertex[h][s] = hyp::mvec(M, hyp::base_point<Real>());
            S.normal[h][s] = hyp::mvec(M, hyp::base_normal<Real>());
            M = hyp::mmul(hyp::mmul(M, hyp::translate(S.side_len[h][s])),
                          hyp::rot90<Real>());
        }
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const Real want = i == j ? Real(1) : Real(0);
                const Real err = abs(M[i][j] - want);
                if (err > S.closure_error) S.closure_error = err;
                if (!isfinite(M[i][j])) {
                    throw precision_failure("hexagon frame overflowed");
                }
            }
        }
    }

    for (int h = 0; h < N; ++h) {
        for (int s = 0; s < 6; s += 2) {
            const Slot t = S.partner[h * 6 + s];
            const Real& x = arc_lengths[S.arc_at[h * 6 + s]];
            S.cross[h][s] = hyp::mmul(hyp::mmul(S.frames[h][s], hyp::arc_flip(x)),
                                      S.inv_frames[t.hex][t.side]);
        }
    }

    S.next_odd.assign(6 * N, Slot{-1, -1});
    S.prev_odd.assign(6 * N, Slot{-1, -1});
    for (int h = 0; h < N; ++h) {
        for (int o = 1; o < 6; o += 2) {
            const Slot t = S.partner[h * 6 + (o + 1) % 6];
            const Slot nxt{t.hex, (t.side + 1) % 6};
            S.next_odd[h * 6 + o] = nxt;
            S.prev_odd[nxt.hex * 6 + nxt.side] = Slot{h, o};
        }
    }
    return S;
}

}  // namespace orthoforge
