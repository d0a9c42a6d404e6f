#include "orthoforge/metric_surface.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace orthoforge {

namespace {

// Arc lengths at slots (0, 2, 4) of hexagon h.
std::array<double, 3> arc_triple(const MetricSurface& X,
                                 const std::vector<std::array<int, 3>>& arcs, int h) {
    return {X.arc_lengths[arcs[h][0]], X.arc_lengths[arcs[h][1]],
            X.arc_lengths[arcs[h][2]]};
}

}  // namespace

Signature validate(const MetricSurface& X) {
    const Signature sig = validate(X.decomposition);
    if (X.arc_lengths.size() != X.decomposition.arc_gluings.size()) {
        throw domain_error("expected " + std::to_string(X.decomposition.arc_gluings.size()) +
                           " arc lengths, got " + std::to_string(X.arc_lengths.size()));
    }
    for (std::size_t i = 0; i < X.arc_lengths.size(); ++i) {
        const double x = X.arc_lengths[i];
        if (!std::isfinite(x) || x <= 0) {
            throw domain_error("arc " + std::to_string(i) + " has non-positive length");
        }
    }
    return sig;
}

std::vector<std::array<int, 3>> hexagon_arcs(const HexagonDecomposition& d) {
    std::vector<std::array<int, 3>> arcs(d.num_hexagons, {-1, -1, -1});
    for (std::size_t i = 0; i < d.arc_gluings.size(); ++i) {
        for (Slot s : d.arc_gluings[i]) {
            arcs[s.hex][s.side / 2] = (int)i;
        }
    }
    return arcs;
}

double total_boundary_length(const MetricSurface& X) {
    const auto arcs = hexagon_arcs(X.decomposition);
    double total = 0;
    for (int h = 0; h < X.decomposition.num_hexagons; ++h) {
        const auto [a, b, c] = arc_triple(X, arcs, h);
        total += hexagon::side_sum_of_lengths(a, b, c);
    }
    return total;
}

std::vector<double> boundary_component_lengths(const MetricSurface& X) {
    const auto arcs = hexagon_arcs(X.decomposition);
    std::vector<std::array<double, 6>> sides(X.decomposition.num_hexagons);
    for (int h = 0; h < X.decomposition.num_hexagons; ++h) {
        const auto [a, b, c] = arc_triple(X, arcs, h);
        sides[h] = hexagon_sides(a, b, c);
    }
    std::vector<double> lengths;
    for (const auto& cycle : boundary_cycles(X.decomposition)) {
        double len = 0;
        for (Slot s : cycle) len += sides[s.hex][s.side];
        lengths.push_back(len);
    }
    return lengths;
}

std::vector<double> grad_total_boundary(const MetricSurface& X) {
    const auto arcs = hexagon_arcs(X.decomposition);
    std::vector<double> grad(X.arc_lengths.size(), 0.0);
    for (int h = 0; h < X.decomposition.num_hexagons; ++h) {
        const auto [a, b, c] = arc_triple(X, arcs, h);
        const double A = std::cosh(a), B = std::cosh(b), C = std::cosh(c);
        grad[arcs[h][0]] += std::sinh(a) * hexagon::side_sum_partial(A, B, C);
        grad[arcs[h][1]] += std::sinh(b) * hexagon::side_sum_partial(B, C, A);
        grad[arcs[h][2]] += std::sinh(c) * hexagon::side_sum_partial(C, A, B);
    }
    return grad;
}

std::vector<double> profile_critical_lengths(double l1, double l2, double j1, double j2) {
    for (double x : {l1, l2, j1, j2}) {
        if (!std::isfinite(x) || x <= 0) {
            throw domain_error("flanking arc lengths must be positive");
        }
    }
    const double L = std::cosh(l1), M = std::cosh(l2);
    const double J = std::cosh(j1), K = std::cosh(j2);

    // Degenerate configuration: the two flanking pairs agree as multisets,
    // so the derivative terms of the two hexagons coincide and the whole
    // cubic vanishes identically.  The unique critical point is the zero of
    // the shared numerator Y - 1 - L - M.
    const double sum_tol = 1e-9 * (2 + L + M + J + K);
    const double prod_tol = 1e-9 * (1 + L * M + J * K);
    if (std::abs((L + M) - (J + K)) <= sum_tol &&
        std::abs(L * M - J * K) <= prod_tol) {
        return {std::acosh(1 + L + M)};
    }

    // Otherwise clear the square roots from
    //   u(Y) sqrt(Q2(Y)) + v(Y) sqrt(Q1(Y)) = 0,
    //   u = Y-1-L-M,  v = Y-1-J-K,  Q = Y^2 + (..)^2 + (..)^2 + 2Y(..)(..) - 1.
    // The quartic u^2 Q2 - v^2 Q1 loses its Y^4 term and always has the
    // spurious root Y = 1; the quotient is the quadratic solved here.
    const double p = 1 + L + M, q = 1 + J + K;
    const double e1 = 2 * L * M, f1 = L * L + M * M - 1;
    const double e2 = 2 * J * K, f2 = J * J + K * K - 1;
    const double c3 = (e2 - 2 * p) - (e1 - 2 * q);
    const double c2 = (f2 - 2 * p * e2 + p * p) - (f1 - 2 * q * e1 + q * q);
    const double c1 = (p * p * e2 - 2 * p * f2) - (q * q * e1 - 2 * q * f1);
    const double a2 = c3, a1 = c2 + c3, a0 = c1 + c2 + c3;

    std::vector<double> roots;
    if (std::abs(a2) <= 1e-14 * (std::abs(a1) + std::abs(a0))) {
        if (a1 != 0) roots.push_back(-a0 / a1);
    } else {
        const double disc = a1 * a1 - 4 * a2 * a0;
        if (disc >= 0) {
            const double r = std::sqrt(disc);
            const double t = -0.5 * (a1 + std::copysign(r, a1));
            roots.push_back(t / a2);
            if (t != 0) roots.push_back(a0 / t);
        }
    }

    // Keep the roots of the original equation: polish against the
    // un-squared form and drop the sign-mismatched artifacts of squaring.
    auto resid = [&](double Y, double& R, double& dR) {
        const double u = Y - p, v = Y - q;
        const double Q1 = Y * Y + 2 * Y * L * M + f1;
        const double Q2 = Y * Y + 2 * Y * J * K + f2;
        const double r1 = std::sqrt(Q1), r2 = std::sqrt(Q2);
        R = u * r2 + v * r1;
        dR = r2 + u * (Y + J * K) / r2 + r1 + v * (Y + L * M) / r1;
    };
    std::vector<double> out;
    for (double Y : roots) {
        if (!(Y > 1 + 1e-12)) continue;
        double R, dR;
        for (int it = 0; it < 8; ++it) {
            resid(Y, R, dR);
            if (dR == 0) break;
            const double step = R / dR;
            Y -= step;
            if (std::abs(step) <= 1e-15 * Y) break;
        }
        if (!(Y > 1 + 1e-12)) continue;
        resid(Y, R, dR);
        const double scale = (std::abs(Y - p) + std::abs(Y - q) + 1) * (std::abs(Y) + 1);
        if (std::abs(R) > 1e-7 * scale) continue;
        out.push_back(std::acosh(Y));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double x, double y) { return std::abs(x - y) <= 1e-9 * (1 + x); }),
              out.end());
    return out;
}

SingleVariableProfile single_variable_profile(const MetricSurface& X, int arc) {
    validate(X);
    if (arc < 0 || arc >= (int)X.arc_lengths.size()) {
        throw domain_error("arc index " + std::to_string(arc) + " out of range");
    }
    SingleVariableProfile profile;
    profile.value = [Y = X, arc](double y) mutable {
        Y.arc_lengths[arc] = y;
        return total_boundary_length(Y);
    };

    const auto [s1, s2] = X.decomposition.arc_gluings[arc];
    std::vector<double> criticals;
    if (s1.hex != s2.hex) {
        const auto arcs = hexagon_arcs(X.decomposition);
        auto flanks = [&](Slot s) {
            const int i = s.side / 2;
            return std::pair{X.arc_lengths[arcs[s.hex][(i + 1) % 3]],
                             X.arc_lengths[arcs[s.hex][(i + 2) % 3]]};
        };
        const auto [l1, l2] = flanks(s1);
        const auto [j1, j2] = flanks(s2);
        criticals = profile_critical_lengths(l1, l2, j1, j2);
    }
    // Both slots on one hexagon: d/dY of the side sum s(Y, Y, C) is
    // 2 (-1 - C) / ((Y - 1) sqrt(Q)) < 0, so the profile strictly decreases
    // and `criticals` stays empty.

    for (double y : criticals) {
        const double h = 1e-4 * (1 + y);
        const double f0 = profile.value(y);
        const bool is_min = profile.value(y + h) > f0 && profile.value(y - h) > f0;
        profile.critical_points.push_back({y, is_min});
    }
    return profile;
}

nlohmann::json surface_to_json(const MetricSurface& X) {
    nlohmann::json j = decomposition_to_json(X.decomposition);
    nlohmann::json lengths = nlohmann::json::object();
    for (std::size_t i = 0; i < X.arc_lengths.size(); ++i) {
        lengths[std::to_string(i)] = X.arc_lengths[i];
    }
    j["lengths"] = std::move(lengths);
    return j;
}

MetricSurface surface_from_json(const nlohmann::json& j) {
    MetricSurface X;
    X.decomposition = decomposition_from_json(j);
    try {
        const auto& lengths = j.at("lengths");
        if (!lengths.is_object()) throw domain_error("lengths must be an object");
        if (lengths.size() != X.decomposition.arc_gluings.size()) {
            throw domain_error("expected " + std::to_string(X.decomposition.arc_gluings.size()) +
                               " arc lengths, got " + std::to_string(lengths.size()));
        }
        X.arc_lengths.resize(X.decomposition.arc_gluings.size());
        for (std::size_t i = 0; i < X.arc_lengths.size(); ++i) {
            X.arc_lengths[i] = lengths.at(std::to_string(i)).get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw domain_error(std::string("malformed surface JSON: ") + e.what());
    }
    validate(X);
    return X;
}

}  // namespace orthoforge
