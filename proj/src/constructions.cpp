#include "orthoforge/constructions.hpp"

#include <array>
#include <iostream>
#include <utility>
#include <vector>

namespace orthoforge {

namespace {

using Pair = std::array<Slot, 2>;

void replace_slot(std::vector<Pair>& gl, Slot from, Slot to) {
    for (Pair& p : gl) {
        if (p[0] == from) p[0] = to;
        if (p[1] == from) p[1] = to;
    }
}

}  // namespace

HexagonDecomposition pants_decomposition() {
    return {2, {{{{0, 0}, {1, 0}}}, {{{0, 2}, {1, 4}}}, {{{0, 4}, {1, 2}}}}};
}

HexagonDecomposition fan_decomposition(int g) {
    if (g < 1) throw domain_error("fan_decomposition: genus must be >= 1");
    const int m = 4 * g;      // polygon sides
    const int T = m - 2;      // hexagons in the fan
    const auto edge_slot = [&](int j) -> Slot {
        if (j == 0) return {0, 0};
        if (j == m - 1) return {T - 1, 4};
        return {j - 1, 2};
    };
    HexagonDecomposition d;
    d.num_hexagons = T;
    for (int t = 1; t < T; ++t) d.arc_gluings.push_back({Slot{t, 0}, Slot{t - 1, 4}});
    // Side word a b a b per handle: opposite polygon edges identified.
    for (int k = 0; k < g; ++k) {
        d.arc_gluings.push_back({edge_slot(4 * k), edge_slot(4 * k + 2)});
        d.arc_gluings.push_back({edge_slot(4 * k + 1), edge_slot(4 * k + 3)});
    }
    validate(d);
    return d;
}

HexagonDecomposition split_arc(const HexagonDecomposition& d, int arc_index) {
    if (arc_index < 0 || arc_index >= (int)d.arc_gluings.size()) {
        throw domain_error("split_arc: arc index out of range");
    }
    const Slot a = d.arc_gluings[arc_index][0];
    const Slot b = d.arc_gluings[arc_index][1];
    const Slot c1{a.hex, (a.side + 4) % 6};
    const Slot c2{b.hex, (b.side + 4) % 6};
    const int n1 = d.num_hexagons;
    const int n2 = d.num_hexagons + 1;

    HexagonDecomposition out;
    out.num_hexagons = d.num_hexagons + 2;
    for (int i = 0; i < (int)d.arc_gluings.size(); ++i) {
        if (i != arc_index) out.arc_gluings.push_back(d.arc_gluings[i]);
    }
    // The flanking arcs of the removed one move to the new hexagons; the old
    // arc is replaced by two halves threaded through them.
    replace_slot(out.arc_gluings, c1, {n1, 2});
    replace_slot(out.arc_gluings, c2, {n2, 2});
    out.arc_gluings.push_back({c1, Slot{n1, 0}});
    out.arc_gluings.push_back({c2, Slot{n2, 0}});
    out.arc_gluings.push_back({a, Slot{n2, 4}});
    out.arc_gluings.push_back({b, Slot{n1, 4}});
    validate(out);
    return out;
}

HexagonDecomposition canonical_decomposition(int g, int n) {
    if (g < 0 || n < 1 || (g == 0 && n < 3)) {
        throw domain_error("canonical_decomposition: signature not admissible");
    }
    HexagonDecomposition d = g == 0 ? pants_decomposition() : fan_decomposition(g);
    const int extra = g == 0 ? n - 3 : n - 1;
    for (int i = 0; i < extra; ++i) d = split_arc(d, 0);
    return d;
}

HexagonDecomposition bicolored_decomposition(int g) {
    if (g < 1) throw domain_error("bicolored_decomposition: genus must be >= 1");
    HexagonDecomposition d;
    d.num_hexagons = 4 * g;
    for (int i = 0; i < g; ++i) {
        const int o = 4 * i;
        d.arc_gluings.push_back({Slot{o + 0, 2}, Slot{o + 1, 2}});
        d.arc_gluings.push_back({Slot{o + 0, 4}, Slot{o + 2, 0}});
        d.arc_gluings.push_back({Slot{o + 1, 4}, Slot{o + 3, 0}});
        d.arc_gluings.push_back({Slot{o + 2, 2}, Slot{o + 3, 2}});
        d.arc_gluings.push_back({Slot{o + 2, 4}, Slot{o + 3, 4}});
        const int next = 4 * ((i + 1) % g);
        d.arc_gluings.push_back({Slot{o + 1, 0}, Slot{next, 0}});
    }
    validate(d);
    return d;
}

HexagonDecomposition symmetric_family(int n, int m) {
    if (n < 1 || m < 0) throw domain_error("symmetric_family: need n >= 1, m >= 0");
    const int B = 4 * m + 2;  // hexagons per rotation unit
    HexagonDecomposition d;
    d.num_hexagons = B * n;
    for (int i = 0; i < n; ++i) {
        const int o = B * i;
        Slot cur{o + 0, 4};
        for (int t = 0; t < m; ++t) {
            const int go = o + 2 + 4 * t;  // handle gadget of four hexagons
            d.arc_gluings.push_back({cur, Slot{go + 0, 0}});
            d.arc_gluings.push_back({Slot{go + 0, 4}, Slot{go + 1, 0}});
            d.arc_gluings.push_back({Slot{go + 1, 2}, Slot{go + 2, 0}});
            d.arc_gluings.push_back({Slot{go + 1, 4}, Slot{go + 3, 0}});
            d.arc_gluings.push_back({Slot{go + 2, 2}, Slot{go + 3, 2}});
            d.arc_gluings.push_back({Slot{go + 2, 4}, Slot{go + 3, 4}});
            cur = Slot{go + 0, 2};
        }
        d.arc_gluings.push_back({cur, Slot{o + 1, 4}});
        const int next = B * ((i + 1) % n);
        d.arc_gluings.push_back({Slot{o + 1, 0}, Slot{next + 0, 0}});
        d.arc_gluings.push_back({Slot{o + 1, 2}, Slot{next + 0, 2}});
    }
    validate(d);
    return d;
}

double equal_arc_length(int g, int n, double L) {
    const int sides = 12 * g - 12 + 6 * n;
    if (sides <= 0) throw domain_error("equal_arc_length: signature not admissible");
    if (!(L > 0)) throw domain_error("equal_arc_length: total length must be positive");
    return hexagon::dual_side_length(L / sides);
}

MetricSurface equal_length_surface(const HexagonDecomposition& d, double L) {
    const Signature sig = validate(d);
    const double a = equal_arc_length(sig.g, sig.n, L);
    return {d, std::vector<double>(d.arc_gluings.size(), a)};
}

MetricSurface pants_from_cuffs(double l1, double l2, double l3) {
    if (!(l1 > 0) || !(l2 > 0) || !(l3 > 0)) {
        throw domain_error("pants_from_cuffs: cuff lengths must be positive");
    }
    const double h1 = l1 / 2, h2 = l2 / 2, h3 = l3 / 2;
    const double d12 = hexagon::opposite_side(h3, h1, h2);
    const double d13 = hexagon::opposite_side(h2, h1, h3);
    const double d23 = hexagon::opposite_side(h1, h2, h3);
    MetricSurface X{pants_decomposition(), {d13, d12, d23}};
    for (double v : X.arc_lengths) {
        if (v < 1e-12) {
            std::cerr << "pants_from_cuffs: near-degenerate seam (length " << v
                      << ")\n";
            break;
        }
    }
    return X;
}

}  // namespace orthoforge
