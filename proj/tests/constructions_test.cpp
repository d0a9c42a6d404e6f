#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "orthoforge/constructions.hpp"
#include "orthoforge/hexagon_trig.hpp"
#include "orthoforge/metric_surface.hpp"
#include "orthoforge/spectrum.hpp"
#include "orthoforge/surface_combinatorics.hpp"

using namespace orthoforge;

namespace {

const double kAcosh2 = 1.316957896924816708625046;

int arc_count(const HexagonDecomposition& d) { return (int)d.arc_gluings.size(); }

}  // namespace

TEST_CASE("pants seam lengths reproduce the requested cuffs") {
    const MetricSurface X = pants_from_cuffs(3.0, 4.0, 5.0);
    CHECK(validate(X) == Signature{0, 3});
    const auto cuffs = boundary_component_lengths(X);
    REQUIRE(cuffs.size() == 3);
    CHECK(cuffs[0] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(cuffs[1] == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(cuffs[2] == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("random cuff triples round-trip through the seams") {
    std::mt19937 rng(424247);
    std::uniform_real_distribution<double> cuff(0.01, 20.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double l1 = cuff(rng), l2 = cuff(rng), l3 = cuff(rng);
        const MetricSurface X = pants_from_cuffs(l1, l2, l3);
        const auto back = boundary_component_lengths(X);
        REQUIRE(back.size() == 3);
        CHECK(back[0] == doctest::Approx(l1).epsilon(1e-9));
        CHECK(back[1] == doctest::Approx(l2).epsilon(1e-9));
        CHECK(back[2] == doctest::Approx(l3).epsilon(1e-9));
    }

    // Equal cuffs force equal seams by symmetry.
    const MetricSurface Y = pants_from_cuffs(2.5, 2.5, 2.5);
    CHECK(Y.arc_lengths[0] == doctest::Approx(Y.arc_lengths[1]).epsilon(1e-12));
    CHECK(Y.arc_lengths[1] == doctest::Approx(Y.arc_lengths[2]).epsilon(1e-12));
}

TEST_CASE("near-degenerate seams stay positive and valid") {
    // Two long cuffs against a short one squeeze a seam towards zero; the
    // construction warns on stderr but must still return a valid surface.
    const MetricSurface X = pants_from_cuffs(60.0, 60.0, 0.5);
    CHECK(validate(X) == Signature{0, 3});
    const double tiny = *std::min_element(X.arc_lengths.begin(), X.arc_lengths.end());
    CHECK(tiny > 0);
    CHECK(tiny < 1e-10);
    const auto back = boundary_component_lengths(X);
    // Recovering a length-60 cuff through a ~4e-13 seam is ill-conditioned:
    // double arithmetic keeps only ~6 significant digits on the long cuffs.
    CHECK(back[0] == doctest::Approx(60.0).epsilon(1e-4));
    CHECK(back[1] == doctest::Approx(60.0).epsilon(1e-4));
    CHECK(back[2] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("handle chains close up into one-holed surfaces") {
    for (int g = 1; g <= 3; ++g) {
        const HexagonDecomposition d = fan_decomposition(g);
        CHECK(validate(d) == Signature{g, 1});
        CHECK(d.num_hexagons == 4 * g - 2);
        CHECK(arc_count(d) == 6 * g - 3);
    }
}

TEST_CASE("arc splitting adds a boundary component") {
    const HexagonDecomposition torus = fan_decomposition(1);
    const HexagonDecomposition split = split_arc(torus, 0);
    CHECK(validate(split) == Signature{1, 2});
    CHECK(split.num_hexagons == torus.num_hexagons + 2);
    CHECK(arc_count(split) == arc_count(torus) + 3);
}

TEST_CASE("every admissible signature gets a decomposition") {
    const std::vector<Signature> sigs = {{0, 3}, {0, 4}, {0, 5}, {1, 1}, {1, 2},
                                         {1, 3}, {2, 1}, {2, 2}, {3, 2}};
    for (const Signature& s : sigs) {
        const HexagonDecomposition d = canonical_decomposition(s.g, s.n);
        CHECK(validate(d) == s);
        CHECK(d.num_hexagons == 4 * s.g - 4 + 2 * s.n);
        CHECK(arc_count(d) == 6 * s.g - 6 + 3 * s.n);
    }
}

TEST_CASE("inadmissible construction requests are refused") {
    CHECK_THROWS_AS(fan_decomposition(0), domain_error);
    CHECK_THROWS_AS(canonical_decomposition(0, 2), domain_error);
    CHECK_THROWS_AS(canonical_decomposition(-1, 5), domain_error);
    CHECK_THROWS_AS(split_arc(fan_decomposition(1), 3), domain_error);
    CHECK_THROWS_AS(split_arc(fan_decomposition(1), -1), domain_error);
    CHECK_THROWS_AS(equal_arc_length(0, 2, 5.0), domain_error);
    CHECK_THROWS_AS(equal_arc_length(1, 1, 0.0), domain_error);
    CHECK_THROWS_AS(equal_arc_length(1, 1, -2.0), domain_error);
    CHECK_THROWS_AS(symmetric_family(0, 1), domain_error);
}

TEST_CASE("two-boundary decompositions split the hexagons evenly") {
    for (int g = 1; g <= 3; ++g) {
        const HexagonDecomposition d = bicolored_decomposition(g);
        CHECK(validate(d) == Signature{g, 2});
        CHECK(d.num_hexagons == 4 * g);
        const auto cycles = boundary_cycles(d);
        REQUIRE(cycles.size() == 2);
        CHECK(cycles[0].size() == 6 * (std::size_t)g);
        CHECK(cycles[1].size() == 6 * (std::size_t)g);

        // Each hexagon leans on one component with two sides and on the other
        // with one, and the two orientations balance exactly.
        std::set<Slot> first(cycles[0].begin(), cycles[0].end());
        int lean_first = 0, lean_second = 0;
        for (int h = 0; h < d.num_hexagons; ++h) {
            int on_first = 0;
            for (int o = 1; o < 6; o += 2) {
                if (first.count({h, o})) ++on_first;
            }
            REQUIRE((on_first == 1 || on_first == 2));
            (on_first == 2 ? lean_first : lean_second) += 1;
        }
        CHECK(lean_first == 2 * g);
        CHECK(lean_second == 2 * g);
    }
}

TEST_CASE("equal-arc surfaces meet the boundary-length bound") {
    SUBCASE("arc length inverts the total boundary length") {
        const double L = 6 * kAcosh2;
        const MetricSurface X = equal_length_surface(fan_decomposition(1), L);
        CHECK(X.arc_lengths[0] == doctest::Approx(kAcosh2).epsilon(1e-12));
        CHECK(total_boundary_length(X) == doctest::Approx(L).epsilon(1e-12));
        CHECK(equal_arc_length(1, 1, L) == doctest::Approx(kAcosh2).epsilon(1e-12));
        CHECK(equal_arc_length(1, 1, L) ==
              doctest::Approx(hexagon::dual_side_length(L / 6)).epsilon(1e-14));
        CHECK(verify_hexdec_orthosystoles(X));
    }

    struct Extremal {
        int g, n;
        double L;
        double osys;
    };
    // Short total boundaries push the redundant lifts many crossings deep;
    // these exercise the precision escalation end to end.
    const std::vector<Extremal> cases = {
        {1, 1, 2.0, 3.6281189678964860587},
        {2, 1, 20.0, 1.5505684718086239272},
        {1, 2, 2.0, 4.9812769500573834395},
        {2, 1, 2.0, 5.7858655660253806},
    };
    for (const auto& c : cases) {
        CAPTURE(c.g);
        CAPTURE(c.n);
        CAPTURE(c.L);
        const MetricSurface X =
            equal_length_surface(canonical_decomposition(c.g, c.n), c.L);
        const SpectrumReport rep = orthosystole(X);
        CHECK(rep.osys == doctest::Approx(c.osys).epsilon(1e-9));
        CHECK(rep.osys == doctest::Approx(equal_arc_length(c.g, c.n, c.L)).epsilon(1e-9));
        CHECK(rep.osys ==
              doctest::Approx(hexagon::bavard_bound(c.g, c.n, c.L)).epsilon(1e-9));
        CHECK(rep.okiss == 6 * c.g - 6 + 3 * c.n);
        CHECK(verify_hexdec_orthosystoles(X));
    }
}

TEST_CASE("different decompositions of one signature share the extremal length") {
    const MetricSurface A = equal_length_surface(fan_decomposition(2), 20.0);
    const MetricSurface B = equal_length_surface(symmetric_family(1, 1), 20.0);
    CHECK(validate(A) == Signature{2, 1});
    CHECK(validate(B) == Signature{2, 1});
    const SpectrumReport ra = orthosystole(A);
    const SpectrumReport rb = orthosystole(B);
    CHECK(ra.osys == doctest::Approx(rb.osys).epsilon(1e-9));
    CHECK(ra.okiss == rb.okiss);
}

TEST_CASE("two-colored equal surfaces hit the two-boundary bound") {
    // Per-component boundary length 6 means total 12 over two components.
    const MetricSurface X = equal_length_surface(bicolored_decomposition(1), 12.0);
    const auto cuffs = boundary_component_lengths(X);
    REQUIRE(cuffs.size() == 2);
    CHECK(cuffs[0] == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(cuffs[1] == doctest::Approx(6.0).epsilon(1e-9));
    const SpectrumReport rep = orthosystole(X);
    CHECK(rep.osys == doctest::Approx(1.7049128323580136912).epsilon(1e-9));
    CHECK(rep.osys == doctest::Approx(hexagon::equal_boundary_bound(1, 6.0)).epsilon(1e-9));
    CHECK(rep.okiss == 6);

    // The bound coincides with the total-length bound at the doubled length.
    for (int g = 1; g <= 3; ++g) {
        CHECK(hexagon::equal_boundary_bound(g, 6.0) ==
              doctest::Approx(hexagon::bavard_bound(g, 2, 12.0)).epsilon(1e-12));
    }
}

TEST_CASE("rotationally symmetric surfaces stay extremal for each boundary") {
    CHECK(validate(symmetric_family(1, 0)) == Signature{1, 1});
    CHECK(validate(symmetric_family(3, 1)) == Signature{4, 3});

    const HexagonDecomposition d = symmetric_family(2, 1);
    CHECK(validate(d) == Signature{3, 2});
    CHECK(d.num_hexagons == 12);
    CHECK(arc_count(d) == 18);

    // Per-component length 6, two components.
    const MetricSurface X = equal_length_surface(d, 12.0);
    const auto cuffs = boundary_component_lengths(X);
    REQUIRE(cuffs.size() == 2);
    CHECK(cuffs[0] == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(cuffs[1] == doctest::Approx(6.0).epsilon(1e-9));
    const SpectrumReport rep = orthosystole(X);
    CHECK(rep.osys == doctest::Approx(3.6281189678964860587).epsilon(1e-9));
    CHECK(rep.okiss == 18);
}

TEST_CASE("thin cuffs fold a long boundary back on itself") {
    // Two short cuffs squeeze the surface so the shortest perpendicular runs
    // from the long boundary back to the long boundary, well under the
    // equal-length bound for the total boundary 10.4.
    const MetricSurface X = pants_from_cuffs(10.0, 0.2, 0.2);
    const SpectrumReport rep = orthosystole(X);
    CHECK(rep.osys == doctest::Approx(0.330712399010331226).epsilon(1e-9));
    REQUIRE(rep.okiss == 1);
    CHECK(rep.osys < hexagon::bavard_bound(0, 3, 10.4));

    const auto cycles = boundary_cycles(X.decomposition);
    const auto lens = boundary_component_lengths(X);
    REQUIRE(cycles.size() == 3);
    const auto on_long = [&](const Slot& s) {
        for (std::size_t i = 0; i < cycles.size(); ++i)
            for (const Slot& t : cycles[i])
                if (t.hex == s.hex && t.side == s.side)
                    return lens[i] == doctest::Approx(10.0).epsilon(1e-9);
        return false;
    };
    CHECK(on_long(rep.classes[0].start));
    CHECK(on_long(rep.classes[0].end));
}
