#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "orthoforge/metric_surface.hpp"

using namespace orthoforge;

namespace {

HexagonDecomposition pants_pattern() {
    return {2, {{{{0, 0}, {1, 0}}}, {{{0, 2}, {1, 4}}}, {{{0, 4}, {1, 2}}}}};
}

HexagonDecomposition torus_pattern() {
    return {2, {{{{0, 0}, {1, 0}}}, {{{0, 2}, {1, 2}}}, {{{0, 4}, {1, 4}}}}};
}

// Four-holed sphere: the pants with its first seam arc split in two.
HexagonDecomposition quad_pattern() {
    return {4,
            {{{{1, 2}, {2, 2}}},
             {{{0, 2}, {3, 2}}},
             {{{0, 4}, {2, 0}}},
             {{{1, 4}, {3, 0}}},
             {{{0, 0}, {3, 4}}},
             {{{1, 0}, {2, 4}}}}};
}

// Pants in which two of the arcs have both ends on one hexagon.
HexagonDecomposition folded_pants_pattern() {
    return {2, {{{{0, 0}, {0, 2}}}, {{{0, 4}, {1, 0}}}, {{{1, 2}, {1, 4}}}}};
}

const double kAcosh2 = 1.316957896924816708625046;

MetricSurface regular_torus() {
    return {torus_pattern(), {kAcosh2, kAcosh2, kAcosh2}};
}

double fd_partial(const MetricSurface& X, int i, double h) {
    MetricSurface lo = X, hi = X;
    lo.arc_lengths[i] -= h;
    hi.arc_lengths[i] += h;
    return (total_boundary_length(hi) - total_boundary_length(lo)) / (2 * h);
}

}  // namespace

TEST_CASE("hexagon side order interleaves arcs with their opposite sides") {
    const auto s = hexagon_sides(0.9, 1.1, 1.35);
    CHECK(s[0] == 0.9);
    CHECK(s[2] == 1.1);
    CHECK(s[4] == 1.35);
    CHECK(s[1] == doctest::Approx(hexagon::opposite_side(1.35, 0.9, 1.1)).epsilon(1e-15));
    CHECK(s[3] == doctest::Approx(hexagon::opposite_side(0.9, 1.1, 1.35)).epsilon(1e-15));
    CHECK(s[5] == doctest::Approx(hexagon::opposite_side(1.1, 1.35, 0.9)).epsilon(1e-15));
}

TEST_CASE("validate checks lengths as well as structure") {
    MetricSurface X{pants_pattern(), {0.9, 1.1, 1.35}};
    const Signature sig = validate(X);
    CHECK(sig == Signature{0, 3});

    X.arc_lengths = {0.9, 1.1};
    CHECK_THROWS_AS(validate(X), domain_error);
    X.arc_lengths = {0.9, -1.1, 1.35};
    CHECK_THROWS_AS(validate(X), domain_error);
    X.arc_lengths = {0.9, 0.0, 1.35};
    CHECK_THROWS_AS(validate(X), domain_error);
}

TEST_CASE("hexagon_arcs recovers the arc id under every even slot") {
    const auto arcs = hexagon_arcs(quad_pattern());
    REQUIRE(arcs.size() == 4);
    CHECK(arcs[0] == std::array<int, 3>{4, 1, 2});
    CHECK(arcs[1] == std::array<int, 3>{5, 0, 3});
    CHECK(arcs[2] == std::array<int, 3>{2, 0, 5});
    CHECK(arcs[3] == std::array<int, 3>{3, 1, 4});
}

TEST_CASE("regular one-holed torus has total boundary length 6 acosh 2") {
    CHECK(total_boundary_length(regular_torus()) ==
          doctest::Approx(7.90174738154890025175).epsilon(1e-14));
    const auto comps = boundary_component_lengths(regular_torus());
    REQUIRE(comps.size() == 1);
    CHECK(comps[0] == doctest::Approx(7.90174738154890025175).epsilon(1e-14));
}

TEST_CASE("pants boundary components against closed forms") {
    const MetricSurface X{pants_pattern(), {0.9, 1.1, 1.35}};
    CHECK(total_boundary_length(X) == doctest::Approx(9.48887548407470731893).epsilon(1e-14));
    auto comps = boundary_component_lengths(X);
    REQUIRE(comps.size() == 3);
    std::sort(comps.begin(), comps.end());
    CHECK(comps[0] == doctest::Approx(2.663241397828356983673).epsilon(1e-14));
    CHECK(comps[1] == doctest::Approx(3.1342084097971131839).epsilon(1e-14));
    CHECK(comps[2] == doctest::Approx(3.691425676449237151357).epsilon(1e-14));
}

TEST_CASE("four-holed sphere totals, components and gradient") {
    const MetricSurface X{quad_pattern(), {0.4, 0.55, 0.7, 0.85, 1.0, 1.15}};
    CHECK(validate(X) == Signature{0, 4});
    CHECK(total_boundary_length(X) == doctest::Approx(27.00314824939344958993).epsilon(1e-14));

    auto comps = boundary_component_lengths(X);
    REQUIRE(comps.size() == 4);
    std::sort(comps.begin(), comps.end());
    CHECK(comps[0] == doctest::Approx(4.39829999975841870681).epsilon(1e-13));
    CHECK(comps[1] == doctest::Approx(4.770938732183978001713).epsilon(1e-13));
    CHECK(comps[2] == doctest::Approx(7.019218234296143316132).epsilon(1e-13));
    CHECK(comps[3] == doctest::Approx(10.81469128315490956528).epsilon(1e-13));

    const auto grad = grad_total_boundary(X);
    REQUIRE(grad.size() == 6);
    const double expected[6] = {-9.590696497159286164333, -6.668869705196695083447,
                                -4.928390223646833952938, -3.757593822708786825342,
                                -2.761269422452940498081, -2.037557698943461753812};
    for (int i = 0; i < 6; ++i) {
        CHECK(grad[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
}

TEST_CASE("component lengths always sum to the total") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> dist(0.1, 3.0);
    for (const auto& d : {pants_pattern(), torus_pattern(), quad_pattern(),
                          folded_pants_pattern()}) {
        for (int rep = 0; rep < 20; ++rep) {
            MetricSurface X{d, {}};
            for (std::size_t i = 0; i < d.arc_gluings.size(); ++i) {
                X.arc_lengths.push_back(dist(rng));
            }
            const auto comps = boundary_component_lengths(X);
            double sum = 0;
            for (double c : comps) sum += c;
            CHECK(sum == doctest::Approx(total_boundary_length(X)).epsilon(1e-12));
        }
    }
}

TEST_CASE("gradient at the regular torus is exactly -2 per coordinate") {
    const auto grad = grad_total_boundary(regular_torus());
    REQUIRE(grad.size() == 3);
    for (double gi : grad) {
        CHECK(gi == doctest::Approx(-2.0).epsilon(1e-14));
    }
}

TEST_CASE("gradient matches central differences on random surfaces") {
    std::mt19937 rng(991);
    std::uniform_real_distribution<double> dist(0.15, 2.5);
    for (const auto& d : {pants_pattern(), torus_pattern(), quad_pattern(),
                          folded_pants_pattern()}) {
        for (int rep = 0; rep < 25; ++rep) {
            MetricSurface X{d, {}};
            for (std::size_t i = 0; i < d.arc_gluings.size(); ++i) {
                X.arc_lengths.push_back(dist(rng));
            }
            const auto grad = grad_total_boundary(X);
            for (std::size_t i = 0; i < grad.size(); ++i) {
                const double fd = fd_partial(X, (int)i, 1e-6);
                CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("growing every arc at once shrinks the total boundary") {
    // A single partial can have either sign, but summing the per-hexagon
    // terms (A-1-B-C)/((A-1) sqrt(Q)) over a full hexagon is negative, so
    // the directional derivative along (1, 1, ..., 1) always is too.
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> dist(0.2, 2.0);
    for (int rep = 0; rep < 50; ++rep) {
        MetricSurface X{quad_pattern(), {}};
        for (int i = 0; i < 6; ++i) X.arc_lengths.push_back(dist(rng));
        const auto grad = grad_total_boundary(X);
        double along_diagonal = 0;
        for (double gi : grad) along_diagonal += gi;
        CHECK(along_diagonal < 0);
    }
}

TEST_CASE("total restricted to the all-equal diagonal is strictly decreasing") {
    // With every arc equal to a, each hexagon contributes s(A, A, A) whose
    // derivative 3 sinh(a) (A-1-2A)/((A-1) sqrt(Q)) is negative for all a.
    double prev = std::numeric_limits<double>::infinity();
    for (double a = 0.05; a < 6.0; a += 0.05) {
        const MetricSurface X{torus_pattern(), {a, a, a}};
        const double F = total_boundary_length(X);
        CHECK(F < prev);
        prev = F;
    }
}

TEST_CASE("profile critical points in closed form match the oracle values") {
    auto single = [](std::vector<double> v) {
        REQUIRE(v.size() == 1);
        return v[0];
    };
    CHECK(single(profile_critical_lengths(1.0, 1.3, 0.8, 2.0)) ==
          doctest::Approx(2.3383383815141719202).epsilon(1e-13));
    CHECK(single(profile_critical_lengths(2.5, 0.3, 1.1, 1.4)) ==
          doctest::Approx(2.5222901436530263765).epsilon(1e-13));
    CHECK(single(profile_critical_lengths(0.2, 0.2, 3.0, 3.1)) ==
          doctest::Approx(2.4580599867610153686).epsilon(1e-13));
    // Equal flanking pairs collapse the equation to cosh y = 1 + L + M.
    CHECK(single(profile_critical_lengths(0.7, 0.7, 0.7, 0.7)) ==
          doctest::Approx(1.92792455413608114640).epsilon(1e-13));
    CHECK(single(profile_critical_lengths(0.7, 0.7, 0.7, 0.7)) ==
          doctest::Approx(std::acosh(1 + 2 * std::cosh(0.7))).epsilon(1e-14));
    // Flank order within each pair does not matter, nor does pair order.
    CHECK(single(profile_critical_lengths(1.3, 1.0, 2.0, 0.8)) ==
          doctest::Approx(2.3383383815141719202).epsilon(1e-13));
    CHECK(single(profile_critical_lengths(0.8, 2.0, 1.0, 1.3)) ==
          doctest::Approx(2.3383383815141719202).epsilon(1e-13));
}

TEST_CASE("profile criticals are genuine zeros of the one-variable derivative") {
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> dist(0.1, 3.5);
    for (int rep = 0; rep < 200; ++rep) {
        const double l1 = dist(rng), l2 = dist(rng), j1 = dist(rng), j2 = dist(rng);
        const auto crit = profile_critical_lengths(l1, l2, j1, j2);
        REQUIRE(crit.size() >= 1);
        REQUIRE(crit.size() <= 2);
        auto F = [&](double y) {
            return hexagon::side_sum_of_lengths(y, l1, l2) +
                   hexagon::side_sum_of_lengths(y, j1, j2);
        };
        int minima = 0;
        for (double y : crit) {
            const double h = 1e-5 * (1 + y);
            const double deriv = (F(y + h) - F(y - h)) / (2 * h);
            CHECK(std::abs(deriv) < 1e-7 * (1 + std::abs(F(y))));
            if (F(y + h) > F(y) && F(y - h) > F(y)) ++minima;
        }
        CHECK(minima == 1);
    }
}

TEST_CASE("surface-level profile on the regular torus bottoms out at acosh 5") {
    const auto profile = single_variable_profile(regular_torus(), 0);
    REQUIRE(profile.critical_points.size() == 1);
    CHECK(profile.critical_points[0].y ==
          doctest::Approx(2.292431669561177687801).epsilon(1e-13));
    CHECK(profile.critical_points[0].is_minimum);
    CHECK(profile.value(kAcosh2) ==
          doctest::Approx(7.90174738154890025175).epsilon(1e-14));
    // Sample the claimed shape: decreasing into the minimum, increasing after.
    const double ystar = profile.critical_points[0].y;
    CHECK(profile.value(0.5) > profile.value(1.5));
    CHECK(profile.value(1.5) > profile.value(ystar));
    CHECK(profile.value(ystar) < profile.value(3.5));
    CHECK(profile.value(3.5) < profile.value(5.0));
}

TEST_CASE("surface-level profile agrees with the flank closed form") {
    const MetricSurface X{quad_pattern(), {0.4, 0.55, 0.7, 0.85, 1.0, 1.15}};
    const auto profile = single_variable_profile(X, 0);
    REQUIRE(profile.critical_points.size() == 1);
    CHECK(profile.critical_points[0].y ==
          doctest::Approx(2.077757950015895287894).epsilon(1e-12));
    CHECK(profile.critical_points[0].is_minimum);
    CHECK(profile.value(X.arc_lengths[0]) ==
          doctest::Approx(total_boundary_length(X)).epsilon(1e-14));
}

TEST_CASE("arc with both ends on one hexagon gives a monotone profile") {
    const MetricSurface X{folded_pants_pattern(), {0.8, 1.2, 0.6}};
    for (int arc : {0, 2}) {
        const auto profile = single_variable_profile(X, arc);
        CHECK(profile.critical_points.empty());
        double prev = std::numeric_limits<double>::infinity();
        for (double y = 0.1; y < 8.0; y += 0.1) {
            const double F = profile.value(y);
            CHECK(F < prev);
            prev = F;
        }
    }
}

TEST_CASE("surface JSON round trip keeps lengths keyed by arc id") {
    const MetricSurface X{quad_pattern(), {0.4, 0.55, 0.7, 0.85, 1.0, 1.15}};
    const nlohmann::json j = surface_to_json(X);
    CHECK(j.contains("hexagons"));
    CHECK(j.contains("gluings"));
    REQUIRE(j.contains("lengths"));
    CHECK(j["lengths"].is_object());
    CHECK(j["lengths"]["3"].get<double>() == 0.85);

    const MetricSurface Y = surface_from_json(j);
    CHECK(Y.decomposition.num_hexagons == 4);
    REQUIRE(Y.arc_lengths.size() == 6);
    for (int i = 0; i < 6; ++i) CHECK(Y.arc_lengths[i] == X.arc_lengths[i]);
}

TEST_CASE("surface JSON rejects missing or malformed lengths") {
    const MetricSurface X{pants_pattern(), {0.9, 1.1, 1.35}};
    nlohmann::json j = surface_to_json(X);

    nlohmann::json no_lengths = j;
    no_lengths.erase("lengths");
    CHECK_THROWS_AS(surface_from_json(no_lengths), domain_error);

    nlohmann::json short_lengths = j;
    short_lengths["lengths"].erase("2");
    CHECK_THROWS_AS(surface_from_json(short_lengths), domain_error);

    nlohmann::json bad_key = j;
    bad_key["lengths"].erase("2");
    bad_key["lengths"]["7"] = 1.0;
    CHECK_THROWS_AS(surface_from_json(bad_key), domain_error);

    nlohmann::json negative = j;
    negative["lengths"]["1"] = -0.5;
    CHECK_THROWS_AS(surface_from_json(negative), domain_error);

    nlohmann::json not_object = j;
    not_object["lengths"] = nlohmann::json::array({0.9, 1.1, 1.35});
    CHECK_THROWS_AS(surface_from_json(not_object), domain_error);
}
